// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bog/binning.hpp"
#include "bog/rng.hpp"
#include "bog/state.hpp"

using namespace bog;

namespace {

// Independent oracle quadrature: plain recursive adaptive Simpson on the
// Porter-Thomas mass density N^2 q e^{-Nq}. Deliberately not the library's
// integrator.
double pt_density(double n_states, double q) {
  return n_states * n_states * q * std::exp(-n_states * q);
}

double simpson(double n_states, double a, double b) {
  double m = 0.5 * (a + b);
  return (b - a) / 6.0 *
         (pt_density(n_states, a) + 4.0 * pt_density(n_states, m) +
          pt_density(n_states, b));
}

double adaptive(double n_states, double a, double b, double whole, int depth) {
  double m = 0.5 * (a + b);
  double left = simpson(n_states, a, m);
  double right = simpson(n_states, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 1e-13)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(n_states, a, m, left, depth - 1) +
         adaptive(n_states, m, b, right, depth - 1);
}

double oracle_mass(int n_qubits, double a, double b) {
  double n_states = double(dim_of(n_qubits));
  return adaptive(n_states, a, b, simpson(n_states, a, b), 40);
}

BinSpec manual_spec() {
  BinSpec spec;
  spec.n_qubits = 2;
  spec.num_bins = 3;
  spec.edges = {0.0, 0.1, 0.35, 1.0};
  return spec;
}

ProbabilityVector pv(int n, std::vector<double> probs) {
  return ProbabilityVector{n, std::move(probs)};
}

}  // namespace

TEST_CASE("compute_bin_edges: B=1 and basic shape") {
  BinSpec one = compute_bin_edges(3, 1);
  CHECK(one.edges == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(compute_bin_edges(3, 0), std::invalid_argument);

  BinSpec spec = compute_bin_edges(6, 30);
  REQUIRE(spec.edges.size() == 31);
  CHECK(spec.edges.front() == 0.0);
  CHECK(spec.edges.back() == 1.0);
  CHECK(std::is_sorted(spec.edges.begin(), spec.edges.end()));
}

TEST_CASE("equal-mass property against the oracle quadrature") {
  // Every bin holds mass 1/B of the Porter-Thomas distribution restricted to
  // [0, 1] (the restriction matters at n=2, where ~9% of the raw mass lies
  // beyond q = 1).
  for (auto [n, b] : std::vector<std::pair<int, int>>{{2, 10}, {6, 30}, {3, 7}}) {
    BinSpec spec = compute_bin_edges(n, b);
    double total = oracle_mass(n, 0.0, 1.0);
    for (int k = 0; k < b; ++k) {
      double mass = oracle_mass(n, spec.edges[std::size_t(k)],
                                spec.edges[std::size_t(k) + 1]) /
                    total;
      CHECK(std::abs(mass - 1.0 / b) < 1e-9);
    }
  }
}

TEST_CASE("first edge of the six-qubit 30-bin spec solves the CDF equation") {
  BinSpec spec = compute_bin_edges(6, 30);
  double e1 = spec.edges[1];
  // Independent check via the oracle quadrature (normalized over [0,1]).
  CHECK(std::abs(oracle_mass(6, 0.0, e1) / oracle_mass(6, 0.0, 1.0) -
                 1.0 / 30.0) < 1e-9);
  // And via the closed-form raw CDF 1 - e^{-Nx}(1 + Nx): the tail beyond 1 is
  // ~1e-26 at n = 6, so the normalized and raw equations coincide here.
  CHECK(std::abs((1.0 - std::exp(-64.0 * e1) * (1.0 + 64.0 * e1)) - 1.0 / 30.0)
        < 1e-9);
}

TEST_CASE("assign_bin: endpoints, lower-inclusive edges, range errors") {
  BinSpec spec = compute_bin_edges(2, 10);
  CHECK(assign_bin(0.0, spec) == 0);
  CHECK(assign_bin(1.0, spec) == 9);
  for (int k = 1; k < 10; ++k) CHECK(assign_bin(spec.edges[std::size_t(k)], spec) == k);
  CHECK_THROWS_AS(assign_bin(-0.1, spec), std::invalid_argument);
  CHECK_THROWS_AS(assign_bin(1.1, spec), std::invalid_argument);
}

TEST_CASE("manual three-bin oracle: both algorithms and the mixed reference") {
  BinSpec spec = manual_spec();
  ProbabilityVector p = pv(2, {0.5, 0.3, 0.15, 0.05});

  BinnedDistribution alg1 = bin_by_ideal(p, p, spec);
  CHECK(alg1.weights[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(alg1.weights[1] == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(alg1.weights[2] == doctest::Approx(0.50).epsilon(1e-12));

  BinnedDistribution alg2 = bin_by_experimental(p, spec);
  CHECK(alg2.weights[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(alg2.weights[1] == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(alg2.weights[2] == doctest::Approx(0.50).epsilon(1e-12));

  BinnedDistribution mixed = reference_mixed_by_ideal(p, spec);
  CHECK(mixed.weights[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mixed.weights[1] == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(mixed.weights[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("binning conserves the input mass and validates") {
  std::mt19937_64 eng(5);
  BinSpec spec = compute_bin_edges(3, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> raw(8);
    double total = 0.0;
    for (double& v : raw) total += (v = u(eng));
    for (double& v : raw) v /= total;
    ProbabilityVector q = pv(3, raw);
    BinnedDistribution bins = bin_by_experimental(q, spec);
    CHECK(std::abs(std::accumulate(bins.weights.begin(), bins.weights.end(),
                                   0.0) -
                   1.0) < 1e-12);
    bins.validate();
    BinnedDistribution self = bin_by_ideal(q, q, spec);
    CHECK(std::abs(std::accumulate(self.weights.begin(), self.weights.end(),
                                   0.0) -
                   1.0) < 1e-12);
  }
}

TEST_CASE("uniform frequencies land in the single bin containing 1/N") {
  BinSpec spec = compute_bin_edges(2, 10);
  ProbabilityVector uniform = pv(2, {0.25, 0.25, 0.25, 0.25});
  BinnedDistribution bins = bin_by_experimental(uniform, spec);
  int home = assign_bin(0.25, spec);
  for (int k = 0; k < 10; ++k)
    CHECK(bins.weights[std::size_t(k)] ==
          doctest::Approx(k == home ? 1.0 : 0.0).epsilon(1e-15));
}

TEST_CASE("Algorithm 2 is exactly label-invariant") {
  std::mt19937_64 eng(17);
  BinSpec spec = compute_bin_edges(3, 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> raw(8);
  double total = 0.0;
  for (double& v : raw) total += (v = u(eng));
  for (double& v : raw) v /= total;

  BinnedDistribution base = bin_by_experimental(pv(3, raw), spec);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> shuffled = raw;
    std::shuffle(shuffled.begin(), shuffled.end(), eng);
    BinnedDistribution permuted = bin_by_experimental(pv(3, shuffled), spec);
    // Bin assignment is label-free; only the floating-point summation order
    // inside each bin differs.
    REQUIRE(permuted.weights.size() == base.weights.size());
    for (std::size_t k = 0; k < base.weights.size(); ++k)
      CHECK(std::abs(permuted.weights[k] - base.weights[k]) < 1e-14);
  }
}

TEST_CASE("reference_ideal_pt: every weight is exactly the equal mass") {
  for (auto [n, b] : std::vector<std::pair<int, int>>{{2, 10}, {6, 30}}) {
    BinSpec spec = compute_bin_edges(n, b);
    BinnedDistribution ref = reference_ideal_pt(spec);
    double sum = 0.0;
    for (double w : ref.weights) {
      CHECK(std::abs(w - 1.0 / b) < 1e-9);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("reference_mixed_gaussian: delta limit concentrates at 1/N") {
  BinSpec spec = compute_bin_edges(4, 12);
  int home = assign_bin(1.0 / 16.0, spec);

  BinnedDistribution delta = reference_mixed_delta(spec);
  CHECK(delta.weights[std::size_t(home)] == doctest::Approx(1.0).epsilon(1e-12));

  BinnedDistribution tight = reference_mixed_gaussian(spec, 1ull << 40);
  CHECK(tight.weights[std::size_t(home)] > 0.999);
}

TEST_CASE("reference_mixed_gaussian tracks a Monte-Carlo multinomial oracle") {
  // The Gaussian reference models the value distribution of shot-sampled
  // frequencies of the maximally mixed state. Oracle: draw multinomial counts
  // from the uniform distribution, bin by experimental value, average over
  // many trials. The Gaussian is a deliberate approximation - it drops the
  // binomial's skew and discreteness - so the comparison checks it is close
  // in total variation (wrong sigma scaling would miss by an order of
  // magnitude), not bin-exact.
  struct Scenario {
    int n, b;
    std::uint64_t shots;
    double tv_bound, abs_bound;
  };
  // Bounds are ~2-3x the empirically measured deviations.
  for (const Scenario& sc : {Scenario{6, 10, 4000, 0.015, 0.010},
                             Scenario{6, 30, 8000, 0.030, 0.025}}) {
    CAPTURE(sc.b);
    BinSpec spec = compute_bin_edges(sc.n, sc.b);
    BinnedDistribution gauss = reference_mixed_gaussian(spec, sc.shots);

    const std::size_t dim = dim_of(sc.n);
    std::vector<double> uniform(dim, 1.0 / double(dim));
    std::vector<double> mc(std::size_t(sc.b), 0.0);
    const int trials = 10000;
    auto eng = rng::engine(2024, {rng::kMeasurement, std::uint64_t(sc.b)});
    for (int t = 0; t < trials; ++t) {
      auto counts = rng::multinomial(uniform, sc.shots, eng);
      std::vector<double> freq(dim);
      for (std::size_t i = 0; i < dim; ++i)
        freq[i] = double(counts[i]) / double(sc.shots);
      BinnedDistribution bins =
          bin_by_experimental(pv(sc.n, std::move(freq)), spec);
      for (int k = 0; k < sc.b; ++k)
        mc[std::size_t(k)] += bins.weights[std::size_t(k)] / trials;
    }

    double tv = 0.0, worst = 0.0;
    for (int k = 0; k < sc.b; ++k) {
      double gap = std::abs(gauss.weights[std::size_t(k)] - mc[std::size_t(k)]);
      tv += 0.5 * gap;
      worst = std::max(worst, gap);
    }
    CHECK(tv < sc.tv_bound);
    CHECK(worst < sc.abs_bound);
  }
}

TEST_CASE("bog_fidelity: endpoint and midpoint identities") {
  BinSpec spec = manual_spec();
  ProbabilityVector p = pv(2, {0.5, 0.3, 0.15, 0.05});
  BinnedDistribution ideal = bin_by_ideal(p, p, spec);
  BinnedDistribution mixed = reference_mixed_by_ideal(p, spec);

  CHECK(bog_fidelity(ideal, ideal, mixed).value == doctest::Approx(1.0));
  CHECK(bog_fidelity(mixed, ideal, mixed).value == doctest::Approx(0.0));

  BinnedDistribution half = ideal;
  for (std::size_t k = 0; k < half.weights.size(); ++k)
    half.weights[k] = 0.5 * (ideal.weights[k] + mixed.weights[k]);
  CHECK(bog_fidelity(half, ideal, mixed).value ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bog_fidelity rejects mismatches and degenerate references") {
  BinSpec spec = manual_spec();
  ProbabilityVector p = pv(2, {0.5, 0.3, 0.15, 0.05});
  BinnedDistribution ideal = bin_by_ideal(p, p, spec);
  BinnedDistribution mixed = reference_mixed_by_ideal(p, spec);

  BinnedDistribution wrong_b = ideal;
  wrong_b.weights.push_back(0.0);
  CHECK_THROWS_AS(bog_fidelity(wrong_b, ideal, mixed), std::invalid_argument);

  BinnedDistribution other_alg = ideal;
  other_alg.algorithm = Algorithm::ByExperimental;
  CHECK_THROWS_AS(bog_fidelity(other_alg, ideal, mixed), std::invalid_argument);

  CHECK_THROWS_AS(bog_fidelity(ideal, ideal, ideal), std::invalid_argument);
}

TEST_CASE("accumulate_seeds: identity, replication, order invariance") {
  BinSpec spec = compute_bin_edges(2, 5);
  std::mt19937_64 eng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_pv = [&] {
    std::vector<double> raw(4);
    double total = 0.0;
    for (double& v : raw) total += (v = u(eng));
    for (double& v : raw) v /= total;
    return pv(2, raw);
  };

  std::vector<ProbabilityVector> one{random_pv()};
  BinnedDistribution single =
      accumulate_seeds(one, nullptr, spec, Algorithm::ByExperimental);
  CHECK(single.weights == bin_by_experimental(one[0], spec).weights);

  std::vector<ProbabilityVector> replicated{one[0], one[0], one[0]};
  BinnedDistribution rep =
      accumulate_seeds(replicated, nullptr, spec, Algorithm::ByExperimental);
  for (std::size_t k = 0; k < rep.weights.size(); ++k)
    CHECK(rep.weights[k] == doctest::Approx(single.weights[k]).epsilon(1e-12));

  std::vector<ProbabilityVector> seeds{random_pv(), random_pv(), random_pv()};
  std::vector<ProbabilityVector> reversed(seeds.rbegin(), seeds.rend());
  BinnedDistribution fwd =
      accumulate_seeds(seeds, nullptr, spec, Algorithm::ByExperimental);
  BinnedDistribution rev =
      accumulate_seeds(reversed, nullptr, spec, Algorithm::ByExperimental);
  for (std::size_t k = 0; k < fwd.weights.size(); ++k)
    CHECK(fwd.weights[k] == doctest::Approx(rev.weights[k]).epsilon(1e-12));
}

TEST_CASE("accumulate rejects mixed algorithms and sizes") {
  BinSpec spec = compute_bin_edges(2, 5);
  ProbabilityVector p = pv(2, {0.4, 0.3, 0.2, 0.1});
  BinnedDistribution a = bin_by_experimental(p, spec);
  BinnedDistribution b = bin_by_ideal(p, p, spec);
  CHECK_THROWS_AS(accumulate({a, b}), std::invalid_argument);

  BinnedDistribution c = a;
  c.weights.push_back(0.0);
  CHECK_THROWS_AS(accumulate({a, c}), std::invalid_argument);
  CHECK_THROWS_AS(accumulate({}), std::invalid_argument);
}

TEST_CASE("ByIdeal accumulation requires per-seed ideals") {
  BinSpec spec = compute_bin_edges(2, 5);
  std::vector<ProbabilityVector> seeds{pv(2, {0.4, 0.3, 0.2, 0.1})};
  CHECK_THROWS_AS(accumulate_seeds(seeds, nullptr, spec, Algorithm::ByIdeal),
                  std::invalid_argument);
}

TEST_CASE("statistics guards") {
  // Algorithm 1 rule: seeds * 2^n >= 100 * B.
  auto w1 = statistics_warnings(/*seeds=*/10, /*n_qubits=*/2, /*B=*/10,
                                /*shots=*/0);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].find("Algorithm 1") != std::string::npos);

  // Algorithm 2 rule: shots >= 10 * 2^n (finite-shot mode only).
  auto w2 = statistics_warnings(/*seeds=*/1000, /*n_qubits=*/6, /*B=*/10,
                                /*shots=*/100);
  REQUIRE(w2.size() == 1);
  CHECK(w2[0].find("Algorithm 2") != std::string::npos);

  CHECK(statistics_warnings(1000, 6, 10, 0).empty());
  CHECK(statistics_warnings(1000, 6, 10, 8000).empty());

  auto both = statistics_warnings(4, 2, 10, 10);
  CHECK(both.size() == 2);
}

TEST_CASE("BinnedDistribution validation rejects bad sums") {
  BinnedDistribution bad;
  bad.weights = {0.5, 0.4};  // sums to 0.9
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
