// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/binning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bog/quadrature.hpp"

namespace bog {

std::string to_string(Algorithm a) {
  return a == Algorithm::ByIdeal ? "ByIdeal" : "ByExperimental";
}

namespace {

// Raw Porter-Thomas mass CDF (density N^2 q e^{-Nq}), unnormalized.
double raw_mass_cdf(double x, double N) {
  return 1.0 - std::exp(-N * x) * (1.0 + N * x);
}

void check_dimension(const ProbabilityVector& v, const BinSpec& spec) {
  if (v.n_qubits != spec.n_qubits || v.probs.size() != dim_of(spec.n_qubits))
    throw std::invalid_argument("probability vector does not match BinSpec qubit count");
}

}  // namespace

double BinSpec::mass_cdf(double x) const {
  double N = double(dim_of(n_qubits));
  return raw_mass_cdf(x, N) / raw_mass_cdf(1.0, N);
}

void BinnedDistribution::validate() const {
  double total = 0.0;
  for (double w : weights) {
    if (w < -1e-12)
      throw std::invalid_argument("BinnedDistribution: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("BinnedDistribution: weights sum deviates from 1");
}

BinSpec compute_bin_edges(int n_qubits, int B) {
  if (n_qubits < 1) throw std::invalid_argument("compute_bin_edges: n_qubits < 1");
  if (B < 1) throw std::invalid_argument("compute_bin_edges: B < 1");
  BinSpec spec;
  spec.n_qubits = n_qubits;
  spec.num_bins = B;
  spec.edges.resize(std::size_t(B) + 1);
  spec.edges[0] = 0.0;
  spec.edges[std::size_t(B)] = 1.0;
  for (int k = 1; k < B; ++k) {
    double target = double(k) / double(B);
    // Bisection on the monotone normalized CDF.
    double lo = spec.edges[std::size_t(k) - 1], hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (spec.mass_cdf(mid) < target)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-17) break;
    }
    double x = 0.5 * (lo + hi);
    if (std::abs(spec.mass_cdf(x) - target) > 1e-12)
      throw std::runtime_error("compute_bin_edges: solver did not reach 1e-12");
    spec.edges[std::size_t(k)] = x;
    if (x - spec.edges[std::size_t(k) - 1] < 1e-15)
      throw std::invalid_argument(
          "compute_bin_edges: B too large, edges collide within 1e-15");
  }
  if (1.0 - spec.edges[std::size_t(B) - 1] < 1e-15)
    throw std::invalid_argument(
        "compute_bin_edges: B too large, edges collide within 1e-15");
  return spec;
}

int assign_bin(double p, const BinSpec& spec) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("assign_bin: probability outside [0,1]");
  auto it = std::upper_bound(spec.edges.begin(), spec.edges.end(), p);
  int idx = int(it - spec.edges.begin()) - 1;
  if (idx < 0) idx = 0;
  if (idx >= spec.num_bins) idx = spec.num_bins - 1;  // p == 1 -> top bin
  return idx;
}

BinnedDistribution bin_by_ideal(const ProbabilityVector& ideal,
                                const ProbabilityVector& measured,
                                const BinSpec& spec) {
  check_dimension(ideal, spec);
  check_dimension(measured, spec);
  BinnedDistribution out;
  out.kind = BinKind::experimental;
  out.algorithm = Algorithm::ByIdeal;
  out.weights.assign(std::size_t(spec.num_bins), 0.0);
  for (std::size_t i = 0; i < ideal.probs.size(); ++i)
    out.weights[std::size_t(assign_bin(ideal.probs[i], spec))] += measured.probs[i];
  return out;
}

BinnedDistribution bin_by_experimental(const ProbabilityVector& measured,
                                       const BinSpec& spec) {
  check_dimension(measured, spec);
  BinnedDistribution out;
  out.kind = BinKind::experimental;
  out.algorithm = Algorithm::ByExperimental;
  out.weights.assign(std::size_t(spec.num_bins), 0.0);
  for (double q : measured.probs) {
    if (q == 0.0) continue;  // zero weight into bin 0 is a no-op
    out.weights[std::size_t(assign_bin(q, spec))] += q;
  }
  return out;
}

BinnedDistribution reference_mixed_by_ideal(const ProbabilityVector& ideal,
                                            const BinSpec& spec) {
  check_dimension(ideal, spec);
  BinnedDistribution out;
  out.kind = BinKind::reference_mixed;
  out.algorithm = Algorithm::ByIdeal;
  out.weights.assign(std::size_t(spec.num_bins), 0.0);
  const double w = 1.0 / double(ideal.probs.size());
  for (double p : ideal.probs) out.weights[std::size_t(assign_bin(p, spec))] += w;
  return out;
}

BinnedDistribution reference_ideal_pt(const BinSpec& spec) {
  BinnedDistribution out;
  out.kind = BinKind::reference_ideal;
  out.algorithm = Algorithm::ByExperimental;
  out.weights.resize(std::size_t(spec.num_bins));
  for (int k = 0; k < spec.num_bins; ++k) {
    double mass = spec.mass_cdf(spec.edges[std::size_t(k) + 1]) -
                  spec.mass_cdf(spec.edges[std::size_t(k)]);
    if (std::abs(mass - 1.0 / double(spec.num_bins)) > 1e-9)
      throw std::logic_error("reference_ideal_pt: bin mass deviates from 1/B");
    out.weights[std::size_t(k)] = mass;
  }
  return out;
}

BinnedDistribution reference_mixed_gaussian(const BinSpec& spec,
                                            std::uint64_t shots) {
  if (shots == 0)
    throw std::invalid_argument("reference_mixed_gaussian: shots must be >= 1");
  const double N = double(dim_of(spec.n_qubits));
  const double mu = 1.0 / N;
  const double sigma = 1.0 / std::sqrt(N * double(shots));
  auto integrand = [&](double q) {
    double z = (q - mu) / sigma;
    return q * std::exp(-0.5 * z * z);
  };
  BinnedDistribution out;
  out.kind = BinKind::reference_mixed;
  out.algorithm = Algorithm::ByExperimental;
  out.weights.resize(std::size_t(spec.num_bins));
  double total = 0.0;
  for (int k = 0; k < spec.num_bins; ++k) {
    double a = spec.edges[std::size_t(k)], b = spec.edges[std::size_t(k) + 1];
    // Force subdivision at the peak and its shoulders so the adaptive rule
    // cannot miss a spike much narrower than the bin.
    std::vector<double> splits{mu - 3 * sigma, mu - sigma, mu, mu + sigma,
                               mu + 3 * sigma};
    double v = integrate_adaptive(integrand, a, b, 1e-14, splits);
    out.weights[std::size_t(k)] = std::max(v, 0.0);
    total += out.weights[std::size_t(k)];
  }
  if (total <= 0.0)
    throw std::runtime_error("reference_mixed_gaussian: vanishing integral");
  for (double& w : out.weights) w /= total;
  return out;
}

BinnedDistribution reference_mixed_delta(const BinSpec& spec) {
  BinnedDistribution out;
  out.kind = BinKind::reference_mixed;
  out.algorithm = Algorithm::ByExperimental;
  out.weights.assign(std::size_t(spec.num_bins), 0.0);
  out.weights[std::size_t(assign_bin(1.0 / double(dim_of(spec.n_qubits)), spec))] = 1.0;
  return out;
}

FidelityScore bog_fidelity(const BinnedDistribution& exp_bins,
                           const BinnedDistribution& ideal_bins,
                           const BinnedDistribution& mixed_bins) {
  if (exp_bins.weights.size() != ideal_bins.weights.size() ||
      exp_bins.weights.size() != mixed_bins.weights.size())
    throw std::invalid_argument("bog_fidelity: bin count mismatch");
  if (exp_bins.algorithm != ideal_bins.algorithm ||
      exp_bins.algorithm != mixed_bins.algorithm)
    throw std::invalid_argument("bog_fidelity: algorithm mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < exp_bins.weights.size(); ++k) {
    num += std::abs(ideal_bins.weights[k] - exp_bins.weights[k]);
    den += std::abs(ideal_bins.weights[k] - mixed_bins.weights[k]);
  }
  if (den < 1e-12)
    throw std::invalid_argument(
        "bog_fidelity: ideal and mixed references coincide (degenerate BinSpec)");
  FidelityScore score;
  score.value = 1.0 - num / den;
  return score;
}

BinnedDistribution accumulate(const std::vector<BinnedDistribution>& per_seed) {
  if (per_seed.empty()) throw std::invalid_argument("accumulate: no seeds");
  BinnedDistribution out;
  out.kind = per_seed.front().kind;
  out.algorithm = per_seed.front().algorithm;
  out.weights.assign(per_seed.front().weights.size(), 0.0);
  for (const BinnedDistribution& b : per_seed) {
    if (b.weights.size() != out.weights.size() || b.algorithm != out.algorithm ||
        b.kind != out.kind)
      throw std::invalid_argument("accumulate: mismatched distributions");
    for (std::size_t k = 0; k < out.weights.size(); ++k)
      out.weights[k] += b.weights[k];
  }
  double total = 0.0;
  for (double w : out.weights) total += w;
  if (total <= 0.0) throw std::invalid_argument("accumulate: zero total weight");
  for (double& w : out.weights) w /= total;
  return out;
}

BinnedDistribution accumulate_seeds(
    const std::vector<ProbabilityVector>& measured,
    const std::vector<ProbabilityVector>* ideals, const BinSpec& spec,
    Algorithm algorithm) {
  if (measured.empty()) throw std::invalid_argument("accumulate_seeds: no seeds");
  if (algorithm == Algorithm::ByIdeal &&
      (ideals == nullptr || ideals->size() != measured.size()))
    throw std::invalid_argument(
        "accumulate_seeds: ByIdeal requires one ideal vector per seed");
  std::vector<BinnedDistribution> bins;
  bins.reserve(measured.size());
  for (std::size_t s = 0; s < measured.size(); ++s) {
    bins.push_back(algorithm == Algorithm::ByIdeal
                       ? bin_by_ideal((*ideals)[s], measured[s], spec)
                       : bin_by_experimental(measured[s], spec));
  }
  return accumulate(bins);
}

std::vector<std::string> statistics_warnings(int seeds, int n_qubits, int B,
                                             std::uint64_t shots) {
  std::vector<std::string> warnings;
  double states = double(dim_of(n_qubits));
  if (double(seeds) * states < 100.0 * double(B))
    warnings.push_back(
        "statistics: seeds*2^n = " + std::to_string(std::int64_t(seeds * states)) +
        " < 100*B = " + std::to_string(100 * B) +
        " (Algorithm 1 rule of thumb: seeds times basis states should be much "
        "larger than the number of bins)");
  if (shots != 0 && double(shots) < 10.0 * states)
    warnings.push_back(
        "statistics: shots = " + std::to_string(shots) + " < 10*2^n = " +
        std::to_string(std::uint64_t(10 * states)) +
        " (Algorithm 2 rule of thumb: shots should be much larger than the "
        "number of basis states)");
  return warnings;
}

}  // namespace bog
