// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "bog/pipeline.hpp"

using namespace bog;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_noisy_config() {
  ExperimentConfig config;
  config.n_qubits = 2;
  config.depths = {2, 4, 6};
  config.seeds = 4;
  config.master_seed = 11;
  config.shots = 800;
  config.num_bins = 4;
  config.noise.depolarizing_lambda = 0.02;
  config.noise.readout_epsilon = 0.01;
  config.bootstrap_groups = 2;
  config.algorithms = AlgorithmSelection::Both;
  return config;
}

fs::path fresh_dir(const std::string& leaf) {
  fs::path dir = fs::temp_directory_path() / "bog_pipeline_test" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<fs::path> emitted_files(const SimulatedEnsemble& ensemble,
                                    const ExperimentConfig& config,
                                    const fs::path& out_dir,
                                    const std::string& kind) {
  std::vector<fs::path> files;
  for (std::uint64_t seed : ensemble.circuit_seeds)
    for (int depth : config.depths)
      files.push_back(out_dir / kind /
                      ("s" + std::to_string(seed) + "_d" +
                       std::to_string(depth) + ".json"));
  return files;
}

std::string canonical_results(const ResultsBundle& bundle) {
  ResultsBundle copy = bundle;
  copy.timestamp = "1970-01-01T00:00:00Z";
  return results_to_json(copy);
}

}  // namespace

TEST_CASE("run_experiment is deterministic from the config") {
  ExperimentConfig config = small_noisy_config();
  ResultsBundle first = run_experiment(config);
  ResultsBundle second = run_experiment(config);

  REQUIRE(first.curves.size() == second.curves.size());
  for (std::size_t c = 0; c < first.curves.size(); ++c)
    CHECK(curve_to_csv(first.curves[c]) == curve_to_csv(second.curves[c]));
  CHECK(canonical_results(first) == canonical_results(second));

  // A different master seed must change the measured data.
  config.master_seed = 12;
  ResultsBundle third = run_experiment(config);
  CHECK(canonical_results(third) != canonical_results(first));
}

TEST_CASE("emitted outputs are byte-identical across reruns") {
  ExperimentConfig config = small_noisy_config();
  fs::path dir_a = fresh_dir("emit_a");
  fs::path dir_b = fresh_dir("emit_b");
  emit_results(run_experiment(config), dir_a);
  emit_results(run_experiment(config), dir_b);

  for (const char* name :
       {"curve_by_ideal.csv", "curve_by_experimental.csv", "summary.txt"}) {
    CAPTURE(name);
    CHECK(read_text_file(dir_a / name) == read_text_file(dir_b / name));
  }
  ResultsBundle a = results_from_json(read_text_file(dir_a / "results.json"));
  ResultsBundle b = results_from_json(read_text_file(dir_b / "results.json"));
  CHECK(canonical_results(a) == canonical_results(b));
  fs::remove_all(dir_a.parent_path());
}

TEST_CASE("simulate_ensemble: shapes, seed order, and the pure-path purity") {
  ExperimentConfig config = small_noisy_config();
  config.noise = NoiseConfig{};          // no stochastic channels
  config.noise.z_fraction = 0.01;        // coherent injection only
  SimulatedEnsemble ensemble = simulate_ensemble(config);

  REQUIRE(ensemble.measured.size() == config.depths.size());
  REQUIRE(ensemble.ideals.size() == config.depths.size());
  for (std::size_t di = 0; di < config.depths.size(); ++di) {
    CHECK(ensemble.measured[di].size() == std::size_t(config.seeds));
    CHECK(ensemble.ideals[di].size() == std::size_t(config.seeds));
  }
  CHECK(ensemble.mean_purity.size() == config.depths.size());
  for (double p : ensemble.mean_purity) CHECK(p == 1.0);
  CHECK(ensemble.counts.size() ==
        std::size_t(config.seeds) * config.depths.size());

  REQUIRE(ensemble.circuit_seeds.size() == std::size_t(config.seeds));
  CHECK(std::is_sorted(ensemble.circuit_seeds.begin(),
                       ensemble.circuit_seeds.end()));
  CHECK(std::adjacent_find(ensemble.circuit_seeds.begin(),
                           ensemble.circuit_seeds.end()) ==
        ensemble.circuit_seeds.end());

  // Coherent injection shifts the measured vectors away from the ideal ones.
  double delta = 0.0;
  for (std::size_t s = 0; s < ensemble.measured[2].size(); ++s)
    for (std::size_t i = 0; i < ensemble.measured[2][s].probs.size(); ++i)
      delta = std::max(delta, std::abs(ensemble.measured[2][s].probs[i] -
                                       ensemble.ideals[2][s].probs[i]));
  CHECK(delta > 1e-4);
}

TEST_CASE("export then ingest reproduces the in-memory analysis exactly") {
  ExperimentConfig config = small_noisy_config();
  fs::path dir = fresh_dir("roundtrip");

  SimulatedEnsemble ensemble = simulate_ensemble(config);
  std::vector<std::pair<int, double>> purity;
  for (std::size_t di = 0; di < config.depths.size(); ++di)
    purity.emplace_back(config.depths[di], ensemble.mean_purity[di]);
  ResultsBundle direct = analyze_ensemble(config, ensemble.measured,
                                          &ensemble.ideals, purity,
                                          config.validate());
  emit_ensemble(ensemble, config, dir);

  ResultsBundle ingested = ingest_and_analyze(
      config, emitted_files(ensemble, config, dir, "counts"),
      emitted_files(ensemble, config, dir, "ideal"));

  REQUIRE(ingested.curves.size() == direct.curves.size());
  for (std::size_t c = 0; c < direct.curves.size(); ++c) {
    REQUIRE(ingested.curves[c].points.size() == direct.curves[c].points.size());
    for (std::size_t i = 0; i < direct.curves[c].points.size(); ++i) {
      CHECK(ingested.curves[c].points[i].fidelity ==
            direct.curves[c].points[i].fidelity);
      CHECK(ingested.curves[c].points[i].std_err ==
            direct.curves[c].points[i].std_err);
    }
  }
  REQUIRE(ingested.fits.size() == direct.fits.size());
  for (std::size_t f = 0; f < direct.fits.size(); ++f) {
    CHECK(ingested.fits[f].first == direct.fits[f].first);
    CHECK(ingested.fits[f].second.lambda == direct.fits[f].second.lambda);
    CHECK(ingested.fits[f].second.amplitude == direct.fits[f].second.amplitude);
  }
  REQUIRE(ingested.epg.size() == direct.epg.size());
  for (std::size_t e = 0; e < direct.epg.size(); ++e) {
    CHECK(ingested.epg[e].first == direct.epg[e].first);
    CHECK(ingested.epg[e].second.epg == direct.epg[e].second.epg);
    // Purity is simulation-only: the ingested report has no incoherent EPG.
    CHECK(direct.epg[e].second.incoherent_epg.has_value());
    CHECK_FALSE(ingested.epg[e].second.incoherent_epg.has_value());
  }
  REQUIRE(ingested.bins.size() == direct.bins.size());
  for (std::size_t b = 0; b < direct.bins.size(); ++b) {
    CHECK(ingested.bins[b].experimental == direct.bins[b].experimental);
    CHECK(ingested.bins[b].ideal == direct.bins[b].ideal);
    CHECK(ingested.bins[b].mixed == direct.bins[b].mixed);
  }
  fs::remove_all(dir.parent_path());
}

TEST_CASE("ingest rejects inconsistent inputs with clear diagnostics") {
  ExperimentConfig config = small_noisy_config();
  fs::path dir = fresh_dir("ingest_errors");
  SimulatedEnsemble ensemble = simulate_ensemble(config);
  emit_ensemble(ensemble, config, dir);
  std::vector<fs::path> counts = emitted_files(ensemble, config, dir, "counts");
  std::vector<fs::path> ideals = emitted_files(ensemble, config, dir, "ideal");

  SUBCASE("missing record") {
    std::vector<fs::path> short_list(counts.begin(), counts.end() - 1);
    CHECK_THROWS_AS(ingest_and_analyze(config, short_list, ideals),
                    std::invalid_argument);
  }
  SUBCASE("duplicate record") {
    std::vector<fs::path> dup = counts;
    dup.push_back(counts.front());
    CHECK_THROWS_AS(ingest_and_analyze(config, dup, ideals),
                    std::invalid_argument);
  }
  SUBCASE("qubit-count mismatch") {
    ExperimentConfig other = config;
    other.n_qubits = 3;
    CHECK_THROWS_AS(ingest_and_analyze(other, counts, ideals),
                    std::invalid_argument);
  }
  SUBCASE("ByIdeal requires ideal files") {
    ExperimentConfig by_ideal = config;
    by_ideal.algorithms = AlgorithmSelection::ByIdeal;
    CHECK_THROWS_WITH_AS(ingest_and_analyze(by_ideal, counts, {}),
                         doctest::Contains("ByIdeal"), std::invalid_argument);
  }
  SUBCASE("counts-only ByExperimental works") {
    ExperimentConfig by_exp = config;
    by_exp.algorithms = AlgorithmSelection::ByExperimental;
    ResultsBundle bundle = ingest_and_analyze(by_exp, counts, {});
    REQUIRE(bundle.curves.size() == 1);
    CHECK(bundle.curves[0].algorithm == Algorithm::ByExperimental);
  }
  SUBCASE("shots mismatch") {
    ExperimentConfig other = config;
    other.shots = 999;
    CHECK_THROWS_AS(ingest_and_analyze(other, counts, ideals),
                    std::invalid_argument);
  }
  SUBCASE("shots sentinel adopts the ingested value") {
    ExperimentConfig other = config;
    other.shots = 0;
    ResultsBundle bundle = ingest_and_analyze(other, counts, ideals);
    CHECK(bundle.config.shots == config.shots);
  }
  SUBCASE("record outside the configured depth grid") {
    ExperimentConfig other = config;
    other.depths = {2, 4};  // files also cover depth 6
    CHECK_THROWS_AS(ingest_and_analyze(other, counts, ideals),
                    std::invalid_argument);
  }
  SUBCASE("seed-count mismatch") {
    ExperimentConfig other = config;
    other.seeds = 5;
    CHECK_THROWS_AS(ingest_and_analyze(other, counts, ideals),
                    std::invalid_argument);
  }
  SUBCASE("missing file named in the error") {
    std::vector<fs::path> bad = counts;
    bad[0] = dir / "counts" / "nonexistent.json";
    CHECK_THROWS_WITH_AS(ingest_and_analyze(config, bad, ideals),
                         doctest::Contains("nonexistent.json"),
                         std::invalid_argument);
  }
  fs::remove_all(dir.parent_path());
}

TEST_CASE("emit_circuits writes one parseable circuit per seed") {
  ExperimentConfig config = small_noisy_config();
  fs::path dir = fresh_dir("circuits");
  emit_circuits(config, dir);

  SimulatedEnsemble ensemble = simulate_ensemble(config);
  for (std::uint64_t seed : ensemble.circuit_seeds) {
    fs::path file = dir / "circuits" / ("s" + std::to_string(seed) + ".json");
    CAPTURE(file.string());
    REQUIRE(fs::exists(file));
    Circuit circuit = parse_circuit(read_text_file(file));
    CHECK(circuit.seed == seed);
    CHECK(circuit.n_qubits == config.n_qubits);
    CHECK(circuit.cycles == config.max_depth());
  }
  fs::remove_all(dir.parent_path());
}

TEST_CASE("analyze_ensemble without fits emits curves only") {
  ExperimentConfig config = small_noisy_config();
  SimulatedEnsemble ensemble = simulate_ensemble(config);
  ResultsBundle bundle = analyze_ensemble(config, ensemble.measured,
                                          &ensemble.ideals, {}, {}, false);
  CHECK(bundle.fits.empty());
  CHECK(bundle.epg.empty());
  CHECK(bundle.curves.size() == 2);
  CHECK_FALSE(bundle.bins.empty());
}

TEST_CASE("statistics warnings propagate into the bundle") {
  ExperimentConfig config = small_noisy_config();
  config.num_bins = 10;  // seeds * 2^n = 16 < 100 * 10
  ResultsBundle bundle = run_experiment(config);
  REQUIRE_FALSE(bundle.warnings.empty());
  bool mentions_alg1 = false;
  for (const std::string& w : bundle.warnings)
    mentions_alg1 = mentions_alg1 || w.find("Algorithm 1") != std::string::npos;
  CHECK(mentions_alg1);
}

TEST_CASE("noiseless experiments score fidelity 1 under both scoring modes") {
  ExperimentConfig config;
  config.n_qubits = 3;
  config.depths = {2, 4, 6};
  config.seeds = 4;
  config.master_seed = 7;
  config.shots = 0;  // infinite-shot mode
  config.num_bins = 5;
  config.bootstrap_groups = 2;
  config.algorithms = AlgorithmSelection::Both;

  for (bool per_seed : {false, true}) {
    config.per_seed_fidelity = per_seed;
    CAPTURE(per_seed);
    ResultsBundle bundle = run_experiment(config);
    REQUIRE(bundle.curves.size() == 2);
    for (const FidelityCurve& curve : bundle.curves)
      for (const auto& point : curve.points) {
        CHECK(point.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(point.std_err == doctest::Approx(0.0).epsilon(1e-9));
      }
  }
}

TEST_CASE("epg_z_sweep: one EPG per z, growing with the injection") {
  ExperimentConfig base;
  base.n_qubits = 2;
  base.depths = {4, 8, 12};
  base.seeds = 6;
  base.master_seed = 3;
  base.shots = 0;
  base.num_bins = 6;
  base.noise.depolarizing_lambda = 0.01;
  base.algorithms = AlgorithmSelection::Both;

  std::vector<double> zs{0.0, 0.02, 0.04};
  std::vector<double> epgs = epg_z_sweep(base, zs, /*zz_strength_hz=*/0.0);
  REQUIRE(epgs.size() == zs.size());
  CHECK(epgs[0] < epgs[1]);
  CHECK(epgs[1] < epgs[2]);
  CHECK(epgs[0] > 0.0);
}

TEST_CASE("recover_zz_strength closes the loop on synthetic data") {
  ExperimentConfig base;
  base.n_qubits = 2;
  base.depths = {4, 8, 12};
  base.seeds = 4;
  base.master_seed = 5;
  base.shots = 0;
  base.num_bins = 6;
  base.noise.depolarizing_lambda = 0.01;
  base.noise.cnot_time_s = 443.73e-9;

  const double truth_hz = 30000.0;
  std::vector<double> zs{0.0, 0.02};
  std::vector<double> measured = epg_z_sweep(base, zs, truth_hz);
  ZzFit fit = recover_zz_strength(base, zs, measured, /*j_max_hz=*/2.0e5);
  // Common random numbers: the objective vanishes at the true coupling, so
  // the only slack is the golden-section tolerance.
  CHECK(std::abs(fit.j_hz - truth_hz) < 2000.0);
}

TEST_CASE("current_utc_timestamp returns ISO-8601 Zulu time") {
  std::string ts = current_utc_timestamp();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts.back() == 'Z');
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u,
                        17u, 18u})
    CHECK(std::isdigit(static_cast<unsigned char>(ts[i])));
}
