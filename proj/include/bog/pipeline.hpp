// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end orchestration: simulate an experiment from a config, analyze
// per-seed frequencies into curves / fits / EPG reports, exchange data through
// files, and run the closed-loop ZZ-strength recovery.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bog/analysis.hpp"
#include "bog/config.hpp"
#include "bog/files.hpp"

namespace bog {

// Raw data of one simulated experiment. Outer index follows config.depths,
// inner index the seed ordinal (0..seeds-1).
struct SimulatedEnsemble {
  std::vector<std::uint64_t> circuit_seeds;              // per seed ordinal
  std::vector<std::vector<ProbabilityVector>> measured;  // [depth][seed]
  std::vector<std::vector<ProbabilityVector>> ideals;    // [depth][seed]
  std::vector<double> mean_purity;                       // per depth, pre-readout
  std::vector<CountsRecord> counts;  // one per (seed, depth) when shots > 0
};

// Deterministic from (config, master_seed): circuit seeds, gate draws, and
// measurement sampling all derive from addressed substreams. The ideal
// vectors come from the intended circuit (no injections, no channels); the
// measured vectors from the actual one.
SimulatedEnsemble simulate_ensemble(const ExperimentConfig& config);

// Analysis core shared by the simulation and ingestion paths. `ideals` may be
// null (counts-only ingestion; ByIdeal then unavailable). `purity_by_depth`
// may be empty (no incoherent EPG). `with_fits` = false emits bins and curves
// only. The bundle's timestamp is set to the current UTC time.
ResultsBundle analyze_ensemble(
    const ExperimentConfig& config,
    const std::vector<std::vector<ProbabilityVector>>& measured,
    const std::vector<std::vector<ProbabilityVector>>* ideals,
    const std::vector<std::pair<int, double>>& purity_by_depth,
    std::vector<std::string> warnings, bool with_fits = true);

// simulate_ensemble + analyze_ensemble.
ResultsBundle run_experiment(const ExperimentConfig& config);

// Stable output layout under out_dir:
//   results.json, summary.txt, curve_by_ideal.csv, curve_by_experimental.csv
void emit_results(const ResultsBundle& bundle,
                  const std::filesystem::path& out_dir);

// Writes counts/s<seed>_d<depth>.json and ideal/s<seed>_d<depth>.json.
void emit_ensemble(const SimulatedEnsemble& ensemble,
                   const ExperimentConfig& config,
                   const std::filesystem::path& out_dir);

// Writes circuits/s<seed>.json — the intended (injection-free) circuit of
// every seed at the deepest configured depth.
void emit_circuits(const ExperimentConfig& config,
                   const std::filesystem::path& out_dir);

// Parses and validates counts files. Rejections name the offending file.
std::vector<CountsRecord> ingest_counts(
    const std::vector<std::filesystem::path>& files);

// Ingestion path: counts files (plus ideal-probability files when ByIdeal is
// requested), cross-checked against the config (n_qubits, depths, seed count,
// uniform shots), then analyzed with the same pipeline as run_experiment.
// Seeds are ordered by ascending seed value.
ResultsBundle ingest_and_analyze(
    const ExperimentConfig& config,
    const std::vector<std::filesystem::path>& counts_files,
    const std::vector<std::filesystem::path>& ideal_files,
    bool with_fits = true);

// Simulated ByIdeal EPG at each z_fraction with residual ZZ strength j_hz,
// all other knobs (and the master seed) from `base`.
std::vector<double> epg_z_sweep(const ExperimentConfig& base,
                                const std::vector<double>& z_fractions,
                                double zz_strength_hz);

// Closed-loop recovery: fits j_hz so the simulated EPG-vs-z sweep matches
// `measured_epg` (one value per z_fraction).
ZzFit recover_zz_strength(const ExperimentConfig& base,
                          const std::vector<double>& z_fractions,
                          const std::vector<double>& measured_epg,
                          double j_max_hz = 1.0e6);

// ISO-8601 UTC, second resolution; the one nondeterministic output field.
std::string current_utc_timestamp();

}  // namespace bog
