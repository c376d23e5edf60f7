// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Structured-text file formats. Every format carries an explicit schema
// version; floating point is serialized with full round-trip precision.
//
//   bog-circuit/1  one Circuit: {version, n_qubits, seed, cycles, layers[...]}
//                  with complex entries as [re, im] and angles in radians
//   bog-counts/1   one CountsRecord: {version, n_qubits, depth, seed, shots,
//                  counts{bitstring: int}}
//   bog-ideal/1    one ideal-probability vector keyed by (seed, depth)
//   curve CSV      header depth,fidelity,stderr,algorithm; one file per
//                  (experiment, algorithm)
//   bog-results/1  the full ResultsBundle (config echo, binned distributions,
//                  curves, fits, EPG reports, provenance)
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bog/analysis.hpp"
#include "bog/circuit.hpp"
#include "bog/config.hpp"
#include "bog/sim.hpp"

namespace bog {

// --- circuits -------------------------------------------------------------
std::string serialize_circuit(const Circuit& circuit);
Circuit parse_circuit(const std::string& text);

// --- counts ---------------------------------------------------------------
std::string serialize_counts(const CountsRecord& record);
CountsRecord parse_counts(const std::string& text);

// --- ideal probabilities ---------------------------------------------------
struct IdealProbsRecord {
  int n_qubits = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::vector<double> probs;

  ProbabilityVector vector() const;
};
std::string serialize_ideal_probs(const IdealProbsRecord& record);
IdealProbsRecord parse_ideal_probs(const std::string& text);

// --- fidelity curves --------------------------------------------------------
// CSV loses the curve meta (n_qubits, seeds, shots, bins - those live in the
// results file); points and algorithm round-trip exactly.
std::string curve_to_csv(const FidelityCurve& curve);
FidelityCurve curve_from_csv(const std::string& text);

// --- results bundle ---------------------------------------------------------
struct DepthBins {
  Algorithm algorithm = Algorithm::ByIdeal;
  int depth = 0;
  std::vector<double> experimental;  // accumulated over seeds
  std::vector<double> ideal;         // ideal reference
  std::vector<double> mixed;         // mixed reference
};

struct ResultsBundle {
  ExperimentConfig config;
  std::vector<DepthBins> bins;
  std::vector<FidelityCurve> curves;
  std::vector<std::pair<Algorithm, DecayFit>> fits;
  std::vector<std::pair<Algorithm, EpgReport>> epg;
  std::vector<std::string> warnings;
  std::string tool_version;
  std::string timestamp;  // the only field not determined by (config, seed)
};

std::string results_to_json(const ResultsBundle& bundle);
ResultsBundle results_from_json(const std::string& text);

// Plain-text summary: one row per algorithm with the fitted decay, EPG, and
// (when available) the purity-based incoherent EPG.
std::string summary_table(const ResultsBundle& bundle);

// --- helpers ----------------------------------------------------------------
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// Full-precision decimal form that strtod parses back to the same double.
std::string format_double(double value);

}  // namespace bog
