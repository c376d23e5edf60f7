// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Circuit simulation: exact pure-state evolution for ideal probabilities,
// density-matrix evolution for noisy probabilities and purity, and
// finite-shot measurement sampling.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bog/circuit.hpp"
#include "bog/state.hpp"

namespace bog {

// Resource caps (exact simulation is exponential in n).
inline constexpr int kPureStateCap = 14;
inline constexpr int kMixedStateCap = 8;

struct NoiseModel {
  double depolarizing_lambda = 0.0;  // 2-qubit depolarizing per CNOT pair
  double readout_epsilon = 0.0;      // symmetric per-qubit readout flip
  double idle_lambda1 = 0.0;         // 1-qubit depolarizing on idle qubits
                                     // during entangling layers (optional)
  // True when density-matrix evolution is required (any stochastic channel).
  bool has_stochastic_noise() const {
    return depolarizing_lambda > 0.0 || idle_lambda1 > 0.0;
  }
  void validate() const;
};

struct CountsRecord {
  int n_qubits = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;  // bitstring -> count (nonzero)

  void validate() const;
  ProbabilityVector frequencies() const;  // counts / shots
};

// Squared amplitudes of the pure evolution from |0...0>. Injection layers are
// unitary and participate. Rejects n_qubits > kPureStateCap.
ProbabilityVector ideal_probabilities(const Circuit& circuit);

// Density-matrix evolution with the noise model's channels attached after
// each entangling layer; readout confusion applied classically to the final
// diagonal. Rejects n_qubits > kMixedStateCap.
ProbabilityVector noisy_probabilities(const Circuit& circuit,
                                      const NoiseModel& noise);

// Snapshot variants: one evolution, outputs recorded at each requested cycle
// count (ascending). A snapshot at depth d reflects the circuit truncated
// after cycle d (entangling layer plus its injection layers).
std::vector<ProbabilityVector> ideal_probability_snapshots(
    const Circuit& circuit, const std::vector<int>& depths);

struct NoisySnapshots {
  std::vector<ProbabilityVector> probabilities;  // after readout confusion
  std::vector<double> purity;                    // before readout confusion
};
NoisySnapshots noisy_probability_snapshots(const Circuit& circuit,
                                           const NoiseModel& noise,
                                           const std::vector<int>& depths);

// Multinomial measurement sampling. Throws on shots == 0.
CountsRecord sample_counts(const ProbabilityVector& probs, std::uint64_t shots,
                           std::mt19937_64& rng);

}  // namespace bog
