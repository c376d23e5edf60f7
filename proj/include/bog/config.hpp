// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: every knob of the end-to-end pipeline, with
// validation, statistics guards, and a versioned JSON round trip.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bog/binning.hpp"
#include "bog/circuit.hpp"
#include "bog/sim.hpp"

namespace bog {

enum class AlgorithmSelection { ByIdeal, ByExperimental, Both };

std::string to_string(AlgorithmSelection s);
AlgorithmSelection algorithm_selection_from_string(const std::string& text);

// Noise knobs: stochastic channels (handed to the density-matrix simulator)
// plus coherent injections (unitary layers compiled into the circuit).
struct NoiseConfig {
  double depolarizing_lambda = 0.0;  // 2-qubit depolarizing per CNOT
  double readout_epsilon = 0.0;      // symmetric per-qubit readout flip
  double idle_lambda1 = 0.0;         // optional 1-qubit depolarizing on idles
  double z_fraction = 0.0;           // Rz(2*pi*z_fraction) per gated qubit
  double zz_strength_hz = 0.0;       // residual ZZ strength J
  double cnot_time_s = 0.0;          // gate time t for theta = 2*pi*J*t

  NoiseModel channel_model() const;
  InjectionSpec injection() const;
  bool any() const;
};

struct ExperimentConfig {
  int n_qubits = 0;
  std::vector<int> depths;         // cycle counts, strictly ascending
  int seeds = 0;                   // number of random circuit seeds
  std::uint64_t master_seed = 1;   // root of every random stream
  std::uint64_t shots = 0;         // measurement shots; 0 = infinite-shot mode
  int num_bins = 10;
  NoiseConfig noise;
  int bootstrap_groups = 0;        // 0 disables bootstrap error bars
  AlgorithmSelection algorithms = AlgorithmSelection::Both;
  // Sensitivity variant: score each seed's bins alone and average the
  // fidelities, instead of the default sum-bins-then-score.
  bool per_seed_fidelity = false;

  bool wants(Algorithm a) const;
  int max_depth() const;

  // Throws std::invalid_argument on hard violations (empty/unsorted depths,
  // bad ranges, simulation caps, group/seed mismatch) and returns the
  // soft statistics warnings. Under --strict the caller escalates nonempty
  // warnings to errors.
  std::vector<std::string> validate() const;
};

// Versioned JSON round trip (schema "bog-config/1"). Serialization is
// byte-stable; parsing rejects unknown schema versions and bad fields with
// diagnostics naming the offending key.
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

}  // namespace bog
