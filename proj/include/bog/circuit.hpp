// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hardware-efficient random circuits on a linear chain: alternating layers of
// fresh Haar-random single-qubit rotations and parallel CNOTs on
// alternating adjacent pairs, with optional coherent-noise injection layers.
#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "bog/gates.hpp"

namespace bog {

struct Topology {
  int qubit_count = 0;
  std::vector<std::pair<int, int>> odd_pairs;   // cycles 1,3,5,...
  std::vector<std::pair<int, int>> even_pairs;  // cycles 2,4,6,...

  void validate() const;
  // Pairs gated on a given 1-based cycle index. For the 2-qubit chain the
  // single pair is gated EVERY cycle (no idle parity).
  const std::vector<std::pair<int, int>>& pairs_for_cycle(int cycle) const;
  // Gate accounting for EPG conversion: m=2 -> 1 gate / 1 cycle;
  // m>2 -> |odd|+|even| gates / 2 cycles.
  int gates_per_block() const;
  int cycles_per_block() const;
};

// Linear chain: odd pairs {(0,1),(2,3),...}, even pairs {(1,2),(3,4),...}.
Topology chain_topology(int m);

struct SingleQubitLayer {
  std::vector<Mat2> unitaries;  // exactly one per qubit
};

struct EntanglingLayer {
  std::vector<TwoQubitGate> gates;
};

// Coherent-noise injection attached after an entangling layer. Flagged as
// noise so gate accounting (EPG denominators) never counts it.
struct PhaseInjectionLayer {
  std::vector<std::pair<int, double>> z_rotations;  // (qubit, angle radians)
  std::vector<std::pair<std::pair<int, int>, double>> zz_rotations;  // (pair, theta)
};

using Layer = std::variant<SingleQubitLayer, EntanglingLayer, PhaseInjectionLayer>;

struct Circuit {
  int n_qubits = 0;
  std::uint64_t seed = 0;
  int cycles = 0;
  std::vector<Layer> layers;

  void validate() const;
};

struct InjectionSpec {
  double z_fraction = 0.0;       // fraction of a 2*pi rotation
  double zz_strength_hz = 0.0;   // J
  double cnot_time_s = 0.0;      // t
  double zz_theta() const;       // 2*pi*J*t
};

// Per cycle: a SingleQubitLayer of fresh Haar unitaries on all qubits, then an
// EntanglingLayer of CNOTs on the cycle-parity pairing (lower index controls).
// Deterministic in `seed`; depth-d circuits are prefixes of deeper ones.
Circuit generate_bog_circuit(int m, int cycles, std::uint64_t seed,
                             const Topology& topology);

// Appends, after every EntanglingLayer, Rz(2*pi*z_fraction) on both members of
// every gated pair. z_fraction = 0 returns the circuit unchanged.
Circuit inject_z_noise(const Circuit& circuit, double z_fraction);

// Appends, after every EntanglingLayer, exp(-i(theta/2) Z⊗Z) on each gated
// pair with theta = 2*pi*J*t. J = 0 returns the circuit unchanged.
Circuit inject_zz(const Circuit& circuit, const InjectionSpec& spec);

}  // namespace bog
