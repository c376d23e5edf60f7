// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/circuit.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "bog/rng.hpp"

namespace bog {

void Topology::validate() const {
  if (qubit_count < 2)
    throw std::invalid_argument("Topology: qubit_count must be >= 2");
  for (const auto* pairs : {&odd_pairs, &even_pairs}) {
    std::set<int> used;
    for (auto [a, b] : *pairs) {
      if (a < 0 || b < 0 || a >= qubit_count || b >= qubit_count || a == b)
        throw std::invalid_argument("Topology: bad pair");
      if (!used.insert(a).second || !used.insert(b).second)
        throw std::invalid_argument("Topology: overlapping pairs in one cycle");
    }
  }
}

const std::vector<std::pair<int, int>>& Topology::pairs_for_cycle(int cycle) const {
  if (qubit_count == 2) return odd_pairs;  // single pair gated every cycle
  return (cycle % 2 == 1) ? odd_pairs : even_pairs;
}

int Topology::gates_per_block() const {
  if (qubit_count == 2) return 1;
  return int(odd_pairs.size() + even_pairs.size());
}

int Topology::cycles_per_block() const { return qubit_count == 2 ? 1 : 2; }

Topology chain_topology(int m) {
  if (m < 2) throw std::invalid_argument("chain_topology: need at least 2 qubits");
  Topology t;
  t.qubit_count = m;
  for (int i = 0; i + 1 < m; i += 2) t.odd_pairs.emplace_back(i, i + 1);
  if (m > 2)
    for (int i = 1; i + 1 < m; i += 2) t.even_pairs.emplace_back(i, i + 1);
  t.validate();
  return t;
}

void Circuit::validate() const {
  int entangling_seen = 0;
  bool expect_single = true;
  for (const Layer& layer : layers) {
    if (std::holds_alternative<SingleQubitLayer>(layer)) {
      if (!expect_single)
        throw std::invalid_argument("Circuit: single-qubit layer out of order");
      const auto& l = std::get<SingleQubitLayer>(layer);
      if (int(l.unitaries.size()) != n_qubits)
        throw std::invalid_argument("Circuit: single-qubit layer size != n_qubits");
      expect_single = false;
    } else if (std::holds_alternative<EntanglingLayer>(layer)) {
      if (expect_single)
        throw std::invalid_argument("Circuit: entangling layer out of order");
      ++entangling_seen;
      expect_single = true;
    }
    // PhaseInjectionLayer may follow an entangling layer; it does not change
    // the expected alternation.
  }
  if (entangling_seen != cycles)
    throw std::invalid_argument("Circuit: cycle count does not match layers");
}

double InjectionSpec::zz_theta() const {
  return 2.0 * std::numbers::pi * zz_strength_hz * cnot_time_s;
}

Circuit generate_bog_circuit(int m, int cycles, std::uint64_t seed,
                             const Topology& topology) {
  topology.validate();
  if (topology.qubit_count != m)
    throw std::invalid_argument("generate_bog_circuit: topology size mismatch");
  if (cycles < 0) throw std::invalid_argument("generate_bog_circuit: cycles < 0");
  Circuit c;
  c.n_qubits = m;
  c.seed = seed;
  c.cycles = cycles;
  c.layers.reserve(std::size_t(cycles) * 2);
  for (int cycle = 1; cycle <= cycles; ++cycle) {
    SingleQubitLayer sql;
    sql.unitaries.reserve(std::size_t(m));
    auto eng = rng::engine(seed, {rng::kHaarLayer, std::uint64_t(cycle)});
    for (int q = 0; q < m; ++q) sql.unitaries.push_back(haar_random_su2(eng));
    c.layers.emplace_back(std::move(sql));
    EntanglingLayer ent;
    for (auto [a, b] : topology.pairs_for_cycle(cycle))
      ent.gates.push_back(TwoQubitGate::cnot(a, b));
    c.layers.emplace_back(std::move(ent));
  }
  return c;
}

Circuit inject_z_noise(const Circuit& circuit, double z_fraction) {
  if (z_fraction == 0.0) return circuit;
  double angle = 2.0 * std::numbers::pi * z_fraction;
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.seed = circuit.seed;
  out.cycles = circuit.cycles;
  for (const Layer& layer : circuit.layers) {
    out.layers.push_back(layer);
    if (const auto* ent = std::get_if<EntanglingLayer>(&layer)) {
      PhaseInjectionLayer inj;
      for (const TwoQubitGate& g : ent->gates) {
        inj.z_rotations.emplace_back(g.control, angle);
        inj.z_rotations.emplace_back(g.target, angle);
      }
      if (!inj.z_rotations.empty()) out.layers.emplace_back(std::move(inj));
    }
  }
  return out;
}

Circuit inject_zz(const Circuit& circuit, const InjectionSpec& spec) {
  if (spec.zz_strength_hz == 0.0) return circuit;
  if (spec.cnot_time_s <= 0.0)
    throw std::invalid_argument("inject_zz: cnot_time_s must be positive");
  double theta = spec.zz_theta();
  if (!std::isfinite(theta))
    throw std::invalid_argument("inject_zz: non-finite ZZ angle");
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.seed = circuit.seed;
  out.cycles = circuit.cycles;
  for (const Layer& layer : circuit.layers) {
    out.layers.push_back(layer);
    if (const auto* ent = std::get_if<EntanglingLayer>(&layer)) {
      PhaseInjectionLayer inj;
      for (const TwoQubitGate& g : ent->gates)
        inj.zz_rotations.push_back({{g.control, g.target}, theta});
      if (!inj.zz_rotations.empty()) out.layers.emplace_back(std::move(inj));
    }
  }
  return out;
}

}  // namespace bog
