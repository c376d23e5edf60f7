// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/sim.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bog/rng.hpp"

namespace bog {

namespace {

void check_depths(const Circuit& circuit, const std::vector<int>& depths) {
  if (depths.empty()) throw std::invalid_argument("no snapshot depths given");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 0 || depths[i] > circuit.cycles)
      throw std::invalid_argument("snapshot depth outside circuit cycles");
    if (i > 0 && depths[i] <= depths[i - 1])
      throw std::invalid_argument("snapshot depths must be strictly ascending");
  }
}

// Walks the layer list and invokes callbacks: on_layer(layer) for every layer,
// on_cycle_end(cycle_index) once per completed cycle — after the cycle's
// entangling layer and any trailing injection layers, and, for the final
// cycle, after any appended tail layers (e.g. a closing single-qubit layer),
// so the deepest snapshot reflects the full circuit. Handles zero cycles.
template <typename OnLayer, typename OnCycleEnd>
void walk(const Circuit& circuit, OnLayer&& on_layer, OnCycleEnd&& on_cycle_end) {
  const auto& L = circuit.layers;
  // suffix_has_ent[i]: an entangling layer exists at position >= i.
  std::vector<bool> suffix_has_ent(L.size() + 1, false);
  for (std::size_t i = L.size(); i-- > 0;)
    suffix_has_ent[i] = suffix_has_ent[i + 1] ||
                        std::holds_alternative<EntanglingLayer>(L[i]);
  int completed = 0, reported = 0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    on_layer(L[i]);
    if (std::holds_alternative<EntanglingLayer>(L[i])) ++completed;
    bool at_end = i + 1 == L.size();
    bool next_starts_cycle = !at_end && suffix_has_ent[i + 1] &&
                             std::holds_alternative<SingleQubitLayer>(L[i + 1]);
    if (completed > reported && (at_end || next_starts_cycle))
      on_cycle_end(reported = completed);
  }
}

// Qubits not in any gated pair of the given entangling layer.
std::vector<int> idle_qubits(const EntanglingLayer& ent, int n) {
  std::set<int> busy;
  for (const TwoQubitGate& g : ent.gates) {
    busy.insert(g.control);
    busy.insert(g.target);
  }
  std::vector<int> idle;
  for (int q = 0; q < n; ++q)
    if (!busy.count(q)) idle.push_back(q);
  return idle;
}

}  // namespace

void NoiseModel::validate() const {
  if (depolarizing_lambda < 0.0 || depolarizing_lambda > 1.0)
    throw std::invalid_argument("NoiseModel: depolarizing lambda outside [0,1]");
  if (readout_epsilon < 0.0 || readout_epsilon > 1.0)
    throw std::invalid_argument("NoiseModel: readout epsilon outside [0,1]");
  if (idle_lambda1 < 0.0 || idle_lambda1 > 1.0)
    throw std::invalid_argument("NoiseModel: idle lambda outside [0,1]");
}

void CountsRecord::validate() const {
  if (shots == 0) throw std::invalid_argument("CountsRecord: zero shots");
  std::uint64_t total = 0;
  for (const auto& [bits, count] : counts) {
    (void)bitstring_to_index(bits, n_qubits);  // validates format
    total += count;
  }
  if (total != shots)
    throw std::invalid_argument(
        "CountsRecord (seed " + std::to_string(seed) + ", depth " +
        std::to_string(depth) + "): counts sum " + std::to_string(total) +
        " != shots " + std::to_string(shots));
}

ProbabilityVector CountsRecord::frequencies() const {
  validate();
  ProbabilityVector pv;
  pv.n_qubits = n_qubits;
  pv.probs.assign(dim_of(n_qubits), 0.0);
  for (const auto& [bits, count] : counts)
    pv.probs[bitstring_to_index(bits, n_qubits)] =
        double(count) / double(shots);
  return pv;
}

std::vector<ProbabilityVector> ideal_probability_snapshots(
    const Circuit& circuit, const std::vector<int>& depths) {
  if (circuit.n_qubits > kPureStateCap)
    throw std::invalid_argument("pure-state simulation capped at n=" +
                                std::to_string(kPureStateCap));
  check_depths(circuit, depths);
  PureState psi = PureState::zero(circuit.n_qubits);
  std::vector<ProbabilityVector> out;
  std::size_t next = 0;
  auto snapshot = [&] {
    ProbabilityVector pv;
    pv.n_qubits = circuit.n_qubits;
    pv.probs = psi.probabilities();
    out.push_back(std::move(pv));
  };
  // Depth 0 means "before the first cycle" - but a cycle-free circuit may
  // still carry layers, and its lone depth-0 snapshot must include them, so
  // it is taken after the walk instead.
  const bool has_cycle =
      std::any_of(circuit.layers.begin(), circuit.layers.end(),
                  [](const Layer& l) {
                    return std::holds_alternative<EntanglingLayer>(l);
                  });
  if (has_cycle && next < depths.size() && depths[next] == 0) {
    snapshot();
    ++next;
  }
  walk(
      circuit,
      [&](const Layer& layer) {
        if (const auto* sql = std::get_if<SingleQubitLayer>(&layer)) {
          for (int q = 0; q < circuit.n_qubits; ++q)
            apply_unitary(psi, SingleQubitGate{q, sql->unitaries[std::size_t(q)]});
        } else if (const auto* ent = std::get_if<EntanglingLayer>(&layer)) {
          for (const TwoQubitGate& g : ent->gates) apply_unitary(psi, g);
        } else if (const auto* inj = std::get_if<PhaseInjectionLayer>(&layer)) {
          for (auto [q, angle] : inj->z_rotations)
            apply_unitary(psi, SingleQubitGate{q, rz(angle)});
          for (auto [pair, theta] : inj->zz_rotations) {
            TwoQubitGate g;
            g.control = pair.first;
            g.target = pair.second;
            g.kind = TwoQubitKind::GeneralUnitary;
            g.matrix = zz_phase(theta);
            apply_unitary(psi, g);
          }
        }
      },
      [&](int cycle) {
        if (next < depths.size() && depths[next] == cycle) {
          snapshot();
          ++next;
        }
      });
  if (!has_cycle && next < depths.size() && depths[next] == 0) {
    snapshot();
    ++next;
  }
  if (next != depths.size())
    throw std::logic_error("missed snapshot depths (internal error)");
  return out;
}

ProbabilityVector ideal_probabilities(const Circuit& circuit) {
  return ideal_probability_snapshots(circuit, {circuit.cycles}).front();
}

NoisySnapshots noisy_probability_snapshots(const Circuit& circuit,
                                           const NoiseModel& noise,
                                           const std::vector<int>& depths) {
  if (circuit.n_qubits > kMixedStateCap)
    throw std::invalid_argument("mixed-state simulation capped at n=" +
                                std::to_string(kMixedStateCap));
  noise.validate();
  check_depths(circuit, depths);
  MixedState rho = MixedState::zero(circuit.n_qubits);
  const KrausChannel pair_channel =
      noise.depolarizing_lambda > 0.0
          ? depolarizing_channel(noise.depolarizing_lambda, 2, {0, 1})
          : KrausChannel{};
  NoisySnapshots out;
  std::size_t next = 0;
  auto snapshot = [&] {
    out.purity.push_back(rho.purity());
    ProbabilityVector pv;
    pv.n_qubits = circuit.n_qubits;
    pv.probs = rho.probabilities();
    apply_readout_confusion(pv.probs, circuit.n_qubits, noise.readout_epsilon);
    out.probabilities.push_back(std::move(pv));
  };
  // See ideal_probability_snapshots: a cycle-free circuit snapshots depth 0
  // after its layers, not before.
  const bool has_cycle =
      std::any_of(circuit.layers.begin(), circuit.layers.end(),
                  [](const Layer& l) {
                    return std::holds_alternative<EntanglingLayer>(l);
                  });
  if (has_cycle && next < depths.size() && depths[next] == 0) {
    snapshot();
    ++next;
  }
  walk(
      circuit,
      [&](const Layer& layer) {
        if (const auto* sql = std::get_if<SingleQubitLayer>(&layer)) {
          for (int q = 0; q < circuit.n_qubits; ++q)
            apply_unitary(rho, SingleQubitGate{q, sql->unitaries[std::size_t(q)]});
        } else if (const auto* ent = std::get_if<EntanglingLayer>(&layer)) {
          for (const TwoQubitGate& g : ent->gates) apply_unitary(rho, g);
          if (noise.depolarizing_lambda > 0.0) {
            for (const TwoQubitGate& g : ent->gates) {
              KrausChannel ch = pair_channel;
              ch.acting_qubits = {g.control, g.target};
              apply_channel(rho, ch);
            }
          }
          if (noise.idle_lambda1 > 0.0) {
            for (int q : idle_qubits(*ent, circuit.n_qubits))
              apply_channel(rho, depolarizing_channel(noise.idle_lambda1, 1, {q}));
          }
        } else if (const auto* inj = std::get_if<PhaseInjectionLayer>(&layer)) {
          for (auto [q, angle] : inj->z_rotations)
            apply_unitary(rho, SingleQubitGate{q, rz(angle)});
          for (auto [pair, theta] : inj->zz_rotations) {
            TwoQubitGate g;
            g.control = pair.first;
            g.target = pair.second;
            g.kind = TwoQubitKind::GeneralUnitary;
            g.matrix = zz_phase(theta);
            apply_unitary(rho, g);
          }
        }
      },
      [&](int cycle) {
        if (next < depths.size() && depths[next] == cycle) {
          snapshot();
          ++next;
        }
      });
  if (!has_cycle && next < depths.size() && depths[next] == 0) {
    snapshot();
    ++next;
  }
  if (next != depths.size())
    throw std::logic_error("missed snapshot depths (internal error)");
  return out;
}

ProbabilityVector noisy_probabilities(const Circuit& circuit,
                                      const NoiseModel& noise) {
  return noisy_probability_snapshots(circuit, noise, {circuit.cycles})
      .probabilities.front();
}

CountsRecord sample_counts(const ProbabilityVector& probs, std::uint64_t shots,
                           std::mt19937_64& rng) {
  if (shots == 0) throw std::invalid_argument("sample_counts: shots must be >= 1");
  probs.validate();
  auto counts = rng::multinomial(probs.probs, shots, rng);
  CountsRecord rec;
  rec.n_qubits = probs.n_qubits;
  rec.shots = shots;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) rec.counts[index_to_bitstring(i, probs.n_qubits)] = counts[i];
  return rec;
}

}  // namespace bog
