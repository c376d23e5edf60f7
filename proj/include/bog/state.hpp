// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Quantum state containers and the probability-vector type shared by the
// simulator and the analysis layers.
//
// Bit-order convention (used everywhere a basis index or bitstring appears):
// qubit k is bit k of the basis index, i.e. index = sum_k bit_k * 2^k, and the
// character at position k FROM THE RIGHT of a bitstring is qubit k.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace bog {

using cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline std::size_t dim_of(int n_qubits) { return std::size_t(1) << n_qubits; }

// |psi>: unit-norm complex amplitude vector over 2^n basis states.
struct PureState {
  int n_qubits = 0;
  Vec amplitudes;

  static PureState zero(int n_qubits);  // |0...0>
  // Throws std::invalid_argument on norm violation (tolerance 1e-10).
  void validate() const;
  std::vector<double> probabilities() const;
};

// rho: Hermitian, unit-trace, PSD (within tolerance) density matrix.
struct MixedState {
  int n_qubits = 0;
  Mat matrix;

  static MixedState zero(int n_qubits);                  // |0..0><0..0|
  static MixedState from_pure(const PureState& psi);     // |psi><psi|
  static MixedState maximally_mixed(int n_qubits);       // I / 2^n
  // Hermiticity/trace within 1e-10, min eigenvalue >= -1e-9.
  void validate() const;
  std::vector<double> probabilities() const;             // clamped diagonal
  double purity() const;                                 // Tr(rho^2)
};

// Outcome distribution: exact probabilities or empirical frequencies.
struct ProbabilityVector {
  int n_qubits = 0;
  std::vector<double> probs;

  // Sums to 1 within 1e-9; entries nonnegative (within -1e-12 slack, clamped
  // by the constructors that produce them).
  void validate() const;
};

// Canonical bitstring for a basis index under the bit-order convention
// (qubit 0 = rightmost character).
std::string index_to_bitstring(std::size_t index, int n_qubits);
// Inverse; throws std::invalid_argument on length/character violations.
std::size_t bitstring_to_index(const std::string& bits, int n_qubits);

}  // namespace bog
