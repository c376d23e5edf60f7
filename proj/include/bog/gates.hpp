// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Gate and channel types plus their application to states.
//
// Two-qubit matrices use the sub-index convention b_control*2 + b_target, so
// e.g. CNOT maps |c t> -> |c, t^c> with column index c*2+t.
#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "bog/state.hpp"

namespace bog {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

struct SingleQubitGate {
  int target = 0;
  Mat2 matrix = Mat2::Identity();
  // Throws std::invalid_argument unless U†U = I within 1e-10.
  void validate() const;
};

enum class TwoQubitKind { CNOT, GeneralUnitary };

struct TwoQubitGate {
  int control = 0;
  int target = 1;
  TwoQubitKind kind = TwoQubitKind::CNOT;
  Mat4 matrix = Mat4::Identity();  // used when kind == GeneralUnitary

  static TwoQubitGate cnot(int control, int target);
  static TwoQubitGate general_unitary(int control, int target,
                                      const Mat4& matrix);
  Mat4 unitary() const;  // resolved 4x4 matrix for either kind
  void validate() const;
};

// Kraus channel on 1 or 2 qubits: rho -> sum_K K rho K†.
struct KrausChannel {
  std::vector<Mat> operators;      // equal square dimensions (2 or 4)
  std::vector<int> acting_qubits;  // ordered; size 1 or 2

  // Throws unless sum K†K = I within 1e-9 and dimensions match.
  void validate() const;
};

// Depolarizing channel rho -> (1-lambda) rho + lambda I/d on 1 or 2 qubits,
// realized by the d^2 weighted Pauli Kraus operators.
KrausChannel depolarizing_channel(double lambda, int n_qubits_acted,
                                  const std::vector<int>& acting_qubits);

// Haar-distributed 2x2 unitary: QR of a complex Gaussian matrix with the
// R diagonal phase-fixed to be real positive.
Mat2 haar_random_su2(std::mt19937_64& rng);

// Common fixed matrices.
const Mat2& pauli(int i);  // 0=I, 1=X, 2=Y, 3=Z
Mat2 rz(double angle);     // exp(-i angle Z / 2)
Mat4 zz_phase(double theta);  // exp(-i theta Z⊗Z / 2)

// In-place unitary application. Throws on bad qubit indices or (beyond
// tolerance) non-unitary matrices.
void apply_unitary(PureState& state, const SingleQubitGate& gate);
void apply_unitary(PureState& state, const TwoQubitGate& gate);
void apply_unitary(MixedState& state, const SingleQubitGate& gate);
void apply_unitary(MixedState& state, const TwoQubitGate& gate);

// rho -> sum_K K rho K†.
void apply_channel(MixedState& state, const KrausChannel& channel);

// Classical readout confusion: independent symmetric bit-flip probability
// epsilon per qubit applied to a probability vector.
void apply_readout_confusion(std::vector<double>& probs, int n_qubits,
                             double epsilon);

}  // namespace bog
