// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace bog {

namespace {

constexpr double kUnitaryTol = 1e-10;

// Index of the g-th basis state after inserting a 0 bit at position k.
inline std::size_t insert_zero_bit(std::size_t g, int k) {
  std::size_t low = g & ((std::size_t(1) << k) - 1);
  return ((g >> k) << (k + 1)) | low;
}

// Inserts 0 bits at two distinct positions (any order).
inline std::size_t insert_two_zero_bits(std::size_t g, int a, int b) {
  int lo = a < b ? a : b;
  int hi = a < b ? b : a;
  return insert_zero_bit(insert_zero_bit(g, lo), hi);
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n)
    throw std::invalid_argument("qubit index " + std::to_string(q) +
                                " out of range for n=" + std::to_string(n));
}

// state[i0], state[i1] <- M * (state[i0], state[i1]) over all pairs differing
// in bit k, for a pure state.
void transform_vec_1q(Vec& v, const Mat2& M, int k) {
  const std::size_t half = std::size_t(v.size()) >> 1;
  const std::size_t bit = std::size_t(1) << k;
  for (std::size_t g = 0; g < half; ++g) {
    std::size_t i0 = insert_zero_bit(g, k);
    std::size_t i1 = i0 | bit;
    cx a0 = v(Eigen::Index(i0)), a1 = v(Eigen::Index(i1));
    v(Eigen::Index(i0)) = M(0, 0) * a0 + M(0, 1) * a1;
    v(Eigen::Index(i1)) = M(1, 0) * a0 + M(1, 1) * a1;
  }
}

void transform_vec_2q(Vec& v, const Mat4& M, int c, int t) {
  const std::size_t quarter = std::size_t(v.size()) >> 2;
  const std::size_t bc = std::size_t(1) << c;
  const std::size_t bt = std::size_t(1) << t;
  for (std::size_t g = 0; g < quarter; ++g) {
    std::size_t base = insert_two_zero_bits(g, c, t);
    // Sub-index convention: b_control*2 + b_target.
    const std::size_t idx[4] = {base, base | bt, base | bc, base | bc | bt};
    cx a[4];
    for (int r = 0; r < 4; ++r) a[r] = v(Eigen::Index(idx[r]));
    for (int r = 0; r < 4; ++r) {
      cx s = 0;
      for (int cc = 0; cc < 4; ++cc) s += M(r, cc) * a[cc];
      v(Eigen::Index(idx[r])) = s;
    }
  }
}

// rho <- (M acting on qubit-k row indices) rho, i.e. rho <- M_k rho.
void left_apply_1q(Mat& rho, const Mat2& M, int k) {
  const std::size_t half = std::size_t(rho.rows()) >> 1;
  const std::size_t bit = std::size_t(1) << k;
  for (Eigen::Index col = 0; col < rho.cols(); ++col) {
    for (std::size_t g = 0; g < half; ++g) {
      std::size_t i0 = insert_zero_bit(g, k);
      std::size_t i1 = i0 | bit;
      cx a0 = rho(Eigen::Index(i0), col), a1 = rho(Eigen::Index(i1), col);
      rho(Eigen::Index(i0), col) = M(0, 0) * a0 + M(0, 1) * a1;
      rho(Eigen::Index(i1), col) = M(1, 0) * a0 + M(1, 1) * a1;
    }
  }
}

// rho <- rho (M acting on qubit-k column indices), i.e. rho <- rho M_k.
void right_apply_1q(Mat& rho, const Mat2& M, int k) {
  const std::size_t half = std::size_t(rho.cols()) >> 1;
  const std::size_t bit = std::size_t(1) << k;
  for (std::size_t g = 0; g < half; ++g) {
    std::size_t j0 = insert_zero_bit(g, k);
    std::size_t j1 = j0 | bit;
    for (Eigen::Index row = 0; row < rho.rows(); ++row) {
      cx a0 = rho(row, Eigen::Index(j0)), a1 = rho(row, Eigen::Index(j1));
      rho(row, Eigen::Index(j0)) = a0 * M(0, 0) + a1 * M(1, 0);
      rho(row, Eigen::Index(j1)) = a0 * M(0, 1) + a1 * M(1, 1);
    }
  }
}

void left_apply_2q(Mat& rho, const Mat4& M, int c, int t) {
  const std::size_t quarter = std::size_t(rho.rows()) >> 2;
  const std::size_t bc = std::size_t(1) << c;
  const std::size_t bt = std::size_t(1) << t;
  for (Eigen::Index col = 0; col < rho.cols(); ++col) {
    for (std::size_t g = 0; g < quarter; ++g) {
      std::size_t base = insert_two_zero_bits(g, c, t);
      const std::size_t idx[4] = {base, base | bt, base | bc, base | bc | bt};
      cx a[4];
      for (int r = 0; r < 4; ++r) a[r] = rho(Eigen::Index(idx[r]), col);
      for (int r = 0; r < 4; ++r) {
        cx s = 0;
        for (int cc = 0; cc < 4; ++cc) s += M(r, cc) * a[cc];
        rho(Eigen::Index(idx[r]), col) = s;
      }
    }
  }
}

void right_apply_2q(Mat& rho, const Mat4& M, int c, int t) {
  const std::size_t quarter = std::size_t(rho.cols()) >> 2;
  const std::size_t bc = std::size_t(1) << c;
  const std::size_t bt = std::size_t(1) << t;
  for (std::size_t g = 0; g < quarter; ++g) {
    std::size_t base = insert_two_zero_bits(g, c, t);
    const std::size_t idx[4] = {base, base | bt, base | bc, base | bc | bt};
    for (Eigen::Index row = 0; row < rho.rows(); ++row) {
      cx a[4];
      for (int r = 0; r < 4; ++r) a[r] = rho(row, Eigen::Index(idx[r]));
      for (int j = 0; j < 4; ++j) {
        cx s = 0;
        for (int l = 0; l < 4; ++l) s += a[l] * M(l, j);
        rho(row, Eigen::Index(idx[j])) = s;
      }
    }
  }
}

void check_unitary2(const Mat2& M) {
  if ((M.adjoint() * M - Mat2::Identity()).cwiseAbs().maxCoeff() > kUnitaryTol)
    throw std::invalid_argument("single-qubit gate is not unitary within 1e-10");
}

void check_unitary4(const Mat4& M) {
  if ((M.adjoint() * M - Mat4::Identity()).cwiseAbs().maxCoeff() > kUnitaryTol)
    throw std::invalid_argument("two-qubit gate is not unitary within 1e-10");
}

}  // namespace

void SingleQubitGate::validate() const { check_unitary2(matrix); }

TwoQubitGate TwoQubitGate::cnot(int control, int target) {
  TwoQubitGate g;
  g.control = control;
  g.target = target;
  g.kind = TwoQubitKind::CNOT;
  return g;
}

TwoQubitGate TwoQubitGate::general_unitary(int control, int target,
                                           const Mat4& matrix) {
  TwoQubitGate g;
  g.control = control;
  g.target = target;
  g.kind = TwoQubitKind::GeneralUnitary;
  g.matrix = matrix;
  return g;
}

Mat4 TwoQubitGate::unitary() const {
  if (kind == TwoQubitKind::CNOT) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = 1;  // |00> -> |00>
    m(1, 1) = 1;  // |01> -> |01>
    m(3, 2) = 1;  // |10> -> |11>
    m(2, 3) = 1;  // |11> -> |10>
    return m;
  }
  return matrix;
}

void TwoQubitGate::validate() const {
  if (control == target)
    throw std::invalid_argument("two-qubit gate: control == target");
  check_unitary4(unitary());
}

void KrausChannel::validate() const {
  if (operators.empty())
    throw std::invalid_argument("KrausChannel: no operators");
  if (acting_qubits.size() != 1 && acting_qubits.size() != 2)
    throw std::invalid_argument("KrausChannel: must act on 1 or 2 qubits");
  Eigen::Index d = acting_qubits.size() == 1 ? 2 : 4;
  Mat sum = Mat::Zero(d, d);
  for (const Mat& K : operators) {
    if (K.rows() != d || K.cols() != d)
      throw std::invalid_argument("KrausChannel: operator dimension mismatch");
    sum += K.adjoint() * K;
  }
  if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("KrausChannel: completeness sum K†K != I within 1e-9");
}

KrausChannel depolarizing_channel(double lambda, int n_qubits_acted,
                                  const std::vector<int>& acting_qubits) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("depolarizing_channel: lambda outside [0,1]");
  if (n_qubits_acted != 1 && n_qubits_acted != 2)
    throw std::invalid_argument("depolarizing_channel: acts on 1 or 2 qubits");
  if (int(acting_qubits.size()) != n_qubits_acted)
    throw std::invalid_argument("depolarizing_channel: acting_qubits size mismatch");
  KrausChannel ch;
  ch.acting_qubits = acting_qubits;
  const double d2 = n_qubits_acted == 1 ? 4.0 : 16.0;
  const double w_id = std::sqrt(1.0 - lambda + lambda / d2);
  const double w_p = std::sqrt(lambda / d2);
  if (n_qubits_acted == 1) {
    for (int a = 0; a < 4; ++a) {
      double w = a == 0 ? w_id : w_p;
      if (w == 0.0) continue;
      ch.operators.push_back(w * Mat(pauli(a)));
    }
  } else {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        double w = (a == 0 && b == 0) ? w_id : w_p;
        if (w == 0.0) continue;
        Mat4 K;
        // kron(P_a on acting[0], P_b on acting[1]) in the b0*2+b1 convention
        for (int r0 = 0; r0 < 2; ++r0)
          for (int c0 = 0; c0 < 2; ++c0)
            for (int r1 = 0; r1 < 2; ++r1)
              for (int c1 = 0; c1 < 2; ++c1)
                K(r0 * 2 + r1, c0 * 2 + c1) = pauli(a)(r0, c0) * pauli(b)(r1, c1);
        ch.operators.push_back(w * Mat(K));
      }
    }
  }
  ch.validate();
  return ch;
}

Mat2 haar_random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat2 z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double re = gauss(rng);
      double im = gauss(rng);
      z(r, c) = cx(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 Q = qr.householderQ();
  Mat2 R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so R's diagonal is real positive; then Q is exactly Haar.
  for (int i = 0; i < 2; ++i) {
    cx d = R(i, i);
    double a = std::abs(d);
    cx phase = a > 0 ? d / a : cx(1, 0);
    Q.col(i) *= phase;
  }
  return Q;
}

const Mat2& pauli(int i) {
  static const Mat2 mats[4] = {
      (Mat2() << 1, 0, 0, 1).finished(),
      (Mat2() << 0, 1, 1, 0).finished(),
      (Mat2() << 0, cx(0, -1), cx(0, 1), 0).finished(),
      (Mat2() << 1, 0, 0, -1).finished(),
  };
  if (i < 0 || i > 3) throw std::invalid_argument("pauli index");
  return mats[i];
}

Mat2 rz(double angle) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(cx(0, -angle / 2));
  m(1, 1) = std::exp(cx(0, angle / 2));
  return m;
}

Mat4 zz_phase(double theta) {
  Mat4 m = Mat4::Zero();
  // Z⊗Z eigenvalues (+1,-1,-1,+1) on sub-indices (00,01,10,11).
  m(0, 0) = std::exp(cx(0, -theta / 2));
  m(1, 1) = std::exp(cx(0, theta / 2));
  m(2, 2) = std::exp(cx(0, theta / 2));
  m(3, 3) = std::exp(cx(0, -theta / 2));
  return m;
}

void apply_unitary(PureState& state, const SingleQubitGate& gate) {
  check_qubit(gate.target, state.n_qubits);
  check_unitary2(gate.matrix);
  transform_vec_1q(state.amplitudes, gate.matrix, gate.target);
}

void apply_unitary(PureState& state, const TwoQubitGate& gate) {
  check_qubit(gate.control, state.n_qubits);
  check_qubit(gate.target, state.n_qubits);
  gate.validate();
  transform_vec_2q(state.amplitudes, gate.unitary(), gate.control, gate.target);
}

void apply_unitary(MixedState& state, const SingleQubitGate& gate) {
  check_qubit(gate.target, state.n_qubits);
  check_unitary2(gate.matrix);
  left_apply_1q(state.matrix, gate.matrix, gate.target);
  right_apply_1q(state.matrix, gate.matrix.adjoint(), gate.target);
}

void apply_unitary(MixedState& state, const TwoQubitGate& gate) {
  check_qubit(gate.control, state.n_qubits);
  check_qubit(gate.target, state.n_qubits);
  gate.validate();
  Mat4 U = gate.unitary();
  left_apply_2q(state.matrix, U, gate.control, gate.target);
  right_apply_2q(state.matrix, U.adjoint(), gate.control, gate.target);
}

void apply_channel(MixedState& state, const KrausChannel& channel) {
  channel.validate();
  for (int q : channel.acting_qubits) check_qubit(q, state.n_qubits);
  Mat acc = Mat::Zero(state.matrix.rows(), state.matrix.cols());
  Mat tmp;
  if (channel.acting_qubits.size() == 1) {
    int k = channel.acting_qubits[0];
    for (const Mat& K : channel.operators) {
      tmp = state.matrix;
      Mat2 K2 = K;
      left_apply_1q(tmp, K2, k);
      right_apply_1q(tmp, K2.adjoint(), k);
      acc += tmp;
    }
  } else {
    int c = channel.acting_qubits[0];
    int t = channel.acting_qubits[1];
    for (const Mat& K : channel.operators) {
      tmp = state.matrix;
      Mat4 K4 = K;
      left_apply_2q(tmp, K4, c, t);
      right_apply_2q(tmp, K4.adjoint(), c, t);
      acc += tmp;
    }
  }
  state.matrix = std::move(acc);
}

void apply_readout_confusion(std::vector<double>& probs, int n_qubits,
                             double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("readout epsilon outside [0,1]");
  if (epsilon == 0.0) return;
  const std::size_t half = probs.size() >> 1;
  for (int k = 0; k < n_qubits; ++k) {
    const std::size_t bit = std::size_t(1) << k;
    for (std::size_t g = 0; g < half; ++g) {
      std::size_t i0 = insert_zero_bit(g, k);
      std::size_t i1 = i0 | bit;
      double p0 = probs[i0], p1 = probs[i1];
      probs[i0] = (1.0 - epsilon) * p0 + epsilon * p1;
      probs[i1] = epsilon * p0 + (1.0 - epsilon) * p1;
    }
  }
}

}  // namespace bog
