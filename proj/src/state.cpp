// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace bog {

PureState PureState::zero(int n_qubits) {
  PureState s;
  s.n_qubits = n_qubits;
  s.amplitudes = Vec::Zero(Eigen::Index(dim_of(n_qubits)));
  s.amplitudes(0) = 1.0;
  return s;
}

void PureState::validate() const {
  if (amplitudes.size() != Eigen::Index(dim_of(n_qubits)))
    throw std::invalid_argument("PureState: amplitude length != 2^n");
  double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("PureState: norm deviates from 1 beyond 1e-10");
}

std::vector<double> PureState::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(amplitudes.size()));
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
    p[std::size_t(i)] = std::norm(amplitudes(i));
  return p;
}

MixedState MixedState::zero(int n_qubits) {
  MixedState s;
  s.n_qubits = n_qubits;
  auto d = Eigen::Index(dim_of(n_qubits));
  s.matrix = Mat::Zero(d, d);
  s.matrix(0, 0) = 1.0;
  return s;
}

MixedState MixedState::from_pure(const PureState& psi) {
  MixedState s;
  s.n_qubits = psi.n_qubits;
  s.matrix = psi.amplitudes * psi.amplitudes.adjoint();
  return s;
}

MixedState MixedState::maximally_mixed(int n_qubits) {
  MixedState s;
  s.n_qubits = n_qubits;
  auto d = Eigen::Index(dim_of(n_qubits));
  s.matrix = Mat::Identity(d, d) / double(d);
  return s;
}

void MixedState::validate() const {
  auto d = Eigen::Index(dim_of(n_qubits));
  if (matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("MixedState: matrix is not 2^n x 2^n");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("MixedState: not Hermitian within 1e-10");
  if (std::abs(matrix.trace().real() - 1.0) > 1e-10 ||
      std::abs(matrix.trace().imag()) > 1e-10)
    throw std::invalid_argument("MixedState: trace deviates from 1 beyond 1e-10");
  Eigen::SelfAdjointEigenSolver<Mat> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("MixedState: eigenvalue below -1e-9");
}

std::vector<double> MixedState::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(matrix.rows()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    double v = matrix(i, i).real();
    p[std::size_t(i)] = v > 0.0 ? v : 0.0;  // clamp numerical negatives
    total += p[std::size_t(i)];
  }
  if (total > 0.0)
    for (double& v : p) v /= total;
  return p;
}

double MixedState::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return matrix.squaredNorm();
}

void ProbabilityVector::validate() const {
  if (probs.size() != dim_of(n_qubits))
    throw std::invalid_argument("ProbabilityVector: length != 2^n");
  double total = 0.0;
  for (double v : probs) {
    if (v < -1e-12)
      throw std::invalid_argument("ProbabilityVector: negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("ProbabilityVector: sum deviates from 1 beyond 1e-9");
}

std::string index_to_bitstring(std::size_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int k = 0; k < n_qubits; ++k)
    if (index & (std::size_t(1) << k)) s[std::size_t(n_qubits - 1 - k)] = '1';
  return s;
}

std::size_t bitstring_to_index(const std::string& bits, int n_qubits) {
  if (bits.size() != static_cast<std::size_t>(n_qubits))
    throw std::invalid_argument("bitstring '" + bits + "' has length " +
                                std::to_string(bits.size()) + ", expected " +
                                std::to_string(n_qubits) + " qubits");
  std::size_t index = 0;
  for (int k = 0; k < n_qubits; ++k) {
    char c = bits[std::size_t(n_qubits - 1 - k)];
    if (c == '1')
      index |= std::size_t(1) << k;
    else if (c != '0')
      throw std::invalid_argument("bitstring '" + bits + "' contains character '" +
                                  std::string(1, c) + "'");
  }
  return index;
}

}  // namespace bog
