// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// The binned-output metric core: Porter-Thomas equal-mass bins, the two
// binning algorithms, reference distributions, and the normalized fidelity.
//
// For dimension N = 2^n the outcome probabilities of deep random circuits
// follow the Porter-Thomas density ~ e^{-Nq}; the probability MASS density is
// proportional to N^2 q e^{-Nq} with CDF F(x) = 1 - e^{-Nx}(1 + Nx). Bin edges
// partition [0, 1] into B intervals of equal mass under F normalized over
// [0, 1] (the tail beyond 1 is ~1e-26 at n = 6 but matters at n = 2).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bog/state.hpp"

namespace bog {

enum class Algorithm { ByIdeal, ByExperimental };
enum class BinKind { experimental, reference_ideal, reference_mixed };

std::string to_string(Algorithm a);

struct BinSpec {
  int n_qubits = 0;
  int num_bins = 0;
  std::vector<double> edges;  // e_0 = 0 < e_1 < ... < e_B = 1

  // Normalized Porter-Thomas mass CDF at x, for N = 2^n_qubits.
  double mass_cdf(double x) const;
};

struct BinnedDistribution {
  std::vector<double> weights;
  BinKind kind = BinKind::experimental;
  Algorithm algorithm = Algorithm::ByIdeal;

  // Sum-to-1 within 1e-6.
  void validate() const;
};

struct FidelityScore {
  double value = 0.0;
  int seeds_used = 0;
  std::uint64_t shots_per_seed = 0;  // 0 = infinite-shot mode
};

// Solves the equal-mass edges to |F(e_k) - k/B| < 1e-12. Throws if B < 1 or
// adjacent edges collide within 1e-15 (B not numerically resolvable).
BinSpec compute_bin_edges(int n_qubits, int B);

// Bin index of p in [0,1]: half-open lower-inclusive [e_k, e_{k+1}); p = 1
// maps to B-1. Throws outside [0,1].
int assign_bin(double p, const BinSpec& spec);

// Algorithm 1: weights[assign_bin(ideal_i)] += measured_i.
BinnedDistribution bin_by_ideal(const ProbabilityVector& ideal,
                                const ProbabilityVector& measured,
                                const BinSpec& spec);

// Algorithm 2: weights[assign_bin(measured_i)] += measured_i. Requires no
// knowledge of the ideal distribution (label-invariant).
BinnedDistribution bin_by_experimental(const ProbabilityVector& measured,
                                       const BinSpec& spec);

// Algorithm-1 mixed reference: weights[k] = (# ideal_i in bin k) / 2^n.
BinnedDistribution reference_mixed_by_ideal(const ProbabilityVector& ideal,
                                            const BinSpec& spec);

// Algorithm-2 analytic ideal reference: the Porter-Thomas mass in each bin,
// which is 1/B by construction (computed independently and asserted).
BinnedDistribution reference_ideal_pt(const BinSpec& spec);

// Algorithm-2 mixed reference: per-bin integral of
// q exp[-((q - 1/N)/sigma)^2 / 2] with sigma = 1/sqrt(N*shots), normalized.
// Models the value distribution of shot-sampled frequencies of the maximally
// mixed state.
BinnedDistribution reference_mixed_gaussian(const BinSpec& spec,
                                            std::uint64_t shots);

// Delta limit of the Gaussian reference (infinite shots): full mass in the
// bin containing 1/2^n.
BinnedDistribution reference_mixed_delta(const BinSpec& spec);

// Normalized 1-norm fidelity:
//   1 - |ideal - exp|_1 / |ideal - mixed|_1.
// Throws if bins mismatch or the denominator is below 1e-12 (degenerate).
FidelityScore bog_fidelity(const BinnedDistribution& exp_bins,
                           const BinnedDistribution& ideal_bins,
                           const BinnedDistribution& mixed_bins);

// Sums weights across per-seed binned distributions and renormalizes.
// All inputs must share algorithm, kind, and bin count.
BinnedDistribution accumulate(const std::vector<BinnedDistribution>& per_seed);

// Bins each seed's measured frequencies (per the algorithm; ByIdeal uses that
// seed's own ideal probabilities) and accumulates. `ideals` may be null for
// ByExperimental.
BinnedDistribution accumulate_seeds(
    const std::vector<ProbabilityVector>& measured,
    const std::vector<ProbabilityVector>* ideals, const BinSpec& spec,
    Algorithm algorithm);

// Statistics rules of thumb. Returns human-readable warnings (empty if none):
//  - Algorithm 1: seeds * 2^n should be >= 100 * B;
//  - Algorithm 2: shots should be >= 10 * 2^n (finite-shot mode only).
std::vector<std::string> statistics_warnings(int seeds, int n_qubits, int B,
                                             std::uint64_t shots);

}  // namespace bog
