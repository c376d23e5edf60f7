// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Turns fidelity-vs-depth data into error-per-gate numbers with error bars:
// exponential decay fits, EPG conversion, group bootstrap, quadratic scaling
// of EPG with injected noise, the simulation-in-the-loop ZZ-strength fit, and
// the purity-based incoherent-EPG conversion.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bog/binning.hpp"
#include "bog/state.hpp"

namespace bog {

struct CurveMeta {
  int n_qubits = 0;
  int seeds = 0;
  std::uint64_t shots = 0;  // 0 = infinite-shot mode
  int num_bins = 0;
};

struct FidelityCurve {
  struct Point {
    int depth_cycles = 0;
    double fidelity = 0.0;
    double std_err = 0.0;  // 0 = not available (fits fall back to unit weights)
  };
  std::vector<Point> points;
  Algorithm algorithm = Algorithm::ByIdeal;
  CurveMeta meta;

  // Depths strictly increasing, stderrs nonnegative, fidelities finite.
  void validate() const;
};

struct DecayFit {
  double amplitude = 0.0;
  double lambda = 0.0;           // decay rate, constrained to [0, 1]
  Eigen::Matrix2d covariance;    // parameter order (amplitude, lambda)
  double residual_norm = 0.0;    // sqrt of the weighted sum of squared residuals

  double amplitude_stderr() const;
  double lambda_stderr() const;
};

struct EpgReport {
  double epg = 0.0;
  std::optional<double> incoherent_epg;
  double prefactor = 0.0;  // (3/4) * cycles_per_block / gates_per_block
  int gates_per_block = 0;
  int cycles_per_block = 0;
};

// Weighted least squares of F(d) = A * (1 - lambda)^d. Weights are 1/stderr^2
// when every point carries a positive stderr, unit otherwise. The model is
// separable, so the amplitude is profiled out in closed form and lambda is
// found by a coarse scan over [0, 1] plus golden-section refinement (with a
// log-linear regression on max(F, 1e-6) seeding the scan). The covariance is
// (J^T W J)^{-1} at the optimum (scaled by the reduced chi-square under unit
// weights). Throws on fewer than 3 points, non-increasing depths, all-zero
// fidelities, or a singular normal matrix at the optimum.
DecayFit fit_decay(const FidelityCurve& curve);

// epg = (3/4) * (cycles_per_block / gates_per_block) * lambda.
EpgReport epg_from_lambda(double lambda, int gates_per_block,
                          int cycles_per_block);

// Contiguous partition of [0, seed_count) into `groups` ranges whose sizes
// differ by at most one. Throws if groups < 1 or groups > seed_count.
std::vector<std::pair<std::size_t, std::size_t>> bootstrap_partition(
    std::size_t seed_count, int groups);

// Sample standard deviation (ddof = 1). Throws on fewer than 2 values.
double sample_stddev(const std::vector<double>& values);

// The three accumulated distributions entering the fidelity at one depth.
struct DepthBinSet {
  BinnedDistribution experimental;
  BinnedDistribution ideal;
  BinnedDistribution mixed;
};

// Accumulated bins over all seeds, under the same reference policy as
// group_fidelities below.
DepthBinSet ensemble_bins(const std::vector<ProbabilityVector>& measured,
                          const std::vector<ProbabilityVector>* ideals,
                          const BinSpec& spec, Algorithm algorithm,
                          std::uint64_t shots);

// One fidelity per contiguous seed group at a single depth, running the full
// binning pipeline per group. Reference policy:
//  - ByIdeal: the ideal reference bins each group seed's ideal probabilities
//    against themselves; the mixed reference spreads 1/2^n uniformly across
//    the group's ideal-probability bins. `ideals` is required.
//  - ByExperimental: the ideal reference value-bins the group's ideal
//    probabilities when `ideals` is given, else falls back to the analytic
//    Porter-Thomas reference (counts-only ingestion); the mixed reference
//    models shot-sampled frequencies of the maximally mixed state (Gaussian
//    for finite `shots`, delta for shots = 0).
std::vector<double> group_fidelities(
    const std::vector<ProbabilityVector>& measured,
    const std::vector<ProbabilityVector>* ideals, const BinSpec& spec,
    Algorithm algorithm, int groups, std::uint64_t shots);

// Convenience: group_fidelities with a single group covering every seed.
double ensemble_fidelity(const std::vector<ProbabilityVector>& measured,
                         const std::vector<ProbabilityVector>* ideals,
                         const BinSpec& spec, Algorithm algorithm,
                         std::uint64_t shots);

// Sensitivity variant (the ensemble average is ambiguous between averaging
// per-seed scores and scoring summed bins): one fidelity per seed, i.e.
// group_fidelities with one group per seed. The default pipeline sums bins
// across seeds before scoring; this variant sits behind the
// per_seed_fidelity config flag.
std::vector<double> per_seed_fidelities(
    const std::vector<ProbabilityVector>& measured,
    const std::vector<ProbabilityVector>* ideals, const BinSpec& spec,
    Algorithm algorithm, std::uint64_t shots);

// Standard deviation across the group fidelities (ddof = 1). Requires at
// least 2 groups.
double bootstrap_stderr(const std::vector<ProbabilityVector>& measured,
                        const std::vector<ProbabilityVector>* ideals,
                        const BinSpec& spec, Algorithm algorithm, int groups,
                        std::uint64_t shots);

struct QuadraticFit {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double stderr_c0 = 0.0, stderr_c1 = 0.0, stderr_c2 = 0.0;
  double residual_norm = 0.0;
};

// Plain least squares of epg(z) = c0 + c1 z + c2 z^2 over >= 4 points, with
// coefficient standard errors from the residual variance. Throws on rank
// deficiency (e.g. fewer than 3 distinct z values).
QuadraticFit quadratic_scaling_fit(
    const std::vector<std::pair<double, double>>& points);

struct ZzFit {
  double j_hz = 0.0;
  double objective = 0.0;  // sum of squared EPG differences at the optimum
  int evaluations = 0;
};

// One-parameter simulation-in-the-loop fit: finds J in [0, j_max_hz]
// minimizing sum_i (simulate_epgs(J)[i] - measured_epg[i])^2, by a coarse
// grid scan followed by golden-section refinement to within tol_hz. The
// callback must return one simulated EPG per measured point (same order).
// Throws if the optimum sits at the upper bound (non-convergence within
// bounds) or the callback returns the wrong number of values.
ZzFit fit_zz_strength(
    const std::vector<double>& measured_epg,
    const std::function<std::vector<double>(double j_hz)>& simulate_epgs,
    double j_max_hz = 1.0e6, int coarse_points = 11, double tol_hz = 500.0);

// Fits Tr(rho^2) - 1/2^n = A * u^d over the purity-vs-depth curve and
// converts the per-cycle unitarity u to an incoherent error per gate:
//   epsilon = (3/4) * (cycles_per_block / gates_per_block) * (1 - sqrt(u)).
// Throws if any purity falls below 1/2^n beyond numerical tolerance.
double incoherent_epg_from_purity(
    const std::vector<std::pair<int, double>>& purity_by_depth, int n_qubits,
    int gates_per_block, int cycles_per_block);

// Kolmogorov-Smirnov statistic of `values` against the unit exponential
// distribution 1 - e^{-x}, and the 1% critical value 1.628 / sqrt(n).
double ks_statistic_exp1(std::vector<double> values);
double ks_critical_1pct(std::size_t n);

}  // namespace bog
