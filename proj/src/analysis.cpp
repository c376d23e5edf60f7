// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bog {

namespace {

constexpr double kLambdaCeiling = 1.0 - 1e-9;

double clamp_lambda(double lam) {
  return std::clamp(lam, 0.0, kLambdaCeiling);
}

struct WeightedData {
  std::vector<double> d, f, w;
};

WeightedData prepare(const FidelityCurve& curve) {
  curve.validate();
  if (curve.points.size() < 3)
    throw std::invalid_argument("fit_decay: need at least 3 points");
  WeightedData data;
  bool weighted = true;
  for (const auto& p : curve.points) {
    data.d.push_back(double(p.depth_cycles));
    data.f.push_back(p.fidelity);
    if (p.std_err <= 0.0) weighted = false;
  }
  if (std::all_of(data.f.begin(), data.f.end(),
                  [](double v) { return v == 0.0; }))
    throw std::invalid_argument("fit_decay: all fidelities are zero");
  for (const auto& p : curve.points)
    data.w.push_back(weighted ? 1.0 / (p.std_err * p.std_err) : 1.0);
  return data;
}

double weighted_sse(const WeightedData& data, double A, double lam) {
  double sse = 0.0;
  for (std::size_t i = 0; i < data.d.size(); ++i) {
    double r = data.f[i] - A * std::pow(1.0 - lam, data.d[i]);
    sse += data.w[i] * r * r;
  }
  return sse;
}

}  // namespace

void FidelityCurve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].fidelity))
      throw std::invalid_argument("FidelityCurve: non-finite fidelity");
    if (points[i].std_err < 0.0)
      throw std::invalid_argument("FidelityCurve: negative stderr");
    if (i > 0 && points[i].depth_cycles <= points[i - 1].depth_cycles)
      throw std::invalid_argument("FidelityCurve: depths not strictly increasing");
  }
}

double DecayFit::amplitude_stderr() const { return std::sqrt(covariance(0, 0)); }
double DecayFit::lambda_stderr() const { return std::sqrt(covariance(1, 1)); }

DecayFit fit_decay(const FidelityCurve& curve) {
  WeightedData data = prepare(curve);
  const std::size_t n = data.d.size();

  // Log-linear initialization: ln max(F, 1e-6) = ln A + d ln(1 - lambda).
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = std::log(std::max(data.f[i], 1e-6));
    double x = data.d[i], w = data.w[i];
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  double det = sw * sxx - sx * sx;
  double slope = det != 0.0 ? (sw * sxy - sx * sy) / det : 0.0;
  double intercept = det != 0.0 ? (sxx * sy - sx * sxy) / det : sy / sw;
  double A = std::max(std::exp(intercept), 1e-12);
  double lam = clamp_lambda(1.0 - std::exp(std::min(slope, 0.0)));

  // The model is separable: for fixed lambda the optimal amplitude is
  //   A*(lambda) = sum w F q^d / sum w q^2d,  q = 1 - lambda,
  // so the fit reduces to minimizing the profiled SSE over lambda in [0, 1].
  // A coarse scan picks the basin (the profiled objective can be multimodal on
  // conflicting noisy points); golden-section refines it. This terminates
  // unconditionally, unlike a damped Gauss-Newton on the ill-conditioned
  // two-parameter problem.
  auto amplitude_for = [&](double lambda) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double model = std::pow(1.0 - lambda, data.d[i]);
      num += data.w[i] * data.f[i] * model;
      den += data.w[i] * model * model;
    }
    return den > 0.0 ? num / den : 0.0;
  };
  auto profiled_sse = [&](double lambda) {
    return weighted_sse(data, amplitude_for(lambda), lambda);
  };

  const int grid = 200;
  double best_lam = lam;  // log-linear initialization competes with the grid
  double best_sse = profiled_sse(best_lam);
  for (int k = 0; k <= grid; ++k) {
    double candidate = double(k) / grid;
    double sse_k = profiled_sse(candidate);
    if (sse_k < best_sse) {
      best_sse = sse_k;
      best_lam = candidate;
    }
  }
  double lo = clamp_lambda(best_lam - 1.0 / grid);
  double hi = clamp_lambda(best_lam + 1.0 / grid);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = profiled_sse(x1);
  double f2 = profiled_sse(x2);
  while (hi - lo > 1e-13) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = profiled_sse(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = profiled_sse(x2);
    }
  }
  lam = clamp_lambda(0.5 * (lo + hi));
  if (profiled_sse(lam) > best_sse) lam = best_lam;  // keep the scan winner
  A = amplitude_for(lam);
  double sse = weighted_sse(data, A, lam);

  // Covariance from the Jacobian at the optimum.
  double h00 = 0, h01 = 0, h11 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double q = 1.0 - lam;
    double jA = std::pow(q, data.d[i]);
    double jL = -A * data.d[i] * std::pow(q, data.d[i] - 1.0);
    h00 += data.w[i] * jA * jA;
    h01 += data.w[i] * jA * jL;
    h11 += data.w[i] * jL * jL;
  }
  double deth = h00 * h11 - h01 * h01;
  if (!(deth > 0) || !std::isfinite(deth))
    throw std::runtime_error("fit_decay: singular normal matrix at optimum");
  DecayFit fit;
  fit.amplitude = A;
  fit.lambda = lam;
  fit.covariance << h11 / deth, -h01 / deth, -h01 / deth, h00 / deth;
  bool unit_weights =
      std::all_of(data.w.begin(), data.w.end(), [](double w) { return w == 1.0; });
  if (unit_weights && n > 2) fit.covariance *= sse / double(n - 2);
  fit.residual_norm = std::sqrt(sse);
  return fit;
}

EpgReport epg_from_lambda(double lambda, int gates_per_block,
                          int cycles_per_block) {
  if (gates_per_block < 1 || cycles_per_block < 1)
    throw std::invalid_argument("epg_from_lambda: block counts must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("epg_from_lambda: lambda outside [0, 1]");
  EpgReport report;
  report.gates_per_block = gates_per_block;
  report.cycles_per_block = cycles_per_block;
  report.prefactor = 0.75 * double(cycles_per_block) / double(gates_per_block);
  report.epg = report.prefactor * lambda;
  return report;
}

std::vector<std::pair<std::size_t, std::size_t>> bootstrap_partition(
    std::size_t seed_count, int groups) {
  if (groups < 1)
    throw std::invalid_argument("bootstrap_partition: groups must be >= 1");
  if (std::size_t(groups) > seed_count)
    throw std::invalid_argument(
        "bootstrap_partition: more groups than seeds (" +
        std::to_string(groups) + " > " + std::to_string(seed_count) + ")");
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t base = seed_count / std::size_t(groups);
  std::size_t extra = seed_count % std::size_t(groups);
  std::size_t begin = 0;
  for (int g = 0; g < groups; ++g) {
    std::size_t size = base + (std::size_t(g) < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + size);
    begin += size;
  }
  return ranges;
}

double sample_stddev(const std::vector<double>& values) {
  if (values.size() < 2)
    throw std::invalid_argument("sample_stddev: need at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / double(values.size() - 1));
}

namespace {

void check_seed_vectors(const std::vector<ProbabilityVector>& measured,
                        const std::vector<ProbabilityVector>* ideals,
                        Algorithm algorithm) {
  if (algorithm == Algorithm::ByIdeal && ideals == nullptr)
    throw std::invalid_argument(
        "binning pipeline: ByIdeal requires one ideal vector per seed");
  if (ideals != nullptr && ideals->size() != measured.size())
    throw std::invalid_argument(
        "binning pipeline: ideal/measured seed count mismatch");
}

// Shared Algorithm-2 references (independent of any group split); empty
// distributions for ByIdeal, whose references are per-seed.
std::pair<BinnedDistribution, BinnedDistribution> shared_references(
    const BinSpec& spec, Algorithm algorithm, bool have_ideals,
    std::uint64_t shots) {
  std::pair<BinnedDistribution, BinnedDistribution> refs;
  if (algorithm == Algorithm::ByExperimental) {
    if (!have_ideals) refs.first = reference_ideal_pt(spec);
    refs.second = shots > 0 ? reference_mixed_gaussian(spec, shots)
                            : reference_mixed_delta(spec);
  }
  return refs;
}

DepthBinSet bins_for_range(const std::vector<ProbabilityVector>& measured,
                           const std::vector<ProbabilityVector>* ideals,
                           const BinSpec& spec, Algorithm algorithm,
                           std::size_t begin, std::size_t end,
                           const BinnedDistribution& shared_ideal,
                           const BinnedDistribution& shared_mixed) {
  std::vector<BinnedDistribution> exp_bins, ideal_bins, mixed_bins;
  for (std::size_t s = begin; s < end; ++s) {
    if (algorithm == Algorithm::ByIdeal) {
      exp_bins.push_back(bin_by_ideal((*ideals)[s], measured[s], spec));
      ideal_bins.push_back(bin_by_ideal((*ideals)[s], (*ideals)[s], spec));
      mixed_bins.push_back(reference_mixed_by_ideal((*ideals)[s], spec));
    } else {
      exp_bins.push_back(bin_by_experimental(measured[s], spec));
      if (ideals != nullptr)
        ideal_bins.push_back(bin_by_experimental((*ideals)[s], spec));
    }
  }
  DepthBinSet set;
  set.experimental = accumulate(exp_bins);
  set.ideal = ideal_bins.empty() ? shared_ideal : accumulate(ideal_bins);
  set.mixed =
      algorithm == Algorithm::ByIdeal ? accumulate(mixed_bins) : shared_mixed;
  return set;
}

}  // namespace

DepthBinSet ensemble_bins(const std::vector<ProbabilityVector>& measured,
                          const std::vector<ProbabilityVector>* ideals,
                          const BinSpec& spec, Algorithm algorithm,
                          std::uint64_t shots) {
  check_seed_vectors(measured, ideals, algorithm);
  if (measured.empty()) throw std::invalid_argument("ensemble_bins: no seeds");
  auto [shared_ideal, shared_mixed] =
      shared_references(spec, algorithm, ideals != nullptr, shots);
  return bins_for_range(measured, ideals, spec, algorithm, 0, measured.size(),
                        shared_ideal, shared_mixed);
}

std::vector<double> group_fidelities(
    const std::vector<ProbabilityVector>& measured,
    const std::vector<ProbabilityVector>* ideals, const BinSpec& spec,
    Algorithm algorithm, int groups, std::uint64_t shots) {
  check_seed_vectors(measured, ideals, algorithm);
  auto ranges = bootstrap_partition(measured.size(), groups);
  auto [shared_ideal, shared_mixed] =
      shared_references(spec, algorithm, ideals != nullptr, shots);
  std::vector<double> values;
  values.reserve(ranges.size());
  for (const auto& [begin, end] : ranges) {
    DepthBinSet set = bins_for_range(measured, ideals, spec, algorithm, begin,
                                     end, shared_ideal, shared_mixed);
    values.push_back(bog_fidelity(set.experimental, set.ideal, set.mixed).value);
  }
  return values;
}

double ensemble_fidelity(const std::vector<ProbabilityVector>& measured,
                         const std::vector<ProbabilityVector>* ideals,
                         const BinSpec& spec, Algorithm algorithm,
                         std::uint64_t shots) {
  return group_fidelities(measured, ideals, spec, algorithm, 1, shots).front();
}

std::vector<double> per_seed_fidelities(
    const std::vector<ProbabilityVector>& measured,
    const std::vector<ProbabilityVector>* ideals, const BinSpec& spec,
    Algorithm algorithm, std::uint64_t shots) {
  return group_fidelities(measured, ideals, spec, algorithm,
                          int(measured.size()), shots);
}

double bootstrap_stderr(const std::vector<ProbabilityVector>& measured,
                        const std::vector<ProbabilityVector>* ideals,
                        const BinSpec& spec, Algorithm algorithm, int groups,
                        std::uint64_t shots) {
  if (groups < 2)
    throw std::invalid_argument("bootstrap_stderr: need at least 2 groups");
  return sample_stddev(
      group_fidelities(measured, ideals, spec, algorithm, groups, shots));
}

QuadraticFit quadratic_scaling_fit(
    const std::vector<std::pair<double, double>>& points) {
  const std::size_t n = points.size();
  if (n < 4)
    throw std::invalid_argument("quadratic_scaling_fit: need at least 4 points");
  double zmax = 0.0;
  for (const auto& [z, epg] : points) zmax = std::max(zmax, std::abs(z));
  if (zmax == 0.0)
    throw std::invalid_argument("quadratic_scaling_fit: rank-deficient design "
                                "(all z values are zero)");
  // Fit in z/zmax for conditioning, then scale coefficients back.
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double zs = points[i].first / zmax;
    X(Eigen::Index(i), 0) = 1.0;
    X(Eigen::Index(i), 1) = zs;
    X(Eigen::Index(i), 2) = zs * zs;
    y(Eigen::Index(i)) = points[i].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3)
    throw std::invalid_argument(
        "quadratic_scaling_fit: rank-deficient design (need 3 distinct z values)");
  Eigen::Vector3d c = qr.solve(y);
  double sse = (y - X * c).squaredNorm();
  double s2 = n > 3 ? sse / double(n - 3) : 0.0;
  Eigen::Matrix3d cov = s2 * (X.transpose() * X).inverse();

  QuadraticFit fit;
  fit.c0 = c(0);
  fit.c1 = c(1) / zmax;
  fit.c2 = c(2) / (zmax * zmax);
  fit.stderr_c0 = std::sqrt(std::max(cov(0, 0), 0.0));
  fit.stderr_c1 = std::sqrt(std::max(cov(1, 1), 0.0)) / zmax;
  fit.stderr_c2 = std::sqrt(std::max(cov(2, 2), 0.0)) / (zmax * zmax);
  fit.residual_norm = std::sqrt(sse);
  return fit;
}

ZzFit fit_zz_strength(
    const std::vector<double>& measured_epg,
    const std::function<std::vector<double>(double)>& simulate_epgs,
    double j_max_hz, int coarse_points, double tol_hz) {
  if (measured_epg.empty())
    throw std::invalid_argument("fit_zz_strength: no measured points");
  if (coarse_points < 3)
    throw std::invalid_argument("fit_zz_strength: need >= 3 grid points");
  int evals = 0;
  auto objective = [&](double j) {
    std::vector<double> sim = simulate_epgs(j);
    ++evals;
    if (sim.size() != measured_epg.size())
      throw std::runtime_error(
          "fit_zz_strength: simulator returned wrong number of EPG values");
    double sse = 0.0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
      double r = sim[i] - measured_epg[i];
      sse += r * r;
    }
    return sse;
  };

  std::vector<double> grid(std::size_t(coarse_points), 0.0);
  std::vector<double> val(std::size_t(coarse_points), 0.0);
  for (int k = 0; k < coarse_points; ++k) {
    grid[std::size_t(k)] = j_max_hz * double(k) / double(coarse_points - 1);
    val[std::size_t(k)] = objective(grid[std::size_t(k)]);
  }
  std::size_t best =
      std::size_t(std::min_element(val.begin(), val.end()) - val.begin());
  if (best + 1 == grid.size())
    throw std::runtime_error(
        "fit_zz_strength: optimum at the upper bound of [0, " +
        std::to_string(j_max_hz) + " Hz]; no convergence within bounds");

  double lo = best == 0 ? grid.front() : grid[best - 1];
  double hi = grid[best + 1];
  // Golden-section search on the bracketing interval.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > tol_hz) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  ZzFit fit;
  fit.j_hz = f1 <= f2 ? x1 : x2;
  fit.objective = std::min(f1, f2);
  fit.evaluations = evals;
  return fit;
}

double incoherent_epg_from_purity(
    const std::vector<std::pair<int, double>>& purity_by_depth, int n_qubits,
    int gates_per_block, int cycles_per_block) {
  if (purity_by_depth.size() < 3)
    throw std::invalid_argument(
        "incoherent_epg_from_purity: need at least 3 points");
  const double floor = 1.0 / double(dim_of(n_qubits));
  FidelityCurve curve;
  for (const auto& [depth, purity] : purity_by_depth) {
    if (purity < floor - 1e-9)
      throw std::invalid_argument(
          "incoherent_epg_from_purity: purity " + std::to_string(purity) +
          " below the 1/2^n floor at depth " + std::to_string(depth));
    curve.points.push_back({depth, std::max(purity - floor, 0.0), 0.0});
  }
  DecayFit fit = fit_decay(curve);
  double u = 1.0 - fit.lambda;
  return 0.75 * double(cycles_per_block) / double(gates_per_block) *
         (1.0 - std::sqrt(u));
}

double ks_statistic_exp1(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("ks_statistic_exp1: no samples");
  std::sort(values.begin(), values.end());
  const double n = double(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double cdf = 1.0 - std::exp(-std::max(values[i], 0.0));
    d = std::max(d, std::abs(double(i + 1) / n - cdf));
    d = std::max(d, std::abs(cdf - double(i) / n));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) {
  if (n == 0) throw std::invalid_argument("ks_critical_1pct: n must be >= 1");
  return 1.628 / std::sqrt(double(n));
}

}  // namespace bog
