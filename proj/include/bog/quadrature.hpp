// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Small adaptive Simpson quadrature used for reference-distribution integrals.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace bog {

namespace detail {

template <typename F>
double simpson(F&& f, double a, double fa, double b, double fb, double m,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F&& f, double a, double fa, double b, double fb, double m,
                     double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance ~tol. `split_points` force
// initial subdivisions (e.g. at a sharp peak the sampler would otherwise miss).
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol,
                          const std::vector<double>& split_points = {}) {
  if (!(b > a)) return 0.0;
  std::vector<double> knots{a};
  for (double s : split_points)
    if (s > a && s < b) knots.push_back(s);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double x0 = knots[i], x1 = knots[i + 1];
    double xm = 0.5 * (x0 + x1);
    double f0 = f(x0), f1 = f(x1), fm = f(xm);
    double whole = detail::simpson(f, x0, f0, x1, f1, xm, fm);
    total += detail::adaptive_step(f, x0, f0, x1, f1, xm, fm, whole,
                                   tol / double(knots.size()), 48);
  }
  return total;
}

}  // namespace bog
