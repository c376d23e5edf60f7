// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace bog::rng {

std::vector<std::uint64_t> multinomial(const std::vector<double>& probs,
                                       std::uint64_t shots,
                                       std::mt19937_64& eng) {
  if (probs.empty()) throw std::invalid_argument("multinomial: empty distribution");
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    run += probs[i];
    cdf[i] = run;
  }
  // Guard the last edge against accumulated rounding so u < cdf.back() always.
  cdf.back() = std::max(cdf.back(), 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    double u = unif(eng) * run;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  return counts;
}

}  // namespace bog::rng
