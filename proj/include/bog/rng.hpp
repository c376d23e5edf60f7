// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic seed derivation and sampling utilities.
//
// A single 64-bit master seed is fanned out into independent substreams by
// hashing (master, path...) with a splitmix64-based chain. Substreams are
// addressed by purpose, so e.g. the Haar layer of cycle c in circuit seed s is
// reproducible regardless of which depths or other seeds are simulated. This
// gives the depth-prefix property: the depth-d circuit for a seed is a prefix
// of the depth-d' > d circuit for the same seed.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace bog::rng {

// Stream-purpose tags used as the first path element of derive().
enum Domain : std::uint64_t {
  kCircuitSeed = 0x63697263,  // per-seed-index circuit seed
  kHaarLayer = 0x68616172,    // per-(circuit seed, cycle) gate draws
  kMeasurement = 0x6d656173,  // per-(master, seed index, depth) sampling
};

// splitmix64 output function (Steele, Lea, Flood 2014). Advances x.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Hash-chains the path elements into the master seed. Each element both
// perturbs the state and passes through the splitmix64 mixer, so different
// paths (including different lengths) give statistically independent values.
inline std::uint64_t derive(std::uint64_t master,
                            std::initializer_list<std::uint64_t> path) {
  std::uint64_t x = master;
  (void)splitmix64(x);
  for (std::uint64_t p : path) {
    x ^= p + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
    (void)splitmix64(x);
  }
  std::uint64_t y = x;
  return splitmix64(y);
}

// A mt19937_64 engine seeded from a derived substream value.
inline std::mt19937_64 engine(std::uint64_t master,
                              std::initializer_list<std::uint64_t> path) {
  return std::mt19937_64(derive(master, path));
}

// Multinomial draw by inverse-CDF sampling: `shots` independent categorical
// draws against the cumulative distribution of `probs`. Deterministic given
// the engine state. Returns per-category counts summing to shots.
std::vector<std::uint64_t> multinomial(const std::vector<double>& probs,
                                       std::uint64_t shots,
                                       std::mt19937_64& eng);

}  // namespace bog::rng
