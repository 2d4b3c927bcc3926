#pragma once
// Shared helpers for the test suites: seeded random instances and the mixed
// absolute/relative tolerance used across oracle comparisons.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Uniform integers in [lo, hi], stored as doubles (exactly representable).
inline std::vector<double> random_int_vector(std::size_t n, long long lo, long long hi,
                                             std::mt19937_64& gen) {
  std::uniform_int_distribution<long long> dist(lo, hi);
  std::vector<double> v(n);
  for (double& e : v) e = static_cast<double>(dist(gen));
  return v;
}

inline std::vector<double> random_real_vector(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& e : v) e = dist(gen);
  return v;
}

// Ascending bead positions in [0, 1).
inline std::vector<double> random_beads(std::size_t n, std::mt19937_64& gen) {
  std::vector<double> v = random_real_vector(n, gen);
  std::sort(v.begin(), v.end());
  for (double& b : v) {
    if (b >= 1.0) b = std::nextafter(1.0, 0.0);
  }
  return v;
}

// |a - b| <= tol * max(1, |a|, |b|).
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
