#pragma once
// Antidiagonal statistics of X+Y matrices and the polyhedral 3SUM decision.
//
// For equal-length vectors X and Y, antidiagonal k of the (implicit) matrix
// X_i + Y_j collects the sums with i + j = k, for k in [0, 2n-2]. The min,
// max, and median per antidiagonal come from the (min,-)/(max,-)/(median,-)
// kernels: the first n antidiagonals are prefix windows of the forward
// instance, the rest are prefix windows of the reversed instance, and the
// middle antidiagonal (computed by both) must match exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "necklace/align.hpp"
#include "necklace/medconv.hpp"
#include "necklace/minconv.hpp"

namespace necklace {

namespace xy_detail {

inline void validate_xy(const std::vector<double>& X, const std::vector<double>& Y,
                        const char* op) {
  if (X.empty() || X.size() != Y.size()) {
    throw std::invalid_argument(std::string(op) + ": inputs must be nonempty and equal length");
  }
  for (double v : X) {
    if (!(v - v == 0.0)) throw std::invalid_argument(std::string(op) + ": X must be finite");
  }
  for (double v : Y) {
    if (!(v - v == 0.0)) throw std::invalid_argument(std::string(op) + ": Y must be finite");
  }
}

// Runs a prefix (stat,-) kernel on the forward and reversed instances and
// stitches the full 2n-1 antidiagonal range together.
template <class Kernel>
inline std::vector<double> full_range(const std::vector<double>& X, const std::vector<double>& Y,
                                      Kernel&& kernel, const char* op) {
  const std::size_t n = X.size();
  std::vector<double> neg_y(n);
  for (std::size_t i = 0; i < n; ++i) neg_y[i] = -Y[i];
  const std::vector<double> head = kernel(X, neg_y);
  std::vector<double> out(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = head[k];
  if (n == 1) return out;

  const std::vector<double> rx(X.rbegin(), X.rend());
  const std::vector<double> rny(neg_y.rbegin(), neg_y.rend());
  const std::vector<double> tail = kernel(rx, rny);
  for (std::size_t k = n; k <= 2 * n - 2; ++k) out[k] = tail[2 * n - 2 - k];
  if (head[n - 1] != tail[n - 1]) {
    throw std::logic_error(std::string(op) + ": forward and reversed instances disagree");
  }
  return out;
}

inline std::vector<double> full_min(const std::vector<double>& X, const std::vector<double>& Y,
                                    Engine e) {
  const auto kern = [e](const std::vector<double>& a, const std::vector<double>& b) {
    return e == Engine::naive ? minconv_naive(a, b) : minconv_dominance(a, b);
  };
  return full_range(X, Y, kern, "antidiagonal min");
}

inline std::vector<double> full_max(const std::vector<double>& X, const std::vector<double>& Y,
                                    Engine e) {
  const auto kern = [e](const std::vector<double>& a, const std::vector<double>& b) {
    return e == Engine::naive ? maxconv_naive(a, b) : maxconv_dominance(a, b);
  };
  return full_range(X, Y, kern, "antidiagonal max");
}

inline std::vector<double> full_median(const std::vector<double>& X, const std::vector<double>& Y,
                                       Engine e) {
  const auto kern = [e](const std::vector<double>& a, const std::vector<double>& b) {
    return e == Engine::naive ? medconv_naive(a, b) : medconv_dominance(a, b);
  };
  return full_range(X, Y, kern, "antidiagonal median");
}

inline Engine resolve_xy_engine(Engine engine, std::size_t n) {
  return resolve_engine(engine, n, false);
}

}  // namespace xy_detail

struct AntidiagonalStats {
  std::vector<double> min_sum;
  std::vector<double> max_sum;
  std::vector<double> median_sum;
  std::vector<double> range;        // max - min per antidiagonal
  std::vector<double> median_cost;  // sum of |value - median| per antidiagonal
};

// All five per-antidiagonal statistics. The median cost is evaluated by
// direct enumeration.
inline AntidiagonalStats antidiagonal_stats(const std::vector<double>& X,
                                            const std::vector<double>& Y,
                                            Engine engine = Engine::automatic) {
  xy_detail::validate_xy(X, Y, "antidiagonal_stats");
  const std::size_t n = X.size();
  const Engine e = xy_detail::resolve_xy_engine(engine, n);

  AntidiagonalStats stats;
  stats.min_sum = xy_detail::full_min(X, Y, e);
  stats.max_sum = xy_detail::full_max(X, Y, e);
  stats.median_sum = xy_detail::full_median(X, Y, e);
  const std::size_t m = 2 * n - 1;
  stats.range.resize(m);
  stats.median_cost.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    stats.range[k] = stats.max_sum[k] - stats.min_sum[k];
    double cost = 0.0;
    const std::size_t ilo = k >= n ? k - n + 1 : 0;
    const std::size_t ihi = std::min(k, n - 1);
    for (std::size_t i = ilo; i <= ihi; ++i) {
      cost += std::abs(X[i] + Y[k - i] - stats.median_sum[k]);
    }
    stats.median_cost[k] = cost;
  }
  return stats;
}

// Antidiagonal with the smallest spread (ties toward the smaller index).
inline std::int64_t min_range(const std::vector<double>& X, const std::vector<double>& Y,
                              Engine engine = Engine::automatic) {
  xy_detail::validate_xy(X, Y, "min_range");
  const Engine e = xy_detail::resolve_xy_engine(engine, X.size());
  const std::vector<double> mins = xy_detail::full_min(X, Y, e);
  const std::vector<double> maxs = xy_detail::full_max(X, Y, e);
  std::size_t best = 0;
  for (std::size_t k = 1; k < mins.size(); ++k) {
    if (maxs[k] - mins[k] < maxs[best] - mins[best]) best = k;
  }
  return static_cast<std::int64_t>(best);
}

// Antidiagonal whose entries cluster tightest around their median.
inline std::int64_t min_median_cost(const std::vector<double>& X, const std::vector<double>& Y,
                                    Engine engine = Engine::automatic) {
  xy_detail::validate_xy(X, Y, "min_median_cost");
  const AntidiagonalStats stats = antidiagonal_stats(X, Y, engine);
  std::size_t best = 0;
  for (std::size_t k = 1; k < stats.median_cost.size(); ++k) {
    if (stats.median_cost[k] < stats.median_cost[best]) best = k;
  }
  return static_cast<std::int64_t>(best);
}

// Prefix-window means: entry k is the mean of x[i] + y[k-i] over i in [0,k],
// computed from prefix sums.
inline std::vector<double> meanconv(const std::vector<double>& x, const std::vector<double>& y) {
  xy_detail::validate_xy(x, y, "meanconv");
  const std::size_t n = x.size();
  std::vector<double> out(n);
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    px += x[k];
    py += y[k];
    out[k] = (px + py) / static_cast<double>(k + 1);
  }
  return out;
}

// The promise of the polyhedral 3SUM instance was violated: some antidiagonal
// maximum exceeds its ceiling.
class PromiseViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThreeSumResult {
  bool touches = false;
  std::int64_t i = -1;
  std::int64_t j = -1;
};

struct ThreeSumOptions {
  Engine engine = Engine::automatic;
  // Check max(A_i + B_j) <= C_k on every antidiagonal before deciding.
  bool verify_promise = true;
};

// Decides whether any A_i + B_j reaches its ceiling C_{i+j}, under the
// promise that no sum exceeds the ceiling. Returns the lexicographically
// smallest witness (by k = i + j, then i).
inline ThreeSumResult polyhedral_3sum(const std::vector<double>& A, const std::vector<double>& B,
                                      const std::vector<double>& C,
                                      const ThreeSumOptions& opts = {}) {
  xy_detail::validate_xy(A, B, "polyhedral_3sum");
  const std::size_t n = A.size();
  if (C.size() != 2 * n - 1) {
    throw std::invalid_argument("polyhedral_3sum: ceiling must have 2n-1 entries");
  }
  for (double v : C) {
    if (!(v - v == 0.0)) throw std::invalid_argument("polyhedral_3sum: ceiling must be finite");
  }
  const Engine e = xy_detail::resolve_xy_engine(opts.engine, n);
  const std::vector<double> maxs = xy_detail::full_max(A, B, e);
  if (opts.verify_promise) {
    for (std::size_t k = 0; k < maxs.size(); ++k) {
      if (maxs[k] > C[k]) {
        throw PromiseViolationError("polyhedral_3sum: promise violated on antidiagonal " +
                                    std::to_string(k));
      }
    }
  }
  for (std::size_t k = 0; k < maxs.size(); ++k) {
    if (maxs[k] == C[k]) {
      const std::size_t ilo = k >= n ? k - n + 1 : 0;
      const std::size_t ihi = std::min(k, n - 1);
      for (std::size_t i = ilo; i <= ihi; ++i) {
        if (A[i] + B[k - i] == C[k]) {
          return {true, static_cast<std::int64_t>(i), static_cast<std::int64_t>(k - i)};
        }
      }
      throw std::logic_error("polyhedral_3sum: touching antidiagonal lost its witness");
    }
  }
  return {false, -1, -1};
}

}  // namespace necklace
