#pragma once
// Domain types for circular alignment: necklaces of beads on the unit
// circle, the distance and objective definitions, and the unrolling that
// turns one circular instance into a linear one.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace necklace {

enum class NormKind { l1, l2, lp_even, linf };

struct Norm {
  NormKind kind = NormKind::l2;
  // Objective exponent: 1, 2, or a general even p; 0 stands for the max
  // norm. Objectives are sums of p-th powers of circular distances (no
  // root), or the largest distance for the max norm.
  int p = 2;

  static Norm l1() { return {NormKind::l1, 1}; }
  static Norm l2() { return {NormKind::l2, 2}; }
  static Norm linf() { return {NormKind::linf, 0}; }
  static Norm lp(int p) {
    if (p < 2 || p > 16 || p % 2 != 0) {
      throw std::invalid_argument("Norm: exponent must be an even integer in [2, 16]");
    }
    return {NormKind::lp_even, p};
  }
};

enum class BeadMode {
  strict,   // beads must already be ascending and inside [0, 1)
  lenient,  // beads are reduced mod 1 and sorted
};

namespace core_detail {

inline bool is_finite(double v) { return v - v == 0.0; }

// Reduce to [0, 1); the upper guard catches tiny negatives whose reduction
// rounds to exactly 1.
inline double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

// v^p by repeated multiplication; used consistently by every objective
// evaluation so independent routes agree to rounding, not to pow() quirks.
inline double ipow(double v, int p) {
  double acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= v;
  return acc;
}

}  // namespace core_detail

// A necklace: n beads on the unit circle, stored ascending in [0, 1).
class Necklace {
 public:
  explicit Necklace(std::vector<double> beads, BeadMode mode = BeadMode::strict)
      : beads_(std::move(beads)) {
    if (beads_.empty()) throw std::invalid_argument("Necklace: needs at least one bead");
    for (double b : beads_) {
      if (!core_detail::is_finite(b)) throw std::invalid_argument("Necklace: beads must be finite");
    }
    if (mode == BeadMode::lenient) {
      for (double& b : beads_) b = core_detail::mod1(b);
      std::sort(beads_.begin(), beads_.end());
    }
    for (std::size_t i = 0; i < beads_.size(); ++i) {
      if (beads_[i] < 0.0 || beads_[i] >= 1.0) {
        throw std::invalid_argument("Necklace: beads must lie in [0, 1)");
      }
      if (i > 0 && beads_[i] < beads_[i - 1]) {
        throw std::invalid_argument("Necklace: beads must be ascending");
      }
    }
  }

  std::size_t size() const { return beads_.size(); }
  const std::vector<double>& beads() const { return beads_; }
  double bead(std::size_t i) const { return beads_[i]; }

 private:
  std::vector<double> beads_;
};

// Clockwise-or-counterclockwise distance on the unit circle.
inline double circular_distance(double a, double b) {
  if (!(a >= 0.0 && a < 1.0) || !(b >= 0.0 && b < 1.0)) {
    throw std::invalid_argument("circular_distance: positions must lie in [0, 1)");
  }
  const double diff = std::abs(a - b);
  return std::min(diff, 1.0 - diff);
}

// Objective of matching bead i of x to bead i+s of y after rotating x by c:
// sum of p-th powers of circular distances, or their max for the max norm.
inline double circular_objective(const Necklace& x, const Necklace& y, std::int64_t s, double c,
                                 const Norm& norm) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("circular_objective: necklaces must have equal size");
  }
  const std::size_t n = x.size();
  if (s < 0 || static_cast<std::size_t>(s) >= n) {
    throw std::invalid_argument("circular_objective: shift out of range");
  }
  if (!core_detail::is_finite(c)) {
    throw std::invalid_argument("circular_objective: offset must be finite");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = circular_distance(core_detail::mod1(x.bead(i) + c),
                                       y.bead((i + static_cast<std::size_t>(s)) % n));
    if (norm.kind == NormKind::linf) {
      acc = std::max(acc, d);
    } else {
      acc += core_detail::ipow(d, norm.p);
    }
  }
  return acc;
}

// The doubled line: y's beads followed by the same beads moved one full turn.
inline std::vector<double> unroll_to_linear(const Necklace& y) {
  std::vector<double> out(y.beads());
  out.reserve(2 * y.size());
  for (double b : y.beads()) out.push_back(b + 1.0);
  return out;
}

// A linear alignment instance: match x_i to y_{i+s} on the real line.
struct LinearInstance {
  std::vector<double> x;
  std::vector<double> y;

  LinearInstance(std::vector<double> x_in, std::vector<double> y_in)
      : x(std::move(x_in)), y(std::move(y_in)) {
    if (x.empty() || y.size() < x.size()) {
      throw std::invalid_argument("LinearInstance: need |y| >= |x| >= 1");
    }
    for (double v : x) {
      if (!core_detail::is_finite(v)) throw std::invalid_argument("LinearInstance: x must be finite");
    }
    for (double v : y) {
      if (!core_detail::is_finite(v)) throw std::invalid_argument("LinearInstance: y must be finite");
    }
    if (!std::is_sorted(x.begin(), x.end()) || !std::is_sorted(y.begin(), y.end())) {
      throw std::invalid_argument("LinearInstance: point lists must be ascending");
    }
  }
};

// Linear objective: z_i = x_i + c - y_{i+s}; sum of |z_i|^p or max |z_i|.
inline double linear_objective(const LinearInstance& inst, std::int64_t s, double c,
                               const Norm& norm) {
  const std::size_t n = inst.x.size();
  if (s < 0 || static_cast<std::size_t>(s) > inst.y.size() - n) {
    throw std::invalid_argument("linear_objective: shift out of range");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = std::abs(inst.x[i] + c - inst.y[i + static_cast<std::size_t>(s)]);
    if (norm.kind == NormKind::linf) {
      acc = std::max(acc, z);
    } else {
      acc += core_detail::ipow(z, norm.p);
    }
  }
  return acc;
}

struct AlignmentSolution {
  std::int64_t shift = 0;
  double offset = 0.0;
  double objective = 0.0;
  Norm norm{};
};

}  // namespace necklace
