#pragma once
// Independent circular-alignment oracle for the equivalence tests.
//
// Works directly on the circle, never on the doubled line: for each shift it
// reduces the offset problem to a one-dimensional facility-location problem
// on the unit circle over the sites delta_i = (y_{(i+s) mod n} - x_i) mod 1,
//   max norm: center of the arc complementary to the largest site gap;
//   l1:       evaluate every site and every antipode (the breakpoints of a
//             piecewise-linear function);
//   even p:   the objective is convex between consecutive antipodes, so
//             bisect its derivative on every arc.
// Deliberately structured nothing like the solvers under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "necklace/necklace.hpp"

namespace testoracle {

struct CircularBest {
  std::int64_t shift = 0;
  double offset = 0.0;
  double objective = 0.0;
};

namespace detail {

inline double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

inline double ipow(double v, int p) {
  double acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= v;
  return acc;
}

inline double circ_dist(double a, double b) {
  const double diff = std::abs(a - b);
  return std::min(diff, 1.0 - diff);
}

inline double site_objective(const std::vector<double>& delta, double c,
                             const necklace::Norm& norm) {
  double acc = 0.0;
  for (double d : delta) {
    const double v = circ_dist(c, d);
    if (norm.kind == necklace::NormKind::linf) {
      acc = std::max(acc, v);
    } else {
      acc += ipow(v, norm.p);
    }
  }
  return acc;
}

// Derivative of the sum of p-th powers of circular distances with respect to
// the center, valid away from the antipodes of the sites.
inline double site_derivative(const std::vector<double>& delta, double c, int p) {
  double acc = 0.0;
  for (double d : delta) {
    const double u = mod1(c - d);
    if (u > 0.0 && u < 0.5) {
      acc += p * ipow(u, p - 1);
    } else if (u > 0.5) {
      acc -= p * ipow(1.0 - u, p - 1);
    }
  }
  return acc;
}

// One-center: smallest enclosing arc is the complement of the largest gap.
inline std::pair<double, double> best_center_linf(std::vector<double> sites) {
  std::sort(sites.begin(), sites.end());
  const std::size_t n = sites.size();
  double best_gap = sites.front() + 1.0 - sites.back();
  double arc_start = sites.front();  // first site after the gap
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const double gap = sites[t + 1] - sites[t];
    if (gap > best_gap) {
      best_gap = gap;
      arc_start = sites[t + 1];
    }
  }
  const double radius = (1.0 - best_gap) / 2.0;
  return {mod1(arc_start + radius), radius};
}

inline std::pair<double, double> best_center_l1(const std::vector<double>& sites) {
  double best_c = sites.front();
  double best_obj = std::numeric_limits<double>::infinity();
  for (double s : sites) {
    for (double c : {mod1(s), mod1(s + 0.5)}) {
      const double obj = site_objective(sites, c, necklace::Norm::l1());
      if (obj < best_obj) {
        best_obj = obj;
        best_c = c;
      }
    }
  }
  return {best_c, best_obj};
}

inline std::pair<double, double> best_center_even_p(const std::vector<double>& sites, int p) {
  std::vector<double> anti(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) anti[i] = mod1(sites[i] + 0.5);
  std::sort(anti.begin(), anti.end());
  const necklace::Norm norm = p == 2 ? necklace::Norm::l2() : necklace::Norm::lp(p);

  double best_c = 0.0;
  double best_obj = std::numeric_limits<double>::infinity();
  const auto consider = [&](double c) {
    const double obj = site_objective(sites, c, norm);
    if (obj < best_obj) {
      best_obj = obj;
      best_c = c;
    }
  };

  const std::size_t m = anti.size();
  for (std::size_t t = 0; t < m; ++t) {
    const double lo = anti[t];
    const double len = (t + 1 < m ? anti[t + 1] : anti[0] + 1.0) - lo;
    consider(mod1(lo));
    if (len <= 0.0) continue;
    double a = 0.0, b = len;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (a + b);
      (site_derivative(sites, mod1(lo + mid), p) < 0.0 ? a : b) = mid;
    }
    consider(mod1(lo + 0.5 * (a + b)));
  }
  for (double s : sites) consider(s);  // cheap insurance near-zero minima
  return {best_c, best_obj};
}

}  // namespace detail

// Exhaustive-in-s, exact-in-c circular optimum. Ties prefer the smaller
// shift.
inline CircularBest circular_align_oracle(const necklace::Necklace& x, const necklace::Necklace& y,
                                          const necklace::Norm& norm) {
  const std::size_t n = x.size();
  CircularBest best{0, 0.0, std::numeric_limits<double>::infinity()};
  std::vector<double> delta(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = detail::mod1(y.bead((i + s) % n) - x.bead(i));
    }
    double c = 0.0, obj = 0.0;
    switch (norm.kind) {
      case necklace::NormKind::linf:
        std::tie(c, obj) = detail::best_center_linf(delta);
        break;
      case necklace::NormKind::l1:
        std::tie(c, obj) = detail::best_center_l1(delta);
        break;
      default:
        std::tie(c, obj) = detail::best_center_even_p(delta, norm.p);
        break;
    }
    if (obj < best.objective) {
      best.shift = static_cast<std::int64_t>(s);
      best.offset = c;
      best.objective = obj;
    }
  }
  return best;
}

}  // namespace testoracle
