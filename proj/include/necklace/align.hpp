#pragma once
// Alignment solvers: given two equal-size necklaces, find the shift s and
// offset c minimizing the circular objective.
//
// Every solver works on the doubled line (y unrolled through a full turn),
// where for each shift the optimal offset has a closed form or a convex
// one-dimensional characterization:
//   max norm: center between the smallest and largest difference, both read
//             from padded (min,-) / (max,-) convolutions;
//   l1:       negated median of the differences, read from a (median,-)
//             convolution over a sentinel-padded instance;
//   l2:       negated mean, with the cross terms from one (+,*) convolution;
//   even p:   root of a degree p-1 polynomial whose coefficients come from
//             p+1 power sums, each a (+,*) convolution.
// Reported objectives are sums of p-th powers of circular distances (no
// root), or the largest distance for the max norm. Ties prefer the smaller
// shift; the reported offset is reduced to [0, 1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "necklace/fft.hpp"
#include "necklace/matmul.hpp"
#include "necklace/medconv.hpp"
#include "necklace/minconv.hpp"
#include "necklace/necklace.hpp"

namespace necklace {

enum class Engine { automatic, naive, dominance, matmul };

// Offset minimizing the largest absolute deviation, given the smallest and
// largest difference: center the band. Returns (offset, objective).
inline std::pair<double, double> optimal_offset_linf(double min_diff, double max_diff) {
  if (!(min_diff - min_diff == 0.0) || !(max_diff - max_diff == 0.0)) {
    throw std::invalid_argument("optimal_offset_linf: bounds must be finite");
  }
  if (min_diff > max_diff) {
    throw std::invalid_argument("optimal_offset_linf: min exceeds max");
  }
  return {-(min_diff + max_diff) / 2.0, (max_diff - min_diff) / 2.0};
}

// Offset minimizing the sum of absolute deviations: negate the median.
inline double optimal_offset_l1(double median_diff) {
  if (!(median_diff - median_diff == 0.0)) {
    throw std::invalid_argument("optimal_offset_l1: median must be finite");
  }
  return -median_diff;
}

// Per-shift summary used by the max-norm and l1 solvers: the difference
// statistics, the offset they imply, and the objective at that offset.
struct ShiftProfile {
  std::vector<double> min_diff;     // max-norm path
  std::vector<double> max_diff;     // max-norm path
  std::vector<double> median_diff;  // l1 path
  std::vector<double> offset;
  std::vector<double> objective;
};

namespace align_detail {

using core_detail::ipow;
using core_detail::mod1;

inline void require_same_size(const Necklace& x, const Necklace& y, const char* op) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(op) + ": necklaces must have equal size");
  }
}

// Sum of |z_i + c|^p, or the max for the max norm. Both the subquadratic
// solvers and the quadratic oracle report objectives through this one
// routine, so agreement checks compare like against like.
inline double objective_for_diffs(const std::vector<double>& z, double c, const Norm& norm) {
  double acc = 0.0;
  for (double zi : z) {
    const double v = std::abs(zi + c);
    if (norm.kind == NormKind::linf) {
      acc = std::max(acc, v);
    } else {
      acc += ipow(v, norm.p);
    }
  }
  return acc;
}

inline double lower_median(std::vector<double> v) {
  const auto nth = v.begin() + ((v.size() + 1) / 2 - 1);
  std::nth_element(v.begin(), nth, v.end());
  return *nth;
}

// Even-p offset by bisection on the derivative sum (z_i + c)^(p-1),
// bracketed by [-max z, -min z]. Used by the quadratic oracle.
inline double even_p_offset_direct(const std::vector<double>& z, int p) {
  double lo = -*std::max_element(z.begin(), z.end());
  double hi = -*std::min_element(z.begin(), z.end());
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    double der = 0.0;
    for (double zi : z) der += ipow(zi + mid, p - 1);
    (der < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double horner(const std::vector<double>& coef, double c) {
  double acc = 0.0;
  for (std::size_t j = coef.size(); j-- > 0;) acc = acc * c + coef[j];
  return acc;
}

// Even-p offset from objective polynomial coefficients (coef[j] multiplies
// c^j): bisection on the derivative over the a-priori bracket [-2, 2].
inline double even_p_offset_poly(const std::vector<double>& coef, int p) {
  std::vector<double> der(p);
  for (int j = 1; j <= p; ++j) der[j - 1] = j * coef[j];
  double lo = -2.0, hi = 2.0;
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    (horner(der, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<std::vector<double>> binomials(int p) {
  std::vector<std::vector<double>> b(p + 1);
  for (int q = 0; q <= p; ++q) {
    b[q].assign(q + 1, 1.0);
    for (int t = 1; t < q; ++t) b[q][t] = b[q - 1][t - 1] + b[q - 1][t];
  }
  return b;
}

inline std::vector<double> run_min_kernel(const std::vector<double>& a,
                                          const std::vector<double>& b, Engine e) {
  switch (e) {
    case Engine::naive:
      return minconv_naive(a, b);
    case Engine::matmul:
      return minconv_via_matmul(a, b);
    default:
      return minconv_dominance(a, b);
  }
}

}  // namespace align_detail

// Maps `automatic` to a concrete engine and rejects engines a norm's route
// cannot use.
inline Engine resolve_engine(Engine engine, std::size_t n, bool allow_matmul) {
  if (engine == Engine::automatic) {
    return n >= 64 ? Engine::dominance : Engine::naive;
  }
  if (engine == Engine::matmul && !allow_matmul) {
    throw std::invalid_argument("align: the matmul engine only applies to the max norm");
  }
  return engine;
}

// Smallest and largest difference per shift from two padded (min,-)
// convolutions, plus the centered offset and its objective.
inline ShiftProfile linf_shift_profile(const Necklace& x, const Necklace& y,
                                       Engine engine = Engine::automatic) {
  align_detail::require_same_size(x, y, "linf_shift_profile");
  const std::size_t n = x.size();
  const Engine e = resolve_engine(engine, n, true);
  const double inf = std::numeric_limits<double>::infinity();

  const std::vector<double> yy = unroll_to_linear(y);
  const std::vector<double> yr(yy.rbegin(), yy.rend());
  std::vector<double> yrn(yr.size());
  for (std::size_t i = 0; i < yr.size(); ++i) yrn[i] = -yr[i];

  std::vector<double> xp(x.beads());
  xp.resize(2 * n, inf);
  std::vector<double> xn(n);
  for (std::size_t i = 0; i < n; ++i) xn[i] = -x.bead(i);
  xn.resize(2 * n, inf);

  const std::vector<double> lo_conv = align_detail::run_min_kernel(xp, yr, e);
  const std::vector<double> hi_conv = align_detail::run_min_kernel(xn, yrn, e);

  ShiftProfile prof;
  prof.min_diff.resize(n);
  prof.max_diff.resize(n);
  prof.offset.resize(n);
  prof.objective.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t idx = n + (n - 1 - s);
    const double lo = lo_conv[idx];
    const double hi = -hi_conv[idx];
    prof.min_diff[s] = lo;
    prof.max_diff[s] = hi;
    const auto [c, obj] = optimal_offset_linf(lo, hi);
    prof.offset[s] = c;
    prof.objective[s] = obj;
  }
  return prof;
}

// Median difference per shift from one (median,-) convolution over a
// sentinel-padded instance: every real difference appears twice and the pad
// contributes balanced +inf/-inf pairs, so the window median at the probe
// entry is exactly the lower median of the shift's differences.
inline ShiftProfile l1_shift_profile(const Necklace& x, const Necklace& y,
                                     Engine engine = Engine::automatic) {
  align_detail::require_same_size(x, y, "l1_shift_profile");
  const std::size_t n = x.size();
  const Engine e = resolve_engine(engine, n, false);
  const double inf = std::numeric_limits<double>::infinity();

  const std::vector<double> yy = unroll_to_linear(y);
  std::vector<double> xprime(4 * n), yprime(4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    xprime[2 * i] = x.bead(i);
    xprime[2 * i + 1] = x.bead(i);
    xprime[2 * n + 2 * i] = inf;
    xprime[2 * n + 2 * i + 1] = -inf;
  }
  for (std::size_t u = 0; u < 2 * n; ++u) {
    const double v = yy[2 * n - 1 - u];
    yprime[2 * u] = v;
    yprime[2 * u + 1] = v;
  }

  const std::vector<double> med = e == Engine::naive
                                      ? medconv_naive(xprime, yprime)
                                      : medconv_dominance(xprime, yprime, MedianBlockParams{});

  ShiftProfile prof;
  prof.median_diff.resize(n);
  prof.offset.resize(n);
  prof.objective.resize(n);
  std::vector<double> z(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t idx = 2 * (n + (n - 1 - s)) + 1;
    const double m = med[idx];
    const double c = optimal_offset_l1(m);
    for (std::size_t i = 0; i < n; ++i) z[i] = x.bead(i) - yy[i + s];
    prof.median_diff[s] = m;
    prof.offset[s] = c;
    prof.objective[s] = align_detail::objective_for_diffs(z, c, Norm::l1());
  }
  return prof;
}

namespace align_detail {

inline AlignmentSolution pick_best(const ShiftProfile& prof, const Norm& norm) {
  std::size_t best_s = 0;
  for (std::size_t s = 1; s < prof.objective.size(); ++s) {
    if (prof.objective[s] < prof.objective[best_s]) best_s = s;
  }
  return {static_cast<std::int64_t>(best_s), mod1(prof.offset[best_s]), prof.objective[best_s],
          norm};
}

}  // namespace align_detail

inline AlignmentSolution linf_align(const Necklace& x, const Necklace& y,
                                    Engine engine = Engine::automatic) {
  return align_detail::pick_best(linf_shift_profile(x, y, engine), Norm::linf());
}

inline AlignmentSolution l1_align(const Necklace& x, const Necklace& y,
                                  Engine engine = Engine::automatic) {
  return align_detail::pick_best(l1_shift_profile(x, y, engine), Norm::l1());
}

// l2: per shift, sum of squared deviations at the optimal offset is
// sum z^2 - (sum z)^2 / n, and the only shift-dependent pieces are prefix
// sums plus one cross-correlation, estimated by FFT. Shifts whose estimate
// lands within a safety window of the best are recomputed exactly.
inline AlignmentSolution l2_align(const Necklace& x, const Necklace& y) {
  align_detail::require_same_size(x, y, "l2_align");
  const std::size_t n = x.size();
  const std::vector<double> yy = unroll_to_linear(y);
  const std::vector<double> ryy(yy.rbegin(), yy.rend());
  const std::vector<double> corr = convolve_sum_product(x.beads(), ryy);

  std::vector<double> p1(2 * n + 1, 0.0), p2(2 * n + 1, 0.0);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    p1[i + 1] = p1[i] + yy[i];
    p2[i + 1] = p2[i] + yy[i] * yy[i];
  }
  double sx = 0.0, sx2 = 0.0;
  for (double v : x.beads()) {
    sx += v;
    sx2 += v * v;
  }

  std::vector<double> obj_est(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double w1 = p1[s + n] - p1[s];
    const double w2 = p2[s + n] - p2[s];
    const double cr = corr[2 * n - 1 - s];
    const double sz = sx - w1;
    const double sz2 = sx2 - 2.0 * cr + w2;
    obj_est[s] = sz2 - sz * sz / static_cast<double>(n);
  }
  double best_est = obj_est[0];
  for (double v : obj_est) best_est = std::min(best_est, v);
  const double window =
      1e-5 * (1.0 + std::abs(best_est)) + 1e-10 * (1.0 + static_cast<double>(n));

  AlignmentSolution best{0, 0.0, std::numeric_limits<double>::infinity(), Norm::l2()};
  std::vector<double> z(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (obj_est[s] > best_est + window) continue;
    double sz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = x.bead(i) - yy[i + s];
      sz += z[i];
    }
    const double c = -sz / static_cast<double>(n);
    const double obj = align_detail::objective_for_diffs(z, c, Norm::l2());
    if (obj < best.objective) {
      best.shift = static_cast<std::int64_t>(s);
      best.offset = align_detail::mod1(c);
      best.objective = obj;
    }
  }
  return best;
}

// Even p: the per-shift objective is the degree-p polynomial
//   sum over j of binom(p, j) S_{p-j}(s) c^j,  S_q(s) = sum of z_i^q,
// whose power sums expand into cross-correlations of coordinate powers, all
// estimated by FFT at once. Candidate shifts are then recomputed exactly
// from directly evaluated power sums.
inline AlignmentSolution lp_even_align(const Necklace& x, const Necklace& y, int p) {
  const Norm norm = Norm::lp(p);
  if (p == 2) {
    AlignmentSolution r = l2_align(x, y);
    r.norm = norm;
    return r;
  }
  align_detail::require_same_size(x, y, "lp_even_align");
  const std::size_t n = x.size();
  const std::vector<double> yy = unroll_to_linear(y);
  const std::vector<double> ryy(yy.rbegin(), yy.rend());
  const auto binom = align_detail::binomials(p);

  // cross[a][b][2n-1-s] = sum over i of x_i^a * yy_{i+s}^b, for a+b <= p.
  std::vector<std::vector<double>> xpow(p + 1), rpow(p + 1);
  xpow[0].assign(n, 1.0);
  rpow[0].assign(2 * n, 1.0);
  for (int q = 1; q <= p; ++q) {
    xpow[q].resize(n);
    rpow[q].resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) xpow[q][i] = xpow[q - 1][i] * x.bead(i);
    for (std::size_t i = 0; i < 2 * n; ++i) rpow[q][i] = rpow[q - 1][i] * ryy[i];
  }
  std::vector<std::vector<std::vector<double>>> cross(p + 1);
  for (int a = 0; a <= p; ++a) {
    cross[a].resize(p - a + 1);
    for (int b = 0; a + b <= p; ++b) cross[a][b] = convolve_sum_product(xpow[a], rpow[b]);
  }

  std::vector<double> obj_est(n), err_est(n);
  std::vector<double> power_sum(p + 1), coef(p + 1);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t m = 2 * n - 1 - s;
    for (int q = 0; q <= p; ++q) {
      double acc = 0.0;
      double sign = (q % 2 == 0) ? 1.0 : -1.0;  // (-1)^(q-t) for t = 0
      for (int t = 0; t <= q; ++t) {
        acc += binom[q][t] * sign * cross[t][q - t][m];
        sign = -sign;
      }
      power_sum[q] = acc;
    }
    double eb = 0.0;
    for (int j = 0; j <= p; ++j) {
      coef[j] = binom[p][j] * power_sum[p - j];
      eb += std::abs(coef[j]) * align_detail::ipow(2.0, j);
    }
    const double c = align_detail::even_p_offset_poly(coef, p);
    obj_est[s] = align_detail::horner(coef, c);
    err_est[s] = 1e-12 * eb;
  }

  std::size_t best_est_s = 0;
  for (std::size_t s = 1; s < n; ++s) {
    if (obj_est[s] < obj_est[best_est_s]) best_est_s = s;
  }
  const double best_est = obj_est[best_est_s];

  AlignmentSolution best{0, 0.0, std::numeric_limits<double>::infinity(), norm};
  std::vector<double> z(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double window =
        1e-5 * (1.0 + std::abs(best_est)) + err_est[s] + err_est[best_est_s];
    if (obj_est[s] > best_est + window) continue;
    for (std::size_t i = 0; i < n; ++i) z[i] = x.bead(i) - yy[i + s];
    // The direct derivative sum stays sign-accurate arbitrarily close to the
    // root (each term is a power of a small exact difference), unlike the
    // expanded-coefficient form, whose evaluation noise floor would blur the
    // offset near flat optima.
    const double c = align_detail::even_p_offset_direct(z, p);
    const double obj = align_detail::objective_for_diffs(z, c, norm);
    if (obj < best.objective) {
      best.shift = static_cast<std::int64_t>(s);
      best.offset = align_detail::mod1(c);
      best.objective = obj;
    }
  }
  return best;
}

// Quadratic reference: for every shift, compute the differences directly,
// solve the one-dimensional offset problem, and keep the best shift.
inline AlignmentSolution brute_force_align(const Necklace& x, const Necklace& y,
                                           const Norm& norm) {
  align_detail::require_same_size(x, y, "brute_force_align");
  const std::size_t n = x.size();
  const std::vector<double> yy = unroll_to_linear(y);

  AlignmentSolution best{0, 0.0, std::numeric_limits<double>::infinity(), norm};
  std::vector<double> z(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x.bead(i) - yy[i + s];
    double c = 0.0;
    switch (norm.kind) {
      case NormKind::l1:
        c = -align_detail::lower_median(z);
        break;
      case NormKind::l2: {
        double sz = 0.0;
        for (double v : z) sz += v;
        c = -sz / static_cast<double>(n);
        break;
      }
      case NormKind::lp_even:
        c = align_detail::even_p_offset_direct(z, norm.p);
        break;
      case NormKind::linf: {
        const auto [mn, mx] = std::minmax_element(z.begin(), z.end());
        c = -(*mn + *mx) / 2.0;
        break;
      }
    }
    const double obj = align_detail::objective_for_diffs(z, c, norm);
    if (obj < best.objective) {
      best.shift = static_cast<std::int64_t>(s);
      best.offset = align_detail::mod1(c);
      best.objective = obj;
    }
  }
  return best;
}

inline AlignmentSolution align(const Necklace& x, const Necklace& y, const Norm& norm,
                               Engine engine = Engine::automatic) {
  switch (norm.kind) {
    case NormKind::linf:
      return linf_align(x, y, engine);
    case NormKind::l1:
      return l1_align(x, y, engine);
    case NormKind::l2:
      if (engine != Engine::automatic) {
        throw std::invalid_argument("align: the l2 route has a single engine");
      }
      return l2_align(x, y);
    case NormKind::lp_even:
      if (engine != Engine::automatic) {
        throw std::invalid_argument("align: the even-p route has a single engine");
      }
      return lp_even_align(x, y, norm.p);
  }
  throw std::logic_error("align: unreachable");
}

}  // namespace necklace
