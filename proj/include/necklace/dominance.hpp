#pragma once
// Bichromatic dominance-pair reporting in d dimensions.
//
// A red point r dominates a blue point b when r >= b coordinatewise under a
// lexicographic (value, tag) order; the integer tag lets callers encode
// strict-versus-weak comparisons per coordinate without perturbing values.
// The engine recurses on the median of the current coordinate: strictly-low
// pairs and strictly-high pairs stay in the same dimension, while the
// red-high/blue-low cross product drops one dimension. Every comparison of
// point coordinates goes through a counted three-way compare, so the cost
// model of the block kernels is measurable end to end.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "necklace/counters.hpp"
#include "necklace/extended_real.hpp"

namespace necklace {

struct DominanceParams {
  // Below this many points of both colors combined per side, recursion stops
  // and pairs are reported by direct comparison.
  int base_threshold = 32;
};

enum class PointColor { red, blue };

struct LabeledPoint {
  std::vector<ExtendedReal> coords;
  PointColor color = PointColor::red;
  std::int64_t owner = 0;
};

struct DominancePair {
  std::int64_t red_owner = 0;
  std::int64_t blue_owner = 0;
  friend auto operator<=>(const DominancePair&, const DominancePair&) = default;
};

namespace dominance_detail {

// One coordinate of an engine point: a finite value plus a tie tag compared
// lexicographically. Tags break value ties so callers can realize strict
// comparisons ("red must exceed blue") inside a single weak-order engine.
struct Coord {
  double v = 0.0;
  std::int32_t tag = 0;
};

// Three-way compare; each call is one counted value comparison.
inline int cmp(Coord a, Coord b) {
  cost::count_cmp();
  if (a.v < b.v) return -1;
  if (a.v > b.v) return 1;
  if (a.tag < b.tag) return -1;
  if (a.tag > b.tag) return 1;
  return 0;
}

// Recursive divide-and-conquer over index spans into a shared coordinate
// matrix. Sink receives (red_index, blue_index) for every dominating pair.
template <class Sink>
class PairEngine {
 public:
  PairEngine(const Coord* coords, int dims, const DominanceParams& params, Sink& sink)
      : coords_(coords), dims_(dims), params_(params), sink_(sink) {}

  void run(std::vector<std::int32_t>& reds, std::vector<std::int32_t>& blues) {
    if (reds.empty() || blues.empty()) return;
    if (dims_ == 0) {
      // Zero remaining coordinates: every red dominates every blue.
      for (std::int32_t r : reds)
        for (std::int32_t b : blues) sink_(r, b);
      return;
    }
    solve(reds.data(), reds.size(), blues.data(), blues.size(), dims_ - 1);
  }

 private:
  Coord at(std::int32_t point, int dim) const {
    return coords_[static_cast<std::size_t>(point) * dims_ + dim];
  }

  void solve(std::int32_t* reds, std::size_t nr, std::int32_t* blues, std::size_t nb, int dim) {
    if (nr == 0 || nb == 0) return;
    if (dim == 0) {
      sweep(reds, nr, blues, nb);
      return;
    }
    if (nr <= static_cast<std::size_t>(params_.base_threshold) &&
        nb <= static_cast<std::size_t>(params_.base_threshold)) {
      brute(reds, nr, blues, nb, dim);
      return;
    }

    const Coord pivot = median_coord(reds, nr, blues, nb, dim);

    // Partition each color into strictly-low / equal / strictly-high bands.
    const auto [rlo, rle] = partition3(reds, nr, dim, pivot);
    const auto [blo, ble] = partition3(blues, nb, dim, pivot);

    // Low band and high band recurse in the same dimension; the bands are
    // strictly smaller than the union because the pivot is its median.
    solve(reds, rlo, blues, blo, dim);
    solve(reds + rle, nr - rle, blues + ble, nb - ble, dim);
    // Reds at-or-above the pivot dominate blues at-or-below it in this
    // coordinate, so only the remaining coordinates need checking.
    solve(reds + rlo, nr - rlo, blues, ble, dim - 1);
  }

  Coord median_coord(const std::int32_t* reds, std::size_t nr, const std::int32_t* blues,
                     std::size_t nb, int dim) {
    med_scratch_.clear();
    med_scratch_.reserve(nr + nb);
    for (std::size_t i = 0; i < nr; ++i) med_scratch_.push_back(at(reds[i], dim));
    for (std::size_t i = 0; i < nb; ++i) med_scratch_.push_back(at(blues[i], dim));
    auto mid = med_scratch_.begin() + (med_scratch_.size() / 2);
    std::nth_element(med_scratch_.begin(), mid, med_scratch_.end(),
                     [](Coord a, Coord b) { return cmp(a, b) < 0; });
    return *mid;
  }

  // Reorders [pts, pts+n) into [< pivot][== pivot][> pivot]; returns the two
  // band boundaries.
  std::pair<std::size_t, std::size_t> partition3(std::int32_t* pts, std::size_t n, int dim,
                                                 Coord pivot) {
    auto* lo = std::partition(pts, pts + n,
                              [&](std::int32_t p) { return cmp(at(p, dim), pivot) < 0; });
    auto* eq = std::partition(lo, pts + n,
                              [&](std::int32_t p) { return cmp(at(p, dim), pivot) == 0; });
    return {static_cast<std::size_t>(lo - pts), static_cast<std::size_t>(eq - pts)};
  }

  void brute(const std::int32_t* reds, std::size_t nr, const std::int32_t* blues, std::size_t nb,
             int dim) {
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        bool ok = true;
        for (int k = dim; k >= 0 && ok; --k) ok = cmp(at(reds[i], k), at(blues[j], k)) >= 0;
        if (ok) sink_(reds[i], blues[j]);
      }
    }
  }

  // One-dimensional case: sort both sides and sweep. Pair emission itself is
  // free; only the ordering comparisons count.
  void sweep(std::int32_t* reds, std::size_t nr, std::int32_t* blues, std::size_t nb) {
    auto less0 = [&](std::int32_t a, std::int32_t b) { return cmp(at(a, 0), at(b, 0)) < 0; };
    std::sort(reds, reds + nr, less0);
    std::sort(blues, blues + nb, less0);
    std::size_t lo = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      while (lo < nr && cmp(at(reds[lo], 0), at(blues[j], 0)) < 0) ++lo;
      for (std::size_t t = lo; t < nr; ++t) sink_(reds[t], blues[j]);
    }
  }

  const Coord* coords_;
  int dims_;
  DominanceParams params_;
  Sink& sink_;
  std::vector<Coord> med_scratch_;
};

inline void validate_points(const std::vector<LabeledPoint>& points, int d) {
  if (d < 1) throw std::invalid_argument("dominance_pairs: dimension must be at least 1");
  for (const auto& p : points) {
    if (static_cast<int>(p.coords.size()) != d) {
      throw std::invalid_argument("dominance_pairs: point arity does not match dimension");
    }
  }
}

inline std::vector<DominancePair> finalize(std::vector<DominancePair>&& out) {
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return std::move(out);
}

}  // namespace dominance_detail

// Reports every (red owner, blue owner) pair where the red point is
// coordinatewise >= the blue point. Output is sorted and deduplicated by
// owner pair. Infinite coordinates are permitted and ordered in the obvious
// way.
inline std::vector<DominancePair> dominance_pairs(const std::vector<LabeledPoint>& points, int d,
                                                  const DominanceParams& params = {}) {
  dominance_detail::validate_points(points, d);
  if (params.base_threshold < 1) {
    throw std::invalid_argument("dominance_pairs: base_threshold must be at least 1");
  }

  const std::size_t np = points.size();
  std::vector<dominance_detail::Coord> coords(np * static_cast<std::size_t>(d));
  std::vector<std::int64_t> owner(np);
  std::vector<std::int32_t> reds, blues;
  for (std::size_t i = 0; i < np; ++i) {
    const auto& p = points[i];
    for (int k = 0; k < d; ++k) {
      // Infinities become huge-but-ordered sentinels inside the engine; the
      // tag field keeps +inf above every finite value and -inf below.
      const ExtendedReal& e = p.coords[k];
      dominance_detail::Coord c;
      if (e.is_finite()) {
        c = {e.value(), 0};
      } else if (e == ExtendedReal::pos_inf()) {
        c = {std::numeric_limits<double>::max(), 1};
      } else {
        c = {std::numeric_limits<double>::lowest(), -1};
      }
      coords[i * static_cast<std::size_t>(d) + k] = c;
    }
    owner[i] = p.owner;
    (p.color == PointColor::red ? reds : blues).push_back(static_cast<std::int32_t>(i));
  }

  std::vector<DominancePair> out;
  auto sink = [&](std::int32_t r, std::int32_t b) {
    out.push_back({owner[r], owner[b]});
  };
  dominance_detail::PairEngine<decltype(sink)> engine(coords.data(), d, params, sink);
  engine.run(reds, blues);
  return dominance_detail::finalize(std::move(out));
}

// Quadratic reference: compares every red against every blue directly on the
// ExtendedReal coordinates.
inline std::vector<DominancePair> dominance_pairs_naive(const std::vector<LabeledPoint>& points,
                                                        int d) {
  dominance_detail::validate_points(points, d);
  std::vector<DominancePair> out;
  for (const auto& r : points) {
    if (r.color != PointColor::red) continue;
    for (const auto& b : points) {
      if (b.color != PointColor::blue) continue;
      bool ok = true;
      for (int k = 0; k < d && ok; ++k) {
        cost::count_cmp();
        ok = r.coords[k] >= b.coords[k];
      }
      if (ok) out.push_back({r.owner, b.owner});
    }
  }
  return dominance_detail::finalize(std::move(out));
}

}  // namespace necklace
