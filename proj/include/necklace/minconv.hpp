#pragma once
// (min,-) and (max,-) prefix convolutions.
//
// For equal-length inputs x and y, entry k of the (min,-) convolution is
//   z[k] = min over i in [0,k] of x[i] - y[k-i]
// and (max,-) is the mirror image. The direct kernels cost one counted
// comparison per candidate term. The subquadratic kernel splits x into
// blocks of width d, precomputes for every (block, window) cell which
// in-block offset wins via d dominance-pair passes in d-1 dimensions, and
// then assembles each output entry from one candidate per block.
//
// Entries may be +inf or -inf. A difference of same-signed infinities inside
// the requested index range is reported as a domain error up front.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "necklace/counters.hpp"
#include "necklace/dominance.hpp"
#include "necklace/parallel.hpp"

namespace necklace {

struct BlockParams {
  // Block width. Zero derives max(1, floor(alpha * lg n)), the width at
  // which the pass cost and the assembly cost balance.
  int d = 0;
  double alpha = 1.0;
  // Inputs shorter than this go straight to the direct kernel.
  int naive_cutoff = 64;
  DominanceParams dominance{};
};

namespace conv_detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::size_t first_index_of(const std::vector<double>& v, double target) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == target) return i;
  }
  return static_cast<std::size_t>(-1);
}

// The kernels form x[i] - y[j] exactly for the index pairs with i + j < n.
// Rejects NaN entries and any in-range difference of same-signed infinities.
inline void validate_minus_form(const std::vector<double>& x, const std::vector<double>& y,
                                const char* op) {
  const std::string name(op);
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument(name + ": inputs must be nonempty and equal length");
  }
  for (double v : x) {
    if (v != v) throw std::invalid_argument(name + ": NaN entry in left input");
  }
  for (double v : y) {
    if (v != v) throw std::invalid_argument(name + ": NaN entry in right input");
  }
  const std::size_t n = x.size();
  const std::size_t px = first_index_of(x, kInf);
  const std::size_t py = first_index_of(y, kInf);
  if (px != static_cast<std::size_t>(-1) && py != static_cast<std::size_t>(-1) && px + py < n) {
    throw std::domain_error(name + ": +inf minus +inf inside the output range");
  }
  const std::size_t mx = first_index_of(x, -kInf);
  const std::size_t my = first_index_of(y, -kInf);
  if (mx != static_cast<std::size_t>(-1) && my != static_cast<std::size_t>(-1) && mx + my < n) {
    throw std::domain_error(name + ": -inf minus -inf inside the output range");
  }
}

inline std::vector<double> negated(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

inline int resolve_block_width(const BlockParams& p, std::size_t n) {
  int d = p.d;
  if (d <= 0) {
    const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 1.0;
    d = static_cast<int>(p.alpha * lg);
  }
  d = std::max(d, 1);
  d = std::min<long long>(d, static_cast<long long>(n));
  // The winner table stores offsets in a byte with 0xFF reserved as "empty".
  return std::min(d, 254);
}

// A block of x is clean when it has full width d and only finite entries.
inline std::vector<char> clean_block_flags(const std::vector<double>& x, std::size_t d) {
  const std::size_t n = x.size();
  const std::size_t nb = (n + d - 1) / d;
  std::vector<char> clean(nb, 0);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lam = b * d;
    const std::size_t width = std::min(d, n - lam);
    bool ok = width == d;
    for (std::size_t t = 0; ok && t < width; ++t) ok = x[lam + t] - x[lam + t] == 0.0;
    clean[b] = ok ? 1 : 0;
  }
  return clean;
}

inline std::vector<char> posinf_block_flags(const std::vector<double>& x, std::size_t d) {
  const std::size_t n = x.size();
  const std::size_t nb = (n + d - 1) / d;
  std::vector<char> posinf(nb, 0);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lam = b * d;
    const std::size_t width = std::min(d, n - lam);
    bool all = true;
    for (std::size_t t = 0; all && t < width; ++t) all = x[lam + t] == kInf;
    posinf[b] = all ? 1 : 0;
  }
  return posinf;
}

// Window position j of y is clean when the full window y[j-d+1..j] exists
// and is finite.
inline std::vector<char> clean_window_flags(const std::vector<double>& y, std::size_t d) {
  const std::size_t n = y.size();
  std::vector<char> ok(n, 0);
  std::size_t bad = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (y[j] - y[j] != 0.0) ++bad;
    if (j >= d && y[j - d] - y[j - d] != 0.0) --bad;
    if (j + 1 >= d && bad == 0) ok[j] = 1;
  }
  return ok;
}

}  // namespace conv_detail

// The block width the subquadratic kernel would use for length n.
inline int resolved_block_width(const BlockParams& params, std::size_t n) {
  return conv_detail::resolve_block_width(params, n);
}

// Direct quadratic kernel: one counted comparison per candidate term.
inline std::vector<double> minconv_naive(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  conv_detail::validate_minus_form(x, y, "minconv");
  const std::size_t n = x.size();
  std::vector<double> z(n, conv_detail::kInf);
  for (std::size_t k = 0; k < n; ++k) {
    double best = conv_detail::kInf;
    for (std::size_t i = 0; i <= k; ++i) {
      cost::count_arith();
      const double cand = x[i] - y[k - i];
      cost::count_cmp();
      if (cand < best) best = cand;
    }
    z[k] = best;
  }
  return z;
}

inline std::vector<double> maxconv_naive(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  conv_detail::validate_minus_form(x, y, "maxconv");
  const std::size_t n = x.size();
  std::vector<double> z(n, -conv_detail::kInf);
  for (std::size_t k = 0; k < n; ++k) {
    double best = -conv_detail::kInf;
    for (std::size_t i = 0; i <= k; ++i) {
      cost::count_arith();
      const double cand = x[i] - y[k - i];
      cost::count_cmp();
      if (cand > best) best = cand;
    }
    z[k] = best;
  }
  return z;
}

// Block-decomposition kernel. Exact for every input the direct kernel
// accepts, including infinities; subquadratic comparison count for finite
// inputs when d grows like lg n.
inline std::vector<double> minconv_dominance(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const BlockParams& params = {}) {
  conv_detail::validate_minus_form(x, y, "minconv");
  const std::size_t n = x.size();
  if (n < static_cast<std::size_t>(std::max(params.naive_cutoff, 1))) return minconv_naive(x, y);

  const int d = conv_detail::resolve_block_width(params, n);
  const std::size_t dd = static_cast<std::size_t>(d);
  const std::size_t nb = (n + dd - 1) / dd;

  // A block of +inf entries can never supply a minimum and is skipped
  // outright; clean blocks take the table path, everything else is direct.
  const std::vector<char> block_clean = conv_detail::clean_block_flags(x, dd);
  const std::vector<char> block_skip = conv_detail::posinf_block_flags(x, dd);
  const std::vector<char> y_ok = conv_detail::clean_window_flags(y, dd);

  const bool use_table = d >= 2;
  std::vector<std::uint8_t> winner;
  if (use_table) {
    std::vector<std::int32_t> clean_blocks, clean_js;
    for (std::size_t b = 0; b < nb; ++b) {
      if (block_clean[b]) clean_blocks.push_back(static_cast<std::int32_t>(b));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (y_ok[j]) clean_js.push_back(static_cast<std::int32_t>(j));
    }
    winner.assign(nb * n, 0xFF);

    if (!clean_blocks.empty() && !clean_js.empty()) {
      const int dims = d - 1;
      const std::size_t nr = clean_js.size();
      // Pass delta decides, for every clean cell, whether in-block offset
      // delta beats all others. Window positions are red, blocks are blue;
      // the tag bit makes ties resolve toward the smaller offset.
      par::run_tasks(dd, [&](std::size_t delta_task) {
        const int delta = static_cast<int>(delta_task);
        std::vector<dominance_detail::Coord> coords((nr + clean_blocks.size()) *
                                                    static_cast<std::size_t>(dims));
        std::vector<std::int32_t> reds(nr), blues(clean_blocks.size());
        for (std::size_t t = 0; t < nr; ++t) {
          const std::size_t j = static_cast<std::size_t>(clean_js[t]);
          dominance_detail::Coord* row = &coords[t * dims];
          int c = 0;
          for (int dp = 0; dp < d; ++dp) {
            if (dp == delta) continue;
            cost::count_arith();
            row[c++] = {y[j - delta] - y[j - dp], 0};
          }
          reds[t] = static_cast<std::int32_t>(t);
        }
        for (std::size_t t = 0; t < clean_blocks.size(); ++t) {
          const std::size_t lam = static_cast<std::size_t>(clean_blocks[t]) * dd;
          dominance_detail::Coord* row = &coords[(nr + t) * dims];
          int c = 0;
          for (int dp = 0; dp < d; ++dp) {
            if (dp == delta) continue;
            cost::count_arith();
            row[c++] = {x[lam + delta] - x[lam + dp], dp > delta ? 0 : 1};
          }
          blues[t] = static_cast<std::int32_t>(nr + t);
        }
        auto sink = [&](std::int32_t r, std::int32_t bi) {
          const std::size_t j = static_cast<std::size_t>(clean_js[r]);
          const std::size_t b = static_cast<std::size_t>(clean_blocks[bi - nr]);
          if (b * dd + j < n) {
            std::atomic_ref<std::uint8_t> cell(winner[b * n + j]);
            const std::uint8_t prev =
                cell.exchange(static_cast<std::uint8_t>(delta), std::memory_order_relaxed);
            if (prev != 0xFF) throw std::logic_error("minconv: duplicate block winner");
          }
        };
        dominance_detail::PairEngine<decltype(sink)> engine(coords.data(), dims,
                                                            params.dominance, sink);
        engine.run(reds, blues);
      });
    }
  }

  std::vector<double> z(n, conv_detail::kInf);
  for (std::size_t k = 0; k < n; ++k) {
    double best = conv_detail::kInf;
    const std::size_t bmax = k / dd;
    for (std::size_t b = 0; b <= bmax; ++b) {
      const std::size_t lam = b * dd;
      const std::size_t j = k - lam;
      std::size_t lim = 0;
      if (use_table && block_clean[b] && y_ok[j]) {
        const std::size_t delta = winner[b * n + j];
        if (delta != 0xFF) {
          cost::count_arith();
          const double cand = x[lam + delta] - y[j - delta];
          cost::count_cmp();
          if (cand < best) best = cand;
          continue;
        }
        // No offset beat every other: pairwise difference comparisons can
        // round inconsistently at ulp scale on adversarial float inputs.
        // Scanning the cell directly keeps the result exact.
        lim = dd;
      } else if (block_skip[b]) {
        continue;
      } else {
        lim = std::min(std::min(dd, n - lam), j + 1);
      }
      for (std::size_t dp = 0; dp < lim; ++dp) {
        cost::count_arith();
        const double cand = x[lam + dp] - y[j - dp];
        cost::count_cmp();
        if (cand < best) best = cand;
      }
    }
    z[k] = best;
  }
  return z;
}

// (max,-) by duality: max(x - y) = -min((-x) - (-y)).
inline std::vector<double> maxconv_dominance(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const BlockParams& params = {}) {
  conv_detail::validate_minus_form(x, y, "maxconv");
  std::vector<double> z =
      minconv_dominance(conv_detail::negated(x), conv_detail::negated(y), params);
  for (double& v : z) v = -v;
  return z;
}

}  // namespace necklace
