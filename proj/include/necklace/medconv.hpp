#pragma once
// (median,-) prefix convolution.
//
// Entry k is the lower median (rank ceil(m/2) of the m = k+1 values) of
// x[i] - y[k-i] over i in [0, k]. The subquadratic kernel splits x into
// blocks of width d; for every clean (block, window) cell the descending
// order of its d differences is one of the d! permutations of the offsets,
// and one dominance-pair pass per permutation labels all cells at once. Each
// output entry then reads its blocks as ascending runs, materializing
// nothing, and a k-way rank selection extracts the median. Cells a pass
// could not label cleanly fall back to sorting their d values directly.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "necklace/counters.hpp"
#include "necklace/dominance.hpp"
#include "necklace/minconv.hpp"
#include "necklace/parallel.hpp"
#include "necklace/select.hpp"

namespace necklace {

struct MedianBlockParams {
  // Block width; 0 derives one from n. Hard cap 6: the label table has one
  // entry per permutation of the block offsets.
  int d = 0;
  int naive_cutoff = 64;
  DominanceParams dominance{};
  SelectParams select{};
};

// Direct quadratic kernel: per entry, materialize the window and select.
inline std::vector<double> medconv_naive(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  conv_detail::validate_minus_form(x, y, "medconv");
  const std::size_t n = x.size();
  std::vector<double> z(n);
  std::vector<double> buf;
  buf.reserve(n);
  // Fixed-seed shuffling decorrelates the pivot paths of overlapping
  // windows, so the counted selection cost concentrates at its expectation
  // instead of swinging with whole-instance layout. Counts stay a pure
  // function of the input.
  std::mt19937 mix(0x9E3779B9u);
  for (std::size_t k = 0; k < n; ++k) {
    buf.clear();
    for (std::size_t i = 0; i <= k; ++i) {
      cost::count_arith();
      buf.push_back(x[i] - y[k - i]);
    }
    std::shuffle(buf.begin(), buf.end(), mix);
    const auto nth = buf.begin() + ((k + 2) / 2 - 1);
    std::nth_element(buf.begin(), nth, buf.end(), select_detail::counted_less);
    z[k] = *nth;
  }
  return z;
}

// Cell labels for the block kernel: which permutation sorts each clean
// (block, window) cell descending, ties toward the smaller offset.
struct PermutationTable {
  static constexpr std::int32_t kEmpty = -1;
  static constexpr std::int32_t kConflict = -2;

  int d = 1;
  std::size_t nb = 0;
  std::size_t n = 0;
  std::vector<std::uint8_t> perms;  // d! rows of d offsets, descending order
  std::vector<std::uint8_t> asc;    // the same rows reversed
  std::vector<char> block_clean;
  std::vector<char> window_ok;

  std::size_t permutation_count() const { return d == 0 ? 0 : perms.size() / d; }

  std::int32_t id_at(std::size_t b, std::size_t j) const {
    if (d == 1) return 0;
    const std::size_t idx = b * n + j;
    if (!wide.empty()) {
      const std::uint16_t v = wide[idx];
      if (v == 0xFFFF) return kEmpty;
      if (v == 0xFFFE) return kConflict;
      return v;
    }
    const std::uint8_t v = narrow[idx];
    if (v == 0xFF) return kEmpty;
    if (v == 0xFE) return kConflict;
    return v;
  }

  const std::uint8_t* ascending_row(std::int32_t id) const {
    return &asc[static_cast<std::size_t>(id) * d];
  }

  // One of these holds the labels, depending on how many fit in a byte.
  std::vector<std::uint8_t> narrow;
  std::vector<std::uint16_t> wide;
};

namespace medconv_detail {

// Write-once label store; a second writer downgrades the cell to "conflict",
// which the assembly handles directly. Conflicts can only arise when the
// pass-side difference comparisons round inconsistently on float inputs.
template <class Word>
inline void claim_cell(std::vector<Word>& cells, std::size_t idx, std::size_t id) {
  const Word empty = static_cast<Word>(~Word{0});
  const Word conflict = static_cast<Word>(empty - 1);
  std::atomic_ref<Word> cell(cells[idx]);
  const Word prev = cell.exchange(static_cast<Word>(id), std::memory_order_relaxed);
  if (prev != empty) cell.store(conflict, std::memory_order_relaxed);
}

}  // namespace medconv_detail

// Labels every clean cell with its sorting permutation via one dominance
// pass per permutation: a permutation pi fits a cell exactly when, for each
// consecutive offset pair, the x-side difference beats the y-side difference
// (strictly where pi's order disagrees with the index order).
inline PermutationTable build_permutation_table(const std::vector<double>& x,
                                                const std::vector<double>& y, int d,
                                                const DominanceParams& dparams = {}) {
  conv_detail::validate_minus_form(x, y, "medconv");
  if (d < 1 || d > 6) throw std::invalid_argument("medconv: block width must be in [1, 6]");
  const std::size_t n = x.size();
  const std::size_t dd = static_cast<std::size_t>(d);

  PermutationTable table;
  table.d = d;
  table.n = n;
  table.nb = (n + dd - 1) / dd;
  table.block_clean = conv_detail::clean_block_flags(x, dd);
  table.window_ok = conv_detail::clean_window_flags(y, dd);

  std::vector<std::uint8_t> row(dd);
  std::iota(row.begin(), row.end(), std::uint8_t{0});
  do {
    table.perms.insert(table.perms.end(), row.begin(), row.end());
  } while (std::next_permutation(row.begin(), row.end()));
  table.asc.resize(table.perms.size());
  const std::size_t nperm = table.permutation_count();
  for (std::size_t id = 0; id < nperm; ++id) {
    for (std::size_t t = 0; t < dd; ++t) {
      table.asc[id * dd + t] = table.perms[id * dd + (dd - 1 - t)];
    }
  }
  if (d == 1) return table;

  const bool use_wide = nperm > 250;
  if (use_wide) {
    table.wide.assign(table.nb * n, 0xFFFF);
  } else {
    table.narrow.assign(table.nb * n, 0xFF);
  }

  std::vector<std::int32_t> clean_blocks, clean_js;
  for (std::size_t b = 0; b < table.nb; ++b) {
    if (table.block_clean[b]) clean_blocks.push_back(static_cast<std::int32_t>(b));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (table.window_ok[j]) clean_js.push_back(static_cast<std::int32_t>(j));
  }
  if (clean_blocks.empty() || clean_js.empty()) return table;

  const int dims = d - 1;
  const std::size_t nred = clean_blocks.size();
  par::run_tasks(nperm, [&](std::size_t id) {
    const std::uint8_t* pi = &table.perms[id * dd];
    std::vector<dominance_detail::Coord> coords((nred + clean_js.size()) *
                                                static_cast<std::size_t>(dims));
    std::vector<std::int32_t> reds(nred), blues(clean_js.size());
    for (std::size_t t = 0; t < nred; ++t) {
      const std::size_t lam = static_cast<std::size_t>(clean_blocks[t]) * dd;
      dominance_detail::Coord* out = &coords[t * dims];
      for (int c = 0; c < dims; ++c) {
        const int a = pi[c], b = pi[c + 1];
        cost::count_arith();
        out[c] = {x[lam + a] - x[lam + b], a < b ? 1 : 0};
      }
      reds[t] = static_cast<std::int32_t>(t);
    }
    for (std::size_t t = 0; t < clean_js.size(); ++t) {
      const std::size_t j = static_cast<std::size_t>(clean_js[t]);
      dominance_detail::Coord* out = &coords[(nred + t) * dims];
      for (int c = 0; c < dims; ++c) {
        const int a = pi[c], b = pi[c + 1];
        cost::count_arith();
        out[c] = {y[j - a] - y[j - b], 1};
      }
      blues[t] = static_cast<std::int32_t>(nred + t);
    }
    auto sink = [&](std::int32_t r, std::int32_t bi) {
      const std::size_t b = static_cast<std::size_t>(clean_blocks[r]);
      const std::size_t j = static_cast<std::size_t>(clean_js[bi - nred]);
      if (b * dd + j < n) {
        if (use_wide) {
          medconv_detail::claim_cell(table.wide, b * n + j, id);
        } else {
          medconv_detail::claim_cell(table.narrow, b * n + j, id);
        }
      }
    };
    dominance_detail::PairEngine<decltype(sink)> engine(coords.data(), dims, dparams, sink);
    engine.run(reds, blues);
  });
  return table;
}

// The block width the subquadratic kernel would use for length n.
inline int resolved_median_block_width(const MedianBlockParams& params, std::size_t n) {
  int d = params.d;
  if (d == 0) {
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 4)));
    const double llg = std::log2(lg);
    d = std::clamp(static_cast<int>(lg / llg), 2, 5);
  }
  if (d < 1 || d > 6) throw std::invalid_argument("medconv: block width must be in [1, 6]");
  return d;
}

// Block kernel. Exact for every input the direct kernel accepts.
inline std::vector<double> medconv_dominance(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const MedianBlockParams& params = {}) {
  conv_detail::validate_minus_form(x, y, "medconv");
  const std::size_t n = x.size();
  if (n < static_cast<std::size_t>(std::max(params.naive_cutoff, 1))) return medconv_naive(x, y);

  const int d = resolved_median_block_width(params, n);
  const PermutationTable table = build_permutation_table(x, y, d, params.dominance);
  const std::size_t dd = static_cast<std::size_t>(d);

  // A run is either a labeled cell read through its ascending permutation or
  // a slice of sorted materialized differences.
  struct RunView {
    std::int64_t lam = -1;
    const std::uint8_t* asc = nullptr;
    std::int64_t off = -1;
  };
  std::vector<double> z(n);
  std::vector<RunView> runs;
  std::vector<std::int64_t> lens;
  std::vector<double> matbuf;
  select_detail::Scratch ws;

  for (std::size_t k = 0; k < n; ++k) {
    runs.clear();
    lens.clear();
    matbuf.clear();
    const std::size_t nfull = (k + 1) / dd;
    for (std::size_t b = 0; b < nfull; ++b) {
      const std::size_t lam = b * dd;
      const std::size_t j = k - lam;
      std::int32_t id = PermutationTable::kEmpty;
      if (table.block_clean[b] && table.window_ok[j]) id = table.id_at(b, j);
      if (id >= 0) {
        runs.push_back({static_cast<std::int64_t>(lam), table.ascending_row(id), -1});
        lens.push_back(d);
        continue;
      }
      const std::size_t off = matbuf.size();
      for (std::size_t dp = 0; dp < dd; ++dp) {
        cost::count_arith();
        matbuf.push_back(x[lam + dp] - y[j - dp]);
      }
      std::sort(matbuf.begin() + off, matbuf.end(), select_detail::counted_less);
      runs.push_back({-1, nullptr, static_cast<std::int64_t>(off)});
      lens.push_back(d);
    }
    if (nfull * dd <= k) {
      const std::size_t off = matbuf.size();
      for (std::size_t t = nfull * dd; t <= k; ++t) {
        cost::count_arith();
        matbuf.push_back(x[t] - y[k - t]);
      }
      std::sort(matbuf.begin() + off, matbuf.end(), select_detail::counted_less);
      runs.push_back({-1, nullptr, static_cast<std::int64_t>(off)});
      lens.push_back(static_cast<std::int64_t>(k + 1 - nfull * dd));
    }

    const auto at = [&](std::int32_t t, std::int64_t r) -> double {
      const RunView& rv = runs[static_cast<std::size_t>(t)];
      if (rv.lam >= 0) {
        const std::size_t dp = rv.asc[r];
        cost::count_arith();
        return x[rv.lam + dp] - y[k - rv.lam - dp];
      }
      return matbuf[static_cast<std::size_t>(rv.off + r)];
    };
    z[k] = select_detail::select_rank(lens.data(), runs.size(),
                                      static_cast<std::int64_t>((k + 2) / 2), at, params.select,
                                      ws);
  }
  return z;
}

}  // namespace necklace
