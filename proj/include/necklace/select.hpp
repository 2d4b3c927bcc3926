#pragma once
// Rank selection over k sorted runs.
//
// The selector keeps one shrinking index window per run, picks a weighted
// median of the window midpoints as a pivot, locates the pivot in every
// window by binary search (with two cheap endpoint shortcuts), and discards
// at least a constant fraction of the remaining candidates per round. Runs
// are accessed only through an accessor, so callers can expose runs that are
// never materialized.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "necklace/counters.hpp"

namespace necklace {

struct SelectParams {
  // When at most this many candidates remain in total, gather them and
  // finish with a direct selection.
  int small_total = 32;
};

// Non-owning view of an ascending run.
struct SortedRun {
  const double* data = nullptr;
  std::int64_t len = 0;
};

struct SelectResult {
  double value = 0.0;
  std::vector<std::int64_t> lt_counts;  // per run: entries strictly below value
  std::vector<std::int64_t> le_counts;  // per run: entries at or below value
};

namespace select_detail {

inline bool counted_less(double a, double b) {
  cost::count_cmp();
  return a < b;
}

struct Scratch {
  std::vector<std::int64_t> wlo, whi;
  std::vector<std::int32_t> act;
  std::vector<std::int64_t> lt, le;
  std::vector<std::pair<double, std::int64_t>> mids;
  std::vector<double> gather;
};

// Weighted median of (value, weight) pairs, destructive. Any splitter between
// the weighted quartiles preserves the discard guarantee, so tie handling is
// deliberately loose.
inline double weighted_median(std::vector<std::pair<double, std::int64_t>>& items) {
  std::int64_t need = 0;
  for (const auto& it : items) need += it.second;
  need = (need + 1) / 2;
  const auto less_by_value = [](const std::pair<double, std::int64_t>& a,
                                const std::pair<double, std::int64_t>& b) {
    return counted_less(a.first, b.first);
  };
  std::size_t lo = 0, hi = items.size();
  while (hi - lo > 8) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(items.begin() + lo, items.begin() + mid, items.begin() + hi, less_by_value);
    std::int64_t wleft = 0;
    for (std::size_t t = lo; t <= mid; ++t) wleft += items[t].second;
    if (wleft >= need) {
      hi = mid + 1;
    } else {
      need -= wleft;
      lo = mid + 1;
    }
  }
  std::sort(items.begin() + lo, items.begin() + hi, less_by_value);
  for (std::size_t t = lo; t < hi; ++t) {
    need -= items[t].second;
    if (need <= 0) return items[t].first;
  }
  return items[hi - 1].first;
}

// rank-th smallest (1-based) of the union of `nruns` ascending runs with the
// given lengths, where at(run, index) yields the index-th value of a run.
template <class RunAt>
double select_rank(const std::int64_t* lens, std::size_t nruns, std::int64_t rank, RunAt&& at,
                   const SelectParams& params, Scratch& ws) {
  ws.wlo.assign(nruns, 0);
  ws.whi.assign(nruns, 0);
  ws.act.clear();
  std::int64_t remaining = 0;
  for (std::size_t t = 0; t < nruns; ++t) {
    ws.whi[t] = lens[t];
    remaining += lens[t];
    if (lens[t] > 0) ws.act.push_back(static_cast<std::int32_t>(t));
  }
  if (rank < 1 || rank > remaining) {
    throw std::invalid_argument("select_rank: rank out of range");
  }
  std::int64_t below = 0;

  for (int round = 0; round < 300; ++round) {
    const std::int64_t r_rem = rank - below;
    if (remaining <= params.small_total) {
      ws.gather.clear();
      for (std::int32_t t : ws.act) {
        for (std::int64_t r = ws.wlo[t]; r < ws.whi[t]; ++r) ws.gather.push_back(at(t, r));
      }
      const auto nth = ws.gather.begin() + (r_rem - 1);
      std::nth_element(ws.gather.begin(), nth, ws.gather.end(), counted_less);
      return *nth;
    }

    ws.mids.clear();
    for (std::int32_t t : ws.act) {
      const std::int64_t w = ws.whi[t] - ws.wlo[t];
      ws.mids.emplace_back(at(t, ws.wlo[t] + (w - 1) / 2), w);
    }
    const double pivot = weighted_median(ws.mids);

    ws.lt.assign(ws.act.size(), 0);
    ws.le.assign(ws.act.size(), 0);
    std::int64_t total_lt = 0, total_le = 0;
    for (std::size_t a = 0; a < ws.act.size(); ++a) {
      const std::int32_t t = ws.act[a];
      const std::int64_t lo = ws.wlo[t], hi = ws.whi[t];
      std::int64_t lt, le;
      if (counted_less(at(t, hi - 1), pivot)) {
        lt = le = hi - lo;
      } else if (counted_less(pivot, at(t, lo))) {
        lt = le = 0;
      } else {
        std::int64_t s = lo, e = hi;  // first index with value >= pivot
        while (s < e) {
          const std::int64_t m = s + (e - s) / 2;
          if (counted_less(at(t, m), pivot)) {
            s = m + 1;
          } else {
            e = m;
          }
        }
        lt = s - lo;
        std::int64_t s2 = s, e2 = hi;  // first index with value > pivot
        while (s2 < e2) {
          const std::int64_t m = s2 + (e2 - s2) / 2;
          if (counted_less(pivot, at(t, m))) {
            e2 = m;
          } else {
            s2 = m + 1;
          }
        }
        le = s2 - lo;
      }
      ws.lt[a] = lt;
      ws.le[a] = le;
      total_lt += lt;
      total_le += le;
    }

    if (total_lt >= r_rem) {
      // Answer lies strictly below the pivot: drop the tails at or above it.
      for (std::size_t a = 0; a < ws.act.size(); ++a) {
        const std::int32_t t = ws.act[a];
        ws.whi[t] = ws.wlo[t] + ws.lt[a];
      }
    } else if (total_le < r_rem) {
      // Answer lies strictly above the pivot: drop the heads at or below it.
      for (std::size_t a = 0; a < ws.act.size(); ++a) {
        const std::int32_t t = ws.act[a];
        ws.wlo[t] += ws.le[a];
      }
      below += total_le;
    } else {
      return pivot;  // total_lt < r_rem <= total_le
    }

    remaining = 0;
    std::size_t keep = 0;
    for (std::int32_t t : ws.act) {
      if (ws.whi[t] > ws.wlo[t]) {
        ws.act[keep++] = t;
        remaining += ws.whi[t] - ws.wlo[t];
      }
    }
    ws.act.resize(keep);
  }
  throw std::logic_error("select_rank: did not converge");
}

}  // namespace select_detail

// rank-th smallest of the union of ascending runs (1-based rank), plus the
// per-run rank bookkeeping of the returned value.
inline SelectResult kway_sorted_select(const std::vector<SortedRun>& runs, std::int64_t rank,
                                       const SelectParams& params = {}) {
  std::vector<std::int64_t> lens(runs.size());
  for (std::size_t t = 0; t < runs.size(); ++t) {
    const SortedRun& r = runs[t];
    if (r.len < 0 || (r.len > 0 && r.data == nullptr)) {
      throw std::invalid_argument("kway_sorted_select: bad run view");
    }
    for (std::int64_t i = 0; i < r.len; ++i) {
      if (r.data[i] != r.data[i]) {
        throw std::invalid_argument("kway_sorted_select: NaN entry");
      }
      if (i > 0 && r.data[i] < r.data[i - 1]) {
        throw std::invalid_argument("kway_sorted_select: run not ascending");
      }
    }
    lens[t] = r.len;
  }

  select_detail::Scratch ws;
  const auto at = [&](std::int32_t t, std::int64_t i) { return runs[t].data[i]; };
  SelectResult out;
  out.value = select_detail::select_rank(lens.data(), runs.size(), rank, at, params, ws);
  out.lt_counts.resize(runs.size());
  out.le_counts.resize(runs.size());
  for (std::size_t t = 0; t < runs.size(); ++t) {
    const double* b = runs[t].data;
    const double* e = b + runs[t].len;
    out.lt_counts[t] = std::lower_bound(b, e, out.value, select_detail::counted_less) - b;
    out.le_counts[t] = std::upper_bound(
                           b, e, out.value,
                           [](double v, double elem) { return select_detail::counted_less(v, elem); }) -
                       b;
  }
  return out;
}

// Convenience overload for owned lists.
inline SelectResult kway_sorted_select(const std::vector<std::vector<double>>& lists,
                                       std::int64_t rank, const SelectParams& params = {}) {
  std::vector<SortedRun> runs(lists.size());
  for (std::size_t t = 0; t < lists.size(); ++t) {
    runs[t] = {lists[t].data(), static_cast<std::int64_t>(lists[t].size())};
  }
  return kway_sorted_select(runs, rank, params);
}

}  // namespace necklace
