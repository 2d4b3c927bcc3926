#pragma once
// Cost accounting for the convolution kernels, selection routine, and
// dominance engine.
//
// The measured quantity is the number of comparisons between input-derived
// real values (one count per lexicographic coordinate comparison in the
// dominance engine, one per candidate comparison in the kernels, one per
// comparator invocation handed to nth_element/sort at counted sites).
// Index bookkeeping and control flow are never counted.
//
// Counting is compiled in only when NECKLACE_INSTRUMENT is defined; the
// default build turns every hook into a no-op so production code pays
// nothing.

#include <cstdint>

namespace necklace::cost {

struct CostCounter {
  std::uint64_t comparisons = 0;
  std::uint64_t arithmetic_ops = 0;
};

#if defined(NECKLACE_INSTRUMENT)

inline constexpr bool instrumented = true;

namespace detail {
inline thread_local CostCounter tl_counter;
}  // namespace detail

inline void count_cmp(std::uint64_t n = 1) noexcept {
  detail::tl_counter.comparisons += n;
}

inline void count_arith(std::uint64_t n = 1) noexcept {
  detail::tl_counter.arithmetic_ops += n;
}

// Snapshot of this thread's counter.
inline CostCounter snapshot() noexcept { return detail::tl_counter; }

inline void reset() noexcept { detail::tl_counter = CostCounter{}; }

// Fold a worker's counter into this thread's counter. Addition is
// associative and commutative, so merges cannot lose updates as long as
// each worker accumulates privately and is merged exactly once.
inline void merge(const CostCounter& part) noexcept {
  detail::tl_counter.comparisons += part.comparisons;
  detail::tl_counter.arithmetic_ops += part.arithmetic_ops;
}

#else

inline constexpr bool instrumented = false;

inline constexpr void count_cmp(std::uint64_t = 1) noexcept {}
inline constexpr void count_arith(std::uint64_t = 1) noexcept {}
inline constexpr CostCounter snapshot() noexcept { return {}; }
inline constexpr void reset() noexcept {}
inline constexpr void merge(const CostCounter&) noexcept {}

#endif

// Comparator wrapper that counts every invocation. Intended for the
// counted nth_element/sort call sites inside kernels.
template <class Less>
struct CountingLess {
  Less less;
  template <class A, class B>
  bool operator()(const A& a, const B& b) const {
    count_cmp();
    return less(a, b);
  }
};

template <class Less>
CountingLess<Less> counting(Less less) {
  return CountingLess<Less>{less};
}

}  // namespace necklace::cost
