#pragma once
// Minimal fork-join helper for the independent dominance passes.
//
// Worker count is capped by the NECKLACE_THREADS environment variable and
// defaults to 1, which keeps every kernel deterministic without any
// configuration. Cost counters are accumulated per worker thread and merged
// in task order, so instrumented counts do not depend on scheduling.

#include <cstdlib>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "necklace/counters.hpp"

namespace necklace::par {

inline int max_threads() {
  const char* s = std::getenv("NECKLACE_THREADS");
  if (s == nullptr || *s == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || v < 1) return 1;
  if (v > 256) v = 256;
  return static_cast<int>(v);
}

// Runs fn(0), ..., fn(num_tasks - 1). With more than one worker, tasks are
// distributed in strides; each worker's cost counter starts at zero and is
// merged into the caller afterwards, ordered by worker index. The first
// exception (by worker index) is rethrown.
template <class Fn>
void run_tasks(int num_tasks, Fn&& fn) {
  if (num_tasks <= 0) return;
  const int workers = std::min(max_threads(), num_tasks);
  if (workers <= 1) {
    for (int t = 0; t < num_tasks; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<cost::CostCounter> parts(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      cost::reset();
      try {
        for (int t = w; t < num_tasks; t += workers) fn(t);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
      parts[static_cast<std::size_t>(w)] = cost::snapshot();
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& part : parts) cost::merge(part);
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace necklace::par
