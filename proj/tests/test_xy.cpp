#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "necklace/xy.hpp"
#include "test_util.hpp"

using necklace::antidiagonal_stats;
using necklace::AntidiagonalStats;
using necklace::Engine;
using necklace::meanconv;
using necklace::min_median_cost;
using necklace::min_range;
using necklace::polyhedral_3sum;
using necklace::PromiseViolationError;
using necklace::ThreeSumOptions;
using necklace::ThreeSumResult;

namespace {

// Direct enumeration of every antidiagonal of the X+Y matrix.
AntidiagonalStats stats_reference(const std::vector<double>& X, const std::vector<double>& Y) {
  const std::size_t n = X.size();
  const std::size_t m = 2 * n - 1;
  AntidiagonalStats st;
  st.min_sum.resize(m);
  st.max_sum.resize(m);
  st.median_sum.resize(m);
  st.range.resize(m);
  st.median_cost.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> cell;
    const std::size_t ilo = k >= n ? k - n + 1 : 0;
    const std::size_t ihi = std::min(k, n - 1);
    for (std::size_t i = ilo; i <= ihi; ++i) cell.push_back(X[i] + Y[k - i]);
    std::sort(cell.begin(), cell.end());
    st.min_sum[k] = cell.front();
    st.max_sum[k] = cell.back();
    st.median_sum[k] = cell[(cell.size() + 1) / 2 - 1];  // lower median
    st.range[k] = st.max_sum[k] - st.min_sum[k];
    double cost = 0.0;
    for (double v : cell) cost += std::abs(v - st.median_sum[k]);
    st.median_cost[k] = cost;
  }
  return st;
}

void require_stats_equal(const AntidiagonalStats& got, const AntidiagonalStats& want) {
  REQUIRE(got.min_sum == want.min_sum);
  REQUIRE(got.max_sum == want.max_sum);
  REQUIRE(got.median_sum == want.median_sum);
  REQUIRE(got.range == want.range);
  REQUIRE(got.median_cost == want.median_cost);
}

}  // namespace

TEST_CASE("antidiagonal stats on a worked 2x2 instance") {
  const std::vector<double> X{0.0, 1.0};
  const std::vector<double> Y{0.0, 2.0};
  // Sums: antidiagonal 0 = {0}, antidiagonal 1 = {2, 1}, antidiagonal 2 = {3}.
  const AntidiagonalStats st = antidiagonal_stats(X, Y, Engine::naive);
  REQUIRE(st.min_sum == std::vector<double>{0.0, 1.0, 3.0});
  REQUIRE(st.max_sum == std::vector<double>{0.0, 2.0, 3.0});
  REQUIRE(st.median_sum == std::vector<double>{0.0, 1.0, 3.0});
  REQUIRE(st.range == std::vector<double>{0.0, 1.0, 0.0});
  REQUIRE(st.median_cost == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("antidiagonal stats match direct enumeration exactly on integers") {
  auto gen = testutil::rng(909090);
  // Small value pool so duplicate sums exercise median tie handling.
  for (std::size_t n : {1, 2, 3, 7, 23, 80}) {
    const std::vector<double> X = testutil::random_int_vector(n, -9, 9, gen);
    const std::vector<double> Y = testutil::random_int_vector(n, -9, 9, gen);
    const AntidiagonalStats want = stats_reference(X, Y);
    require_stats_equal(antidiagonal_stats(X, Y, Engine::naive), want);
    require_stats_equal(antidiagonal_stats(X, Y, Engine::dominance), want);
    // n >= 64 resolves the automatic engine to the dominance route.
    require_stats_equal(antidiagonal_stats(X, Y), want);
  }
}

TEST_CASE("argmin selectors report the first best antidiagonal") {
  const std::vector<double> X{0.0, 1.0};
  const std::vector<double> Y{0.0, 2.0};
  // Ranges (0, 1, 0) and costs (0, 1, 0): ties resolve to index 0.
  REQUIRE(min_range(X, Y, Engine::naive) == 0);
  REQUIRE(min_median_cost(X, Y, Engine::naive) == 0);

  // Constant vectors make every antidiagonal identical.
  const std::vector<double> cx(5, 3.0), cy(5, -1.0);
  REQUIRE(min_range(cx, cy) == 0);
  REQUIRE(min_median_cost(cx, cy) == 0);

  auto gen = testutil::rng(101101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen() % 40;
    const std::vector<double> A = testutil::random_int_vector(n, -20, 20, gen);
    const std::vector<double> B = testutil::random_int_vector(n, -20, 20, gen);
    const AntidiagonalStats st = stats_reference(A, B);
    std::size_t want_range = 0, want_cost = 0;
    for (std::size_t k = 1; k < st.range.size(); ++k) {
      if (st.range[k] < st.range[want_range]) want_range = k;
      if (st.median_cost[k] < st.median_cost[want_cost]) want_cost = k;
    }
    REQUIRE(min_range(A, B, Engine::naive) == static_cast<std::int64_t>(want_range));
    REQUIRE(min_median_cost(A, B, Engine::naive) == static_cast<std::int64_t>(want_cost));
    REQUIRE(min_range(A, B, Engine::dominance) == static_cast<std::int64_t>(want_range));
  }
}

TEST_CASE("prefix means") {
  REQUIRE(meanconv({0.0, 2.0}, {0.0, 4.0}) == std::vector<double>{0.0, 3.0});
  auto gen = testutil::rng(77);
  const std::size_t n = 33;
  const std::vector<double> x = testutil::random_real_vector(n, gen);
  const std::vector<double> y = testutil::random_real_vector(n, gen);
  const std::vector<double> z = meanconv(x, y);
  REQUIRE(z.size() == n);
  for (std::size_t k = 0; k < n; k += 7) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= k; ++i) acc += x[i] + y[k - i];
    REQUIRE(testutil::close(z[k], acc / static_cast<double>(k + 1), 1e-12));
  }
}

TEST_CASE("planted ceiling touches are found with the smallest witness") {
  auto gen = testutil::rng(363636);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + gen() % 24;
    const std::vector<double> A = testutil::random_int_vector(n, -50, 50, gen);
    const std::vector<double> B = testutil::random_int_vector(n, -50, 50, gen);
    const AntidiagonalStats st = stats_reference(A, B);
    std::vector<double> C(2 * n - 1);
    for (std::size_t k = 0; k < C.size(); ++k) C[k] = st.max_sum[k] + 1.0;

    // No antidiagonal reaches its ceiling.
    const ThreeSumResult miss = polyhedral_3sum(A, B, C);
    REQUIRE_FALSE(miss.touches);
    REQUIRE(miss.i == -1);
    REQUIRE(miss.j == -1);

    // Lower one ceiling onto its maximum and the decision flips, with the
    // witness on that antidiagonal at the smallest row index.
    const std::size_t kstar = gen() % C.size();
    C[kstar] = st.max_sum[kstar];
    for (Engine e : {Engine::naive, Engine::dominance}) {
      const ThreeSumResult hit = polyhedral_3sum(A, B, C, {e, true});
      REQUIRE(hit.touches);
      REQUIRE(hit.i + hit.j == static_cast<std::int64_t>(kstar));
      REQUIRE(A[static_cast<std::size_t>(hit.i)] + B[static_cast<std::size_t>(hit.j)] == C[kstar]);
      for (std::int64_t i = std::max<std::int64_t>(0, static_cast<std::int64_t>(kstar) -
                                                          static_cast<std::int64_t>(n) + 1);
           i < hit.i; ++i) {
        REQUIRE(A[static_cast<std::size_t>(i)] + B[kstar - static_cast<std::size_t>(i)] !=
                C[kstar]);
      }
    }
  }
}

TEST_CASE("earlier touching antidiagonals win") {
  // Two touches: the report must use the smaller k.
  const std::vector<double> A{0.0, 0.0, 0.0};
  const std::vector<double> B{1.0, 1.0, 1.0};
  std::vector<double> C{2.0, 1.0, 1.0, 2.0, 2.0};  // k = 1 and k = 2 touch
  const ThreeSumResult hit = polyhedral_3sum(A, B, C);
  REQUIRE(hit.touches);
  REQUIRE(hit.i + hit.j == 1);
  REQUIRE(hit.i == 0);  // smallest row index on that antidiagonal
}

TEST_CASE("promise violations are reported unless explicitly waived") {
  const std::vector<double> A{0.0, 2.0};
  const std::vector<double> B{0.0, 1.0};
  // Maxima per antidiagonal: (0, 2, 3).
  std::vector<double> C{1.0, 2.5, 2.0};  // antidiagonal 2 exceeds its ceiling
  REQUIRE_THROWS_AS(polyhedral_3sum(A, B, C), PromiseViolationError);
  REQUIRE_THROWS_WITH(polyhedral_3sum(A, B, C),
                      Catch::Matchers::ContainsSubstring("antidiagonal 2"));

  // Waiving the check turns the oversized antidiagonal into a miss: equality
  // is the only trigger.
  ThreeSumOptions lax;
  lax.verify_promise = false;
  const ThreeSumResult res = polyhedral_3sum(A, B, C, lax);
  REQUIRE_FALSE(res.touches);
}

TEST_CASE("xy input validation") {
  const std::vector<double> ok{0.0, 1.0};
  const double inf = std::numeric_limits<double>::infinity();
  REQUIRE_THROWS_AS(antidiagonal_stats({}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(antidiagonal_stats(ok, {1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(antidiagonal_stats({0.0, inf}, ok), std::invalid_argument);
  REQUIRE_THROWS_AS(min_range({0.0, std::nan("")}, ok), std::invalid_argument);
  REQUIRE_THROWS_AS(meanconv(ok, {0.0, -inf}), std::invalid_argument);
  REQUIRE_THROWS_AS(polyhedral_3sum(ok, ok, {0.0, 0.0}), std::invalid_argument);  // C too short
  REQUIRE_THROWS_AS(polyhedral_3sum(ok, ok, {0.0, inf, 0.0}), std::invalid_argument);
}
