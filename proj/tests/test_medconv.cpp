#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "necklace/medconv.hpp"
#include "test_util.hpp"

using necklace::build_permutation_table;
using necklace::medconv_dominance;
using necklace::medconv_naive;
using necklace::MedianBlockParams;
using necklace::PermutationTable;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MedianBlockParams forced(int d) {
  MedianBlockParams p;
  p.d = d;
  p.naive_cutoff = 0;
  return p;
}

std::vector<double> medconv_reference(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> z(n);
  std::vector<double> buf;
  for (std::size_t k = 0; k < n; ++k) {
    buf.clear();
    for (std::size_t i = 0; i <= k; ++i) buf.push_back(x[i] - y[k - i]);
    std::sort(buf.begin(), buf.end());
    z[k] = buf[(k + 2) / 2 - 1];  // lower median, rank ceil(m/2)
  }
  return z;
}

}  // namespace

TEST_CASE("median convolution on hand-computed values") {
  const std::vector<double> x{0, 1, 3};
  const std::vector<double> y{0, 2, 1};
  REQUIRE(medconv_naive(x, y) == std::vector<double>{0, -2, -1});
  REQUIRE(medconv_dominance(x, y, forced(2)) == std::vector<double>{0, -2, -1});
}

TEST_CASE("direct kernel matches an independent sorting reference") {
  auto gen = testutil::rng(60);
  for (const std::size_t n : {1u, 2u, 9u, 40u}) {
    const std::vector<double> x = testutil::random_int_vector(n, -9, 9, gen);
    const std::vector<double> y = testutil::random_int_vector(n, -9, 9, gen);
    REQUIRE(medconv_naive(x, y) == medconv_reference(x, y));
  }
}

TEST_CASE("median block kernel equals the direct kernel exactly on integers") {
  auto gen = testutil::rng(61);
  for (const std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 32u, 77u, 120u}) {
    const std::vector<double> x = testutil::random_int_vector(n, -20, 20, gen);
    const std::vector<double> y = testutil::random_int_vector(n, -20, 20, gen);
    const std::vector<double> ref = medconv_naive(x, y);
    for (const int d : {0, 1, 2, 3, 4, 5, 6}) {
      INFO("n=" << n << " d=" << d);
      REQUIRE(medconv_dominance(x, y, forced(d)) == ref);
    }
  }
}

TEST_CASE("median block kernel on real-valued inputs") {
  auto gen = testutil::rng(62);
  for (const std::size_t n : {6u, 45u, 130u}) {
    const std::vector<double> x = testutil::random_real_vector(n, gen);
    const std::vector<double> y = testutil::random_real_vector(n, gen);
    const std::vector<double> ref = medconv_naive(x, y);
    const std::vector<double> got = medconv_dominance(x, y, forced(3));
    for (std::size_t k = 0; k < n; ++k) REQUIRE(testutil::close(got[k], ref[k], 1e-12));
  }
}

TEST_CASE("block kernel with balanced infinity padding") {
  // The same sentinel pattern the l1 alignment route feeds the kernel:
  // finite differences in the front half, alternating +inf/-inf in the back.
  auto gen = testutil::rng(63);
  const std::size_t half = 40;
  std::vector<double> x = testutil::random_int_vector(2 * half, -15, 15, gen);
  const std::vector<double> y = testutil::random_int_vector(2 * half, -15, 15, gen);
  for (std::size_t i = 0; i < half; ++i) {
    x[half + i] = (i % 2 == 0) ? kInf : -kInf;
  }
  const std::vector<double> ref = medconv_naive(x, y);
  for (const int d : {2, 4, 5}) {
    INFO("d=" << d);
    REQUIRE(medconv_dominance(x, y, forced(d)) == ref);
  }
}

TEST_CASE("every clean cell is labeled with its true sorting permutation") {
  auto gen = testutil::rng(64);
  for (const int d : {2, 3, 4}) {
    const std::size_t n = 60;
    const std::vector<double> x = testutil::random_int_vector(n, -12, 12, gen);
    const std::vector<double> y = testutil::random_int_vector(n, -12, 12, gen);
    const PermutationTable table = build_permutation_table(x, y, d);
    const std::size_t dd = static_cast<std::size_t>(d);

    for (std::size_t b = 0; b < table.nb; ++b) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!table.block_clean[b] || !table.window_ok[j]) continue;
        if (b * dd + j >= n) continue;
        const std::int32_t id = table.id_at(b, j);
        INFO("d=" << d << " block=" << b << " window=" << j << " id=" << id);
        REQUIRE(id >= 0);  // on exact comparisons no cell is empty or conflicted

        // The labeled permutation must order the cell's differences
        // descending, with equal values ordered by ascending offset.
        const std::uint8_t* asc = table.ascending_row(id);
        std::vector<std::uint8_t> desc(asc, asc + d);
        std::reverse(desc.begin(), desc.end());
        const auto value = [&](std::uint8_t dp) { return x[b * dd + dp] - y[j - dp]; };
        for (int t = 0; t + 1 < d; ++t) {
          const double va = value(desc[t]);
          const double vb = value(desc[t + 1]);
          REQUIRE(va >= vb);
          if (va == vb) REQUIRE(desc[t] < desc[t + 1]);
        }
      }
    }
  }
}

TEST_CASE("medconv validation") {
  REQUIRE_THROWS_AS(medconv_naive({}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(medconv_naive({1.0, 2.0}, {1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(medconv_dominance({kInf, 0}, {kInf, 0}, forced(2)), std::domain_error);
  REQUIRE_THROWS_AS(medconv_dominance({1.0, 2.0}, {3.0, 4.0}, forced(7)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(build_permutation_table({1.0}, {1.0}, 0), std::invalid_argument);
}

TEST_CASE("resolved median block width") {
  MedianBlockParams p;
  REQUIRE(necklace::resolved_median_block_width(p, 4096) == 3);
  REQUIRE(necklace::resolved_median_block_width(p, 1) >= 2);
  p.d = 6;
  REQUIRE(necklace::resolved_median_block_width(p, 100) == 6);
}
