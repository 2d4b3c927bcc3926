#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "necklace/io.hpp"
#include "test_util.hpp"

using necklace::io::format_double;
using necklace::io::format_vector_lines;
using necklace::io::parse_vector_file;
using necklace::io::parse_vector_stream;

namespace {

std::vector<double> parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_vector_stream(in, "mem");
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

TEST_CASE("format and parse round-trip bit for bit") {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> values{0.0,
                             -0.0,
                             1.0,
                             -1.5,
                             0.1,
                             1e-300,
                             -1e300,
                             std::numeric_limits<double>::denorm_min(),
                             std::numeric_limits<double>::max(),
                             inf,
                             -inf};
  auto gen = testutil::rng(31337);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) values.push_back(dist(gen));

  const std::vector<double> back = parse_string(format_vector_lines(values));
  REQUIRE(back.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    INFO("i=" << i << " formatted='" << format_double(values[i]) << "'");
    REQUIRE(same_bits(back[i], values[i]));
  }
}

TEST_CASE("parser skips comments and blank lines and trims whitespace") {
  const std::string text =
      "# leading comment\n"
      "\n"
      "  1.5  \n"
      "\t# indented comment\n"
      "+2.5\n"
      "-inf\n"
      "   \n"
      "3\n";
  REQUIRE(parse_string(text) ==
          std::vector<double>{1.5, 2.5, -std::numeric_limits<double>::infinity(), 3.0});
}

TEST_CASE("parser reports the offending line") {
  REQUIRE_THROWS_WITH(parse_string("abc\n"),
                      Catch::Matchers::ContainsSubstring("mem:1:") &&
                          Catch::Matchers::ContainsSubstring("not a number") &&
                          Catch::Matchers::ContainsSubstring("'abc'"));
  REQUIRE_THROWS_WITH(parse_string("1\n2\n1.5x\n"),
                      Catch::Matchers::ContainsSubstring("mem:3:"));
  REQUIRE_THROWS_WITH(parse_string("# ok\n1\nnan\n"),
                      Catch::Matchers::ContainsSubstring("mem:3: NaN is not allowed"));
  REQUIRE_THROWS_WITH(parse_string("1 2\n"), Catch::Matchers::ContainsSubstring("not a number"));
  REQUIRE_THROWS_AS(parse_string("1e\n"), std::runtime_error);
}

TEST_CASE("missing files are reported by path") {
  REQUIRE_THROWS_WITH(parse_vector_file("/no/such/dir/vector.txt"),
                      Catch::Matchers::ContainsSubstring("/no/such/dir/vector.txt: cannot open"));
}

TEST_CASE("vector formatting is one value per line") {
  REQUIRE(format_vector_lines({0.0, -2.0, -1.0}) == "0\n-2\n-1\n");
  REQUIRE(format_vector_lines({}) == "");
  REQUIRE(format_double(0.5) == "0.5");
  REQUIRE(format_double(std::numeric_limits<double>::infinity()) == "inf");
}
