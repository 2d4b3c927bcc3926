#pragma once
// Text I/O helpers for the command-line tool: strict numeric parsing with
// line-tagged errors, and shortest round-trip formatting for doubles.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace necklace::io {

// Shortest representation that parses back to the same double. Infinite
// values print as "inf" / "-inf".
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// One value per line; blank lines and lines starting with '#' are skipped.
// Accepts "inf" and "-inf"; rejects NaN and trailing garbage. Errors carry
// "<name>:<line>: <message>".
inline std::vector<double> parse_vector_stream(std::istream& in, const std::string& name) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    double value = 0.0;
    if (body.front() == '+') body.remove_prefix(1);  // from_chars rejects '+'
    const char* first = body.data();
    const char* last = body.data() + body.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": not a number: '" +
                               std::string(body) + "'");
    }
    if (value != value) {
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": NaN is not allowed");
    }
    out.push_back(value);
  }
  return out;
}

inline std::vector<double> parse_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return parse_vector_stream(in, path);
}

inline std::string format_vector_lines(const std::vector<double>& v) {
  std::ostringstream out;
  for (double d : v) out << format_double(d) << '\n';
  return out.str();
}

}  // namespace necklace::io
