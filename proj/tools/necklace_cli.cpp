// Command-line front end: alignment, windowed convolutions, antidiagonal
// statistics, and an instrumented benchmark.
//
// Exit codes: 0 success, 1 oracle mismatch (align --oracle), 2 usage or
// input errors.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "necklace.hpp"

namespace {

using necklace::Engine;
using necklace::Norm;
using necklace::NormKind;

Norm parse_norm(const std::string& s) {
  if (s == "l1") return Norm::l1();
  if (s == "l2") return Norm::l2();
  if (s == "linf") return Norm::linf();
  if (s.rfind("lp:", 0) == 0) {
    int p = 0;
    try {
      p = std::stoi(s.substr(3));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad norm exponent in '" + s + "'");
    }
    return Norm::lp(p);
  }
  throw std::invalid_argument("unknown norm '" + s + "' (expected l1|l2|linf|lp:<even p>)");
}

std::string norm_name(const Norm& norm) {
  switch (norm.kind) {
    case NormKind::l1:
      return "l1";
    case NormKind::l2:
      return "l2";
    case NormKind::linf:
      return "linf";
    case NormKind::lp_even:
      return "lp:" + std::to_string(norm.p);
  }
  return "?";
}

Engine parse_engine(const std::string& s) {
  if (s == "auto") return Engine::automatic;
  if (s == "naive") return Engine::naive;
  if (s == "dominance") return Engine::dominance;
  if (s == "matmul") return Engine::matmul;
  throw std::invalid_argument("unknown engine '" + s + "' (expected auto|naive|dominance|matmul)");
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::automatic:
      return "auto";
    case Engine::naive:
      return "naive";
    case Engine::dominance:
      return "dominance";
    case Engine::matmul:
      return "matmul";
  }
  return "?";
}

bool close_mixed(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Engines that route max through negation can compute a zero with the
// opposite sign; print one spelling so equal results diff as equal text.
double canonical_zero(double v) { return v == 0.0 ? 0.0 : v; }

struct AlignArgs {
  std::string x_path, y_path;
  std::string norm = "l2";
  std::string engine = "auto";
  bool lenient = false;
  bool oracle = false;
};

int run_align(const AlignArgs& args) {
  const necklace::BeadMode mode =
      args.lenient ? necklace::BeadMode::lenient : necklace::BeadMode::strict;
  const necklace::Necklace x(necklace::io::parse_vector_file(args.x_path), mode);
  const necklace::Necklace y(necklace::io::parse_vector_file(args.y_path), mode);
  const Norm norm = parse_norm(args.norm);
  const Engine engine = parse_engine(args.engine);

  const necklace::AlignmentSolution sol = necklace::align(x, y, norm, engine);

  std::string engine_echo = "fft";
  if (norm.kind == NormKind::l1 || norm.kind == NormKind::linf) {
    engine_echo =
        engine_name(necklace::resolve_engine(engine, x.size(), norm.kind == NormKind::linf));
  }
  nlohmann::json out{
      {"shift", sol.shift},       {"offset", sol.offset}, {"objective", sol.objective},
      {"norm", norm_name(norm)},  {"engine", engine_echo},
  };
  int rc = 0;
  if (args.oracle) {
    const necklace::AlignmentSolution ref = necklace::brute_force_align(x, y, norm);
    const bool match = close_mixed(sol.objective, ref.objective, 1e-9);
    out["oracle_match"] = match;
    if (!match) rc = 1;
  }
  std::cout << out.dump() << "\n";
  return rc;
}

struct ConvArgs {
  std::string x_path, y_path;
  std::string kind = "min";
  std::string engine = "auto";
};

int run_conv(const ConvArgs& args) {
  const std::vector<double> x = necklace::io::parse_vector_file(args.x_path);
  const std::vector<double> y = necklace::io::parse_vector_file(args.y_path);
  const Engine requested = parse_engine(args.engine);

  std::vector<double> out;
  if (args.kind == "sum" || args.kind == "mean") {
    if (requested != Engine::automatic) {
      throw std::invalid_argument("conv: kind '" + args.kind + "' has a single engine");
    }
    out = args.kind == "sum" ? necklace::convolve_sum_product(x, y) : necklace::meanconv(x, y);
  } else {
    const Engine e = necklace::resolve_engine(requested, x.size(), args.kind != "median");
    if (args.kind == "min") {
      out = e == Engine::naive    ? necklace::minconv_naive(x, y)
            : e == Engine::matmul ? necklace::minconv_via_matmul(x, y)
                                  : necklace::minconv_dominance(x, y);
    } else if (args.kind == "max") {
      if (e == Engine::matmul) {
        std::vector<double> nx(x.size()), ny(y.size());
        for (std::size_t i = 0; i < x.size(); ++i) nx[i] = -x[i];
        for (std::size_t i = 0; i < y.size(); ++i) ny[i] = -y[i];
        out = necklace::minconv_via_matmul(nx, ny);
        for (double& v : out) v = -v;
      } else {
        out = e == Engine::naive ? necklace::maxconv_naive(x, y)
                                 : necklace::maxconv_dominance(x, y);
      }
    } else if (args.kind == "median") {
      out = e == Engine::naive ? necklace::medconv_naive(x, y)
                               : necklace::medconv_dominance(x, y);
    } else {
      throw std::invalid_argument("conv: unknown kind '" + args.kind + "'");
    }
  }
  for (double& v : out) v = canonical_zero(v);
  std::cout << necklace::io::format_vector_lines(out);
  return 0;
}

struct XyArgs {
  std::string x_path, y_path;
  std::string stat = "all";
  std::string engine = "auto";
};

int run_xy(const XyArgs& args) {
  const std::vector<double> x = necklace::io::parse_vector_file(args.x_path);
  const std::vector<double> y = necklace::io::parse_vector_file(args.y_path);
  const Engine engine = parse_engine(args.engine);
  const necklace::AntidiagonalStats stats = necklace::antidiagonal_stats(x, y, engine);

  std::vector<std::pair<std::string, const std::vector<double>*>> cols;
  const bool all = args.stat == "all";
  if (all || args.stat == "min") cols.emplace_back("min", &stats.min_sum);
  if (all || args.stat == "max") cols.emplace_back("max", &stats.max_sum);
  if (all || args.stat == "median") cols.emplace_back("median", &stats.median_sum);
  if (all || args.stat == "range") cols.emplace_back("range", &stats.range);
  if (all || args.stat == "median-cost") cols.emplace_back("median_cost", &stats.median_cost);
  if (cols.empty()) throw std::invalid_argument("xy: unknown stat '" + args.stat + "'");

  std::ostringstream os;
  os << "k";
  for (const auto& col : cols) os << "," << col.first;
  os << "\n";
  for (std::size_t k = 0; k < stats.min_sum.size(); ++k) {
    os << k;
    for (const auto& col : cols) {
      os << "," << necklace::io::format_double(canonical_zero((*col.second)[k]));
    }
    os << "\n";
  }
  std::cout << os.str();
  return 0;
}

struct BenchArgs {
  std::string kernel = "minconv";
  std::string engine = "dominance";
  std::string sizes = "4096";
  int d = 0;
  int repeats = 1;
  std::uint64_t seed = 12345;
};

std::vector<double> random_integer_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long long> dist(0, 1'000'000);
  std::vector<double> v(n);
  for (double& e : v) e = static_cast<double>(dist(gen));
  return v;
}

int run_bench(const BenchArgs& args) {
  const Engine engine = parse_engine(args.engine);
  if (engine == Engine::automatic) {
    throw std::invalid_argument("bench: pick a concrete engine (naive|dominance|matmul)");
  }
  if (engine == Engine::matmul && args.kernel != "minconv") {
    throw std::invalid_argument("bench: the matmul engine only benches minconv");
  }

  std::vector<std::size_t> sizes;
  std::stringstream ss(args.sizes);
  for (std::string tok; std::getline(ss, tok, ',');) {
    const long long v = std::stoll(tok);
    if (v < 1) throw std::invalid_argument("bench: sizes must be positive");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw std::invalid_argument("bench: no sizes given");

  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::ostringstream os;
  os << "kernel,engine,n,d,comparisons,wall_ns\n";
  for (const std::size_t n : sizes) {
    const std::vector<double> x = random_integer_vector(n, args.seed ^ (n * kGolden));
    const std::vector<double> y = random_integer_vector(n, args.seed ^ (n * kGolden) ^ 1);

    int used_d = 0;
    if (engine == Engine::dominance) {
      if (args.kernel == "medconv") {
        necklace::MedianBlockParams mp;
        mp.d = args.d;
        used_d = necklace::resolved_median_block_width(mp, n);
      } else {
        necklace::BlockParams bp;
        bp.d = args.d;
        used_d = necklace::resolved_block_width(bp, n);
      }
    }

    for (int r = 0; r < args.repeats; ++r) {
      necklace::cost::reset();
      const auto t0 = std::chrono::steady_clock::now();
      std::vector<double> z;
      if (args.kernel == "minconv") {
        necklace::BlockParams bp;
        bp.d = args.d;
        bp.naive_cutoff = 0;
        z = engine == Engine::naive    ? necklace::minconv_naive(x, y)
            : engine == Engine::matmul ? necklace::minconv_via_matmul(x, y)
                                       : necklace::minconv_dominance(x, y, bp);
      } else if (args.kernel == "maxconv") {
        necklace::BlockParams bp;
        bp.d = args.d;
        bp.naive_cutoff = 0;
        z = engine == Engine::naive ? necklace::maxconv_naive(x, y)
                                    : necklace::maxconv_dominance(x, y, bp);
      } else if (args.kernel == "medconv") {
        necklace::MedianBlockParams mp;
        mp.d = args.d;
        mp.naive_cutoff = 0;
        z = engine == Engine::naive ? necklace::medconv_naive(x, y)
                                    : necklace::medconv_dominance(x, y, mp);
      } else {
        throw std::invalid_argument("bench: unknown kernel '" + args.kernel + "'");
      }
      const auto t1 = std::chrono::steady_clock::now();
      const auto wall = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
      const necklace::cost::CostCounter c = necklace::cost::snapshot();
      os << args.kernel << "," << engine_name(engine) << "," << n << "," << used_d << ","
         << c.comparisons << "," << wall << "\n";
    }
  }
  std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"necklace alignment and windowed convolution toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  AlignArgs align_args;
  CLI::App* align = app.add_subcommand("align", "align two necklaces");
  align->add_option("--x", align_args.x_path, "bead file for x")->required();
  align->add_option("--y", align_args.y_path, "bead file for y")->required();
  align->add_option("--norm", align_args.norm, "l1|l2|linf|lp:<even p>");
  align->add_option("--engine", align_args.engine, "auto|naive|dominance|matmul");
  align->add_flag("--lenient", align_args.lenient, "reduce beads mod 1 and sort");
  align->add_flag("--oracle", align_args.oracle, "cross-check against the quadratic oracle");
  align->callback([&] { rc = run_align(align_args); });

  ConvArgs conv_args;
  CLI::App* conv = app.add_subcommand("conv", "windowed convolution of two vectors");
  conv->add_option("--x", conv_args.x_path, "value file for x")->required();
  conv->add_option("--y", conv_args.y_path, "value file for y")->required();
  conv->add_option("--kind", conv_args.kind, "min|max|median|mean|sum");
  conv->add_option("--engine", conv_args.engine, "auto|naive|dominance|matmul");
  conv->callback([&] { rc = run_conv(conv_args); });

  XyArgs xy_args;
  CLI::App* xy = app.add_subcommand("xy", "antidiagonal statistics of X+Y");
  xy->add_option("--x", xy_args.x_path, "value file for X")->required();
  xy->add_option("--y", xy_args.y_path, "value file for Y")->required();
  xy->add_option("--stat", xy_args.stat, "min|max|median|range|median-cost|all");
  xy->add_option("--engine", xy_args.engine, "auto|naive|dominance");
  xy->callback([&] { rc = run_xy(xy_args); });

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "instrumented kernel benchmark");
  bench->add_option("--kernel", bench_args.kernel, "minconv|maxconv|medconv");
  bench->add_option("--engine", bench_args.engine, "naive|dominance|matmul");
  bench->add_option("--sizes", bench_args.sizes, "comma-separated input lengths");
  bench->add_option("--d", bench_args.d, "block width (0 = auto)");
  bench->add_option("--repeats", bench_args.repeats, "measurements per size");
  bench->add_option("--seed", bench_args.seed, "instance seed");
  bench->callback([&] { rc = run_bench(bench_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
