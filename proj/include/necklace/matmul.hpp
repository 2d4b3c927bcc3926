#pragma once
// (min,-) matrix multiplication and the reduction from (min,-) convolution
// to roughly sqrt(n) square multiplies.
//
// The multiply itself is the straightforward cubic kernel with cache tiling;
// the point of the reduction is the index bookkeeping, which packs the n
// convolution terms into a g x g times g x (g^2-g+1) product with g around
// sqrt(n), plus a short directly-scanned tail per output entry.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "necklace/counters.hpp"
#include "necklace/minconv.hpp"

namespace necklace {

struct MinPlusMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major

  MinPlusMatrix() = default;
  MinPlusMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace matmul_detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// a - b with same-signed infinities mapped to +inf instead of NaN. The
// convolution reduction pads with sentinels whose differences land only in
// product entries no output ever reads; +inf keeps them neutral for min.
inline double guarded_sub(double a, double b) {
  const double r = a - b;
  return r == r ? r : kInf;
}

// p[i][j] = min over m of lhs[i][m] - rhs[m][j], tiled for locality. One
// counted comparison per candidate.
inline MinPlusMatrix multiply(const MinPlusMatrix& lhs, const MinPlusMatrix& rhs) {
  if (lhs.cols != rhs.rows) throw std::invalid_argument("minplus multiply: shape mismatch");
  constexpr std::size_t kTile = 64;
  MinPlusMatrix p(lhs.rows, rhs.cols, kInf);
  for (std::size_t i0 = 0; i0 < lhs.rows; i0 += kTile) {
    const std::size_t i1 = std::min(i0 + kTile, lhs.rows);
    for (std::size_t m0 = 0; m0 < lhs.cols; m0 += kTile) {
      const std::size_t m1 = std::min(m0 + kTile, lhs.cols);
      for (std::size_t j0 = 0; j0 < rhs.cols; j0 += kTile) {
        const std::size_t j1 = std::min(j0 + kTile, rhs.cols);
        for (std::size_t i = i0; i < i1; ++i) {
          double* prow = &p.a[i * p.cols];
          for (std::size_t m = m0; m < m1; ++m) {
            const double am = lhs.at(i, m);
            const double* brow = &rhs.a[m * rhs.cols];
            for (std::size_t j = j0; j < j1; ++j) {
              cost::count_arith();
              const double cand = guarded_sub(am, brow[j]);
              cost::count_cmp();
              if (cand < prow[j]) prow[j] = cand;
            }
          }
        }
      }
    }
  }
  return p;
}

}  // namespace matmul_detail

// Square (min,-) product: p[i][j] = min over m of a[i][m] - b[m][j].
// Rejects NaN and any same-signed infinity difference the product forms.
inline MinPlusMatrix minplus_matmul_square(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.rows == 0 || a.rows != a.cols || b.rows != b.cols || a.cols != b.rows) {
    throw std::invalid_argument("minplus_matmul_square: inputs must be square and equal size");
  }
  for (double v : a.a) {
    if (v != v) throw std::invalid_argument("minplus_matmul_square: NaN entry");
  }
  for (double v : b.a) {
    if (v != v) throw std::invalid_argument("minplus_matmul_square: NaN entry");
  }
  const std::size_t n = a.rows;
  for (std::size_t m = 0; m < n; ++m) {
    bool col_pos = false, col_neg = false, row_pos = false, row_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      col_pos = col_pos || a.at(i, m) == matmul_detail::kInf;
      col_neg = col_neg || a.at(i, m) == -matmul_detail::kInf;
      row_pos = row_pos || b.at(m, i) == matmul_detail::kInf;
      row_neg = row_neg || b.at(m, i) == -matmul_detail::kInf;
    }
    if ((col_pos && row_pos) || (col_neg && row_neg)) {
      throw std::domain_error("minplus_matmul_square: same-signed infinity difference");
    }
  }
  return matmul_detail::multiply(a, b);
}

// (min,-) convolution through the matrix route: same contract and result as
// minconv_naive, with the bulk of the work done by square multiplies on
// blocks of side about sqrt(n).
inline std::vector<double> minconv_via_matmul(const std::vector<double>& x,
                                              const std::vector<double>& y) {
  conv_detail::validate_minus_form(x, y, "minconv");
  const std::size_t n = x.size();
  const std::size_t g =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t padded = g * g;

  std::vector<double> xp(x);
  xp.resize(padded, matmul_detail::kInf);
  std::vector<double> yp(y);
  yp.resize(padded, -matmul_detail::kInf);

  // lhs[i][m] = xp[i*g + m]; rhs[m][j] = yp[j + g - 1 - m]. Then
  // product[i][j] = min over the g terms of block i aligned at k = i*g+j+g-1.
  MinPlusMatrix lhs(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t m = 0; m < g; ++m) lhs.at(i, m) = xp[i * g + m];

  const std::size_t bcols = padded - g + 1;
  MinPlusMatrix rhs(g, bcols);
  for (std::size_t m = 0; m < g; ++m)
    for (std::size_t j = 0; j < bcols; ++j) rhs.at(m, j) = yp[j + g - 1 - m];

  // Multiply in column chunks of width g, so every multiply is on (near-)
  // square blocks of side g.
  MinPlusMatrix prod(g, bcols);
  for (std::size_t c0 = 0; c0 < bcols; c0 += g) {
    const std::size_t c1 = std::min(c0 + g, bcols);
    MinPlusMatrix chunk(g, c1 - c0);
    for (std::size_t m = 0; m < g; ++m)
      for (std::size_t j = c0; j < c1; ++j) chunk.at(m, j - c0) = rhs.at(m, j);
    const MinPlusMatrix part = matmul_detail::multiply(lhs, chunk);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = c0; j < c1; ++j) prod.at(i, j) = part.at(i, j - c0);
  }

  std::vector<double> z(n, matmul_detail::kInf);
  for (std::size_t k = 0; k < n; ++k) {
    double best = matmul_detail::kInf;
    const std::size_t istr = k / g;  // block straddling the window boundary
    for (std::size_t t = istr * g; t <= k; ++t) {
      cost::count_arith();
      const double cand = matmul_detail::guarded_sub(xp[t], yp[k - t]);
      cost::count_cmp();
      if (cand < best) best = cand;
    }
    for (std::size_t i = 0; i < istr; ++i) {
      cost::count_cmp();
      const double cand = prod.at(i, k - i * g - g + 1);
      if (cand < best) best = cand;
    }
    z[k] = best;
  }
  return z;
}

}  // namespace necklace
