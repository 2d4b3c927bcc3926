#pragma once
// Real numbers extended with +inf / -inf sentinels.
//
// The reduction paddings use infinities as "never wins" / "always wins"
// placeholders. Subtraction involving two same-signed infinities has no
// meaning in any in-scope construction, so forming one is a reported error
// rather than a silent NaN. NaN is excluded from the value domain entirely.

#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace necklace {

class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;

  // Implicit on purpose: kernels and tests build vectors from double
  // literals. NaN violates the type invariant and is rejected.
  constexpr ExtendedReal(double v) : v_(v) {
    if (v != v) {
      throw std::invalid_argument("ExtendedReal: NaN is outside the value domain");
    }
  }

  static constexpr ExtendedReal pos_inf() {
    return ExtendedReal(std::numeric_limits<double>::infinity(), 0);
  }
  static constexpr ExtendedReal neg_inf() {
    return ExtendedReal(-std::numeric_limits<double>::infinity(), 0);
  }

  constexpr double value() const { return v_; }
  constexpr bool is_finite() const {
    return v_ - v_ == 0.0;  // infinities fail, NaN cannot occur
  }

  // Total order: -inf < every finite < +inf. (NaN is excluded, so the
  // IEEE order on the payload is total here.)
  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend constexpr bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }
  friend constexpr bool operator!=(ExtendedReal a, ExtendedReal b) { return a.v_ != b.v_; }

  friend constexpr ExtendedReal operator-(ExtendedReal a) { return ExtendedReal(-a.v_, 0); }

  // Total subtraction under the sentinel rules:
  //   finite - finite = finite     (+inf) - finite  = +inf
  //   finite - (-inf) = +inf       finite - (+inf)  = -inf
  //   (-inf) - finite = -inf
  // (+inf) - (+inf) and (-inf) - (-inf) are reported errors.
  friend constexpr ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    if (!a.is_finite() && !b.is_finite() && a.v_ == b.v_) {
      throw std::domain_error("ExtendedReal: difference of same-signed infinities");
    }
    return ExtendedReal(a.v_ - b.v_, 0);
  }

 private:
  constexpr ExtendedReal(double v, int) : v_(v) {}  // unchecked
  double v_ = 0.0;
};

inline std::vector<ExtendedReal> lift(const std::vector<double>& v) {
  std::vector<ExtendedReal> out;
  out.reserve(v.size());
  for (double d : v) out.emplace_back(d);
  return out;
}

inline std::vector<double> lower(const std::vector<ExtendedReal>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (ExtendedReal e : v) out.push_back(e.value());
  return out;
}

}  // namespace necklace
