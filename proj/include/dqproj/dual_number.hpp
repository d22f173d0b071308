#pragma once

#include <cmath>
#include <ostream>

#include "dqproj/error.hpp"
#include "dqproj/tolerance.hpp"

namespace dqproj {

/// a_s + a_d eps with eps^2 = 0.
struct DualNumber {
  double standard = 0.0;
  double dual = 0.0;

  /// Appreciable iff the standard part is not (numerically) zero.
  bool appreciable() const { return !is_negligible(standard, std::abs(dual)); }

  friend DualNumber operator+(const DualNumber& a, const DualNumber& b) {
    return {a.standard + b.standard, a.dual + b.dual};
  }
  friend DualNumber operator-(const DualNumber& a, const DualNumber& b) {
    return {a.standard - b.standard, a.dual - b.dual};
  }
  friend DualNumber operator*(const DualNumber& a, const DualNumber& b) {
    return {a.standard * b.standard, a.standard * b.dual + b.standard * a.dual};
  }

  /// num / den. When both are infinitesimal the quotient's dual part is a free
  /// constant, fixed here to 0.
  friend DualNumber operator/(const DualNumber& num, const DualNumber& den) {
    if (den.appreciable()) {
      const double s = den.standard;
      return {num.standard / s, num.dual / s - num.standard * den.dual / (s * s)};
    }
    if (!num.appreciable() && den.dual != 0.0) {
      return {num.dual / den.dual, 0.0};
    }
    throw Error(ErrorKind::DivisionUndefined, "denominator is infinitesimal");
  }

  friend bool operator==(const DualNumber&, const DualNumber&) = default;

  friend std::ostream& operator<<(std::ostream& os, const DualNumber& a) {
    return os << a.standard << " + " << a.dual << "eps";
  }
};

}  // namespace dqproj
