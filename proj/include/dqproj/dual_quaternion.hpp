#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "dqproj/dual_number.hpp"
#include "dqproj/quaternion.hpp"
#include "dqproj/tolerance.hpp"

namespace dqproj {

/// The paired real-vector form of a dual quaternion: qs in (1,i,j,k), qd in (eps, eps i, eps j, eps k).
struct Vec8View {
  Vec4 qs = Vec4::Zero();
  Vec4 qd = Vec4::Zero();

  std::array<double, 8> flat() const {
    return {qs[0], qs[1], qs[2], qs[3], qd[0], qd[1], qd[2], qd[3]};
  }
};

/// q_s + q_d eps.
struct DualQuaternion {
  Quaternion standard;
  Quaternion dual;

  static constexpr DualQuaternion identity() { return {Quaternion::identity(), Quaternion{}}; }

  static DualQuaternion from_vectors(const Vec4& qs, const Vec4& qd) {
    return {Quaternion::from_vec(qs), Quaternion::from_vec(qd)};
  }
  static DualQuaternion from_view(const Vec8View& v) { return from_vectors(v.qs, v.qd); }
  static DualQuaternion from_flat(const std::array<double, 8>& c) {
    return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
  }

  Vec8View view() const { return {standard.vec(), dual.vec()}; }
  std::array<double, 8> flat() const { return view().flat(); }

  bool is_finite() const { return standard.is_finite() && dual.is_finite(); }

  double max_abs() const {
    double m = 0.0;
    for (double c : flat()) m = std::max(m, std::abs(c));
    return m;
  }

  DualQuaternion conj() const { return {standard.conj(), dual.conj()}; }

  friend DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.standard + b.standard, a.dual + b.dual};
  }
  friend DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.standard - b.standard, a.dual - b.dual};
  }
  friend DualQuaternion operator*(double s, const DualQuaternion& a) { return {s * a.standard, s * a.dual}; }
  friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.standard * b.standard, a.standard * b.dual + a.dual * b.standard};
  }

  friend bool operator==(const DualQuaternion&, const DualQuaternion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const DualQuaternion& q) {
    return os << q.standard << " + " << q.dual << "eps";
  }
};

/// Dual-number magnitude |q_s| + Sc(q_s* q_d)/|q_s| eps, or |q_d| eps when q_s vanishes.
inline DualNumber magnitude(const DualQuaternion& q) {
  const double ns = q.standard.norm();
  if (!is_negligible(ns, q.max_abs())) {
    return {ns, (q.standard.conj() * q.dual).scalar() / ns};
  }
  return {0.0, q.dual.norm()};
}

/// Vector-form unit test: | |qs|^2 - 1 | <= tol and |qd . qs| <= tol.
inline bool is_unit(const DualQuaternion& q, double tol) {
  const Vec4 qs = q.standard.vec();
  const Vec4 qd = q.dual.vec();
  return std::abs(qs.squaredNorm() - 1.0) <= tol && std::abs(qd.dot(qs)) <= tol;
}

/// sqrt(|q_s|^2 + |q_d|^2).
inline double norm_2r(const DualQuaternion& q) {
  return std::sqrt(q.standard.squared_norm() + q.dual.squared_norm());
}

}  // namespace dqproj
