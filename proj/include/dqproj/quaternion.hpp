#pragma once

#include <Eigen/Core>
#include <cmath>
#include <ostream>

namespace dqproj {

/// Real 4-vector in basis order (1, i, j, k).
using Vec4 = Eigen::Vector4d;

/// Hamilton quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion pure(double x, double y, double z) { return {0.0, x, y, z}; }

  static Quaternion from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  Vec4 vec() const { return Vec4(w, x, y, z); }

  /// Scalar part Sc(q) = (q + q*)/2.
  constexpr double scalar() const { return w; }
  constexpr bool is_pure() const { return w == 0.0; }

  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

  constexpr double squared_norm() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(squared_norm()); }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

  // Hamilton product [p0 q0 - p.q, p0 q + q0 p + p x q].
  friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + q.w * p.x + p.y * q.z - p.z * q.y,
            p.w * q.y + q.w * p.y + p.z * q.x - p.x * q.z,
            p.w * q.z + q.w * p.z + p.x * q.y - p.y * q.x};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
  }
};

inline constexpr Quaternion quat_i{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion quat_j{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion quat_k{0.0, 0.0, 0.0, 1.0};

/// Flips the sign so that w >= 0; when w == 0 the first nonzero component is made positive.
inline Quaternion canonicalize_sign(const Quaternion& q) {
  const double comps[4] = {q.w, q.x, q.y, q.z};
  for (double c : comps) {
    if (c > 0.0) return q;
    if (c < 0.0) return -q;
  }
  return q;
}

}  // namespace dqproj
