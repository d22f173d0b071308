#pragma once

#include <array>
#include <cmath>

#include "dqproj/error.hpp"
#include "dqproj/quaternion.hpp"

namespace dqproj {

struct RotationMatrix {
  std::array<std::array<double, 3>, 3> r{};

  static RotationMatrix identity() {
    RotationMatrix m;
    m.r[0][0] = m.r[1][1] = m.r[2][2] = 1.0;
    return m;
  }

  double operator()(int i, int j) const { return r[i][j]; }
  double& operator()(int i, int j) { return r[i][j]; }

  double determinant() const {
    return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
           r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
           r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  }

  /// max |(R^T R - I)_ij|
  double orthogonality_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += r[k][i] * r[k][j];
        worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

  std::array<double, 3> apply(const std::array<double, 3>& v) const {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
    return out;
  }
};

inline RotationMatrix quat_to_rotmat(const Quaternion& q) {
  if (std::abs(q.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::NotUnit, "rotation quaternion must have unit norm");
  }
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  RotationMatrix m;
  m.r = {{{w * w + x * x - y * y - z * z, 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)},
          {2.0 * (x * y + w * z), w * w - x * x + y * y - z * z, 2.0 * (y * z - w * x)},
          {2.0 * (x * z - w * y), 2.0 * (y * z + w * x), w * w - x * x - y * y + z * z}}};
  return m;
}

/// Inverse of quat_to_rotmat with sign canonicalized to w >= 0. Uses the
/// trace formula while 1 + tr(R) is comfortably positive and switches to the
/// largest-diagonal extraction otherwise.
inline Quaternion rotmat_to_quat(const RotationMatrix& m) {
  if (m.orthogonality_defect() > 1e-8 || std::abs(m.determinant() - 1.0) > 1e-8) {
    throw Error(ErrorKind::NotRotation, "matrix is not a proper rotation");
  }
  const auto& r = m.r;
  const double trace = r[0][0] + r[1][1] + r[2][2];
  Quaternion q;
  if (trace > 0.0) {
    const double w = 0.5 * std::sqrt(1.0 + trace);
    const double f = 0.25 / w;
    q = {w, (r[2][1] - r[1][2]) * f, (r[0][2] - r[2][0]) * f, (r[1][0] - r[0][1]) * f};
  } else if (r[0][0] >= r[1][1] && r[0][0] >= r[2][2]) {
    const double x = 0.5 * std::sqrt(std::max(0.0, 1.0 + r[0][0] - r[1][1] - r[2][2]));
    const double f = 0.25 / x;
    q = {(r[2][1] - r[1][2]) * f, x, (r[0][1] + r[1][0]) * f, (r[0][2] + r[2][0]) * f};
  } else if (r[1][1] >= r[2][2]) {
    const double y = 0.5 * std::sqrt(std::max(0.0, 1.0 - r[0][0] + r[1][1] - r[2][2]));
    const double f = 0.25 / y;
    q = {(r[0][2] - r[2][0]) * f, (r[0][1] + r[1][0]) * f, y, (r[1][2] + r[2][1]) * f};
  } else {
    const double z = 0.5 * std::sqrt(std::max(0.0, 1.0 - r[0][0] - r[1][1] + r[2][2]));
    const double f = 0.25 / z;
    q = {(r[1][0] - r[0][1]) * f, (r[0][2] + r[2][0]) * f, (r[1][2] + r[2][1]) * f, z};
  }
  // Absorb the O(1e-8) input slack so the result is unit to rounding.
  q *= 1.0 / q.norm();
  return canonicalize_sign(q);
}

}  // namespace dqproj
