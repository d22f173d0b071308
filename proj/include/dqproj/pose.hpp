#pragma once

#include <array>
#include <cmath>

#include "dqproj/dual_quaternion.hpp"
#include "dqproj/error.hpp"

namespace dqproj {

/// One rigid-body pose record: timestamp, translation, rotation quaternion.
struct TrajectoryPose {
  double t_stamp = 0.0;
  std::array<double, 3> translation{};
  Quaternion rotation = Quaternion::identity();
};

/// Encodes a pose as q_s = normalized rotation, q_d = 1/2 t q_s.
inline DualQuaternion pose_to_dq(const TrajectoryPose& p) {
  const double n = p.rotation.norm();
  if (!(n >= 0.5 && n <= 2.0)) {
    throw Error(ErrorKind::CorruptPose, "rotation quaternion norm outside [0.5, 2]");
  }
  const Quaternion qs = p.rotation * (1.0 / n);
  const Quaternion t = Quaternion::pure(p.translation[0], p.translation[1], p.translation[2]);
  return {qs, 0.5 * (t * qs)};
}

/// Decodes t = 2 q_d q_s* from a unit dual quaternion.
inline TrajectoryPose dq_to_pose(const DualQuaternion& q) {
  if (!is_unit(q, 1e-9)) throw Error(ErrorKind::NotUnit, "dual quaternion is not unit");
  const Quaternion t = 2.0 * (q.dual * q.standard.conj());
  if (std::abs(t.w) > 1e-9) throw Error(ErrorKind::NotUnit, "translation has a scalar part");
  TrajectoryPose p;
  p.translation = {t.x, t.y, t.z};
  p.rotation = q.standard;
  return p;
}

}  // namespace dqproj
