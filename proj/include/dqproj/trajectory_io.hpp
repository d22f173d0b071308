#pragma once

// TUM-style trajectory files: one pose per line, "timestamp tx ty tz qx qy qz qw",
// '#' comments, blank lines ignored.

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dqproj/error.hpp"
#include "dqproj/pose.hpp"
#include "dqproj/rng.hpp"
#include "dqproj/text.hpp"

namespace dqproj {

/// Quaternion field order inside a trajectory line.
enum class QuatOrder {
  XYZW,  // TUM convention
  WXYZ,
};

struct TrajectoryFile {
  std::vector<TrajectoryPose> poses;
  std::string source_path;
  std::size_t skipped_lines = 0;  // comments plus malformed rows
  std::size_t malformed_lines = 0;
};

/// File fields (f0, f1, f2, f3) to (w, x, y, z).
inline Quaternion unpack_quat(const std::array<double, 4>& f, QuatOrder order) {
  if (order == QuatOrder::XYZW) return {f[3], f[0], f[1], f[2]};
  return {f[0], f[1], f[2], f[3]};
}

/// (w, x, y, z) back to the file's field order.
inline std::array<double, 4> pack_quat(const Quaternion& q, QuatOrder order) {
  if (order == QuatOrder::XYZW) return {q.x, q.y, q.z, q.w};
  return {q.w, q.x, q.y, q.z};
}

/// Rotation norms outside this band mark a corrupt record.
inline constexpr double kMinRotationNorm = 0.5;
inline constexpr double kMaxRotationNorm = 2.0;

inline TrajectoryFile parse_trajectory(std::istream& in, QuatOrder order = QuatOrder::XYZW,
                                       std::string source_path = {}) {
  TrajectoryFile tf;
  tf.source_path = std::move(source_path);
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    const std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '#') {
      ++tf.skipped_lines;
      continue;
    }
    const auto fields = split_whitespace(line);
    bool ok = fields.size() == 8;
    std::array<double, 8> v{};
    for (std::size_t i = 0; ok && i < 8; ++i) {
      const auto parsed = parse_double(fields[i]);
      ok = parsed.has_value() && std::isfinite(*parsed);
      if (ok) v[i] = *parsed;
    }
    TrajectoryPose p;
    if (ok) {
      p.t_stamp = v[0];
      p.translation = {v[1], v[2], v[3]};
      p.rotation = unpack_quat({v[4], v[5], v[6], v[7]}, order);
      const double n = p.rotation.norm();
      ok = n >= kMinRotationNorm && n <= kMaxRotationNorm;
    }
    if (!ok) {
      ++tf.skipped_lines;
      ++tf.malformed_lines;
      continue;
    }
    tf.poses.push_back(p);
  }
  if (tf.poses.empty()) throw Error(ErrorKind::EmptyFile, "trajectory has no valid poses");
  return tf;
}

inline void serialize_trajectory(const TrajectoryFile& tf, std::ostream& out,
                                 QuatOrder order = QuatOrder::XYZW) {
  out << (order == QuatOrder::XYZW ? "# timestamp tx ty tz qx qy qz qw\n"
                                   : "# timestamp tx ty tz qw qx qy qz\n");
  for (const TrajectoryPose& p : tf.poses) {
    out << format_double(p.t_stamp);
    for (double t : p.translation) out << ' ' << format_double(t);
    for (double c : pack_quat(p.rotation, order)) out << ' ' << format_double(c);
    out << '\n';
  }
}

struct InputPair {
  Vec4 as = Vec4::Zero();
  Vec4 ad = Vec4::Zero();
};

/// Encodes each pose as (q, 1/2 t q) with the rotation quaternion as read, so
/// dataset noise in its norm survives into the inputs. With sigma > 0, every
/// component gets independent Gaussian noise from Rng(seed), drawn pose by
/// pose in (as0..as3, ad0..ad3) order.
inline std::vector<InputPair> trajectory_to_inputs(const TrajectoryFile& tf, double perturb_sigma = 0.0,
                                                   std::uint64_t seed = 0) {
  if (!(perturb_sigma >= 0.0) || !std::isfinite(perturb_sigma)) {
    throw Error(ErrorKind::InvalidConfig, "perturbation sigma must be finite and >= 0");
  }
  std::vector<InputPair> out;
  out.reserve(tf.poses.size());
  Rng rng(seed);
  for (const TrajectoryPose& p : tf.poses) {
    const Quaternion t = Quaternion::pure(p.translation[0], p.translation[1], p.translation[2]);
    InputPair pair{p.rotation.vec(), (0.5 * (t * p.rotation)).vec()};
    if (perturb_sigma > 0.0) {
      for (int i = 0; i < 4; ++i) pair.as[i] += perturb_sigma * rng.normal();
      for (int i = 0; i < 4; ++i) pair.ad[i] += perturb_sigma * rng.normal();
    }
    out.push_back(pair);
  }
  return out;
}

}  // namespace dqproj
