#pragma once

// Sampling oracle for the projection problem. Independent of the case
// analysis: for a fixed unit q_s the best q_d is a_d - (q_s . a_d) q_s, which
// leaves h(q_s) = -q_s . a_s + (q_s . a_d)^2 / 2 to be minimized over the unit
// 3-sphere. The oracle samples the sphere, then runs projected gradient
// descent from the best few samples. Its answer is always feasible, so its
// objective bounds the true minimum from above.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "dqproj/error.hpp"
#include "dqproj/quaternion.hpp"
#include "dqproj/rng.hpp"

namespace dqproj {

struct OracleResult {
  Vec4 qs = Vec4::Zero();
  Vec4 qd = Vec4::Zero();
  double objective = std::numeric_limits<double>::infinity();
};

namespace oracle_detail {

inline double reduced(const Vec4& x, const Vec4& as, const Vec4& ad) {
  const double m = x.dot(ad);
  return -x.dot(as) + 0.5 * m * m;
}

inline Vec4 refine(Vec4 x, const Vec4& as, const Vec4& ad, int iterations) {
  double h = reduced(x, as, ad);
  double step = 1.0 / (1.0 + as.norm() + ad.squaredNorm());
  for (int it = 0; it < iterations; ++it) {
    const Vec4 grad = -as + x.dot(ad) * ad;
    const Vec4 tangent = grad - x.dot(grad) * x;
    if (tangent.norm() == 0.0) break;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      Vec4 trial = x - step * tangent;
      trial /= trial.norm();
      const double ht = reduced(trial, as, ad);
      if (ht < h) {
        const double gain = h - ht;
        x = trial;
        h = ht;
        moved = true;
        step *= 2.0;
        if (gain <= 1e-14 * (1.0 + std::abs(h))) return x;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace oracle_detail

inline OracleResult oracle_project(const Vec4& as, const Vec4& ad, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples < 10000) throw Error(ErrorKind::InvalidConfig, "oracle needs at least 1e4 samples");
  constexpr std::size_t kKeep = 16;

  struct Entry {
    double h;
    Vec4 x;
  };
  std::array<Entry, kKeep> best;
  best.fill({std::numeric_limits<double>::infinity(), Vec4::UnitX()});

  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec4 x(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    const double n = x.norm();
    if (n == 0.0) continue;
    x /= n;
    const double h = oracle_detail::reduced(x, as, ad);
    if (h < best[kKeep - 1].h) {
      std::size_t pos = kKeep - 1;
      while (pos > 0 && best[pos - 1].h > h) {
        best[pos] = best[pos - 1];
        --pos;
      }
      best[pos] = {h, x};
    }
  }

  OracleResult out;
  for (const Entry& e : best) {
    if (!std::isfinite(e.h)) continue;
    const Vec4 qs = oracle_detail::refine(e.x, as, ad, 200);
    const Vec4 qd = ad - qs.dot(ad) * qs;
    const double f = 0.5 * (qs - as).squaredNorm() + 0.5 * (qd - ad).squaredNorm();
    if (f < out.objective) out = {qs, qd, f};
  }
  return out;
}

}  // namespace dqproj
