#pragma once

// Shared input generators for the unit and acceptance suites.

#include <cmath>

#include "dqproj/projection.hpp"
#include "dqproj/rng.hpp"

namespace dqproj::testing {

inline Vec4 normal_vec(Rng& rng) { return {rng.normal(), rng.normal(), rng.normal(), rng.normal()}; }

/// Random 4-vector with magnitude spread over 10^[lo, hi].
inline Vec4 scaled_vec(Rng& rng, double lo = -2.0, double hi = 2.0) {
  return normal_vec(rng) * std::pow(10.0, rng.uniform(lo, hi));
}

struct Input {
  Vec4 as;
  Vec4 ad;
};

/// An input that classify() puts in the requested case.
inline Input random_input(Rng& rng, CaseLabel label) {
  switch (label) {
    case CaseLabel::StdZero: return {Vec4::Zero(), scaled_vec(rng)};
    case CaseLabel::DualZero: return {scaled_vec(rng), Vec4::Zero()};
    case CaseLabel::Dependent: {
      const Vec4 ad = scaled_vec(rng);
      const double target = 2.0 * std::pow(10.0, rng.uniform(-2.0, 2.0));
      const double k = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * target / ad.norm();
      return {k * ad, ad};
    }
    case CaseLabel::Independent: return {scaled_vec(rng), scaled_vec(rng)};
  }
  return {};
}

inline double objective_of(const Input& in, const ProjectionResult& r) {
  return objective(in.as, in.ad, r.qs(), r.qd());
}

}  // namespace dqproj::testing
