#pragma once

#include <algorithm>
#include <cmath>

namespace dqproj {

/// Relative floor below which a magnitude is treated as an exact zero in
/// branching decisions (dual-number division, DQ magnitude, case dispatch).
inline constexpr double kZeroRelTol = 1e-13;

inline double zero_tolerance(double scale) { return kZeroRelTol * std::max(1.0, std::abs(scale)); }

inline bool is_negligible(double x, double scale) { return std::abs(x) <= zero_tolerance(scale); }

}  // namespace dqproj
