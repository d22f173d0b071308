#pragma once

// Real roots of the low-degree polynomials produced by the projection stages.
//
// Route: companion-matrix eigenvalues seed the search, each seed is polished
// by damped Newton steps on the max-scaled polynomial, a sign-change scan on
// an asinh-spaced grid recovers anything the eigen-solve missed, and nearby
// roots are merged into clusters carrying a multiplicity.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "dqproj/error.hpp"

namespace dqproj {

/// Coefficient of mu^k at index k.
template <std::size_t Degree>
using PolyCoeffs = std::array<double, Degree + 1>;

struct RealRoots {
  std::vector<double> roots;      // ascending, one entry per distinct root
  std::vector<int> multiplicity;  // parallel to roots

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
};

namespace poly {

/// Residual bound on the max-scaled polynomial.
inline constexpr double kResidualTol = 1e-10;
/// Leading coefficient below this (relative to max |c_k|) is rejected.
inline constexpr double kLeadingTol = 1e-14;
inline constexpr double kMergeRelTol = 1e-9;

template <std::size_t N>
double eval(const std::array<double, N>& c, double x) {
  double acc = c[N - 1];
  for (std::size_t k = N - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

template <std::size_t N>
double eval_derivative(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = N - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * c[k];
  return acc;
}

/// Running bound on the rounding error of Horner's scheme at x.
template <std::size_t N>
double eval_noise(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (std::size_t k = N; k-- > 0;) acc = acc * ax + std::abs(c[k]);
  return 2.0 * static_cast<double>(N) * std::numeric_limits<double>::epsilon() * acc;
}

/// Damped Newton: at least `min_steps` iterations, a step is halved until |p|
/// stops growing. `mult` > 1 uses the multiplicity-corrected step m p / p'.
template <std::size_t N>
double polish(const std::array<double, N>& c, double x, int mult = 1, int min_steps = 2,
              int max_steps = 60) {
  double px = eval(c, x);
  for (int it = 0; it < max_steps; ++it) {
    if (px == 0.0) break;
    const double dp = eval_derivative(c, x);
    if (dp == 0.0 || !std::isfinite(dp)) break;
    double step = static_cast<double>(mult) * px / dp;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const double xn = x - step;
      const double pn = eval(c, xn);
      if (std::abs(pn) <= std::abs(px)) {
        improved = std::abs(pn) < std::abs(px) || it < min_steps;
        x = xn;
        px = pn;
        break;
      }
      step *= 0.5;
    }
    if (!improved && it >= min_steps) break;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x)) &&
        it + 1 >= min_steps) {
      break;
    }
  }
  return x;
}

/// Newton with implicit deflation: steps on p(x) / prod(x - r) for the roots r
/// already accepted, so a seed next to a found root converges to its
/// neighbor instead of collapsing onto it.
template <std::size_t N>
double polish_suppressed(const std::array<double, N>& c, double x, const std::vector<double>& known,
                         int max_steps = 60) {
  auto merit = [&](double t) {
    double g = eval(c, t);
    for (double r : known) g /= (t - r);
    return std::abs(g);
  };
  for (double r : known) {
    if (std::abs(x - r) <= 1e-12 * (1.0 + std::abs(r))) {
      const double h = 1e-7 * (1.0 + std::abs(r));
      x = merit(r + h) <= merit(r - h) ? r + h : r - h;
    }
  }
  double gx = merit(x);
  for (int it = 0; it < max_steps && std::isfinite(gx) && gx > 0.0; ++it) {
    const double px = eval(c, x);
    double corr = 0.0;
    for (double r : known) corr += 1.0 / (x - r);
    const double denom = eval_derivative(c, x) - px * corr;
    if (denom == 0.0 || !std::isfinite(denom)) break;
    double step = px / denom;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const double xn = x - step;
      const double gn = merit(xn);
      if (gn < gx) {
        x = xn;
        gx = gn;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x))) break;
  }
  return x;
}

template <std::size_t N>
double bisect(const std::array<double, N>& c, double lo, double hi) {
  double plo = eval(c, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = eval(c, mid);
    if (pm == 0.0) return mid;
    if ((pm < 0.0) == (plo < 0.0)) {
      lo = mid;
      plo = pm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Seed {
  double x;
  int mult;
};

template <std::size_t Degree>
RealRoots real_roots(const PolyCoeffs<Degree>& raw) {
  static_assert(Degree >= 1 && Degree <= 8);
  constexpr std::size_t N = Degree + 1;

  double scale = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "polynomial coefficient is not finite");
    scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) throw Error(ErrorKind::DegenerateLeading, "zero polynomial");
  std::array<double, N> c{};
  for (std::size_t k = 0; k < N; ++k) c[k] = raw[k] / scale;
  if (std::abs(c[Degree]) < kLeadingTol) {
    throw Error(ErrorKind::DegenerateLeading, "leading coefficient vanishes relative to max |c_k|");
  }

  std::vector<Seed> seeds;

  // Exact zero roots factor out without touching the eigen-solve.
  std::size_t zeros = 0;
  while (zeros < Degree && c[zeros] == 0.0) ++zeros;
  if (zeros > 0) seeds.push_back({0.0, static_cast<int>(zeros)});

  const std::size_t reduced = Degree - zeros;
  if (reduced > 0) {
    const Eigen::Index n = static_cast<Eigen::Index>(reduced);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      companion(i, n - 1) = -c[zeros + static_cast<std::size_t>(i)] / c[Degree];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() == Eigen::Success) {
      const auto ev = solver.eigenvalues();
      for (Eigen::Index i = 0; i < n; ++i) {
        const double re = ev[i].real();
        const double im = ev[i].imag();
        if (std::abs(im) <= 1e-4 * (1.0 + std::abs(ev[i]))) seeds.push_back({re, 1});
      }
    }
  }

  struct Found {
    double x;
    int mult;
  };
  std::vector<Found> found;
  std::vector<double> known;
  for (const Seed& s : seeds) {
    if (s.x == 0.0 && zeros > 0) {
      found.push_back({0.0, s.mult});
      continue;
    }
    double x = polish(c, s.x);
    if (std::abs(eval(c, x)) > kResidualTol) continue;
    const bool collapsed = std::any_of(known.begin(), known.end(), [&](double r) {
      return std::abs(x - r) <= kMergeRelTol * std::max(std::abs(x), std::abs(r));
    });
    if (collapsed) {
      const double alt = polish_suppressed(c, s.x, known);
      if (std::abs(eval(c, alt)) <= kResidualTol) x = alt;
    }
    found.push_back({x, 1});
    known.push_back(x);
  }

  // Sign-change scan on an asinh-spaced grid out to the Cauchy bound.
  double bound = 0.0;
  for (std::size_t k = 0; k < Degree; ++k) bound = std::max(bound, std::abs(c[k] / c[Degree]));
  bound += 1.0;
  const double t_max = std::asinh(bound);
  constexpr int kGrid = 400;
  double x_prev = -bound;
  double p_prev = eval(c, x_prev);
  for (int g = 1; g <= kGrid; ++g) {
    const double x = std::sinh(-t_max + 2.0 * t_max * g / kGrid);
    const double p = eval(c, x);
    if ((p_prev < 0.0 && p > 0.0) || (p_prev > 0.0 && p < 0.0)) {
      const bool covered = std::any_of(found.begin(), found.end(), [&](const Found& f) {
        return f.x >= x_prev - kMergeRelTol * (1.0 + std::abs(f.x)) &&
               f.x <= x + kMergeRelTol * (1.0 + std::abs(f.x));
      });
      if (!covered) {
        const double r = polish(c, bisect(c, x_prev, x));
        if (std::abs(eval(c, r)) <= kResidualTol) found.push_back({r, 1});
      }
    }
    x_prev = x;
    p_prev = p;
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.x < b.x; });

  // Merge clusters: coincident within a purely relative radius, or separated
  // only by a stretch where |p| stays at the rounding floor (a split multiple
  // root). An absolute radius would fuse distinct tiny roots, which the
  // projection quartic produces when |as| << |ad|^2.
  RealRoots out;
  std::size_t i = 0;
  while (i < found.size()) {
    double sum = found[i].x * found[i].mult;
    int mult = found[i].mult;
    std::size_t j = i + 1;
    while (j < found.size()) {
      const double a = found[j - 1].x;
      const double b = found[j].x;
      const double mid = 0.5 * (a + b);
      const bool close = b - a <= kMergeRelTol * std::max(std::abs(a), std::abs(b));
      const bool flat = std::abs(eval(c, mid)) <= 8.0 * eval_noise(c, mid);
      if (!close && !flat) break;
      sum += found[j].x * found[j].mult;
      mult += found[j].mult;
      ++j;
    }
    double r = sum / mult;
    if (mult > 1 && r != 0.0) {
      const double refined = polish(c, r, mult, 0, 8);
      if (std::abs(eval(c, refined)) <= std::abs(eval(c, r))) r = refined;
    }
    out.roots.push_back(r);
    out.multiplicity.push_back(mult);
    i = j;
  }

  int total = 0;
  for (int m : out.multiplicity) total += m;
  while (total > static_cast<int>(Degree)) {
    auto it = std::max_element(out.multiplicity.begin(), out.multiplicity.end());
    --*it;
    --total;
  }
  return out;
}

}  // namespace poly

inline RealRoots quartic_real_roots(const PolyCoeffs<4>& c) { return poly::real_roots<4>(c); }
inline RealRoots cubic_real_roots(const PolyCoeffs<3>& c) { return poly::real_roots<3>(c); }

}  // namespace dqproj
