#pragma once

// Metric projection of a dual quaternion onto the unit dual quaternions under
// the 2^R-norm. In vector form the problem is
//
//   min  1/2 |qs - as|^2 + 1/2 |qd - ad|^2   s.t.  |qs|^2 = 1,  qd . qs = 0,
//
// and every minimizer is a KKT point
//
//   qs - as + 2 lambda qs + mu qd = 0
//   qd - ad + mu qs               = 0
//   |qs|^2 - 1 = 0,   qd . qs = 0.
//
// The solver dispatches on the relation between as and ad (as = 0, ad = 0,
// as parallel to ad, general position), enumerates the KKT points of that
// case, and returns the feasible one of least objective together with the
// full candidate ledger.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "dqproj/dual_quaternion.hpp"
#include "dqproj/error.hpp"
#include "dqproj/oracle.hpp"
#include "dqproj/polyroots.hpp"
#include "dqproj/tolerance.hpp"

namespace dqproj {

enum class CaseLabel {
  StdZero,      // as = 0
  DualZero,     // as != 0, ad = 0
  Dependent,    // as = k ad
  Independent,  // as, ad linearly independent
};

inline std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::StdZero: return "StdZero";
    case CaseLabel::DualZero: return "DualZero";
    case CaseLabel::Dependent: return "Dependent";
    case CaseLabel::Independent: return "Independent";
  }
  return "Unknown";
}

/// One examined stationary point.
struct Candidate {
  double mu = 0.0;
  double lambda = 0.0;
  Vec4 qs = Vec4::Zero();
  Vec4 qd = Vec4::Zero();
  double objective = std::numeric_limits<double>::infinity();
  bool feasible = false;
  double kkt_residual = std::numeric_limits<double>::infinity();
};

struct ProjectionResult {
  DualQuaternion q;
  CaseLabel case_label = CaseLabel::StdZero;
  std::vector<Candidate> candidates;
  std::size_t selected = 0;
  double e_r = 0.0;
  double e_o = 0.0;
  double dist_2r = 0.0;

  const Candidate& winner() const { return candidates.at(selected); }
  Vec4 qs() const { return q.standard.vec(); }
  Vec4 qd() const { return q.dual.vec(); }
  double objective() const { return winner().objective; }
};

/// The scalar k with as = k ad in the dependent case.
struct DependenceRatio {
  double k = 0.0;
};

struct ProjectionOptions {
  /// Run Newton iterations on the KKT system for each Stage I/II candidate.
  bool polish = true;
  /// When Stage II yields no feasible candidate, fall back to the sampling
  /// oracle instead of throwing NoFeasibleCandidate.
#ifdef NDEBUG
  bool oracle_fallback = false;
#else
  bool oracle_fallback = true;
#endif
};

inline constexpr double kFeasibilityTol = 1e-10;
inline constexpr double kKktTol = 1e-8;
inline constexpr double kDependenceTol = 1e-12;

/// 1/2 |qs - as|^2 + 1/2 |qd - ad|^2
inline double objective(const Vec4& as, const Vec4& ad, const Vec4& qs, const Vec4& qd) {
  return 0.5 * (qs - as).squaredNorm() + 0.5 * (qd - ad).squaredNorm();
}

inline double feasibility_violation(const Vec4& qs, const Vec4& qd) {
  return std::max(std::abs(qs.squaredNorm() - 1.0), std::abs(qd.dot(qs)));
}

/// Max-norm violation of the four KKT blocks.
inline double kkt_residuals(const Vec4& as, const Vec4& ad, const Vec4& qs, const Vec4& qd,
                            double lambda, double mu) {
  const double stat_s = (qs - as + 2.0 * lambda * qs + mu * qd).cwiseAbs().maxCoeff();
  const double stat_d = (qd - ad + mu * qs).cwiseAbs().maxCoeff();
  return std::max({stat_s, stat_d, std::abs(qs.squaredNorm() - 1.0), std::abs(qd.dot(qs))});
}

namespace detail {

inline double input_scale(const Vec4& as, const Vec4& ad) {
  return std::max(as.cwiseAbs().maxCoeff(), ad.cwiseAbs().maxCoeff());
}

/// Zero threshold used by dispatch: 1e-13 (1 + |input|_inf).
inline double dispatch_zero_tol(const Vec4& as, const Vec4& ad) {
  return kZeroRelTol * (1.0 + input_scale(as, ad));
}

/// e1 orthonormalized against ad (e2 when ad leans too far toward e1).
inline Vec4 orthogonal_unit(const Vec4& ad) {
  const double n = ad.norm();
  if (n == 0.0) return Vec4::UnitX();
  const Vec4 u = ad / n;
  const Vec4 base = std::abs(u[0]) > 0.9 ? Vec4::UnitY() : Vec4::UnitX();
  Vec4 v = base - u.dot(base) * u;
  v -= u.dot(v) * u;
  return v / v.norm();
}

/// Multipliers consistent with a feasible KKT point: lambda = (qs.as - 1)/2, mu = qs.ad.
inline void fill_multipliers(Candidate& c, const Vec4& as, const Vec4& ad) {
  c.lambda = 0.5 * (c.qs.dot(as) - 1.0);
  c.mu = c.qs.dot(ad);
}

inline void evaluate(Candidate& c, const Vec4& as, const Vec4& ad) {
  c.objective = objective(as, ad, c.qs, c.qd);
  c.kkt_residual = kkt_residuals(as, ad, c.qs, c.qd, c.lambda, c.mu);
  c.feasible = feasibility_violation(c.qs, c.qd) <= kFeasibilityTol && c.kkt_residual <= kKktTol;
}

using KktVec = Eigen::Matrix<double, 10, 1>;
using KktMat = Eigen::Matrix<double, 10, 10>;

inline KktVec kkt_system(const Vec4& as, const Vec4& ad, const KktVec& z) {
  const Vec4 qs = z.segment<4>(0);
  const Vec4 qd = z.segment<4>(4);
  const double lambda = z[8];
  const double mu = z[9];
  KktVec f;
  f.segment<4>(0) = (1.0 + 2.0 * lambda) * qs + mu * qd - as;
  f.segment<4>(4) = qd - ad + mu * qs;
  f[8] = qs.squaredNorm() - 1.0;
  f[9] = qd.dot(qs);
  return f;
}

/// Newton iterations on the KKT equations; a step is kept only if it lowers
/// the max-norm residual.
inline void polish_kkt(Candidate& c, const Vec4& as, const Vec4& ad, int max_iterations = 8) {
  KktVec z;
  z << c.qs, c.qd, c.lambda, c.mu;
  KktVec f = kkt_system(as, ad, z);
  double res = f.cwiseAbs().maxCoeff();
  // Already converged: near a degenerate stationary set the Jacobian is
  // singular and a step could jump to a different KKT point.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + input_scale(as, ad));
  for (int it = 0; it < max_iterations && res > floor; ++it) {
    const Vec4 qs = z.segment<4>(0);
    const Vec4 qd = z.segment<4>(4);
    const double lambda = z[8];
    const double mu = z[9];
    KktMat j = KktMat::Zero();
    j.block<4, 4>(0, 0) = (1.0 + 2.0 * lambda) * Eigen::Matrix4d::Identity();
    j.block<4, 4>(0, 4) = mu * Eigen::Matrix4d::Identity();
    j.block<4, 1>(0, 8) = 2.0 * qs;
    j.block<4, 1>(0, 9) = qd;
    j.block<4, 4>(4, 0) = mu * Eigen::Matrix4d::Identity();
    j.block<4, 4>(4, 4) = Eigen::Matrix4d::Identity();
    j.block<4, 1>(4, 9) = qs;
    j.block<1, 4>(8, 0) = 2.0 * qs.transpose();
    j.block<1, 4>(9, 0) = qd.transpose();
    j.block<1, 4>(9, 4) = qs.transpose();

    const KktVec step = Eigen::FullPivLU<KktMat>(j).solve(-f);
    if (!step.allFinite() || step.segment<4>(0).norm() > 0.25) break;
    const KktVec zn = z + step;
    const KktVec fn = kkt_system(as, ad, zn);
    const double rn = fn.cwiseAbs().maxCoeff();
    if (!(rn < res)) break;
    z = zn;
    f = fn;
    res = rn;
  }
  c.qs = z.segment<4>(0);
  c.qd = z.segment<4>(4);
  c.lambda = z[8];
  c.mu = z[9];
}

/// Pulls a nearly feasible pair onto the constraint set: normalize qs, then
/// remove the qs-component of qd.
inline void retract(Candidate& c) {
  const double n = c.qs.norm();
  if (n == 0.0 || !std::isfinite(n)) return;
  c.qs /= n;
  c.qd -= c.qd.dot(c.qs) * c.qs;
}

/// Shared tail for Stage I/II candidates: polish, accept only if the raw
/// point is already feasible, then retract and recompute everything.
inline void finish_candidate(Candidate& c, const Vec4& as, const Vec4& ad, const ProjectionOptions& opt) {
  if (!c.qs.allFinite() || !c.qd.allFinite()) {
    c.feasible = false;
    return;
  }
  if (opt.polish) polish_kkt(c, as, ad);
  if (feasibility_violation(c.qs, c.qd) > kFeasibilityTol) {
    c.objective = objective(as, ad, c.qs, c.qd);
    c.kkt_residual = kkt_residuals(as, ad, c.qs, c.qd, c.lambda, c.mu);
    c.feasible = false;
    return;
  }
  retract(c);
  fill_multipliers(c, as, ad);
  evaluate(c, as, ad);
}

inline ProjectionResult assemble(const Vec4& as, const Vec4& ad, CaseLabel label,
                                 std::vector<Candidate> candidates) {
  ProjectionResult r;
  r.case_label = label;
  r.candidates = std::move(candidates);
  bool any = false;
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const Candidate& c = r.candidates[i];
    if (!c.feasible) continue;
    if (!any || c.objective < r.candidates[r.selected].objective) {
      r.selected = i;
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::NoFeasibleCandidate, "no feasible KKT candidate");
  const Candidate& w = r.candidates[r.selected];
  r.q = DualQuaternion::from_vectors(w.qs, w.qd);
  r.e_r = std::abs(w.qs.squaredNorm() - 1.0);
  r.e_o = std::abs(w.qs.dot(w.qd));
  r.dist_2r = std::sqrt((w.qs - as).squaredNorm() + (w.qd - ad).squaredNorm());
  return r;
}

}  // namespace detail

inline CaseLabel classify(const Vec4& as, const Vec4& ad) {
  if (!as.allFinite() || !ad.allFinite()) throw Error(ErrorKind::NonFinite, "input has non-finite components");
  const double tol = detail::dispatch_zero_tol(as, ad);
  const double ns = as.norm();
  const double nd = ad.norm();
  if (ns <= tol) return CaseLabel::StdZero;
  if (nd <= tol) return CaseLabel::DualZero;
  const double cos_sq = std::pow(as.dot(ad) / (ns * nd), 2);
  if (1.0 - cos_sq <= kDependenceTol) return CaseLabel::Dependent;
  return CaseLabel::Independent;
}

/// Least-squares ratio k = as.ad / |ad|^2.
inline DependenceRatio dependence_ratio(const Vec4& as, const Vec4& ad) {
  return {as.dot(ad) / ad.squaredNorm()};
}

/// Case as = 0: qd = ad, qs any unit vector orthogonal to ad.
inline ProjectionResult project_case1(const Vec4& as, const Vec4& ad) {
  Candidate c;
  c.qd = ad;
  c.qs = detail::orthogonal_unit(ad);
  detail::fill_multipliers(c, as, ad);
  detail::evaluate(c, as, ad);
  return detail::assemble(as, ad, CaseLabel::StdZero, {c});
}

inline ProjectionResult project_case1(const Vec4& ad) { return project_case1(Vec4::Zero(), ad); }

/// Case ad = 0: radial projection of as, qd = 0.
inline ProjectionResult project_case21(const Vec4& as, const Vec4& ad) {
  Candidate c;
  c.qs = as / as.norm();
  c.qd = Vec4::Zero();
  detail::fill_multipliers(c, as, ad);
  detail::evaluate(c, as, ad);
  return detail::assemble(as, ad, CaseLabel::DualZero, {c});
}

inline ProjectionResult project_case21(const Vec4& as) { return project_case21(as, Vec4::Zero()); }

/// Stage I (as = k ad). Stationary points have mu in {+|ad|, -|ad|, k}:
///   mu = +-|ad|:  qs = +-ad/|ad|, qd = 0
///   mu = k:       any unit qs with qs.ad = k (needs |k| <= |ad|), qd = ad - k qs
/// The winner is picked by the true objective over the feasible ones.
inline ProjectionResult stage1(const Vec4& as, const Vec4& ad, DependenceRatio ratio,
                               const ProjectionOptions& opt = {}) {
  const double d = ad.norm();
  const Vec4 u = ad / d;
  const double k = ratio.k;
  std::vector<Candidate> ledger;

  for (double sign : {1.0, -1.0}) {
    Candidate c;
    c.mu = sign * d;
    c.qs = sign * u;
    c.qd = Vec4::Zero();
    c.lambda = 0.5 * (c.qs.dot(as) - 1.0);
    detail::finish_candidate(c, as, ad, opt);
    ledger.push_back(c);
  }

  Candidate fam;
  fam.mu = k;
  if (std::abs(k) <= d * (1.0 + 1e-12)) {
    const double along = std::clamp(k / d, -1.0, 1.0);
    // Inside the stationary sphere slice, lean toward the part of as that is
    // not parallel to ad; that is the limit of the general-position optimum.
    Vec4 perp = as - as.dot(u) * u;
    perp -= perp.dot(u) * u;
    const double pn = perp.norm();
    const Vec4 w = pn > 64.0 * std::numeric_limits<double>::epsilon() * as.norm()
                       ? Vec4(perp / pn)
                       : detail::orthogonal_unit(ad);
    fam.qs = along * u + std::sqrt(std::max(0.0, 1.0 - along * along)) * w;
    fam.qd = ad - fam.qs.dot(ad) * fam.qs;
    fam.lambda = 0.5 * (fam.qs.dot(as) - 1.0);
    detail::finish_candidate(fam, as, ad, opt);
  } else {
    fam.lambda = 0.5 * (k * k - 1.0);
    fam.qs = Vec4::Constant(std::numeric_limits<double>::quiet_NaN());
    fam.qd = fam.qs;
    fam.feasible = false;
  }
  ledger.push_back(fam);

  return detail::assemble(as, ad, CaseLabel::Dependent, std::move(ledger));
}

/// -|ad|^2 mu^4 + 2 (as.ad) mu^3 + (|ad|^4 - |as|^2) mu^2 - 2 (as.ad)|ad|^2 mu + (as.ad)^2
inline PolyCoeffs<4> build_quartic(const Vec4& as, const Vec4& ad) {
  const double c = as.dot(ad);
  const double d2 = ad.squaredNorm();
  const double s2 = as.squaredNorm();
  return {c * c, -2.0 * c * d2, d2 * d2 - s2, 2.0 * c, -d2};
}

/// Maps a real root mu of the quartic back to (lambda, qs, qd).
inline Candidate recover_candidate(const Vec4& as, const Vec4& ad, double mu,
                                   const ProjectionOptions& opt = {}) {
  Candidate c;
  c.mu = mu;
  if (std::abs(mu) <= detail::dispatch_zero_tol(as, ad)) {
    c.mu = 0.0;
    const double ns = as.norm();
    c.lambda = 0.5 * (ns - 1.0);
    c.qs = as / ns;
    c.qd = ad;
  } else {
    const double cross = as.dot(ad);
    const double d2 = ad.squaredNorm();
    const double two_lambda_1 = (mu * mu * mu - mu * d2 + cross) / mu;
    c.lambda = 0.5 * (two_lambda_1 - 1.0);
    // D = 2 lambda - mu^2 + 1, written without the cancelling mu^2 terms.
    const double denom = (cross - mu * d2) / mu;
    if (std::abs(denom) <= 1e-12 * (1.0 + std::abs(2.0 * c.lambda) + mu * mu)) {
      c.qs = Vec4::Constant(std::numeric_limits<double>::quiet_NaN());
      c.qd = c.qs;
      c.feasible = false;
      return c;
    }
    c.qs = (as - mu * ad) / denom;
    c.qd = (-mu * as + two_lambda_1 * ad) / denom;
  }
  detail::finish_candidate(c, as, ad, opt);
  return c;
}

namespace detail {

/// The minimizer solves (ad ad^T + sigma I) qs = as with sigma >= 0. Splitting
/// as = beta u + w (u = ad/|ad|, w orthogonal to u) gives the secular equation
///   beta^2 / (sigma + |ad|^2)^2 + |w|^2 / sigma^2 = 1,
/// decreasing on sigma > 0 with its root in [|w|, |as|]. Solved by bisection,
/// this stays accurate where the quartic roots crowd together.
inline Candidate secular_candidate(const Vec4& as, const Vec4& ad, const ProjectionOptions& opt) {
  Candidate c;
  const double d2 = ad.squaredNorm();
  const Vec4 u = ad / std::sqrt(d2);
  const double beta = as.dot(u);
  const Vec4 w = as - beta * u;
  const double wn = w.norm();
  if (!(wn > 0.0)) {
    c.qs = Vec4::Constant(std::numeric_limits<double>::quiet_NaN());
    c.qd = c.qs;
    return c;
  }
  auto phi = [&](double sigma) {
    const double a = beta / (sigma + d2);
    const double b = wn / sigma;
    return a * a + b * b - 1.0;
  };
  double lo = wn;
  double hi = std::max(as.norm(), wn);
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  const double sigma = 0.5 * (lo + hi);
  c.qs = (beta / (sigma + d2)) * u + w / sigma;
  c.qd = ad - c.qs.dot(ad) * c.qs;
  fill_multipliers(c, as, ad);
  finish_candidate(c, as, ad, opt);
  return c;
}

}  // namespace detail

/// Stage II (general position): one candidate per distinct real root of the quartic.
inline ProjectionResult stage2(const Vec4& as, const Vec4& ad, const ProjectionOptions& opt = {}) {
  const RealRoots roots = quartic_real_roots(build_quartic(as, ad));
  std::vector<Candidate> ledger;
  ledger.reserve(roots.size());
  for (double mu : roots.roots) {
    Candidate c = recover_candidate(as, ad, mu, opt);
    // Two tiny roots can both collapse onto the mu = 0 branch.
    const bool duplicate = std::any_of(ledger.begin(), ledger.end(), [&](const Candidate& o) {
      return o.mu == 0.0 && c.mu == 0.0 && o.qs == c.qs;
    });
    if (!duplicate) ledger.push_back(c);
  }
  ledger.push_back(detail::secular_candidate(as, ad, opt));
  const bool any = std::any_of(ledger.begin(), ledger.end(), [](const Candidate& c) { return c.feasible; });
  if (!any) {
    if (!opt.oracle_fallback) {
      throw Error(ErrorKind::NoFeasibleCandidate, "quartic produced no feasible candidate");
    }
    const OracleResult o = oracle_project(as, ad, 200000, 0);
    Candidate c;
    c.qs = o.qs;
    c.qd = o.qd;
    detail::fill_multipliers(c, as, ad);
    detail::finish_candidate(c, as, ad, opt);
    ledger.push_back(c);
  }
  return detail::assemble(as, ad, CaseLabel::Independent, std::move(ledger));
}

inline ProjectionResult project(const Vec4& as, const Vec4& ad, const ProjectionOptions& opt = {}) {
  switch (classify(as, ad)) {
    case CaseLabel::StdZero: return project_case1(as, ad);
    case CaseLabel::DualZero: return project_case21(as, ad);
    case CaseLabel::Dependent: return stage1(as, ad, dependence_ratio(as, ad), opt);
    case CaseLabel::Independent: return stage2(as, ad, opt);
  }
  throw Error(ErrorKind::NonFinite, "unreachable");
}

inline ProjectionResult project(const DualQuaternion& a, const ProjectionOptions& opt = {}) {
  return project(a.standard.vec(), a.dual.vec(), opt);
}

}  // namespace dqproj
