#pragma once

// Batch runner, error statistics, CDFs, and the naive baseline comparator.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dqproj/csv.hpp"
#include "dqproj/error.hpp"
#include "dqproj/projection.hpp"
#include "dqproj/text.hpp"
#include "dqproj/trajectory_io.hpp"

namespace dqproj {

enum class Method {
  Algorithm,
  Baseline,  // naive baseline: normalize qs, orthogonalize qd
};

inline std::string_view to_string(Method m) {
  return m == Method::Algorithm ? "algorithm" : "naive_baseline";
}

/// Feasible but generally not optimal: qs = as/|as| (the Case 1 representative
/// when as vanishes), qd = ad - (qs . ad) qs.
inline Candidate baseline_project(const Vec4& as, const Vec4& ad) {
  Candidate c;
  const double ns = as.norm();
  c.qs = ns <= detail::dispatch_zero_tol(as, ad) ? detail::orthogonal_unit(ad) : Vec4(as / ns);
  c.qd = ad - c.qs.dot(ad) * c.qs;
  detail::fill_multipliers(c, as, ad);
  detail::evaluate(c, as, ad);
  return c;
}

struct BatchRow {
  bool ok = false;
  std::string error;  // set when !ok
  Vec4 qs = Vec4::Zero();
  Vec4 qd = Vec4::Zero();
  std::string label;  // case label, or the baseline's name
  double e_r = 0.0;
  double e_o = 0.0;
  double dist_2r = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double objective = 0.0;
};

struct BatchStats {
  std::size_t n = 0;        // rows that produced an output
  std::size_t flagged = 0;  // rows that did not
  double mean_er = 0.0;
  double max_er = 0.0;
  double mean_eo = 0.0;
  double max_eo = 0.0;
  double mean_dist2r = 0.0;
  double max_dist2r = 0.0;
  double wall_time = 0.0;  // seconds
};

struct BatchResult {
  std::vector<BatchRow> rows;
  BatchStats stats;
};

inline BatchRow project_row(const InputPair& in, Method method) {
  BatchRow row;
  try {
    if (!in.as.allFinite() || !in.ad.allFinite()) {
      throw Error(ErrorKind::NonFinite, "input has non-finite components");
    }
    if (method == Method::Algorithm) {
      const ProjectionResult r = project(in.as, in.ad);
      const Candidate& w = r.winner();
      row.qs = r.qs();
      row.qd = r.qd();
      row.label = std::string(to_string(r.case_label));
      row.e_r = r.e_r;
      row.e_o = r.e_o;
      row.dist_2r = r.dist_2r;
      row.mu = w.mu;
      row.lambda = w.lambda;
      row.objective = w.objective;
    } else {
      const Candidate c = baseline_project(in.as, in.ad);
      row.qs = c.qs;
      row.qd = c.qd;
      row.label = std::string(to_string(method));
      row.e_r = std::abs(c.qs.squaredNorm() - 1.0);
      row.e_o = std::abs(c.qs.dot(c.qd));
      row.dist_2r = std::sqrt((c.qs - in.as).squaredNorm() + (c.qd - in.ad).squaredNorm());
      row.mu = c.mu;
      row.lambda = c.lambda;
      row.objective = c.objective;
    }
    row.ok = true;
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

/// Means and maxima over the rows that produced an output.
inline BatchStats summarize(const std::vector<BatchRow>& rows) {
  BatchStats s;
  for (const BatchRow& r : rows) {
    if (!r.ok) {
      ++s.flagged;
      continue;
    }
    ++s.n;
    s.mean_er += r.e_r;
    s.mean_eo += r.e_o;
    s.mean_dist2r += r.dist_2r;
    s.max_er = std::max(s.max_er, r.e_r);
    s.max_eo = std::max(s.max_eo, r.e_o);
    s.max_dist2r = std::max(s.max_dist2r, r.dist_2r);
  }
  if (s.n > 0) {
    const double n = static_cast<double>(s.n);
    s.mean_er /= n;
    s.mean_eo /= n;
    s.mean_dist2r /= n;
  }
  return s;
}

inline BatchResult run_batch(const std::vector<InputPair>& inputs, Method method) {
  if (inputs.empty()) throw Error(ErrorKind::InvalidConfig, "empty batch");
  const auto start = std::chrono::steady_clock::now();
  BatchResult out;
  out.rows.reserve(inputs.size());
  for (const InputPair& in : inputs) out.rows.push_back(project_row(in, method));
  out.stats = summarize(out.rows);
  out.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

struct CdfSeries {
  std::vector<double> sorted_values;
  std::vector<double> cumulative_fraction;
};

/// Empirical CDF: the i-th smallest value (1-based) gets fraction i/n.
inline CdfSeries cdf(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidConfig, "cdf of an empty list");
  std::sort(values.begin(), values.end());
  CdfSeries s;
  s.sorted_values = std::move(values);
  const std::size_t n = s.sorted_values.size();
  s.cumulative_fraction.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.cumulative_fraction[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  }
  return s;
}

inline constexpr std::string_view kStatsHeader =
    "n,method,mean_er,mean_eo,mean_dist2r,max_er,max_eo,max_dist2r,wall_time";

inline void write_stats_csv(std::ostream& out, const BatchStats& s, Method method) {
  out << kStatsHeader << '\n'
      << s.n << ',' << to_string(method) << ',' << format_double(s.mean_er) << ',' << format_double(s.mean_eo)
      << ',' << format_double(s.mean_dist2r) << ',' << format_double(s.max_er) << ','
      << format_double(s.max_eo) << ',' << format_double(s.max_dist2r) << ',' << format_double(s.wall_time)
      << '\n';
}

inline void write_cdf_csv(std::ostream& out, const CdfSeries& c) {
  out << "value,cum_fraction\n";
  for (std::size_t i = 0; i < c.sorted_values.size(); ++i) {
    out << format_double(c.sorted_values[i]) << ',' << format_double(c.cumulative_fraction[i]) << '\n';
  }
}

inline constexpr std::string_view kProjectionExtraColumns = "case,e_r,e_o,dist_2r,mu,lambda";

/// Projected DQ CSV: the eight output components plus diagnostics. Rows that
/// failed keep their position with empty fields and the error in `case`.
inline void write_projection_csv(std::ostream& out, const std::vector<BatchRow>& rows) {
  out << dq_header() << ',' << kProjectionExtraColumns << '\n';
  for (const BatchRow& r : rows) {
    if (!r.ok) {
      out << ",,,,,,,," << "error" << ",,,,,\n";
      continue;
    }
    write_dq_fields(out, r.qs, r.qd);
    out << ',' << r.label << ',' << format_double(r.e_r) << ',' << format_double(r.e_o) << ','
        << format_double(r.dist_2r) << ',' << format_double(r.mu) << ',' << format_double(r.lambda) << '\n';
  }
}

}  // namespace dqproj
