#pragma once

// Synthetic batches of dual quaternion inputs.
//
// Standard parts: A_s = U D V^T, 4 x n, with U and V the thin-QR Q factors of
// standard-normal samples and D = diag(1 + (kappa - 1) * uniform). Dual parts:
// pure quaternions (0, t) with t uniform in the cube [-b, b]^3. In each part a
// fixed fraction of columns is zeroed, the two masks drawn independently.
//
// Draw order from the single stream Rng(seed):
//   1. U sample, 4 x r, column-major
//   2. V sample, n x r, column-major
//   3. D entries, r values
//   4. standard-part mask, partial Fisher-Yates over [0, n)
//   5. translations, n triples (x, y, z)
//   6. dual-part mask, partial Fisher-Yates over [0, n)

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dqproj/error.hpp"
#include "dqproj/quaternion.hpp"
#include "dqproj/rng.hpp"

namespace dqproj {

struct SyntheticConfig {
  std::size_t n = 2000;
  int r = 4;
  double kappa = 10.0;
  double zero_fraction = 0.1;
  double translation_bound = 5.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (n < 1) throw Error(ErrorKind::InvalidConfig, "n must be at least 1");
    if (r < 1 || r > 4) throw Error(ErrorKind::InvalidConfig, "r must be in [1, 4]");
    if (static_cast<std::size_t>(r) > n) throw Error(ErrorKind::InvalidConfig, "r must not exceed n");
    if (!(kappa > 1.0) || !std::isfinite(kappa)) throw Error(ErrorKind::InvalidConfig, "kappa must be > 1");
    if (!(zero_fraction >= 0.0 && zero_fraction < 1.0)) {
      throw Error(ErrorKind::InvalidConfig, "zero_fraction must be in [0, 1)");
    }
    if (!(translation_bound >= 0.0) || !std::isfinite(translation_bound)) {
      throw Error(ErrorKind::InvalidConfig, "translation_bound must be finite and >= 0");
    }
  }

  std::size_t zero_count() const { return static_cast<std::size_t>(std::floor(zero_fraction * static_cast<double>(n))); }
};

struct StandardParts {
  Eigen::Matrix4Xd dense;           // U D V^T before masking
  Eigen::VectorXd singular_values;  // diagonal of D
  Eigen::Matrix4Xd cols;            // after masking
  std::vector<std::size_t> zero_mask;
};

struct DualParts {
  Eigen::Matrix4Xd cols;
  std::vector<std::size_t> zero_mask;
};

struct SyntheticBatch {
  Eigen::Matrix4Xd as_cols;
  Eigen::Matrix4Xd ad_cols;
  std::vector<std::size_t> zero_mask_s;  // ascending
  std::vector<std::size_t> zero_mask_d;  // ascending

  std::size_t size() const { return static_cast<std::size_t>(as_cols.cols()); }
};

namespace datagen_detail {

inline Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

inline Eigen::MatrixXd thin_q(const Eigen::MatrixXd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
}

/// First `count` entries of a Fisher-Yates shuffle of [0, n), sorted.
inline std::vector<std::size_t> choose_subset(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.index(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace datagen_detail

inline StandardParts gen_standard_parts(const SyntheticConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const Eigen::MatrixXd u = datagen_detail::thin_q(datagen_detail::normal_matrix(4, cfg.r, rng));
  const Eigen::MatrixXd v = datagen_detail::thin_q(datagen_detail::normal_matrix(n, cfg.r, rng));
  Eigen::VectorXd d(cfg.r);
  for (int i = 0; i < cfg.r; ++i) d[i] = 1.0 + (cfg.kappa - 1.0) * rng.uniform01();

  StandardParts out;
  out.dense = u * d.asDiagonal() * v.transpose();
  out.singular_values = d;
  out.cols = out.dense;
  out.zero_mask = datagen_detail::choose_subset(cfg.n, cfg.zero_count(), rng);
  for (std::size_t j : out.zero_mask) out.cols.col(static_cast<Eigen::Index>(j)).setZero();
  return out;
}

inline DualParts gen_dual_parts(const SyntheticConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const double b = cfg.translation_bound;
  DualParts out;
  out.cols.resize(4, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.cols(0, j) = 0.0;
    for (Eigen::Index i = 1; i < 4; ++i) out.cols(i, j) = rng.uniform(-b, b);
  }
  out.zero_mask = datagen_detail::choose_subset(cfg.n, cfg.zero_count(), rng);
  for (std::size_t j : out.zero_mask) out.cols.col(static_cast<Eigen::Index>(j)).setZero();
  return out;
}

inline SyntheticBatch generate(const SyntheticConfig& cfg) {
  Rng rng(cfg.seed);
  StandardParts s = gen_standard_parts(cfg, rng);
  DualParts d = gen_dual_parts(cfg, rng);
  return {std::move(s.cols), std::move(d.cols), std::move(s.zero_mask), std::move(d.zero_mask)};
}

}  // namespace dqproj
