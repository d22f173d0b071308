// dqproj: project, synth, bench, ingest.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dqproj/dqproj.hpp"

namespace {

using dqproj::Error;
using dqproj::ErrorKind;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "' for reading");
  return in;
}

/// Writes to a string first so a failed run leaves no partial file.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Parse, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::Parse, "write to '" + path + "' failed");
}

int cmd_project(const std::string& in_path, const std::string& out_path) {
  std::ifstream in = open_in(in_path);
  const std::vector<dqproj::InputPair> rows = dqproj::read_dq_csv(in);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].as.allFinite() || !rows[i].ad.allFinite()) {
      throw Error(ErrorKind::NonFinite, "data row " + std::to_string(i + 1) + " has non-finite components");
    }
  }
  const dqproj::BatchResult res = dqproj::run_batch(rows, dqproj::Method::Algorithm);
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (!res.rows[i].ok) throw Error(ErrorKind::Parse, "data row " + std::to_string(i + 1) + ": " + res.rows[i].error);
  }
  std::ostringstream out;
  dqproj::write_projection_csv(out, res.rows);
  write_file(out_path, out.str());
  return kExitOk;
}

int cmd_synth(const dqproj::SyntheticConfig& cfg, const std::string& out_path) {
  cfg.validate();
  const dqproj::SyntheticBatch batch = dqproj::generate(cfg);
  std::vector<dqproj::InputPair> rows(batch.size());
  for (std::size_t j = 0; j < batch.size(); ++j) {
    rows[j].as = batch.as_cols.col(static_cast<Eigen::Index>(j));
    rows[j].ad = batch.ad_cols.col(static_cast<Eigen::Index>(j));
  }
  std::ostringstream out;
  dqproj::write_dq_csv(out, rows,
                       {{"generator", "dqproj synth"},
                        {"n", std::to_string(cfg.n)},
                        {"r", std::to_string(cfg.r)},
                        {"kappa", dqproj::format_double(cfg.kappa)},
                        {"zero_fraction", dqproj::format_double(cfg.zero_fraction)},
                        {"translation_bound", dqproj::format_double(cfg.translation_bound)},
                        {"seed", std::to_string(cfg.seed)}});
  write_file(out_path, out.str());
  return kExitOk;
}

int cmd_bench(const std::string& in_path, const std::string& method_name, const std::string& stats_out,
              const std::string& cdf_out) {
  const dqproj::Method method =
      method_name == "algorithm" ? dqproj::Method::Algorithm : dqproj::Method::Baseline;
  std::ifstream in = open_in(in_path);
  const std::vector<dqproj::InputPair> rows = dqproj::read_dq_csv(in);
  const dqproj::BatchResult res = dqproj::run_batch(rows, method);
  if (res.stats.n == 0) throw Error(ErrorKind::NonFinite, "no row could be projected");
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (!res.rows[i].ok) std::cerr << "warning: data row " << i + 1 << " flagged: " << res.rows[i].error << '\n';
  }

  std::vector<double> er;
  std::vector<double> eo;
  for (const dqproj::BatchRow& r : res.rows) {
    if (!r.ok) continue;
    er.push_back(r.e_r);
    eo.push_back(r.e_o);
  }
  std::ostringstream stats;
  dqproj::write_stats_csv(stats, res.stats, method);
  std::ostringstream cdf_er;
  dqproj::write_cdf_csv(cdf_er, dqproj::cdf(er));
  std::ostringstream cdf_eo;
  dqproj::write_cdf_csv(cdf_eo, dqproj::cdf(eo));
  write_file(stats_out, stats.str());
  write_file(cdf_out + "_er.csv", cdf_er.str());
  write_file(cdf_out + "_eo.csv", cdf_eo.str());
  return kExitOk;
}

int cmd_ingest(const std::string& traj_path, double sigma, std::uint64_t seed, const std::string& order_name,
               const std::string& out_path) {
  const dqproj::QuatOrder order = order_name == "wxyz" ? dqproj::QuatOrder::WXYZ : dqproj::QuatOrder::XYZW;
  std::ifstream in = open_in(traj_path);
  const dqproj::TrajectoryFile tf = dqproj::parse_trajectory(in, order, traj_path);
  if (tf.malformed_lines > 0) {
    std::cerr << "warning: skipped " << tf.malformed_lines << " malformed line(s) in " << traj_path << '\n';
  }
  const std::vector<dqproj::InputPair> rows = dqproj::trajectory_to_inputs(tf, sigma, seed);
  std::ostringstream out;
  dqproj::write_dq_csv(out, rows,
                       {{"generator", "dqproj ingest"},
                        {"poses", std::to_string(tf.poses.size())},
                        {"skipped_lines", std::to_string(tf.skipped_lines)},
                        {"order", order_name},
                        {"sigma", dqproj::format_double(sigma)},
                        {"seed", std::to_string(seed)}});
  write_file(out_path, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric projection onto the unit dual quaternions"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;

  auto* project = app.add_subcommand("project", "Project every row of a DQ CSV");
  project->add_option("--in", in_path, "Input DQ CSV")->required()->check(CLI::ExistingFile);
  project->add_option("--out", out_path, "Output CSV")->required();

  dqproj::SyntheticConfig cfg;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic DQ CSV");
  synth->add_option("--n", cfg.n, "Number of dual quaternions")->required();
  synth->add_option("--r", cfg.r, "Rank of the standard-part factorization")->capture_default_str();
  synth->add_option("--kappa", cfg.kappa, "Singular-value spread, > 1")->required();
  synth->add_option("--zero-fraction", cfg.zero_fraction, "Fraction of zeroed columns per part")
      ->capture_default_str();
  synth->add_option("--translation-bound", cfg.translation_bound, "Half-width of the translation cube")
      ->capture_default_str();
  synth->add_option("--seed", cfg.seed, "Random seed")->required();
  synth->add_option("--out", out_path, "Output DQ CSV")->required();

  std::string method = "algorithm";
  std::string stats_out;
  std::string cdf_out;
  auto* bench = app.add_subcommand("bench", "Batch statistics and CDFs of E_R and E_O");
  bench->add_option("--in", in_path, "Input DQ CSV")->required()->check(CLI::ExistingFile);
  bench->add_option("--method", method, "algorithm or baseline (naive baseline)")
      ->check(CLI::IsMember({"algorithm", "baseline"}))
      ->capture_default_str();
  bench->add_option("--stats-out", stats_out, "Stats CSV path")->required();
  bench->add_option("--cdf-out", cdf_out, "CDF path prefix; writes <prefix>_er.csv and <prefix>_eo.csv")
      ->required();

  std::string traj_path;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string order = "xyzw";
  auto* ingest = app.add_subcommand("ingest", "Convert a TUM-style trajectory to a DQ CSV");
  ingest->add_option("--traj", traj_path, "Trajectory file")->required()->check(CLI::ExistingFile);
  ingest->add_option("--sigma", sigma, "Gaussian perturbation standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ingest->add_option("--seed", seed, "Perturbation seed")->capture_default_str();
  ingest->add_option("--order", order, "Quaternion field order in the file")
      ->check(CLI::IsMember({"xyzw", "wxyz"}))
      ->capture_default_str();
  ingest->add_option("--out", out_path, "Output DQ CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*project) return cmd_project(in_path, out_path);
    if (*synth) return cmd_synth(cfg, out_path);
    if (*bench) return cmd_bench(in_path, method, stats_out, cdf_out);
    if (*ingest) return cmd_ingest(traj_path, sigma, seed, order, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
