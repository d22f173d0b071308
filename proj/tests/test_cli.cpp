#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dqproj/bench.hpp"
#include "dqproj/csv.hpp"
#include "dqproj/text.hpp"

#ifndef DQPROJ_CLI_PATH
#error "DQPROJ_CLI_PATH must point at the dqproj executable"
#endif

namespace dqproj {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("dqproj_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(DQPROJ_CLI_PATH) + " " + args + " 2>" + path("stderr.txt") + " >" +
                            path("stdout.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static void spit(const std::string& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
  }

  std::vector<InputPair> read_csv(const std::string& p) const {
    std::ifstream in(p);
    return read_dq_csv(in);
  }

  /// Second line of a stats CSV, split on commas.
  static std::vector<std::string> stats_row(const std::string& p) {
    std::istringstream in(slurp(p));
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    std::vector<std::string> out;
    for (auto f : split_on(row, ',')) out.emplace_back(f);
    return out;
  }

  fs::path dir_;
};

TEST_F(Cli, ProjectDualZeroRow) {
  spit(path("in.csv"), "qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n2,0,0,0,0,0,0,0\n");
  ASSERT_EQ(run("project --in " + path("in.csv") + " --out " + path("out.csv")), 0);
  const std::string out = slurp(path("out.csv"));
  EXPECT_EQ(out,
            "qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3,case,e_r,e_o,dist_2r,mu,lambda\n"
            "1,0,0,0,0,0,0,0,DualZero,0,0,1,0,0.5\n");
}

TEST_F(Cli, ProjectEmptyAndMalformedInputs) {
  spit(path("empty.csv"), "");
  EXPECT_EQ(run("project --in " + path("empty.csv") + " --out " + path("o.csv")), 2);
  spit(path("bad.csv"), "qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n1,0,0,0,0,0,0,0\n1,0,0\n");
  EXPECT_EQ(run("project --in " + path("bad.csv") + " --out " + path("o.csv")), 2);
  EXPECT_NE(slurp(path("stderr.txt")).find("line 3"), std::string::npos);
  spit(path("nan.csv"), "qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\nnan,0,0,0,0,0,0,0\n");
  EXPECT_EQ(run("project --in " + path("nan.csv") + " --out " + path("o.csv")), 2);
  EXPECT_EQ(run("project --in " + path("missing.csv") + " --out " + path("o.csv")), 2);
  EXPECT_FALSE(fs::exists(path("o.csv")));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("synth --n 10 --kappa 2 --seed 1 --out " + path("x.csv") + " --bogus 3"), 2);
  EXPECT_EQ(run("bench --in " + path("x.csv") + " --method pm --stats-out a --cdf-out b"), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, SynthDeterministicWithMetadata) {
  ASSERT_EQ(run("synth --n 2000 --kappa 10 --seed 1 --out " + path("a.csv")), 0);
  ASSERT_EQ(run("synth --n 2000 --kappa 10 --seed 1 --out " + path("b.csv")), 0);
  const std::string a = slurp(path("a.csv"));
  EXPECT_EQ(a, slurp(path("b.csv")));
  for (const char* key : {"# n=2000", "# r=4", "# kappa=10", "# zero_fraction=0.1", "# translation_bound=5",
                          "# seed=1"}) {
    EXPECT_NE(a.find(key), std::string::npos) << key;
  }
  const auto rows = read_csv(path("a.csv"));
  ASSERT_EQ(rows.size(), 2000u);
  int zs = 0;
  int zd = 0;
  for (const auto& r : rows) {
    zs += r.as.isZero(0.0) ? 1 : 0;
    zd += r.ad.isZero(0.0) ? 1 : 0;
  }
  EXPECT_EQ(zs, 200);
  EXPECT_EQ(zd, 200);
  ASSERT_EQ(run("synth --n 2000 --kappa 10 --seed 2 --out " + path("c.csv")), 0);
  EXPECT_NE(a, slurp(path("c.csv")));
}

TEST_F(Cli, SynthRejectsInvalidParameters) {
  EXPECT_EQ(run("synth --n 100 --kappa 1 --seed 1 --out " + path("x.csv")), 2);
  EXPECT_EQ(run("synth --n 100 --kappa 0.5 --seed 1 --out " + path("x.csv")), 2);
  EXPECT_EQ(run("synth --n 100 --kappa 3 --r 5 --seed 1 --out " + path("x.csv")), 2);
  EXPECT_EQ(run("synth --n 100 --kappa 3 --zero-fraction 1 --seed 1 --out " + path("x.csv")), 2);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, ProjectIsIdempotent) {
  ASSERT_EQ(run("synth --n 500 --kappa 10 --seed 3 --out " + path("s.csv")), 0);
  ASSERT_EQ(run("project --in " + path("s.csv") + " --out " + path("p1.csv")), 0);
  ASSERT_EQ(run("project --in " + path("p1.csv") + " --out " + path("p2.csv")), 0);
  const auto p1 = read_csv(path("p1.csv"));
  const auto p2 = read_csv(path("p2.csv"));
  ASSERT_EQ(p1.size(), p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    EXPECT_LE((p1[i].as - p2[i].as).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((p1[i].ad - p2[i].ad).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + p1[i].ad.norm()));
  }
}

TEST_F(Cli, BenchAlgorithmAndBaseline) {
  ASSERT_EQ(run("synth --n 2000 --kappa 10 --seed 1 --out " + path("s.csv")), 0);
  ASSERT_EQ(run("bench --in " + path("s.csv") + " --method algorithm --stats-out " + path("alg.csv") +
                " --cdf-out " + path("alg")),
            0);
  ASSERT_EQ(run("bench --in " + path("s.csv") + " --method baseline --stats-out " + path("base.csv") +
                " --cdf-out " + path("base")),
            0);
  const auto alg = stats_row(path("alg.csv"));
  const auto base = stats_row(path("base.csv"));
  ASSERT_EQ(alg.size(), 9u);
  EXPECT_EQ(alg[0], "2000");
  EXPECT_EQ(alg[1], "algorithm");
  EXPECT_EQ(base[1], "naive_baseline");
  EXPECT_LE(*parse_double(alg[2]), 1e-14);
  EXPECT_LE(*parse_double(alg[3]), 1e-14);
  EXPECT_GE(*parse_double(base[4]), *parse_double(alg[4]));
  for (const char* f : {"alg_er.csv", "alg_eo.csv", "base_er.csv"}) {
    const std::string text = slurp(path(f));
    EXPECT_EQ(text.rfind("value,cum_fraction\n", 0), 0u);
    EXPECT_EQ(text.substr(text.size() - 3), ",1\n") << f;
  }
}

TEST_F(Cli, EndToEndDeterminism) {
  std::string first_stats;
  for (int round = 0; round < 2; ++round) {
    const std::string s = path("s" + std::to_string(round) + ".csv");
    const std::string p = path("p" + std::to_string(round) + ".csv");
    const std::string st = path("st" + std::to_string(round) + ".csv");
    const std::string c = path("c" + std::to_string(round));
    ASSERT_EQ(run("synth --n 300 --kappa 4 --seed 9 --out " + s), 0);
    ASSERT_EQ(run("project --in " + s + " --out " + p), 0);
    ASSERT_EQ(run("bench --in " + s + " --method algorithm --stats-out " + st + " --cdf-out " + c), 0);
    auto row = stats_row(st);
    row.pop_back();  // wall_time
    std::string joined;
    for (const auto& f : row) joined += f + ",";
    if (round == 0) {
      first_stats = joined;
    } else {
      EXPECT_EQ(joined, first_stats);
      EXPECT_EQ(slurp(path("s0.csv")), slurp(s));
      EXPECT_EQ(slurp(path("p0.csv")), slurp(p));
      EXPECT_EQ(slurp(path("c0_er.csv")), slurp(c + "_er.csv"));
      EXPECT_EQ(slurp(path("c0_eo.csv")), slurp(c + "_eo.csv"));
    }
  }
}

TEST_F(Cli, IngestCleanTrajectory) {
  std::ostringstream traj;
  traj << "# timestamp tx ty tz qx qy qz qw\n";
  for (int t = 0; t < 100; ++t) {
    const double a = 0.05 * t;
    traj << format_double(1.0 + 0.1 * t) << ' ' << format_double(std::cos(a)) << ' ' << format_double(std::sin(a))
         << " 0.5 0 0 " << format_double(std::sin(a / 2)) << ' ' << format_double(std::cos(a / 2)) << '\n';
  }
  spit(path("traj.txt"), traj.str());
  ASSERT_EQ(run("ingest --traj " + path("traj.txt") + " --out " + path("dq.csv")), 0);
  const auto rows = read_csv(path("dq.csv"));
  ASSERT_EQ(rows.size(), 100u);
  for (const auto& r : rows) EXPECT_TRUE(is_unit(DualQuaternion::from_vectors(r.as, r.ad), 1e-12));
  ASSERT_EQ(run("bench --in " + path("dq.csv") + " --method algorithm --stats-out " + path("st.csv") +
                " --cdf-out " + path("c")),
            0);
  EXPECT_LE(*parse_double(stats_row(path("st.csv"))[4]), 1e-12);
}

TEST_F(Cli, IngestPerturbedDeterministic) {
  spit(path("traj.txt"), "0 1 2 3 0 0 0 1\n1 0 0 0 0 1 0 0\n");
  ASSERT_EQ(run("ingest --traj " + path("traj.txt") + " --sigma 0.05 --seed 4 --out " + path("a.csv")), 0);
  ASSERT_EQ(run("ingest --traj " + path("traj.txt") + " --sigma 0.05 --seed 4 --out " + path("b.csv")), 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  ASSERT_EQ(run("ingest --traj " + path("traj.txt") + " --sigma 0.05 --seed 5 --out " + path("c.csv")), 0);
  EXPECT_NE(slurp(path("a.csv")), slurp(path("c.csv")));
}

TEST_F(Cli, IngestOrderOverride) {
  spit(path("traj.txt"), "0 0 0 0 1 0 0 0\n");
  ASSERT_EQ(run("ingest --traj " + path("traj.txt") + " --order wxyz --out " + path("a.csv")), 0);
  EXPECT_EQ(read_csv(path("a.csv"))[0].as, Vec4(1, 0, 0, 0));
  ASSERT_EQ(run("ingest --traj " + path("traj.txt") + " --out " + path("b.csv")), 0);
  EXPECT_EQ(read_csv(path("b.csv"))[0].as, Vec4(0, 1, 0, 0));
}

TEST_F(Cli, IngestCommentOnlyFile) {
  spit(path("traj.txt"), "# nothing\n# here\n");
  EXPECT_EQ(run("ingest --traj " + path("traj.txt") + " --out " + path("a.csv")), 2);
  EXPECT_EQ(run("ingest --traj " + path("nope.txt") + " --out " + path("a.csv")), 2);
  EXPECT_EQ(run("ingest --traj " + path("traj.txt") + " --sigma -1 --out " + path("a.csv")), 2);
}

}  // namespace
}  // namespace dqproj
