#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "dqproj/csv.hpp"
#include "dqproj/projection.hpp"
#include "dqproj/rng.hpp"
#include "dqproj/trajectory_io.hpp"

namespace dqproj {
namespace {

TrajectoryFile parse(const std::string& text, QuatOrder order = QuatOrder::XYZW) {
  std::istringstream in(text);
  return parse_trajectory(in, order);
}

// parse_trajectory

TEST(ParseTrajectory, IdentityPose) {
  const TrajectoryFile tf = parse("0.0 0 0 0 0 0 0 1\n");
  ASSERT_EQ(tf.poses.size(), 1u);
  EXPECT_EQ(tf.poses[0].t_stamp, 0.0);
  EXPECT_EQ(tf.poses[0].rotation, Quaternion::identity());
  EXPECT_EQ(tf.poses[0].translation, (std::array<double, 3>{0, 0, 0}));
}

TEST(ParseTrajectory, CommentIsSkippedAndCounted) {
  const TrajectoryFile tf = parse("# comment\n1.5 1 2 3 0 0 0 1\n");
  EXPECT_EQ(tf.skipped_lines, 1u);
  ASSERT_EQ(tf.poses.size(), 1u);
  EXPECT_EQ(tf.poses[0].t_stamp, 1.5);
  EXPECT_EQ(tf.poses[0].translation, (std::array<double, 3>{1, 2, 3}));
  EXPECT_EQ(tf.poses[0].rotation, Quaternion::identity());
}

TEST(ParseTrajectory, FieldOrderRepacked) {
  const TrajectoryFile xyzw = parse("0 0 0 0 0.1 0.2 0.3 0.9\n");
  EXPECT_EQ(xyzw.poses[0].rotation, Quaternion(0.9, 0.1, 0.2, 0.3));
  const TrajectoryFile wxyz = parse("0 0 0 0 0.9 0.1 0.2 0.3\n", QuatOrder::WXYZ);
  EXPECT_EQ(wxyz.poses[0].rotation, Quaternion(0.9, 0.1, 0.2, 0.3));
}

TEST(ParseTrajectory, PackUnpackIsInvolution) {
  Rng rng(61);
  for (QuatOrder order : {QuatOrder::XYZW, QuatOrder::WXYZ}) {
    for (int t = 0; t < 100; ++t) {
      const std::array<double, 4> f = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
      EXPECT_EQ(pack_quat(unpack_quat(f, order), order), f);
    }
  }
}

TEST(ParseTrajectory, MalformedLinesAreCountedNotFatal) {
  const std::string text =
      "# header\n"
      "\n"
      "1 0 0 0 0 0 0 1\n"
      "2 0 0 0 0 0 1\n"          // 7 fields
      "3 0 0 0 0 0 0 1 9\n"      // 9 fields
      "4 a 0 0 0 0 0 1\n"        // not a number
      "5 0 0 0 0 0 0 nan\n"      // non-finite
      "6 0 0 0 0 0 0 5\n"        // corrupt rotation norm
      "   # indented comment\n"
      "7 0 0 0 0 0 0 1\r\n";
  const TrajectoryFile tf = parse(text);
  EXPECT_EQ(tf.poses.size(), 2u);
  EXPECT_EQ(tf.malformed_lines, 5u);
  EXPECT_EQ(tf.skipped_lines, 7u);
  EXPECT_EQ(tf.poses[1].t_stamp, 7.0);
}

TEST(ParseTrajectory, EmptyFile) {
  for (const std::string text : {"", "# only comments\n# here\n", "\n\n", "bad line\n"}) {
    try {
      (void)parse(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::EmptyFile);
    }
  }
}

TEST(ParseTrajectory, SerializeRoundTrip) {
  Rng rng(62);
  TrajectoryFile tf;
  for (int t = 0; t < 50; ++t) {
    TrajectoryPose p;
    p.t_stamp = 1.3e9 + 0.033 * t;
    p.translation = {rng.normal(), rng.normal(), rng.normal()};
    const Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    p.rotation = q * (1.0 / q.norm());
    tf.poses.push_back(p);
  }
  for (QuatOrder order : {QuatOrder::XYZW, QuatOrder::WXYZ}) {
    std::ostringstream out;
    serialize_trajectory(tf, out, order);
    const TrajectoryFile back = parse(out.str(), order);
    ASSERT_EQ(back.poses.size(), tf.poses.size());
    for (std::size_t i = 0; i < tf.poses.size(); ++i) {
      EXPECT_EQ(back.poses[i].t_stamp, tf.poses[i].t_stamp);
      EXPECT_EQ(back.poses[i].translation, tf.poses[i].translation);
      EXPECT_EQ(back.poses[i].rotation, tf.poses[i].rotation);
    }
    std::ostringstream again;
    serialize_trajectory(back, again, order);
    EXPECT_EQ(again.str(), out.str());
  }
}

// trajectory_to_inputs

TEST(TrajectoryToInputs, IdentityPose) {
  const auto in = trajectory_to_inputs(parse("0 0 0 0 0 0 0 1\n"));
  ASSERT_EQ(in.size(), 1u);
  EXPECT_EQ(in[0].as, Vec4(1, 0, 0, 0));
  EXPECT_EQ(in[0].ad, Vec4::Zero());
}

TEST(TrajectoryToInputs, CleanPoseIsNearFixedPoint) {
  Rng rng(63);
  std::ostringstream text;
  for (int t = 0; t < 200; ++t) {
    const Quaternion q = Quaternion{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const Quaternion u = q * (1.0 / q.norm());
    text << t << ' ' << format_double(rng.uniform(-3, 3)) << ' ' << format_double(rng.uniform(-3, 3)) << ' '
         << format_double(rng.uniform(-3, 3)) << ' ' << format_double(u.x) << ' ' << format_double(u.y) << ' '
         << format_double(u.z) << ' ' << format_double(u.w) << '\n';
  }
  const TrajectoryFile tf = parse(text.str());
  const auto inputs = trajectory_to_inputs(tf);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const DualQuaternion encoded = pose_to_dq(tf.poses[i]);
    EXPECT_TRUE(is_unit(DualQuaternion::from_vectors(inputs[i].as, inputs[i].ad), 1e-12));
    EXPECT_LE((inputs[i].as - encoded.standard.vec()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE(project(inputs[i].as, inputs[i].ad).dist_2r, 1e-12);
  }
}

TEST(TrajectoryToInputs, RawNormIsKept) {
  const auto in = trajectory_to_inputs(parse("0 2 0 0 0 0 0 1.01\n"));
  EXPECT_EQ(in[0].as, Vec4(1.01, 0, 0, 0));
  EXPECT_NEAR(in[0].ad[1], 1.01, 1e-15);
}

TEST(TrajectoryToInputs, PerturbationDeterministic) {
  const TrajectoryFile tf = parse("0 1 2 3 0 0 0 1\n1 0 0 0 0 1 0 0\n");
  const auto a = trajectory_to_inputs(tf, 0.1, 5);
  const auto b = trajectory_to_inputs(tf, 0.1, 5);
  const auto c = trajectory_to_inputs(tf, 0.1, 6);
  const auto clean = trajectory_to_inputs(tf);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].as, b[i].as);
    EXPECT_EQ(a[i].ad, b[i].ad);
    EXPECT_NE(a[i].as, c[i].as);
    EXPECT_NE(a[i].as, clean[i].as);
    EXPECT_LE((a[i].as - clean[i].as).cwiseAbs().maxCoeff(), 1.0);
  }
  EXPECT_THROW((void)trajectory_to_inputs(tf, -1.0, 0), Error);
}

// DQ CSV

TEST(DqCsv, RoundTripIsLossless) {
  Rng rng(64);
  std::vector<InputPair> rows;
  for (int t = 0; t < 500; ++t) {
    InputPair p;
    for (int i = 0; i < 4; ++i) {
      p.as[i] = rng.normal() * std::pow(10.0, rng.uniform(-20, 20));
      p.ad[i] = rng.normal();
    }
    rows.push_back(p);
  }
  rows[0].as[1] = -0.0;
  std::ostringstream out;
  write_dq_csv(out, rows, {{"seed", "64"}});
  EXPECT_EQ(out.str().rfind("# seed=64\nqs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n", 0), 0u);
  std::istringstream in(out.str());
  const auto back = read_dq_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].as, rows[i].as);
    EXPECT_EQ(back[i].ad, rows[i].ad);
  }
  EXPECT_EQ(out.str().find("-0,"), std::string::npos);
}

TEST(DqCsv, ExtraColumnsIgnored) {
  std::istringstream in("qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3,case,e_r\n1,0,0,0,0,1,0,0,Independent,0\n");
  const auto rows = read_dq_csv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].ad, Vec4(0, 1, 0, 0));
}

TEST(DqCsv, Errors) {
  auto kind_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)read_dq_csv(in);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NonFinite;  // sentinel: no error
  };
  EXPECT_EQ(kind_of(""), ErrorKind::EmptyFile);
  EXPECT_EQ(kind_of("qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n"), ErrorKind::EmptyFile);
  EXPECT_EQ(kind_of("a,b\n1,2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n1,2,3\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n1,2,3,x,5,6,7,8\n"), ErrorKind::Parse);
  std::istringstream in("qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3\n1,2,3,4,5,6,7\n");
  try {
    (void)read_dq_csv(in);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Text, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(*parse_double(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_FALSE(parse_double("1.0x").has_value());
  EXPECT_FALSE(parse_double("").has_value());
  EXPECT_EQ(*parse_double(" +2.5 "), 2.5);
}

}  // namespace
}  // namespace dqproj
