#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sixbar/angles.hpp"
#include "sixbar/error.hpp"
#include "sixbar/fourbar.hpp"

namespace fb = sixbar::fourbar;

namespace {

// Lengths of the reference gripper loop as published to four decimals.
const fb::FourBarLoop kPublishedLoop{1.0, 3.9689, 0.1122, 3.0};

fb::PrecisionTable reference() { return fb::gripper_reference_table(); }

}  // namespace

TEST(FourBar, ReferenceTable) {
  const auto t = reference();
  ASSERT_EQ(t.points.size(), 7u);
  EXPECT_EQ(t.zero_error_index, 3u);
  EXPECT_DOUBLE_EQ(t.zero_error_point().input_deg, 15.0);
  EXPECT_DOUBLE_EQ(t.zero_error_point().desired_output_deg, 90.0);
  EXPECT_DOUBLE_EQ(t.points.front().desired_output_deg, 135.0);
  EXPECT_DOUBLE_EQ(t.points.back().desired_output_deg, 45.0);
}

TEST(FourBar, TableValidation) {
  fb::PrecisionTable t{{{0, 90}}, 0};
  EXPECT_THROW(t.validate(), sixbar::Error);
  t = {{{0, 90}, {5, 80}}, 2};
  EXPECT_THROW(t.validate(), sixbar::Error);
  t = {{{0, NAN}, {5, 80}}, 0};
  EXPECT_THROW(t.validate(), sixbar::Error);
  EXPECT_THROW((fb::FourBarLoop{1, -1, 1, 1}).validate(), sixbar::Error);
  EXPECT_THROW((fb::FourBarLoop{1, 1, 1, 0}).validate(), sixbar::Error);
}

TEST(FourBar, ResidualParallelogram) {
  const fb::FourBarLoop p{1, 2, 1, 2};
  EXPECT_NEAR(fb::closure_residual(p, 37.0, 37.0), 0.0, 1e-12);
}

TEST(FourBar, ResidualRhombusLiteralEquation) {
  const fb::FourBarLoop r{1, 1, 1, 1};
  // The displacement equation as written closes the rhombus at (0, 0), not (0, 180).
  EXPECT_NEAR(fb::closure_residual(r, 0.0, 0.0), 0.0, 1e-12);
  EXPECT_NEAR(fb::closure_residual(r, 0.0, 180.0), 8.0, 1e-12);
  EXPECT_NEAR(fb::closure_residual(r, 0.0, 180.0), oracle::residual(1, 1, 1, 1, 0, 180), 1e-12);
}

TEST(FourBar, ResidualPublishedLoopNearClosure) {
  EXPECT_LT(std::abs(fb::closure_residual(kPublishedLoop, 15.0, 90.0)), 5e-3);
}

TEST(FourBar, ResidualMatchesOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> len(0.1, 5.0), ang(-360.0, 360.0);
  for (int i = 0; i < 200; ++i) {
    const double a = len(rng), b = len(rng), c = len(rng), d = len(rng);
    const double t2 = ang(rng), t4 = ang(rng);
    EXPECT_NEAR(fb::closure_residual({a, b, c, d}, t2, t4), oracle::residual(a, b, c, d, t2, t4),
                1e-12 * (1 + a * a + b * b + c * c + d * d));
  }
}

TEST(FourBar, SolveParallelogramWithHint) {
  const fb::FourBarLoop p{1, 2, 1, 2};
  const auto t4 = fb::solve_output_angle(p, 50.0, 50.0);
  ASSERT_TRUE(t4);
  EXPECT_NEAR(*t4, 50.0, 1e-9);
  const auto t4_default = fb::solve_output_angle(p, 50.0);
  ASSERT_TRUE(t4_default);
  EXPECT_NEAR(*t4_default, 50.0, 1e-9);
}

TEST(FourBar, SolvePublishedLoopNear90) {
  const auto t4 = fb::solve_output_angle(kPublishedLoop, 15.0, 90.0);
  ASSERT_TRUE(t4);
  EXPECT_LT(std::abs(*t4 - 90.0), 2.0);
  const auto roots = oracle::scan_roots(1.0, 3.9689, 0.1122, 3.0, 15.0);
  double nearest = roots.at(0);
  for (double r : roots)
    if (sixbar::angular_distance_deg(r, 90.0) < sixbar::angular_distance_deg(nearest, 90.0))
      nearest = r;
  EXPECT_NEAR(*t4, nearest, 1e-9);
}

TEST(FourBar, NoAssembly) {
  const fb::FourBarLoop loop{1, 10, 1, 3};
  EXPECT_FALSE(fb::solve_output_angle(loop, 0.0));
  EXPECT_FALSE(fb::output_angle_roots(loop, 0.0));
  EXPECT_TRUE(oracle::scan_roots(1, 10, 1, 3, 0.0).empty());
}

TEST(FourBar, RootsMatchScanOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(0.2, 4.0), ang(-180.0, 180.0);
  int compared = 0;
  while (compared < 100) {
    const double a = len(rng), b = len(rng), c = len(rng), d = len(rng), t2 = ang(rng);
    const auto roots = fb::output_angle_roots({a, b, c, d}, t2);
    const auto scanned = oracle::scan_roots(a, b, c, d, t2);
    if (!roots || scanned.size() != 2) continue;
    for (double s : scanned) {
      const double err = std::min(sixbar::angular_distance_deg(s, (*roots)[0]),
                                  sixbar::angular_distance_deg(s, (*roots)[1]));
      EXPECT_LT(err, 1e-7);
    }
    ++compared;
  }
}

TEST(FourBar, LoopConstant) {
  EXPECT_DOUBLE_EQ(fb::loop_constant({1, 1, 1, 1}), 2.0);
  EXPECT_NEAR(fb::loop_constant(kPublishedLoop), -5.7393, 1e-3);
}

TEST(FourBar, ZeroErrorLoopConstant) {
  const auto t = reference();
  // a << d form at (15, 90): 2ac cos15 cos75 - 2ad cos15 = 0.5ac - 2ad cos15.
  const double expected = 2 * 1.0 * 0.1122 * std::cos(oracle::rad(15)) * std::cos(oracle::rad(75)) -
                          2 * 1.0 * 3.0 * std::cos(oracle::rad(15));
  EXPECT_NEAR(fb::zero_error_loop_constant(1.0, 0.1122, 3.0, t), expected, 1e-12);
  EXPECT_NEAR(fb::zero_error_loop_constant(1.0, 0.1122, 3.0, t), -5.7395, 1e-3);
  const fb::PrecisionTable unit{{{0, 90}, {10, 80}}, 0};
  EXPECT_NEAR(fb::zero_error_loop_constant(1, 1, 1, unit), -2.0, 1e-12);
  const double k = fb::zero_error_loop_constant(1.0, 0.1122, 3.0, t);
  EXPECT_NEAR(fb::coupler_from_constant(1.0, 0.1122, 3.0, k), 3.9689, 1e-3);
  EXPECT_THROW(fb::coupler_from_constant(1, 1, 1, 10.0), sixbar::Error);
}

TEST(FourBar, StructuralErrorVanishesAtZeroPoint) {
  const auto t = reference();
  const double k = fb::zero_error_loop_constant(1.0, 0.1122, 3.0, t);
  EXPECT_LT(std::abs(fb::structural_error(1.0, 0.1122, 3.0, k, t.zero_error_point())), 1e-12);
}

TEST(FourBar, StructuralErrorIndependentEvaluation) {
  const auto t = reference();
  const double a = 1.0, c = 0.1122, d = 3.0;
  const double k = fb::zero_error_loop_constant(a, c, d, t);
  const double t2 = 0.0, t4 = oracle::rad(135.0);
  const double num = k + 2 * a * d * std::cos(t2) - 2 * c * d * std::cos(t4) -
                     2 * a * c * std::cos(t2) * std::cos(t4 - t2);
  const double den = -2 * a * c * std::sin(t4 - t2) - 2 * c * d * std::sin(t4);
  EXPECT_NEAR(fb::structural_error(a, c, d, k, {0.0, 135.0}), num / den, 1e-12);
}

TEST(FourBar, StructuralErrorScaleInvariant) {
  const auto t = reference();
  const double k1 = fb::zero_error_loop_constant(1.0, 0.1122, 3.0, t);
  const double k100 = fb::zero_error_loop_constant(100.0, 11.22, 300.0, t);
  for (const auto& p : t.points) {
    EXPECT_NEAR(fb::structural_error(1.0, 0.1122, 3.0, k1, p),
                fb::structural_error(100.0, 11.22, 300.0, k100, p), 1e-9);
  }
}

TEST(FourBar, StructuralErrorDegenerate) {
  try {
    fb::structural_error(1.0, 0.5, 3.0, 0.0, {0.0, 0.0});
    FAIL() << "expected DegenerateConfiguration";
  } catch (const sixbar::Error& e) {
    EXPECT_EQ(e.code(), sixbar::ErrorCode::DegenerateConfiguration);
  }
}

TEST(FourBar, ErrorSumZeroForZeroPointOnlyTable) {
  const fb::PrecisionTable t{{{15, 90}, {15, 90}}, 0};
  EXPECT_LT(std::abs(fb::error_objective_sum(1.0, 0.1122, 3.0, t)), 1e-20);
  EXPECT_GT(fb::error_objective_sum(1.0, 0.1122, 3.0, reference()), 0.0);
}

TEST(FourBar, ExactErrorAtZeroPointIsSmall) {
  const auto e = fb::exact_output_error(kPublishedLoop, {15.0, 90.0});
  ASSERT_TRUE(e);
  EXPECT_LT(std::abs(*e), sixbar::deg_to_rad(2.0));
}

TEST(FourBar, ClosurePropertyRandomLoops) {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> len(0.1, 10.0), ang(-180.0, 180.0);
  int solved = 0;
  while (solved < 1000) {
    const fb::FourBarLoop loop{len(rng), len(rng), len(rng), len(rng)};
    const double t2 = ang(rng);
    const auto t4 = fb::solve_output_angle(loop, t2);
    if (!t4) continue;
    ++solved;
    EXPECT_LT(std::abs(fb::closure_residual(loop, t2, *t4)), 1e-9);
  }
}

TEST(FourBar, ParallelogramIdentitySweep) {
  const fb::FourBarLoop p{1, 2, 1, 2};
  for (int i = 0; i < 360; ++i) {
    const double t2 = static_cast<double>(i);
    const auto t4 = fb::solve_output_angle(p, t2, t2);
    ASSERT_TRUE(t4);
    EXPECT_LT(sixbar::angular_distance_deg(*t4, t2), 1e-9) << "theta2=" << t2;
  }
}
