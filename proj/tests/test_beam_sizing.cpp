#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sixbar/beam_sizing.hpp"
#include "sixbar/error.hpp"

namespace beam = sixbar::beam;

TEST(BeamSizing, WidthRule) {
  EXPECT_EQ(beam::width_for_hole(8.0), 26.66);
  EXPECT_NEAR(beam::width_for_hole(16.0), 53.32, 1e-12);
  EXPECT_DOUBLE_EQ(beam::width_for_hole(10.0, 3.0), 30.0);
  EXPECT_THROW(beam::width_for_hole(0.0), sixbar::Error);
}

TEST(BeamSizing, Coefficients) {
  const auto p = beam::build_thickness_problem({});
  EXPECT_NEAR(p.objective_terms.at(0).coefficient, 3.718, 1e-3);
  EXPECT_NEAR(p.constraint_terms.at(0).coefficient, 9.05e-7, 1e-2 * 9.05e-7);
  EXPECT_EQ(p.normality, sixbar::gp::NormalityScope::AllTerms);
}

TEST(BeamSizing, CoefficientScaling) {
  const beam::BeamSpec base;
  const auto p0 = beam::build_thickness_problem(base);
  beam::BeamSpec longer = base;
  longer.length_m *= 2;
  const auto pl = beam::build_thickness_problem(longer);
  EXPECT_NEAR(pl.objective_terms[0].coefficient, 2 * p0.objective_terms[0].coefficient, 1e-12);
  EXPECT_NEAR(pl.constraint_terms[0].coefficient, 2 * p0.constraint_terms[0].coefficient, 1e-18);
  beam::BeamSpec wider = base;
  wider.width_m *= 2;
  const auto pw = beam::build_thickness_problem(wider);
  EXPECT_NEAR(pw.objective_terms[0].coefficient, 2 * p0.objective_terms[0].coefficient, 1e-12);
  EXPECT_NEAR(pw.constraint_terms[0].coefficient, 0.5 * p0.constraint_terms[0].coefficient, 1e-18);
}

TEST(BeamSizing, ThicknessMatchesGridOracle) {
  const auto r = beam::solve_thickness({});
  const double c1 = r.mass_coefficient, c2 = r.stress_coefficient;
  const double t = oracle::grid_minimize([&](double x) { return c1 * x + c2 / (x * x); }, 1e-5, 1.0);
  EXPECT_NEAR(r.thickness_m, t, 1e-6 * t);
  EXPECT_NEAR(r.thickness_m, std::cbrt(2 * c2 / c1), 1e-12);
  EXPECT_NEAR(r.thickness_m, 7.867097e-3, 1e-8);
  EXPECT_NEAR(r.gp.weights[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.gp.weights[1], 1.0 / 3.0, 1e-12);
}

TEST(BeamSizing, EightTimesMassHalvesThickness) {
  beam::BeamSpec heavy;
  heavy.density_kg_m3 *= 8;
  const auto base = beam::solve_thickness({});
  const auto r = beam::solve_thickness(heavy);
  EXPECT_NEAR(r.thickness_m, 0.5 * base.thickness_m, 1e-15);
}

TEST(BeamSizing, FactorBalanceLiteralValue) {
  beam::BeamSpec b;
  b.allowable_stress_pa = 6 * 4.0 * 0.1 / (9.05e-7 * 0.026);
  const auto r = beam::solve_thickness(b);
  EXPECT_NEAR(r.factor_balance_thickness_m, 1.72e-2, 1e-4);
  // (3.718 t / (2/3))^(2/3) = (9.05e-7 t^-2 / (1/3))^(1/3) solved independently.
  const double c1 = r.mass_coefficient, c2 = r.stress_coefficient;
  const double lhs0 = std::pow(c1 * 1.5, 2.0 / 3.0), rhs0 = std::pow(3.0 * c2, 1.0 / 3.0);
  const double t = std::pow(rhs0 / lhs0, 3.0 / 4.0);
  EXPECT_NEAR(r.factor_balance_thickness_m, t, 1e-12);
}

TEST(BeamSizing, MonotoneInAllowableStress) {
  double previous = INFINITY;
  for (double sigma : {5e7, 1e8, 2e8, 4e8}) {
    beam::BeamSpec b;
    b.allowable_stress_pa = sigma;
    const double t = beam::solve_thickness(b).thickness_m;
    EXPECT_LT(t, previous);
    previous = t;
  }
}

TEST(BeamSizing, InvalidSpec) {
  beam::BeamSpec b;
  b.tip_load_n = 0.0;
  EXPECT_THROW(beam::solve_thickness(b), sixbar::Error);
  b = {};
  b.density_kg_m3 = -1.0;
  EXPECT_THROW(beam::build_thickness_problem(b), sixbar::Error);
}

TEST(BeamSizing, SizeAllLinksEqualThicknessAndFlags) {
  beam::SizingDefaults d;
  d.reference_thickness_mm = beam::published_thickness_mm();
  const auto rows =
      beam::size_all_links({{"d", 300}, {"a", 100}, {"b", 396}, {"c", 20}}, d);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].link, "a");
  EXPECT_EQ(rows[3].link, "d");
  for (const auto& r : rows) {
    EXPECT_EQ(r.width_mm, 26.66);
    EXPECT_NEAR(r.thickness_computed_mm, rows[0].thickness_computed_mm, 1e-12);
    beam::BeamSpec b;
    b.length_m = r.length_mm / 1000.0;
    const auto p = beam::build_thickness_problem(b);
    const double c1 = p.objective_terms[0].coefficient, c2 = p.constraint_terms[0].coefficient;
    const double t = oracle::grid_minimize([&](double x) { return c1 * x + c2 / (x * x); }, 1e-5, 1.0);
    EXPECT_NEAR(r.thickness_computed_mm, 1000 * t, 1e-6 * 1000 * t);
    ASSERT_TRUE(r.thickness_reference_mm);
    EXPECT_EQ(r.note, "not reproduced");
  }
  EXPECT_DOUBLE_EQ(*rows[0].thickness_reference_mm, 27.47);
  EXPECT_DOUBLE_EQ(*rows[1].thickness_reference_mm, 15.84);
  EXPECT_DOUBLE_EQ(*rows[2].thickness_reference_mm, 12.58);
  EXPECT_DOUBLE_EQ(*rows[3].thickness_reference_mm, 17.70);
}

TEST(BeamSizing, EmptyTableIsHeaderOnly) {
  const auto rows = beam::size_all_links({}, {});
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(beam::sizing_csv(rows),
            "link,length_mm,width_mm,thickness_computed_mm,thickness_paper_mm,note\n");
}

TEST(BeamSizing, CsvFormatting) {
  beam::SizingDefaults d;
  d.reference_thickness_mm = {{"a", 27.47}};
  const auto csv = beam::sizing_csv(beam::size_all_links({{"a", 100}, {"x", 50}}, d));
  EXPECT_NE(csv.find("\na,100.000000,26.660000,7.867097,27.470000,not reproduced\n"),
            std::string::npos)
      << csv;
  EXPECT_NE(csv.find("\nx,50.000000,26.660000,7.867097,,"), std::string::npos) << csv;
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(BeamSizing, RandomCoefficientPairsAgainstGrid) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> l1(-2.0, 2.0), l2(-9.0, -3.0);
  for (int k = 0; k < 100; ++k) {
    const double c1 = std::pow(10.0, l1(rng)), c2 = std::pow(10.0, l2(rng));
    sixbar::gp::GPProblem p;
    p.variables = {"t"};
    p.objective_terms = {{"mass", c1, {{"t", 1.0}}, {}}};
    p.constraint_terms = {{"stress", c2, {{"t", -2.0}}, {}}};
    p.normality = sixbar::gp::NormalityScope::AllTerms;
    const auto s = sixbar::gp::solve(p);
    const auto g = [&](double x) { return c1 * x + c2 / (x * x); };
    const double t = oracle::grid_minimize(g, 1e-6, 10.0);
    EXPECT_NEAR(s.primal_values.at("t"), t, 1e-6 * t);
    EXPECT_NEAR(s.dual.prefactor, g(s.primal_values.at("t")), 1e-9 * s.dual.prefactor);
  }
}
