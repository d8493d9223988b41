#include "sixbar/beam_sizing.hpp"

#include <algorithm>
#include <cmath>

#include "sixbar/error.hpp"
#include "sixbar/format.hpp"

namespace sixbar::beam {

void BeamSpec::validate() const {
  const auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
  SIXBAR_REQUIRE(ok(density_kg_m3), ErrorCode::InvalidInput, "density must be positive");
  SIXBAR_REQUIRE(ok(length_m), ErrorCode::InvalidInput, "length must be positive");
  SIXBAR_REQUIRE(ok(width_m), ErrorCode::InvalidInput, "width must be positive");
  SIXBAR_REQUIRE(ok(tip_load_n), ErrorCode::InvalidInput, "tip load must be positive");
  SIXBAR_REQUIRE(ok(allowable_stress_pa), ErrorCode::InvalidInput,
                 "allowable stress must be positive");
}

double width_for_hole(double hole_diameter, double ratio) {
  SIXBAR_REQUIRE(std::isfinite(hole_diameter) && hole_diameter > 0.0, ErrorCode::InvalidInput,
                 "hole diameter must be positive");
  SIXBAR_REQUIRE(std::isfinite(ratio) && ratio > 0.0, ErrorCode::InvalidInput,
                 "width ratio must be positive");
  return ratio * hole_diameter;
}

gp::GPProblem build_thickness_problem(const BeamSpec& beam) {
  beam.validate();
  const double mass = beam.density_kg_m3 * beam.length_m * beam.width_m;
  // sigma = 6Pl/(w t^2) <= sigma_allow
  const double stress =
      6.0 * beam.tip_load_n * beam.length_m / (beam.allowable_stress_pa * beam.width_m);

  gp::GPProblem p;
  p.variables = {"t"};
  p.objective_terms.push_back({"mass", mass, {{"t", 1.0}}, {}});
  p.constraint_terms.push_back({"bending stress", stress, {{"t", -2.0}}, {}});
  p.normality = gp::NormalityScope::AllTerms;
  return p;
}

ThicknessResult solve_thickness(const BeamSpec& beam) {
  const gp::GPProblem problem = build_thickness_problem(beam);
  ThicknessResult r;
  r.mass_coefficient = problem.objective_terms[0].coefficient;
  r.stress_coefficient = problem.constraint_terms[0].coefficient;
  r.gp = gp::solve(problem);
  r.thickness_m = r.gp.primal_values.at("t");

  const double w1 = r.gp.weights[0];
  const double w2 = r.gp.weights[1];
  const double e1 = problem.objective_terms[0].exponents.at("t");
  const double e2 = problem.constraint_terms[0].exponents.at("t");
  const double log_t = (w2 * std::log(r.stress_coefficient / w2) -
                        w1 * std::log(r.mass_coefficient / w1)) /
                       (w1 * e1 - w2 * e2);
  r.factor_balance_thickness_m = std::exp(log_t);
  return r;
}

std::map<std::string, double> published_thickness_mm() {
  return {{"a", 27.47}, {"b", 15.84}, {"c", 12.58}, {"d", 17.70}};
}

std::vector<SizingRow> size_all_links(std::vector<LinkLength> links,
                                      const SizingDefaults& defaults) {
  std::sort(links.begin(), links.end(),
            [](const LinkLength& x, const LinkLength& y) { return x.name < y.name; });
  const double width_mm = links.empty() ? 0.0
                                        : width_for_hole(defaults.hole_diameter_mm,
                                                         defaults.width_ratio);
  std::vector<SizingRow> rows;
  rows.reserve(links.size());
  for (const auto& link : links) {
    BeamSpec spec;
    spec.density_kg_m3 = defaults.density_kg_m3;
    spec.length_m = link.length_mm / 1000.0;
    spec.width_m = defaults.beam_width_m;
    spec.tip_load_n = defaults.tip_load_n;
    spec.allowable_stress_pa = defaults.allowable_stress_pa;
    const ThicknessResult t = solve_thickness(spec);

    SizingRow row;
    row.link = link.name;
    row.length_mm = link.length_mm;
    row.width_mm = width_mm;
    row.thickness_computed_mm = t.thickness_m * 1000.0;
    if (auto it = defaults.reference_thickness_mm.find(link.name);
        it != defaults.reference_thickness_mm.end()) {
      row.thickness_reference_mm = it->second;
      const double rel = std::abs(row.thickness_computed_mm - it->second) / it->second;
      row.note = rel <= 0.01 ? "reproduced" : "not reproduced";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sizing_csv(const std::vector<SizingRow>& rows) {
  std::string out = "link,length_mm,width_mm,thickness_computed_mm,thickness_paper_mm,note\n";
  for (const auto& r : rows) {
    out += r.link + ',' + fixed6(r.length_mm) + ',' + fixed6(r.width_mm) + ',' +
           fixed6(r.thickness_computed_mm) + ',' +
           (r.thickness_reference_mm ? fixed6(*r.thickness_reference_mm) : std::string()) +
           ',' + r.note + '\n';
  }
  return out;
}

}  // namespace sixbar::beam
