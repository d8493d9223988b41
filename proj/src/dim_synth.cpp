#include "sixbar/dim_synth.hpp"

#include <cmath>
#include <sstream>

#include "sixbar/angles.hpp"
#include "sixbar/error.hpp"

namespace sixbar::dim_synth {

using fourbar::FourBarLoop;
using fourbar::PrecisionTable;

void SynthesisConfig::validate() const {
  table.validate();
  SIXBAR_REQUIRE(std::isfinite(ad_ratio_bound) && ad_ratio_bound > 0.0,
                 ErrorCode::InvalidInput, "ad_ratio_bound must be positive");
  SIXBAR_REQUIRE(std::isfinite(scale_factor) && scale_factor > 0.0, ErrorCode::InvalidInput,
                 "scale_factor must be positive");
  SIXBAR_REQUIRE(normalization == "a" || normalization == "c" || normalization == "d",
                 ErrorCode::InvalidInput, "normalization must be one of a, c, d");
  SIXBAR_REQUIRE(loop_id == 1 || loop_id == 2, ErrorCode::InvalidInput,
                 "loop_id must be 1 or 2");
}

ObjectiveCoefficients build_objective_coefficients(const PrecisionTable& table) {
  table.validate();
  const auto& zero = table.zero_error_point();
  const double cos20 = std::cos(deg_to_rad(zero.input_deg));
  const double cos4d0 = std::cos(deg_to_rad(zero.desired_output_deg));

  ObjectiveCoefficients out;
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const auto& p = table.points[i];
    const double s = std::sin(deg_to_rad(p.desired_output_deg));
    SIXBAR_REQUIRE(std::abs(s) > 1e-12, ErrorCode::DegenerateConfiguration,
                   "sin of desired output angle vanishes at precision point " +
                       std::to_string(i));
    const double dx = std::cos(deg_to_rad(p.input_deg)) - cos20;
    const double dy = std::cos(deg_to_rad(p.desired_output_deg)) - cos4d0;
    out.quadratic += dx * dx / (s * s);
    out.linear += -2.0 * dx * dy / (s * s);
  }
  return out;
}

gp::GPProblem build_dimensional_problem(const ObjectiveCoefficients& coeffs,
                                        double ad_ratio_bound) {
  gp::GPProblem p;
  p.variables = {"a", "c"};
  p.objective_terms.push_back({"(a/c)^2", coeffs.quadratic, {{"a", 2.0}, {"c", -2.0}}, {}});
  p.objective_terms.push_back(
      {"a/c", coeffs.linear, {{"a", kLinearTermOrthogonalityExponent}, {"c", -1.0}}, {}});
  p.constraint_terms.push_back({"ratio a/d", ad_ratio_bound, {{"a", 1.0}}, {{"d", -1.0}}});
  p.normality = gp::NormalityScope::ObjectiveTerms;
  return p;
}

std::pair<std::string, std::string> link_names(int loop_id) {
  return loop_id == 2 ? std::pair<std::string, std::string>{"e", "f"}
                      : std::pair<std::string, std::string>{"b", "c"};
}

LoopSynthesis synthesize_loop(const SynthesisConfig& config) {
  config.validate();
  LoopSynthesis out;
  out.coefficients = build_objective_coefficients(config.table);
  const gp::GPProblem problem = build_dimensional_problem(out.coefficients, config.ad_ratio_bound);

  gp::RecoveryOptions options;
  options.normalization = std::pair<std::string, double>{config.normalization, 1.0};
  out.gp = gp::solve(problem, options);

  const double a = out.gp.primal_values.at("a");
  const double c = out.gp.primal_values.at("c");
  const double d = out.gp.primal_values.at("d");
  out.constant = fourbar::zero_error_loop_constant(a, c, d, config.table);
  const double b = fourbar::coupler_from_constant(a, c, d, out.constant);
  out.loop = FourBarLoop{a, b, c, d, config.loop_id, fourbar::LengthUnit::Dimensionless};
  out.constraint_value = config.ad_ratio_bound * a / d;

  for (const auto& point : config.table.points) {
    out.structural_errors.push_back(fourbar::structural_error(a, c, d, out.constant, point));
    out.exact_errors.push_back(fourbar::exact_output_error(out.loop, point));
  }
  out.squared_error_sum = fourbar::error_objective_sum(a, c, d, config.table);
  const double ratio = a / c;
  out.objective_at_solution =
      out.coefficients.quadratic * ratio * ratio + out.coefficients.linear * ratio;

  out.diagnostics = out.gp.diagnostics;
  {
    std::ostringstream os;
    os.precision(17);
    os << "constraint " << config.ad_ratio_bound << "*a/d = " << out.constraint_value
       << (std::abs(out.constraint_value - 1.0) <= 1e-12 ? " (tight)" : " (NOT tight)");
    out.diagnostics.push_back(os.str());
  }
  if (out.coefficients.quadratic > 0.0 && out.coefficients.linear > 0.0) {
    out.diagnostics.emplace_back(
        "objective has positive coefficients, so its infimum is 0 as a/c -> 0; the "
        "stationary point of the dual is not a global minimum");
  }
  out.diagnostics.emplace_back(
      "a-orthogonality row weights the linear term by 1/2 (reference construction)");
  out.diagnostics.emplace_back(
      "closed-form objective omits the cross terms of the squared linearized errors; "
      "see squared_error_sum");
  return out;
}

FourBarLoop scale_loop(const FourBarLoop& loop, double scale_factor) {
  SIXBAR_REQUIRE(std::isfinite(scale_factor) && scale_factor > 0.0, ErrorCode::InvalidInput,
                 "scale_factor must be positive");
  FourBarLoop out = loop;
  out.input *= scale_factor;
  out.coupler *= scale_factor;
  out.output *= scale_factor;
  out.ground *= scale_factor;
  out.unit = fourbar::LengthUnit::Millimetre;
  return out;
}

nlohmann::ordered_json to_json(const LoopSynthesis& r, const SynthesisConfig& config) {
  using nlohmann::ordered_json;
  const auto [coupler_name, output_name] = link_names(config.loop_id);

  ordered_json table = ordered_json::array();
  for (std::size_t i = 0; i < config.table.points.size(); ++i) {
    const auto& p = config.table.points[i];
    ordered_json row;
    row["index"] = i;
    row["input_deg"] = p.input_deg;
    row["desired_output_deg"] = p.desired_output_deg;
    row["linearized_error_rad"] = r.structural_errors[i];
    if (r.exact_errors[i]) {
      row["exact_error_rad"] = *r.exact_errors[i];
    } else {
      row["exact_error_rad"] = nullptr;
    }
    table.push_back(row);
  }

  ordered_json dual;
  dual["prefactor"] = r.gp.dual.prefactor;
  ordered_json symbolic = ordered_json::object();
  for (const auto& [name, e] : r.gp.dual.parameter_exponents) symbolic[name] = e;
  dual["symbolic_exponents"] = symbolic;
  dual["value"] = r.gp.dual.evaluate(r.gp.primal_values);

  const FourBarLoop scaled = scale_loop(r.loop, config.scale_factor);
  ordered_json lengths;
  lengths["a"] = r.loop.input;
  lengths[coupler_name] = r.loop.coupler;
  lengths[output_name] = r.loop.output;
  lengths["d"] = r.loop.ground;
  ordered_json lengths_mm;
  lengths_mm["a"] = scaled.input;
  lengths_mm[coupler_name] = scaled.coupler;
  lengths_mm[output_name] = scaled.output;
  lengths_mm["d"] = scaled.ground;

  ordered_json out;
  out["loop_id"] = config.loop_id;
  out["zero_error_index"] = config.table.zero_error_index;
  out["ad_ratio_bound"] = config.ad_ratio_bound;
  out["normalization"] = config.normalization;
  out["coefficients"] = {{"quadratic", r.coefficients.quadratic},
                         {"linear", r.coefficients.linear}};
  out["weights"] = r.gp.weights;
  out["dual"] = dual;
  out["lengths"] = lengths;
  out["scale_factor"] = config.scale_factor;
  out["lengths_mm"] = lengths_mm;
  out["loop_constant"] = r.constant;
  out["constraint_value"] = r.constraint_value;
  out["recovery_residual"] = r.gp.recovery_residual;
  out["precision_points"] = table;
  out["squared_error_sum"] = r.squared_error_sum;
  out["objective_at_solution"] = r.objective_at_solution;
  out["diagnostics"] = r.diagnostics;
  return out;
}

nlohmann::ordered_json synthesis_report(const SynthesisConfig& config) {
  return to_json(synthesize_loop(config), config);
}

}  // namespace sixbar::dim_synth
