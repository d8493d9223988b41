#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sixbar/fourbar.hpp"
#include "sixbar/gp_dual.hpp"
#include "json.hpp"

namespace sixbar::dim_synth {

struct SynthesisConfig {
  fourbar::PrecisionTable table = fourbar::gripper_reference_table();
  double ad_ratio_bound = 3.0;      // the constraint bound * a / d <= 1
  std::string normalization = "a";  // unknown fixed to 1: "a", "c" or "d"
  double scale_factor = 100.0;      // dimensionless units -> mm
  int loop_id = 1;

  void validate() const;
};

/// F = quadratic * (a/c)^2 + linear * (a/c) for a precision table.
struct ObjectiveCoefficients {
  double quadratic = 0.0;
  double linear = 0.0;
};

/// quadratic = sum (cos t2i - cos t20)^2 / sin^2 t4di
/// linear    = -2 sum (cos t2i - cos t20)(cos t4di - cos t4d0) / sin^2 t4di
/// Throws DegenerateConfiguration naming the first point with sin t4di == 0.
ObjectiveCoefficients build_objective_coefficients(const fourbar::PrecisionTable& table);

/// Exponent of `a` in the linear term as it enters the a-orthogonality row. The
/// reference construction uses 1/2 here; the plain monomial a/c would carry 1 and
/// would force the constraint weight to zero.
inline constexpr double kLinearTermOrthogonalityExponent = 0.5;

/// Three-term problem over variables (a, c) with the ground length d as a symbolic
/// parameter of the ratio constraint: objective quadratic*a^2/c^2 + linear*a/c,
/// constraint bound*a*d^-1 <= 1, normality over the two objective terms.
gp::GPProblem build_dimensional_problem(const ObjectiveCoefficients& coeffs,
                                        double ad_ratio_bound);

struct LoopSynthesis {
  fourbar::FourBarLoop loop;  // dimensionless
  ObjectiveCoefficients coefficients;
  gp::GPSolution gp;
  double constant = 0.0;             // loop constant from the zero-error point
  double constraint_value = 0.0;     // bound * a / d, 1 when tight
  std::vector<double> structural_errors;                 // linearized, radians
  std::vector<std::optional<double>> exact_errors;       // solved, radians
  double squared_error_sum = 0.0;
  double objective_at_solution = 0.0;  // quadratic*(a/c)^2 + linear*(a/c)
  std::vector<std::string> diagnostics;
};

/// Coefficients -> dual weights -> dual value -> term-balance recovery with the chosen
/// normalization -> coupler from the zero-error loop constant.
/// Throws SynthesisInfeasible when the loop constant exceeds a^2 + c^2 + d^2.
LoopSynthesis synthesize_loop(const SynthesisConfig& config);

/// Multiplies every length; the result carries millimetre units.
fourbar::FourBarLoop scale_loop(const fourbar::FourBarLoop& loop, double scale_factor);

/// Names of the coupler and output links: b/c for loop 1, e/f for loop 2.
std::pair<std::string, std::string> link_names(int loop_id);

/// Structured, deterministic record of one synthesis run.
nlohmann::ordered_json synthesis_report(const SynthesisConfig& config);
nlohmann::ordered_json to_json(const LoopSynthesis& result, const SynthesisConfig& config);

}  // namespace sixbar::dim_synth
