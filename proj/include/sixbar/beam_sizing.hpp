#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sixbar/gp_dual.hpp"

namespace sixbar::beam {

/// Allowable bending stress that makes 6Pl/(sigma w) equal 9.05e-7 m^2 for
/// P = 4 N, l = 0.1 m, w = 0.026 m. No stress value is published for the reference
/// gripper; this is the value its stress coefficient implies.
inline constexpr double kDefaultAllowableStressPa = 1.0198e8;
/// Width-to-hole ratio of the single published data point (8 mm hole, 26.66 mm width).
inline constexpr double kDefaultWidthRatio = 3.3325;

/// A link treated as a cantilever of rectangular section with a tip load.
struct BeamSpec {
  double density_kg_m3 = 1430.0;
  double length_m = 0.1;
  double width_m = 0.026;
  double tip_load_n = 4.0;
  double allowable_stress_pa = kDefaultAllowableStressPa;

  void validate() const;
};

/// Link width from the pin-hole diameter, width = ratio * hole. Units follow the input.
double width_for_hole(double hole_diameter, double ratio = kDefaultWidthRatio);

/// Mass term rho*l*w*t and stress term 6Pl/(sigma w) * t^-2, both inside normality
/// (the stress constraint is carried as a penalty term in the objective).
gp::GPProblem build_thickness_problem(const BeamSpec& beam);

struct ThicknessResult {
  double thickness_m = 0.0;            // term-balance recovery
  double mass_coefficient = 0.0;       // kg/m
  double stress_coefficient = 0.0;     // m^2
  gp::GPSolution gp;
  /// Thickness from equating the two dual factors (c1 t/w1)^w1 = (c2 t^-2/w2)^w2.
  /// Reported for comparison only; it is not a minimizer.
  double factor_balance_thickness_m = 0.0;
};

ThicknessResult solve_thickness(const BeamSpec& beam);

struct LinkLength {
  std::string name;
  double length_mm = 0.0;
};

/// Inputs shared by every link during sizing.
struct SizingDefaults {
  double density_kg_m3 = 1430.0;
  double tip_load_n = 4.0;
  double allowable_stress_pa = kDefaultAllowableStressPa;
  double beam_width_m = 0.026;
  double hole_diameter_mm = 8.0;
  double width_ratio = kDefaultWidthRatio;
  /// Published thicknesses by link name, shown next to the computed ones.
  std::map<std::string, double> reference_thickness_mm;
};

/// Reference thicknesses for links a, b, c, d of the published gripper.
std::map<std::string, double> published_thickness_mm();

struct SizingRow {
  std::string link;
  double length_mm = 0.0;
  double width_mm = 0.0;
  double thickness_computed_mm = 0.0;
  std::optional<double> thickness_reference_mm;
  std::string note;
};

/// One row per link, ordered by link name. The thickness column is the term-balance
/// optimum for each link's length; rows with a reference value that differs by more
/// than 1% are noted "not reproduced".
std::vector<SizingRow> size_all_links(std::vector<LinkLength> links, const SizingDefaults& defaults);

/// CSV: link,length_mm,width_mm,thickness_computed_mm,thickness_paper_mm,note
std::string sizing_csv(const std::vector<SizingRow>& rows);

}  // namespace sixbar::beam
