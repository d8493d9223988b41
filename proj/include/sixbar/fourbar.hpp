#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace sixbar::fourbar {

enum class LengthUnit { Dimensionless, Millimetre };

/// One four-bar loop of the gripper. Loop 1 is (a, b, c, d); loop 2 reads the same
/// slots as (a, e, f, d), so `coupler` holds e and `output` holds f when loop_id == 2.
struct FourBarLoop {
  double input = 0.0;    // crank, pivots at ground joint 1
  double coupler = 0.0;
  double output = 0.0;   // rocker, pivots at ground joint 4
  double ground = 0.0;
  int loop_id = 1;
  LengthUnit unit = LengthUnit::Dimensionless;

  void validate() const;
};

struct PrecisionPoint {
  double input_deg = 0.0;
  double desired_output_deg = 0.0;
};

struct PrecisionTable {
  std::vector<PrecisionPoint> points;
  std::size_t zero_error_index = 0;

  /// At least two finite points and an in-range zero-error index.
  void validate() const;
  const PrecisionPoint& zero_error_point() const { return points.at(zero_error_index); }
};

/// Seven points, input 0..30 deg, desired output 135..45 deg, zero error at 15/90.
PrecisionTable gripper_reference_table();

/// Left-hand side of the displacement equation
///   2ad cos t2 - 2cd cos t4 + (a^2 - b^2 + c^2 + d^2) - 2ac cos(t2 - t4).
/// Zero exactly when the loop closes at (theta2, theta4).
double closure_residual(const FourBarLoop& loop, double theta2_deg, double theta4_deg);

/// Both closure roots at theta2 in degrees, wrapped to (-180, 180], or nullopt when the
/// loop cannot be assembled. A tangent configuration returns the same root twice.
std::optional<std::array<double, 2>> output_angle_roots(const FourBarLoop& loop,
                                                        double theta2_deg);

/// Output angle closing the loop at theta2.
///
/// With a hint, the root nearest the hint (angular distance) is returned. Without one,
/// roots in (0, 180] are preferred and the larger of the preferred set wins; ties go
/// to the larger angle. Returns nullopt when no real root exists.
std::optional<double> solve_output_angle(const FourBarLoop& loop, double theta2_deg,
                                         std::optional<double> hint_deg = std::nullopt);

/// K = a^2 - b^2 + c^2 + d^2 (L = a^2 - e^2 + f^2 + d^2 for loop 2).
double loop_constant(const FourBarLoop& loop);

/// Loop constant chosen so that the linearized structural error vanishes at the table's
/// zero-error point, under the a << d simplification:
///   K = 2cd cos t4d0 + 2ac cos t20 cos(t4d0 - t20) - 2ad cos t20.
double zero_error_loop_constant(double input, double output, double ground,
                                const PrecisionTable& table);

/// Coupler length recovered from a loop constant, sqrt(a^2 + c^2 + d^2 - K).
/// Throws SynthesisInfeasible when the radicand is negative.
double coupler_from_constant(double input, double output, double ground, double constant);

/// Linearized structural error (radians) at one precision point, obtained from the
/// displacement equation with sin(e) ~ e and cos(e) ~ 1. Throws DegenerateConfiguration
/// when the denominator magnitude is below 1e-12.
double structural_error(double input, double output, double ground, double constant,
                        const PrecisionPoint& point);

/// Sum of squared linearized structural errors over the table, with the loop constant
/// taken from zero_error_loop_constant.
double error_objective_sum(double input, double output, double ground,
                           const PrecisionTable& table);

/// Exact output error (radians): solved output angle minus the desired one, with the
/// desired angle as branch hint. nullopt when the loop cannot be assembled.
std::optional<double> exact_output_error(const FourBarLoop& loop, const PrecisionPoint& point);

}  // namespace sixbar::fourbar
