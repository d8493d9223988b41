#include "sixbar/fourbar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sixbar/angles.hpp"
#include "sixbar/error.hpp"

namespace sixbar::fourbar {

namespace {

constexpr double kDenominatorFloor = 1e-12;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void FourBarLoop::validate() const {
  SIXBAR_REQUIRE(positive_finite(input) && positive_finite(coupler) &&
                     positive_finite(output) && positive_finite(ground),
                 ErrorCode::InvalidInput, "four-bar link lengths must be positive and finite");
  SIXBAR_REQUIRE(loop_id == 1 || loop_id == 2, ErrorCode::InvalidInput,
                 "loop_id must be 1 or 2");
}

void PrecisionTable::validate() const {
  SIXBAR_REQUIRE(points.size() >= 2, ErrorCode::InvalidInput,
                 "precision table needs at least two points");
  SIXBAR_REQUIRE(zero_error_index < points.size(), ErrorCode::InvalidInput,
                 "zero_error_index " + std::to_string(zero_error_index) + " out of range");
  for (std::size_t i = 0; i < points.size(); ++i) {
    SIXBAR_REQUIRE(std::isfinite(points[i].input_deg) &&
                       std::isfinite(points[i].desired_output_deg),
                   ErrorCode::InvalidInput,
                   "precision point " + std::to_string(i) + " is not finite");
  }
}

PrecisionTable gripper_reference_table() {
  PrecisionTable t;
  for (int i = 0; i < 7; ++i) {
    t.points.push_back({5.0 * i, 135.0 - 15.0 * i});
  }
  t.zero_error_index = 3;
  return t;
}

double closure_residual(const FourBarLoop& loop, double theta2_deg, double theta4_deg) {
  const double a = loop.input, b = loop.coupler, c = loop.output, d = loop.ground;
  const double t2 = deg_to_rad(theta2_deg);
  const double t4 = deg_to_rad(theta4_deg);
  return 2.0 * a * d * std::cos(t2) - 2.0 * c * d * std::cos(t4) +
         (a * a - b * b + c * c + d * d) - 2.0 * a * c * std::cos(t2 - t4);
}

std::optional<std::array<double, 2>> output_angle_roots(const FourBarLoop& loop,
                                                        double theta2_deg) {
  loop.validate();
  const double a = loop.input, c = loop.output, d = loop.ground;
  const double t2 = deg_to_rad(theta2_deg);
  // Collect the equation as A cos t4 + B sin t4 = C and write the left side as
  // R cos(t4 - phi); the two roots are phi +/- acos(C / R).
  const double A = -2.0 * c * d - 2.0 * a * c * std::cos(t2);
  const double B = -2.0 * a * c * std::sin(t2);
  const double C = -(2.0 * a * d * std::cos(t2) + loop_constant(loop));
  const double R = std::hypot(A, B);
  if (R == 0.0) return std::nullopt;

  double ratio = C / R;
  constexpr double kTangentSlack = 1e-12;
  if (std::abs(ratio) > 1.0 + kTangentSlack) return std::nullopt;
  ratio = std::clamp(ratio, -1.0, 1.0);

  const double phi = std::atan2(B, A);
  const double spread = std::acos(ratio);
  return std::array<double, 2>{wrap_deg(rad_to_deg(phi + spread)),
                               wrap_deg(rad_to_deg(phi - spread))};
}

std::optional<double> solve_output_angle(const FourBarLoop& loop, double theta2_deg,
                                         std::optional<double> hint_deg) {
  const auto roots = output_angle_roots(loop, theta2_deg);
  if (!roots) return std::nullopt;
  const double r0 = (*roots)[0];
  const double r1 = (*roots)[1];

  if (hint_deg) {
    const double d0 = angular_distance_deg(r0, *hint_deg);
    const double d1 = angular_distance_deg(r1, *hint_deg);
    if (d0 < d1) return r0;
    if (d1 < d0) return r1;
    return std::max(r0, r1);
  }

  const auto upper = [](double r) { return r > 0.0 && r <= 180.0; };
  if (upper(r0) != upper(r1)) return upper(r0) ? r0 : r1;
  return std::max(r0, r1);
}

double loop_constant(const FourBarLoop& loop) {
  const double a = loop.input, b = loop.coupler, c = loop.output, d = loop.ground;
  return a * a - b * b + c * c + d * d;
}

double zero_error_loop_constant(double input, double output, double ground,
                                const PrecisionTable& table) {
  table.validate();
  const PrecisionPoint& zero = table.zero_error_point();
  const double t20 = deg_to_rad(zero.input_deg);
  const double t4d0 = deg_to_rad(zero.desired_output_deg);
  return 2.0 * output * ground * std::cos(t4d0) +
         2.0 * input * output * std::cos(t20) * std::cos(t4d0 - t20) -
         2.0 * input * ground * std::cos(t20);
}

double coupler_from_constant(double input, double output, double ground, double constant) {
  const double squared = input * input + output * output + ground * ground - constant;
  SIXBAR_REQUIRE(squared > 0.0, ErrorCode::SynthesisInfeasible,
                 "K exceeds a^2 + c^2 + d^2");
  return std::sqrt(squared);
}

double structural_error(double input, double output, double ground, double constant,
                        const PrecisionPoint& point) {
  const double a = input, c = output, d = ground;
  const double t2 = deg_to_rad(point.input_deg);
  const double t4d = deg_to_rad(point.desired_output_deg);
  const double numerator = constant + 2.0 * a * d * std::cos(t2) - 2.0 * c * d * std::cos(t4d) -
                           2.0 * a * c * std::cos(t2) * std::cos(t4d - t2);
  const double denominator = -2.0 * a * c * std::sin(t4d - t2) - 2.0 * c * d * std::sin(t4d);
  SIXBAR_REQUIRE(std::abs(denominator) > kDenominatorFloor, ErrorCode::DegenerateConfiguration,
                 "structural error denominator vanishes at input " +
                     std::to_string(point.input_deg) + " deg");
  return numerator / denominator;
}

double error_objective_sum(double input, double output, double ground,
                           const PrecisionTable& table) {
  const double constant = zero_error_loop_constant(input, output, ground, table);
  double sum = 0.0;
  for (const auto& p : table.points) {
    const double e = structural_error(input, output, ground, constant, p);
    sum += e * e;
  }
  return sum;
}

std::optional<double> exact_output_error(const FourBarLoop& loop, const PrecisionPoint& point) {
  const auto solved = solve_output_angle(loop, point.input_deg, point.desired_output_deg);
  if (!solved) return std::nullopt;
  return deg_to_rad(wrap_deg(*solved - point.desired_output_deg));
}

}  // namespace sixbar::fourbar
