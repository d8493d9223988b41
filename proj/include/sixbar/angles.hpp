#pragma once

#include <cmath>
#include <numbers>

namespace sixbar {

constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees into (-180, 180].
inline double wrap_deg(double deg) noexcept {
  double w = std::remainder(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  return w;
}

/// Smallest absolute angular distance between two angles in degrees.
inline double angular_distance_deg(double a, double b) noexcept {
  return std::abs(wrap_deg(a - b));
}

}  // namespace sixbar
