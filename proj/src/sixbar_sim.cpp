#include "sixbar/sixbar_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "sixbar/angles.hpp"
#include "sixbar/error.hpp"
#include "sixbar/format.hpp"

namespace sixbar::sim {

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

bool same_length(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
}

// Crank and rocker angles are measured from the -x direction towards +y, which is the
// orientation in which the displacement equation holds with joint 4 at (d, 0).
Point crank_tip(double length, double theta_deg) {
  const double t = deg_to_rad(theta_deg);
  return {-length * std::cos(t), length * std::sin(t)};
}

Point reflect(const Point& p, const Point& on_line, const Point& other) {
  const double ux0 = other.x - on_line.x;
  const double uy0 = other.y - on_line.y;
  const double n = std::hypot(ux0, uy0);
  if (n == 0.0) return p;
  const double ux = ux0 / n, uy = uy0 / n;
  const double vx = p.x - on_line.x, vy = p.y - on_line.y;
  const double dot = vx * ux + vy * uy;
  return {on_line.x + 2.0 * dot * ux - vx, on_line.y + 2.0 * dot * uy - vy};
}

struct Joints {
  Point j1, j2, j3, j4, j5;
};

Joints joint_positions(const SixBarGripper& g, const JawState& s) {
  const double k = g.scale_factor;
  Joints j;
  j.j1 = {0.0, 0.0};
  j.j4 = {g.loop1.ground * k, 0.0};
  const Point crank = crank_tip(g.loop1.input * k, s.theta2_deg);
  j.j2 = crank;
  const Point rocker1 = crank_tip(g.loop1.output * k, *s.theta4_deg);
  j.j3 = {j.j4.x + rocker1.x, rocker1.y};
  const Point rocker2 = crank_tip(g.loop2.output * k, *s.theta6_deg);
  j.j5 = reflect({j.j4.x + rocker2.x, rocker2.y}, j.j2, j.j4);
  return j;
}

std::string line(const Point& p, const Point& q, const char* name) {
  return "    <line class=\"link\" data-link=\"" + std::string(name) + "\" x1=\"" + fixed6(p.x) +
         "\" y1=\"" + fixed6(-p.y) + "\" x2=\"" + fixed6(q.x) + "\" y2=\"" + fixed6(-q.y) +
         "\"/>\n";
}

std::string circle(const Point& p, double r, const char* name) {
  return "    <circle class=\"joint\" data-joint=\"" + std::string(name) + "\" cx=\"" +
         fixed6(p.x) + "\" cy=\"" + fixed6(-p.y) + "\" r=\"" + fixed6(r) + "\"/>\n";
}

}  // namespace

void SixBarGripper::validate() const {
  loop1.validate();
  loop2.validate();
  SIXBAR_REQUIRE(loop1.loop_id == 1 && loop2.loop_id == 2, ErrorCode::InvalidInput,
                 "gripper loops must carry ids 1 and 2");
  SIXBAR_REQUIRE(same_length(loop1.input, loop2.input) && same_length(loop1.ground, loop2.ground),
                 ErrorCode::InvalidInput, "both loops must share crank and ground lengths");
  SIXBAR_REQUIRE(std::isfinite(scale_factor) && scale_factor > 0.0, ErrorCode::InvalidInput,
                 "scale_factor must be positive");
}

JawState assemble_at(const SixBarGripper& gripper, double theta2_deg,
                     const std::optional<JawState>& previous) {
  gripper.validate();
  std::optional<double> hint4 = gripper.seed_output_deg;
  std::optional<double> hint6 = gripper.seed_output_deg;
  if (previous) {
    if (previous->theta4_deg) hint4 = previous->theta4_deg;
    if (previous->theta6_deg) hint6 = previous->theta6_deg;
  }
  JawState s;
  s.theta2_deg = theta2_deg;
  s.theta4_deg = fourbar::solve_output_angle(gripper.loop1, theta2_deg, hint4);
  s.theta6_deg = fourbar::solve_output_angle(gripper.loop2, theta2_deg, hint6);
  return s;
}

std::vector<JawState> sweep(const SixBarGripper& gripper, double start_deg, double end_deg,
                            double step_deg) {
  SIXBAR_REQUIRE(std::isfinite(step_deg) && step_deg > 0.0, ErrorCode::InvalidInput,
                 "sweep step must be positive");
  SIXBAR_REQUIRE(std::isfinite(start_deg) && std::isfinite(end_deg), ErrorCode::InvalidInput,
                 "sweep bounds must be finite");
  const double span = std::abs(end_deg - start_deg);
  const double direction = end_deg >= start_deg ? 1.0 : -1.0;
  const auto steps = static_cast<std::size_t>(std::floor(span / step_deg + 1e-9));

  std::vector<JawState> out;
  out.reserve(steps + 1);
  std::optional<JawState> previous;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double theta2 = start_deg + direction * static_cast<double>(k) * step_deg;
    JawState s = assemble_at(gripper, theta2, previous);
    previous = s;
    out.push_back(std::move(s));
  }
  return out;
}

GraspWindow grasp_window(const std::vector<JawState>& states, double open_deg,
                         double close_deg) {
  SIXBAR_REQUIRE(close_deg <= open_deg, ErrorCode::InvalidInput,
                 "empty grasp window: close angle exceeds open angle");
  GraspWindow w;
  w.close_deg = close_deg;
  w.open_deg = open_deg;
  for (const auto& s : states) {
    const bool inside = s.theta4_deg && *s.theta4_deg >= close_deg && *s.theta4_deg <= open_deg;
    w.in_window.push_back(inside);
    if (inside) ++w.count;
  }
  return w;
}

std::string sweep_csv(const std::vector<JawState>& states, const GraspWindow& window) {
  SIXBAR_REQUIRE(window.in_window.size() == states.size(), ErrorCode::InvalidInput,
                 "grasp window does not match the sweep");
  std::string out = "theta2_deg,theta4_deg,theta6_deg,assembled1,assembled2,in_grasp_window\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    out += fixed6(s.theta2_deg) + ',' + (s.theta4_deg ? fixed6(*s.theta4_deg) : "") + ',' +
           (s.theta6_deg ? fixed6(*s.theta6_deg) : "") + ',' + (s.assembled1() ? "1" : "0") +
           ',' + (s.assembled2() ? "1" : "0") + ',' + (window.in_window[i] ? "1" : "0") + '\n';
  }
  return out;
}

std::string render_svg(const SixBarGripper& gripper, const std::vector<JawState>& states) {
  gripper.validate();
  const double k = gripper.scale_factor;
  const Point j1{0.0, 0.0};
  const Point j4{gripper.loop1.ground * k, 0.0};

  std::vector<Joints> frames;
  for (std::size_t i = 0; i < states.size(); ++i) {
    SIXBAR_REQUIRE(states[i].assembled(), ErrorCode::InvalidInput,
                   "state " + std::to_string(i) + " is not assembled");
    frames.push_back(joint_positions(gripper, states[i]));
  }

  double min_x = std::min(j1.x, j4.x), max_x = std::max(j1.x, j4.x);
  double min_y = 0.0, max_y = 0.0;
  for (const auto& f : frames) {
    for (const Point& p : {f.j1, f.j2, f.j3, f.j4, f.j5}) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double margin = 0.05 * extent + 1.0;
  const double r = 0.01 * extent + 0.5;

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fixed6(min_x - margin) + ' ' +
         fixed6(-max_y - margin) + ' ' + fixed6(max_x - min_x + 2 * margin) + ' ' +
         fixed6(max_y - min_y + 2 * margin) + "\">\n";
  svg += "  <style>.link{stroke:#333;stroke-width:" + fixed6(r * 0.6) +
         ";fill:none}.joint{fill:#fff;stroke:#c33;stroke-width:" + fixed6(r * 0.3) +
         "}</style>\n";

  if (frames.empty()) {
    svg += "  <g class=\"ground\">\n" + line(j1, j4, "d") + "  </g>\n";
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Joints& f = frames[i];
    svg += "  <g class=\"state\" data-theta2=\"" + fixed6(states[i].theta2_deg) + "\">\n";
    svg += line(f.j1, f.j4, "d");
    svg += line(f.j1, f.j2, "a");
    svg += line(f.j2, f.j3, "b");
    svg += line(f.j4, f.j3, "c");
    svg += line(f.j2, f.j5, "e");
    svg += line(f.j4, f.j5, "f");
    svg += circle(f.j1, r, "1");
    svg += circle(f.j2, r, "2");
    svg += circle(f.j2, 1.6 * r, "2");
    svg += circle(f.j3, r, "3");
    svg += circle(f.j4, r, "4");
    svg += circle(f.j4, 1.6 * r, "4");
    svg += circle(f.j5, r, "5");
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void export_svg(const SixBarGripper& gripper, const std::vector<JawState>& states,
                const std::filesystem::path& path) {
  write_file_atomic(path, render_svg(gripper, states));
}

}  // namespace sixbar::sim
