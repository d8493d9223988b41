#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sixbar/fourbar.hpp"

namespace sixbar::sim {

/// Two four-bar loops sharing the crank a and the ground link d.
///
/// Topology: ground (ternary) carries joint 1 and the double joint 4; the crank
/// (ternary) carries joint 1 and the double joint 2; b, c, e, f are binary. Joints 2
/// and 4 each hold two revolute pairs, giving 6 links and 7 joints.
struct SixBarGripper {
  fourbar::FourBarLoop loop1;  // a, b, c, d
  fourbar::FourBarLoop loop2;  // a, e, f, d
  double scale_factor = 100.0;  // loop units -> mm for rendering
  /// Output angle used as the branch hint when no previous state exists.
  std::optional<double> seed_output_deg;

  static constexpr int kLinks = 6;
  static constexpr int kJoints = 7;

  /// Both loops valid, ids 1 and 2, identical crank and ground lengths.
  void validate() const;
};

struct JawState {
  double theta2_deg = 0.0;
  std::optional<double> theta4_deg;  // nullopt: loop 1 does not assemble
  std::optional<double> theta6_deg;  // nullopt: loop 2 does not assemble

  bool assembled1() const { return theta4_deg.has_value(); }
  bool assembled2() const { return theta6_deg.has_value(); }
  bool assembled() const { return assembled1() && assembled2(); }
};

/// Solves both loops at theta2. Branch hints come from `previous` when given, else from
/// the gripper's seed. Non-assembly is reported through the state, never thrown.
JawState assemble_at(const SixBarGripper& gripper, double theta2_deg,
                     const std::optional<JawState>& previous = std::nullopt);

/// Inclusive sweep from start to end (either direction) in |step| increments, each
/// state hinted by the one before it. start == end yields a single state.
std::vector<JawState> sweep(const SixBarGripper& gripper, double start_deg, double end_deg,
                            double step_deg);

struct GraspWindow {
  double close_deg = 45.0;
  double open_deg = 70.0;
  std::vector<bool> in_window;  // per state: theta4 within [close, open]
  std::size_t count = 0;
};

/// Throws InvalidInput when close_deg > open_deg.
GraspWindow grasp_window(const std::vector<JawState>& states, double open_deg = 70.0,
                         double close_deg = 45.0);

/// theta2_deg,theta4_deg,theta6_deg,assembled1,assembled2,in_grasp_window
std::string sweep_csv(const std::vector<JawState>& states, const GraspWindow& window);

/// Schematic: joint 1 at the origin, joint 4 at (d, 0), y up. Each state is one <g>
/// holding the six link segments and seven joint markers (joints 2 and 4 drawn as
/// concentric pairs). Loop 2 is drawn on the branch mirrored about the diagonal
/// joint 2 - joint 4 so the two jaws close symmetrically. Zero states render the ground
/// link alone. Throws InvalidInput if a state is not fully assembled.
std::string render_svg(const SixBarGripper& gripper, const std::vector<JawState>& states);

void export_svg(const SixBarGripper& gripper, const std::vector<JawState>& states,
                const std::filesystem::path& path);

}  // namespace sixbar::sim
