#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sixbar/beam_sizing.hpp"
#include "sixbar/dim_synth.hpp"
#include "sixbar/fourbar.hpp"
#include "sixbar/sixbar_sim.hpp"

namespace sixbar::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kSolverFailure = 3,
  kNoAssembly = 4,
};

/// Malformed or invalid configuration; `key` is the dotted path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct BeamConfig {
  double density_kg_m3 = 1430.0;
  double tip_load_n = 4.0;
  double allowable_stress_pa = beam::kDefaultAllowableStressPa;
  double beam_width_m = 0.026;
  double hole_diameter_mm = 8.0;
  double width_ratio = beam::kDefaultWidthRatio;
  std::vector<std::string> links = {"a", "b", "c", "d"};
  std::map<std::string, double> length_overrides_mm = {{"b", 396.0}, {"c", 20.0}};
  std::map<std::string, double> reference_thickness_mm = beam::published_thickness_mm();
};

struct SweepConfig {
  double start_deg = 0.0;
  double end_deg = 30.0;
  double step_deg = 5.0;
};

struct GraspConfig {
  double close_deg = 45.0;
  double open_deg = 70.0;
};

struct OutputNames {
  std::string synthesis_report = "synthesis_report.json";
  std::string sizing_csv = "sizing.csv";
  std::string sweep_csv = "sweep.csv";
  std::string svg = "gripper.svg";
  std::string reproduce_report = "reproduce_report.json";
  std::string effective_config = "effective_config.json";
};

/// Every field defaults to the reference gripper, so an empty JSON object reproduces it.
struct ToolConfig {
  fourbar::PrecisionTable table = fourbar::gripper_reference_table();
  std::optional<fourbar::PrecisionTable> loop2_table;  // defaults to `table`
  double ad_ratio_bound = 3.0;
  std::string normalization = "a";
  double scale_factor = 100.0;
  std::map<std::string, double> loop_overrides;  // dimensionless a..f
  BeamConfig beam;
  SweepConfig sweep;
  GraspConfig grasp;
  OutputNames outputs;

  dim_synth::SynthesisConfig synthesis_config(int loop_id) const;
};

/// Strict parse: unknown keys, wrong types and invariant violations raise ConfigError.
ToolConfig parse_config(const nlohmann::json& doc);
ToolConfig load_config(const std::filesystem::path& path);
/// Complete effective configuration; parse_config(config_to_json(c)) reproduces c.
nlohmann::ordered_json config_to_json(const ToolConfig& config);

struct Pipeline {
  dim_synth::LoopSynthesis loop1;
  dim_synth::LoopSynthesis loop2;
};

Pipeline run_synthesis(const ToolConfig& config);
/// Synthesized loops with loop_overrides applied (a and d apply to both loops).
sim::SixBarGripper build_gripper(const ToolConfig& config, const Pipeline& pipeline);
std::vector<beam::SizingRow> run_sizing(const ToolConfig& config, const Pipeline& pipeline);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool stamp = false;
};

int cmd_enumerate(int links, int dof, std::ostream& out, std::ostream& err);
int cmd_synthesize(const ToolConfig& config, const RunOptions& run, std::ostream& out,
                   std::ostream& err);
int cmd_size(const ToolConfig& config, const RunOptions& run, std::ostream& out,
             std::ostream& err);
int cmd_simulate(const ToolConfig& config, const RunOptions& run, std::ostream& out,
                 std::ostream& err);
int cmd_reproduce(const RunOptions& run, std::ostream& out, std::ostream& err);

/// Comparison of computed values against the published reference values.
nlohmann::ordered_json reproduction_report(bool stamp = false);

/// Full command line, argv[0] excluded. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sixbar::cli
