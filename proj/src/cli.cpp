#include "sixbar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "sixbar/error.hpp"
#include "sixbar/format.hpp"
#include "sixbar/number_synthesis.hpp"

namespace sixbar::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string> kLinkNames = {"a", "b", "c", "d", "e", "f"};

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key");
  }
}

double number(const json& obj, const std::string& key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(path, key), "must be finite");
  return x;
}

double positive(const json& obj, const std::string& key, const std::string& path,
                double fallback) {
  const double x = number(obj, key, path, fallback);
  if (!(x > 0.0)) throw ConfigError(join(path, key), "must be positive");
  return x;
}

std::map<std::string, double> link_lengths(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw ConfigError(key, "expected an object of link lengths");
  std::map<std::string, double> out;
  for (const auto& [name, value] : obj.items()) {
    if (!kLinkNames.count(name)) throw ConfigError(join(key, name), "unknown link name");
    out[name] = positive(obj, name, key, 0.0);
  }
  return out;
}

fourbar::PrecisionTable parse_table(const json& obj, const std::string& path) {
  if (obj.is_null()) throw ConfigError(path, "precision table is missing");
  check_keys(obj, {"points", "zero_error_index"}, path);
  if (!obj.contains("points")) throw ConfigError(join(path, "points"), "missing");
  const json& pts = obj.at("points");
  if (!pts.is_array()) throw ConfigError(join(path, "points"), "expected an array");
  fourbar::PrecisionTable table;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = join(path, "points[" + std::to_string(i) + "]");
    check_keys(pts[i], {"input_deg", "desired_output_deg"}, p);
    if (!pts[i].contains("input_deg")) throw ConfigError(join(p, "input_deg"), "missing");
    if (!pts[i].contains("desired_output_deg")) {
      throw ConfigError(join(p, "desired_output_deg"), "missing");
    }
    table.points.push_back(
        {number(pts[i], "input_deg", p, 0.0), number(pts[i], "desired_output_deg", p, 0.0)});
  }
  if (!obj.contains("zero_error_index")) {
    throw ConfigError(join(path, "zero_error_index"), "missing");
  }
  const json& z = obj.at("zero_error_index");
  if (!z.is_number_integer() || z.get<long long>() < 0) {
    throw ConfigError(join(path, "zero_error_index"), "expected a non-negative integer");
  }
  table.zero_error_index = z.get<std::size_t>();
  try {
    table.validate();
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
  return table;
}

ordered_json table_to_json(const fourbar::PrecisionTable& t) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : t.points) {
    pts.push_back({{"input_deg", p.input_deg}, {"desired_output_deg", p.desired_output_deg}});
  }
  return {{"points", pts}, {"zero_error_index", t.zero_error_index}};
}

bool is_solver_error(ErrorCode code) {
  return code != ErrorCode::InvalidInput && code != ErrorCode::Io;
}

// Shared error mapping for commands that run the pipeline.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_solver_error(e.code()) ? kSolverFailure : kConfigError;
  }
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
}

ordered_json header(bool stamp) {
  ordered_json h;
  h["tool"] = "sixbar";
  if (stamp) h["version"] = kVersion;
  return h;
}

void ensure_out_dir(const RunOptions& run) {
  std::error_code ec;
  std::filesystem::create_directories(run.out_dir, ec);
  SIXBAR_REQUIRE(!ec, ErrorCode::Io, "cannot create output directory " + run.out_dir.string());
}

void write_effective_config(const ToolConfig& config, const RunOptions& run) {
  write_json(run.out_dir / config.outputs.effective_config, config_to_json(config));
}

}  // namespace

dim_synth::SynthesisConfig ToolConfig::synthesis_config(int loop_id) const {
  dim_synth::SynthesisConfig c;
  c.table = (loop_id == 2 && loop2_table) ? *loop2_table : table;
  c.ad_ratio_bound = ad_ratio_bound;
  c.normalization = normalization;
  c.scale_factor = scale_factor;
  c.loop_id = loop_id;
  return c;
}

ToolConfig parse_config(const json& doc) {
  check_keys(doc,
             {"precision_table", "loop2_table", "ad_ratio_bound", "normalization", "scale_factor",
              "loop_overrides", "beam", "sweep", "grasp_window", "outputs"},
             "");
  ToolConfig c;
  if (doc.contains("precision_table")) c.table = parse_table(doc.at("precision_table"), "precision_table");
  if (doc.contains("loop2_table") && !doc.at("loop2_table").is_null()) {
    c.loop2_table = parse_table(doc.at("loop2_table"), "loop2_table");
  }
  c.ad_ratio_bound = positive(doc, "ad_ratio_bound", "", c.ad_ratio_bound);
  c.scale_factor = positive(doc, "scale_factor", "", c.scale_factor);
  if (doc.contains("normalization")) {
    const json& n = doc.at("normalization");
    if (!n.is_string()) throw ConfigError("normalization", "expected a string");
    c.normalization = n.get<std::string>();
    if (c.normalization != "a" && c.normalization != "c" && c.normalization != "d") {
      throw ConfigError("normalization", "must be one of a, c, d");
    }
  }
  if (doc.contains("loop_overrides")) {
    c.loop_overrides = link_lengths(doc.at("loop_overrides"), "loop_overrides");
  }

  if (doc.contains("beam")) {
    const json& b = doc.at("beam");
    check_keys(b,
               {"density_kg_m3", "tip_load_n", "allowable_stress_pa", "beam_width_m",
                "hole_diameter_mm", "width_ratio", "links", "length_overrides_mm",
                "reference_thickness_mm"},
               "beam");
    auto& bc = c.beam;
    bc.density_kg_m3 = positive(b, "density_kg_m3", "beam", bc.density_kg_m3);
    bc.tip_load_n = positive(b, "tip_load_n", "beam", bc.tip_load_n);
    bc.allowable_stress_pa = positive(b, "allowable_stress_pa", "beam", bc.allowable_stress_pa);
    bc.beam_width_m = positive(b, "beam_width_m", "beam", bc.beam_width_m);
    bc.hole_diameter_mm = positive(b, "hole_diameter_mm", "beam", bc.hole_diameter_mm);
    bc.width_ratio = positive(b, "width_ratio", "beam", bc.width_ratio);
    if (b.contains("links")) {
      const json& links = b.at("links");
      if (!links.is_array()) throw ConfigError("beam.links", "expected an array");
      bc.links.clear();
      for (std::size_t i = 0; i < links.size(); ++i) {
        const std::string key = "beam.links[" + std::to_string(i) + "]";
        if (!links[i].is_string() || !kLinkNames.count(links[i].get<std::string>())) {
          throw ConfigError(key, "expected one of a, b, c, d, e, f");
        }
        const auto name = links[i].get<std::string>();
        if (std::find(bc.links.begin(), bc.links.end(), name) != bc.links.end()) {
          throw ConfigError(key, "duplicate link");
        }
        bc.links.push_back(name);
      }
    }
    if (b.contains("length_overrides_mm")) {
      bc.length_overrides_mm = link_lengths(b.at("length_overrides_mm"), "beam.length_overrides_mm");
    }
    if (b.contains("reference_thickness_mm")) {
      bc.reference_thickness_mm =
          link_lengths(b.at("reference_thickness_mm"), "beam.reference_thickness_mm");
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    check_keys(s, {"start_deg", "end_deg", "step_deg"}, "sweep");
    c.sweep.start_deg = number(s, "start_deg", "sweep", c.sweep.start_deg);
    c.sweep.end_deg = number(s, "end_deg", "sweep", c.sweep.end_deg);
    c.sweep.step_deg = positive(s, "step_deg", "sweep", c.sweep.step_deg);
  }
  if (doc.contains("grasp_window")) {
    const json& g = doc.at("grasp_window");
    check_keys(g, {"close_deg", "open_deg"}, "grasp_window");
    c.grasp.close_deg = number(g, "close_deg", "grasp_window", c.grasp.close_deg);
    c.grasp.open_deg = number(g, "open_deg", "grasp_window", c.grasp.open_deg);
  }
  if (c.grasp.close_deg > c.grasp.open_deg) {
    throw ConfigError("grasp_window", "empty window: close_deg exceeds open_deg");
  }
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    check_keys(o,
               {"synthesis_report", "sizing_csv", "sweep_csv", "svg", "reproduce_report",
                "effective_config"},
               "outputs");
    const auto name = [&](const char* key, std::string& field) {
      if (!o.contains(key)) return;
      if (!o.at(key).is_string() || o.at(key).get<std::string>().empty()) {
        throw ConfigError(join("outputs", key), "expected a non-empty file name");
      }
      field = o.at(key).get<std::string>();
    };
    name("synthesis_report", c.outputs.synthesis_report);
    name("sizing_csv", c.outputs.sizing_csv);
    name("sweep_csv", c.outputs.sweep_csv);
    name("svg", c.outputs.svg);
    name("reproduce_report", c.outputs.reproduce_report);
    name("effective_config", c.outputs.effective_config);
  }
  return c;
}

ToolConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ordered_json config_to_json(const ToolConfig& c) {
  ordered_json j;
  j["precision_table"] = table_to_json(c.table);
  j["loop2_table"] = c.loop2_table ? table_to_json(*c.loop2_table) : ordered_json(nullptr);
  j["ad_ratio_bound"] = c.ad_ratio_bound;
  j["normalization"] = c.normalization;
  j["scale_factor"] = c.scale_factor;
  j["loop_overrides"] = ordered_json::object();
  for (const auto& [k, v] : c.loop_overrides) j["loop_overrides"][k] = v;

  ordered_json b;
  b["density_kg_m3"] = c.beam.density_kg_m3;
  b["tip_load_n"] = c.beam.tip_load_n;
  b["allowable_stress_pa"] = c.beam.allowable_stress_pa;
  b["beam_width_m"] = c.beam.beam_width_m;
  b["hole_diameter_mm"] = c.beam.hole_diameter_mm;
  b["width_ratio"] = c.beam.width_ratio;
  b["links"] = c.beam.links;
  b["length_overrides_mm"] = ordered_json::object();
  for (const auto& [k, v] : c.beam.length_overrides_mm) b["length_overrides_mm"][k] = v;
  b["reference_thickness_mm"] = ordered_json::object();
  for (const auto& [k, v] : c.beam.reference_thickness_mm) b["reference_thickness_mm"][k] = v;
  j["beam"] = b;

  j["sweep"] = {{"start_deg", c.sweep.start_deg},
                {"end_deg", c.sweep.end_deg},
                {"step_deg", c.sweep.step_deg}};
  j["grasp_window"] = {{"close_deg", c.grasp.close_deg}, {"open_deg", c.grasp.open_deg}};
  j["outputs"] = {{"synthesis_report", c.outputs.synthesis_report},
                  {"sizing_csv", c.outputs.sizing_csv},
                  {"sweep_csv", c.outputs.sweep_csv},
                  {"svg", c.outputs.svg},
                  {"reproduce_report", c.outputs.reproduce_report},
                  {"effective_config", c.outputs.effective_config}};
  return j;
}

Pipeline run_synthesis(const ToolConfig& config) {
  return {dim_synth::synthesize_loop(config.synthesis_config(1)),
          dim_synth::synthesize_loop(config.synthesis_config(2))};
}

sim::SixBarGripper build_gripper(const ToolConfig& config, const Pipeline& pipeline) {
  sim::SixBarGripper g;
  g.loop1 = pipeline.loop1.loop;
  g.loop2 = pipeline.loop2.loop;
  const auto& ov = config.loop_overrides;
  const auto apply = [&](const char* name, double& field) {
    if (auto it = ov.find(name); it != ov.end()) field = it->second;
  };
  apply("a", g.loop1.input);
  apply("a", g.loop2.input);
  apply("d", g.loop1.ground);
  apply("d", g.loop2.ground);
  apply("b", g.loop1.coupler);
  apply("c", g.loop1.output);
  apply("e", g.loop2.coupler);
  apply("f", g.loop2.output);
  g.scale_factor = config.scale_factor;
  g.seed_output_deg = config.table.zero_error_point().desired_output_deg;
  return g;
}

std::vector<beam::SizingRow> run_sizing(const ToolConfig& config, const Pipeline& pipeline) {
  const sim::SixBarGripper g = build_gripper(config, pipeline);
  const std::map<std::string, double> lengths_mm = {
      {"a", g.loop1.input * config.scale_factor},   {"b", g.loop1.coupler * config.scale_factor},
      {"c", g.loop1.output * config.scale_factor},  {"d", g.loop1.ground * config.scale_factor},
      {"e", g.loop2.coupler * config.scale_factor}, {"f", g.loop2.output * config.scale_factor}};

  std::vector<beam::LinkLength> links;
  for (const auto& name : config.beam.links) {
    double length = lengths_mm.at(name);
    if (auto it = config.beam.length_overrides_mm.find(name);
        it != config.beam.length_overrides_mm.end()) {
      length = it->second;
    }
    links.push_back({name, length});
  }
  beam::SizingDefaults d;
  d.density_kg_m3 = config.beam.density_kg_m3;
  d.tip_load_n = config.beam.tip_load_n;
  d.allowable_stress_pa = config.beam.allowable_stress_pa;
  d.beam_width_m = config.beam.beam_width_m;
  d.hole_diameter_mm = config.beam.hole_diameter_mm;
  d.width_ratio = config.beam.width_ratio;
  d.reference_thickness_mm = config.beam.reference_thickness_mm;
  return beam::size_all_links(std::move(links), d);
}

int cmd_enumerate(int links, int dof, std::ostream& out, std::ostream& err) {
  if (links <= 0 || dof <= 0) {
    err << "usage: enumerate --links L --dof M (positive integers)\n";
    return kConfigError;
  }
  const auto rows = number_synthesis::enumerate_compositions({links, dof});
  out << "L=" << links << " M=" << dof << ": " << rows.size() << " composition(s)\n";
  out << std::setw(4) << 'B' << std::setw(4) << 'T' << std::setw(4) << 'Q' << std::setw(4) << 'P'
      << std::setw(4) << 'H' << '\n';
  for (const auto& r : rows) {
    out << std::setw(4) << r.binary << std::setw(4) << r.ternary << std::setw(4) << r.quaternary
        << std::setw(4) << r.pentagonal << std::setw(4) << r.hexagonal << '\n';
  }
  return kSuccess;
}

int cmd_synthesize(const ToolConfig& config, const RunOptions& run, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    ensure_out_dir(run);
    const Pipeline p = run_synthesis(config);
    ordered_json doc = header(run.stamp);
    doc["loops"] = {dim_synth::to_json(p.loop1, config.synthesis_config(1)),
                    dim_synth::to_json(p.loop2, config.synthesis_config(2))};
    write_json(run.out_dir / config.outputs.synthesis_report, doc);
    write_effective_config(config, run);
    for (const auto* r : {&p.loop1, &p.loop2}) {
      const auto [cn, on] = dim_synth::link_names(r->loop.loop_id);
      out << "loop " << r->loop.loop_id << ": a=" << fixed6(r->loop.input) << ' ' << cn << '='
          << fixed6(r->loop.coupler) << ' ' << on << '=' << fixed6(r->loop.output)
          << " d=" << fixed6(r->loop.ground) << '\n';
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_size(const ToolConfig& config, const RunOptions& run, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    ensure_out_dir(run);
    const Pipeline p = run_synthesis(config);
    const std::string csv = beam::sizing_csv(run_sizing(config, p));
    write_file_atomic(run.out_dir / config.outputs.sizing_csv, csv);
    write_effective_config(config, run);
    out << csv;
    return static_cast<int>(kSuccess);
  });
}

int cmd_simulate(const ToolConfig& config, const RunOptions& run, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    ensure_out_dir(run);
    const Pipeline p = run_synthesis(config);
    const sim::SixBarGripper g = build_gripper(config, p);
    const auto states = sim::sweep(g, config.sweep.start_deg, config.sweep.end_deg,
                                   config.sweep.step_deg);
    const auto window = sim::grasp_window(states, config.grasp.open_deg, config.grasp.close_deg);
    std::vector<sim::JawState> assembled;
    std::copy_if(states.begin(), states.end(), std::back_inserter(assembled),
                 [](const sim::JawState& s) { return s.assembled(); });

    write_file_atomic(run.out_dir / config.outputs.sweep_csv, sim::sweep_csv(states, window));
    write_effective_config(config, run);
    out << states.size() << " states, " << assembled.size() << " assembled, " << window.count
        << " in grasp window [" << fixed6(window.close_deg) << ", " << fixed6(window.open_deg)
        << "]\n";
    if (assembled.empty()) {
      err << "error: no swept state assembles\n";
      return static_cast<int>(kNoAssembly);
    }
    sim::export_svg(g, assembled, run.out_dir / config.outputs.svg);
    return static_cast<int>(kSuccess);
  });
}

ordered_json reproduction_report(bool stamp) {
  const ToolConfig config;
  ordered_json checks = ordered_json::array();
  int matches = 0;
  int deviations = 0;

  const auto record = [&](const std::string& id, const ordered_json& computed,
                          const ordered_json& reference, const std::string& tolerance_kind,
                          double tolerance, bool ok) {
    ordered_json c;
    c["id"] = id;
    c["computed"] = computed;
    c["reference"] = reference;
    c["tolerance_kind"] = tolerance_kind;
    c["tolerance"] = tolerance;
    c["status"] = ok ? "match" : "deviation";
    (ok ? matches : deviations)++;
    checks.push_back(c);
  };
  const auto scalar = [&](const std::string& id, double computed, double reference,
                          const std::string& kind, double tol) {
    const double err = kind == "relative" ? std::abs(computed - reference) / std::abs(reference)
                                          : std::abs(computed - reference);
    record(id, computed, reference, kind, tol, std::isfinite(computed) && err <= tol);
  };

  // Number synthesis.
  {
    const auto rows = number_synthesis::enumerate_compositions({6, 1});
    ordered_json computed = ordered_json::array();
    for (const auto& r : rows) {
      computed.push_back({r.binary, r.ternary, r.quaternary, r.pentagonal, r.hexagonal});
    }
    // Compared as sets; enumeration order is lexicographic in (T, Q, P, H).
    const ordered_json reference = {{5, 0, 1, 0, 0}, {4, 2, 0, 0, 0}};
    std::set<std::vector<int>> got;
    std::set<std::vector<int>> want;
    for (const auto& row : computed) got.insert(row.get<std::vector<int>>());
    for (const auto& row : reference) want.insert(row.get<std::vector<int>>());
    record("number_synthesis.compositions_L6_M1", computed, reference, "exact", 0.0,
           got == want && computed.size() == reference.size());
  }

  ordered_json notes;
  try {
    const Pipeline p = run_synthesis(config);
    scalar("dimensional.quadratic_coefficient", p.loop1.coefficients.quadratic, 0.029362689,
           "relative", 1e-3);
    scalar("dimensional.linear_coefficient", p.loop1.coefficients.linear, 0.523816599,
           "relative", 1e-3);
    {
      const std::vector<double> reference = {-1.0, 2.0, 1.0};
      const auto& w = p.loop1.gp.weights;
      bool ok = w.size() == reference.size();
      for (std::size_t i = 0; ok && i < w.size(); ++i) ok = std::abs(w[i] - reference[i]) <= 1e-12;
      record("dimensional.dual_weights", w, reference, "absolute", 1e-12, ok);
    }
    scalar("dimensional.dual_prefactor", p.loop1.gp.dual.prefactor, -7.0081, "relative", 1e-3);
    scalar("loop1.a", p.loop1.loop.input, 1.0, "absolute", 1e-3);
    scalar("loop1.b", p.loop1.loop.coupler, 3.9689, "absolute", 1e-3);
    scalar("loop1.c", p.loop1.loop.output, 0.1122, "absolute", 1e-3);
    scalar("loop1.d", p.loop1.loop.ground, 3.0, "absolute", 1e-3);
    scalar("loop2.a", p.loop2.loop.input, 1.0, "absolute", 1e-3);
    scalar("loop2.e", p.loop2.loop.coupler, 3.9689, "absolute", 1e-3);
    scalar("loop2.f", p.loop2.loop.output, 0.1122, "absolute", 1e-3);
    scalar("loop2.d", p.loop2.loop.ground, 3.0, "absolute", 1e-3);

    scalar("beam.width_mm", beam::width_for_hole(config.beam.hole_diameter_mm,
                                                 config.beam.width_ratio),
           26.66, "absolute", 1e-9);
    {
      beam::BeamSpec spec;
      const auto t = beam::solve_thickness(spec);
      const std::vector<double> reference = {2.0 / 3.0, 1.0 / 3.0};
      const auto& w = t.gp.weights;
      const bool ok = std::abs(w[0] - reference[0]) <= 1e-12 && std::abs(w[1] - reference[1]) <= 1e-12;
      record("thickness.dual_weights", w, reference, "absolute", 1e-12, ok);
      notes["thickness_term_balance_mm"] = t.thickness_m * 1000.0;
      notes["thickness_factor_balance_mm"] = t.factor_balance_thickness_m * 1000.0;
      notes["thickness_mass_coefficient"] = t.mass_coefficient;
      notes["thickness_stress_coefficient"] = t.stress_coefficient;
    }
    for (const auto& row : run_sizing(config, p)) {
      if (!row.thickness_reference_mm) continue;
      scalar("thickness." + row.link + "_mm", row.thickness_computed_mm, *row.thickness_reference_mm,
             "relative", 1e-2);
    }

    const sim::SixBarGripper g = build_gripper(config, p);
    const auto states = sim::sweep(g, config.sweep.start_deg, config.sweep.end_deg,
                                   config.sweep.step_deg);
    const auto window = sim::grasp_window(states, config.grasp.open_deg, config.grasp.close_deg);
    notes["sweep_states"] = states.size();
    notes["sweep_states_in_grasp_window"] = window.count;
    notes["synthesis_diagnostics"] = p.loop1.diagnostics;
  } catch (const Error& e) {
    record("pipeline", e.what(), "completed", "exact", 0.0, false);
  }

  ordered_json doc = header(stamp);
  doc["checks"] = checks;
  doc["summary"] = {{"match", matches}, {"deviation", deviations}};
  doc["notes"] = notes;
  return doc;
}

int cmd_reproduce(const RunOptions& run, std::ostream& out, std::ostream& err) {
  const ordered_json doc = reproduction_report(run.stamp);
  const std::string text = doc.dump(2) + "\n";
  out << text;
  try {
    ensure_out_dir(run);
    write_file_atomic(run.out_dir / OutputNames{}.reproduce_report, text);
  } catch (const Error& e) {
    err << "warning: " << e.what() << '\n';
  }
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Six-bar gripper linkage synthesis toolkit", "sixbar"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  bool stamp = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--stamp", stamp, "Include the tool version in reports");

  int links = 0;
  int dof = 0;
  auto* enumerate = app.add_subcommand("enumerate", "List link compositions for L links and M dof");
  enumerate->add_option("--links", links, "Number of links")->required();
  enumerate->add_option("--dof", dof, "Degrees of freedom")->required();
  auto* synthesize = app.add_subcommand("synthesize", "Dimensional synthesis of both loops");
  auto* size = app.add_subcommand("size", "Link width and thickness sizing");
  auto* simulate = app.add_subcommand("simulate", "Sweep the input angle, write CSV and SVG");
  auto* reproduce = app.add_subcommand("reproduce", "Compare every stage against reference values");
  for (auto* sub : {synthesize, size, simulate, reproduce}) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--stamp", stamp, "Include the tool version in reports");
  }

  std::vector<std::string> argv_storage;
  argv_storage.emplace_back("sixbar");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kConfigError;
  }

  if (*enumerate) return cmd_enumerate(links, dof, out, err);

  const RunOptions opts{out_dir, stamp};
  if (*reproduce) return cmd_reproduce(opts, out, err);

  ToolConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (*synthesize) return cmd_synthesize(config, opts, out, err);
  if (*size) return cmd_size(config, opts, out, err);
  return cmd_simulate(config, opts, out, err);
}

}  // namespace sixbar::cli
