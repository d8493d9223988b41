#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sixbar/beam_sizing.hpp"
#include "sixbar/cli.hpp"
#include "sixbar/dim_synth.hpp"
#include "sixbar/error.hpp"
#include "sixbar/fourbar.hpp"
#include "sixbar/number_synthesis.hpp"
#include "sixbar/sixbar_sim.hpp"

namespace py = pybind11;
using namespace sixbar;

namespace {

fourbar::PrecisionTable make_table(const std::vector<std::pair<double, double>>& points,
                                   std::size_t zero_error_index) {
  fourbar::PrecisionTable t;
  for (const auto& [in, out] : points) t.points.push_back({in, out});
  t.zero_error_index = zero_error_index;
  return t;
}

py::dict loop_dict(const fourbar::FourBarLoop& l) {
  const auto [coupler, output] = dim_synth::link_names(l.loop_id);
  py::dict d;
  d["a"] = l.input;
  d[coupler.c_str()] = l.coupler;
  d[output.c_str()] = l.output;
  d["d"] = l.ground;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Six-bar gripper synthesis core";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<Error>(m, "SixbarError", PyExc_RuntimeError);

  m.def(
      "enumerate_compositions",
      [](int links, int dof) {
        std::vector<std::tuple<int, int, int, int, int>> out;
        for (const auto& c : number_synthesis::enumerate_compositions({links, dof}))
          out.emplace_back(c.binary, c.ternary, c.quaternary, c.pentagonal, c.hexagonal);
        return out;
      },
      py::arg("links"), py::arg("dof"),
      "Link compositions (B, T, Q, P, H) for a link count and degree of freedom.");

  m.def("gruebler_dof", &number_synthesis::gruebler_dof, py::arg("links"), py::arg("joints"));

  m.def(
      "closure_residual",
      [](double a, double b, double c, double d, double theta2, double theta4) {
        return fourbar::closure_residual({a, b, c, d}, theta2, theta4);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("theta2_deg"),
      py::arg("theta4_deg"));

  m.def(
      "solve_output_angle",
      [](double a, double b, double c, double d, double theta2, std::optional<double> hint) {
        return fourbar::solve_output_angle({a, b, c, d}, theta2, hint);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("theta2_deg"),
      py::arg("hint_deg") = py::none(),
      "Output angle in degrees closing the loop, or None when it cannot be assembled.");

  m.def(
      "objective_coefficients",
      [](const std::vector<std::pair<double, double>>& points, std::size_t zero_error_index) {
        const auto c = dim_synth::build_objective_coefficients(make_table(points, zero_error_index));
        return std::make_pair(c.quadratic, c.linear);
      },
      py::arg("points"), py::arg("zero_error_index"),
      "(quadratic, linear) coefficients of the squared structural-error objective.");

  m.def(
      "reference_table",
      [] {
        std::vector<std::pair<double, double>> out;
        const auto t = fourbar::gripper_reference_table();
        for (const auto& p : t.points) out.emplace_back(p.input_deg, p.desired_output_deg);
        return std::make_pair(out, t.zero_error_index);
      },
      "(points, zero_error_index) of the reference gripper table.");

  m.def(
      "synthesize_loop",
      [](double ad_ratio_bound, int loop_id) {
        dim_synth::SynthesisConfig cfg;
        cfg.ad_ratio_bound = ad_ratio_bound;
        cfg.loop_id = loop_id;
        const auto r = dim_synth::synthesize_loop(cfg);
        py::dict d;
        d["lengths"] = loop_dict(r.loop);
        d["weights"] = r.gp.weights;
        d["dual_prefactor"] = r.gp.dual.prefactor;
        d["constraint_value"] = r.constraint_value;
        d["structural_errors"] = r.structural_errors;
        d["diagnostics"] = r.diagnostics;
        return d;
      },
      py::arg("ad_ratio_bound") = 3.0, py::arg("loop_id") = 1,
      "Dimensional synthesis of one loop on the reference table.");

  m.def(
      "solve_thickness",
      [](double density, double length, double width, double load, double stress) {
        const auto r = beam::solve_thickness({density, length, width, load, stress});
        py::dict d;
        d["thickness_m"] = r.thickness_m;
        d["mass_coefficient"] = r.mass_coefficient;
        d["stress_coefficient"] = r.stress_coefficient;
        d["weights"] = r.gp.weights;
        d["dual_value"] = r.gp.dual.prefactor;
        d["factor_balance_thickness_m"] = r.factor_balance_thickness_m;
        return d;
      },
      py::arg("density_kg_m3") = 1430.0, py::arg("length_m") = 0.1, py::arg("width_m") = 0.026,
      py::arg("tip_load_n") = 4.0, py::arg("allowable_stress_pa") = beam::kDefaultAllowableStressPa);

  m.def("width_for_hole", &beam::width_for_hole, py::arg("hole_diameter"),
        py::arg("ratio") = beam::kDefaultWidthRatio);

  m.def(
      "sweep_default_gripper",
      [](double start, double end, double step) {
        const cli::ToolConfig cfg;
        const auto g = cli::build_gripper(cfg, cli::run_synthesis(cfg));
        std::vector<std::tuple<double, std::optional<double>, std::optional<double>>> out;
        for (const auto& s : sim::sweep(g, start, end, step))
          out.emplace_back(s.theta2_deg, s.theta4_deg, s.theta6_deg);
        return out;
      },
      py::arg("start_deg") = 0.0, py::arg("end_deg") = 30.0, py::arg("step_deg") = 5.0,
      "(theta2, theta4, theta6) per state for the synthesized gripper.");

  m.def(
      "reproduction_report_json", [](bool stamp) { return cli::reproduction_report(stamp).dump(2); },
      py::arg("stamp") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process: (exit_code, stdout, stderr).");
}
