"""Python bindings for the six-bar gripper synthesis toolkit."""

import json as _json

from ._core import (
    SixbarError,
    reproduction_report_json as _report_json,
    __version__,
    closure_residual,
    enumerate_compositions,
    gruebler_dof,
    objective_coefficients,
    reference_table,
    run_cli,
    solve_output_angle,
    solve_thickness,
    sweep_default_gripper,
    synthesize_loop,
    width_for_hole,
)


def reproduction_report(stamp: bool = False) -> dict:
    """Comparison of computed values against the published reference values."""
    return _json.loads(_report_json(stamp))

__all__ = [
    "SixbarError",
    "__version__",
    "closure_residual",
    "enumerate_compositions",
    "gruebler_dof",
    "objective_coefficients",
    "reference_table",
    "reproduction_report",
    "run_cli",
    "solve_output_angle",
    "solve_thickness",
    "sweep_default_gripper",
    "synthesize_loop",
    "width_for_hole",
]
