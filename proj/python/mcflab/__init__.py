"""Translating-soliton laboratory for graphical mean curvature flow.

Thin wrapper over the compiled extension; all numerics live in C++.
"""

from ._mcflab import (
    bowl,
    build_wings,
    catenoid_static_residual,
    eval_tail,
    integrate_phi,
    origin_coefficients,
    quadratic_growth_check,
    run_plane_stability,
    run_soliton_stability,
    tail_coefficients,
    tail_coefficients_symbolic,
    translator_residual,
)

__all__ = [
    "bowl",
    "build_wings",
    "catenoid_static_residual",
    "eval_tail",
    "integrate_phi",
    "origin_coefficients",
    "quadratic_growth_check",
    "run_plane_stability",
    "run_soliton_stability",
    "tail_coefficients",
    "tail_coefficients_symbolic",
    "translator_residual",
]
