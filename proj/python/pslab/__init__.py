"""Symmetric decreasing rearrangement toolkit.

Exact extremal families (cone-frustrum, staircase, devil's staircase),
grid rearrangement operators, energy functionals, and verifiers for the
quantitative stability bounds. All heavy lifting happens in the C++
extension; this package only re-exports it.
"""

from ._core import (
    ExtremalSpec,
    GridField,
    YoungFunction,
    ball_symdiff_volume,
    build_extremal,
    cone_frustrum,
    devils_staircase,
    dilate,
    dirichlet_functional,
    gradient_norm_lp,
    kn_constant,
    load_field,
    lq_norm,
    optimal_translation,
    psi_distance,
    rearrange,
    run_scenario,
    save_field,
    stability_gap_lq,
    stability_gap_sup,
    staircase,
    symdiff_bound,
    translate,
    unit_ball_volume,
    verify_cf_bound,
    verify_coarea_bound,
    verify_corollary_finite,
    verify_corollary_young,
    verify_density_bound,
    verify_theorem_finite,
    verify_theorem_main,
    verify_theorem_morrey,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
