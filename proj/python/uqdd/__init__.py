"""Steady diffusion with a lognormal random coefficient.

Domain-decomposed stochastic basis adaptation: sparse-grid collocation in the
full input dimension, or per-subdomain reduced dimensions after an isometric
change of stochastic variables.
"""

from ._uqdd import (
    AdaptedStudy,
    Bc,
    Grid,
    RandomField,
    RunResult,
    basis_size,
    lognormal_params,
    node_count,
    run_adapted,
    run_full,
    run_mc,
    solve_diffusion,
    sparse_grid,
)

__all__ = [
    "AdaptedStudy",
    "Bc",
    "Grid",
    "RandomField",
    "RunResult",
    "basis_size",
    "lognormal_params",
    "node_count",
    "run_adapted",
    "run_full",
    "run_mc",
    "solve_diffusion",
    "sparse_grid",
]
