"""Lagrangian laboratory for Camassa-Holm-type equations."""

from ._chlab import (
    BreakdownError,
    InvalidArgument,
    NonFiniteError,
    __version__,
    besov_norm,
    conv_dp,
    conv_p,
    eulerian_integrate,
    exp_scans,
    grid_points,
    hamiltonian,
    peakon_integrate,
    picard,
    run_cli,
    simulate,
    suggested_T,
    w1inf_demo,
)

__all__ = [
    "BreakdownError",
    "InvalidArgument",
    "NonFiniteError",
    "__version__",
    "besov_norm",
    "conv_dp",
    "conv_p",
    "eulerian_integrate",
    "exp_scans",
    "grid_points",
    "hamiltonian",
    "peakon_integrate",
    "picard",
    "run_cli",
    "simulate",
    "suggested_T",
    "w1inf_demo",
]
