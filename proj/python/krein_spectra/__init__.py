"""Krein buckling spectra, eigenvalue counts and the bounds they are compared with."""

from ._core import (
    Domain,
    KreinError,
    NumericalError,
    Problem,
    ValidationError,
    bound_constant_numeric,
    krein_bound,
    krein_constant,
    laptev_constant,
    laptev_friedrichs_bound,
    minimization_objective,
    oracle_1d_krein,
    run_config,
    unit_ball_volume,
    weyl_leading,
)

__all__ = [
    "Domain",
    "KreinError",
    "NumericalError",
    "Problem",
    "ValidationError",
    "bound_constant_numeric",
    "krein_bound",
    "krein_constant",
    "laptev_constant",
    "laptev_friedrichs_bound",
    "minimization_objective",
    "oracle_1d_krein",
    "run_config",
    "unit_ball_volume",
    "weyl_leading",
]

__version__ = "0.1.0"
