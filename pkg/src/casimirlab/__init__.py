"""Numerical laboratory for fluctuation-induced forces between walls
immersed in a gas of annihilating Brownian particles with pairwise
immigration.

The package computes the expected force on a pair of walls three ways:
closed-form expressions, independent PDE / series oracles, and direct
stochastic simulation of the underlying lattice model, and cross-checks
the routes against each other.
"""

__version__ = "0.1.0"

from .closed_form import (
    DensityProfile,
    force_absorbing,
    force_absorbing_flux_limit,
    force_reflecting,
)
from .lattice import SimEstimate, SimParams, force_estimator, measure_parity, simulate
from .model import (
    Boundary,
    CasimirError,
    ForceResult,
    InvalidParameter,
    Method,
    ModelParams,
    NonPositiveBeta,
    NonPositiveL,
    OutOfDomain,
    WrongMode,
    validate,
)
from .pde import absorbing_force_oracle, reflecting_force_oracle
from .verify import VerifyReport, run_suite

__all__ = [
    "Boundary",
    "CasimirError",
    "DensityProfile",
    "ForceResult",
    "InvalidParameter",
    "Method",
    "ModelParams",
    "NonPositiveBeta",
    "NonPositiveL",
    "OutOfDomain",
    "SimEstimate",
    "SimParams",
    "VerifyReport",
    "WrongMode",
    "absorbing_force_oracle",
    "force_absorbing",
    "force_absorbing_flux_limit",
    "force_estimator",
    "force_reflecting",
    "measure_parity",
    "reflecting_force_oracle",
    "run_suite",
    "simulate",
    "validate",
    "__version__",
]
