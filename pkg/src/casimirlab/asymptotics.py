"""Large-separation decay laws fitted from the closed-form forces.

For widely separated walls the force decays exponentially, with decay rate
sqrt(2 beta) for reflecting walls and sqrt(8 beta) with an extra 1/sqrt(L)
prefactor for absorbing walls.  This module regresses the closed-form values
against ``log F = a + p log L - kappa L`` and exposes the saddle data of the
underlying Laplace-type integral.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .closed_form import force_absorbing, force_reflecting
from .model import (
    Boundary,
    CasimirError,
    InvalidParameter,
    ModelParams,
    NonPositiveBeta,
    OutOfDomain,
    WrongMode,
    validate,
)

__all__ = [
    "ForceUnderflow",
    "AsymptoticFit",
    "default_grid",
    "fit_decay",
    "saddle_point",
]

# Grids start where the decaying exponential dominates; the asymptotic regime
# requires L * sqrt(2 beta) >= 3 before a fit is meaningful.
_REGIME_THRESHOLD = 3.0
_UNDERFLOW_FLOOR = 1e-300


class ForceUnderflow(CasimirError):
    """A closed-form force value underflowed below 1e-300."""


@dataclass(frozen=True)
class AsymptoticFit:
    """Result of regressing log-force against separation.

    ``slope`` is the fitted decay rate kappa, ``prefactor_exponent`` the
    power of L multiplying the exponential (fixed or fitted), and
    ``residual`` the largest absolute log-space misfit over the grid.
    """

    mode: Boundary
    L_grid: tuple[float, ...]
    slope: float
    prefactor_exponent: float
    residual: float

    def __post_init__(self) -> None:
        grid = tuple(float(L) for L in self.L_grid)
        if len(grid) < 4:
            raise InvalidParameter("L_grid must hold at least 4 separations")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidParameter("L_grid must be strictly increasing")
        if not (self.residual >= 0.0 and math.isfinite(self.residual)):
            raise InvalidParameter("residual must be a nonnegative real")
        object.__setattr__(self, "L_grid", grid)


def default_grid(mode: Boundary) -> tuple[float, ...]:
    """Separation grid deep enough in the tail for a clean linear fit."""
    if mode is Boundary.REFLECTING:
        return (5.0, 6.0, 7.0, 8.0)
    if mode is Boundary.ABSORBING:
        return (5.0, 6.0, 7.0, 8.0)
    raise InvalidParameter("mode must be a Boundary value")


def _force_value(params: ModelParams) -> float:
    if params.boundary is Boundary.REFLECTING:
        return force_reflecting(params).value
    # At large separations the absorbing integrals individually shrink to the
    # quadrature roundoff floor, where the default relative tolerance cannot
    # be certified.  The fit needs far less accuracy than the default, so ask
    # for 1e-10; log-force errors stay orders below the fit residual.
    return force_absorbing(params, tol=1e-10).value


def fit_decay(
    mode: Boundary,
    params: ModelParams,
    L_grid: tuple[float, ...] | None = None,
    fit_prefactor_exponent: bool = False,
) -> AsymptoticFit:
    """Fit the decay rate of the closed-form force over a separation grid.

    Parameters
    ----------
    mode
        Boundary mode; must match ``params.boundary``.
    params
        Model parameters; ``params.L`` is ignored, the grid supplies the
        separations.
    L_grid
        Strictly increasing separations, at least 4, all satisfying
        ``L * sqrt(2 beta) >= 3``.  Defaults to :func:`default_grid`.
    fit_prefactor_exponent
        When false the power of L is pinned to its theoretical value, 0 for
        reflecting and -1/2 for absorbing, and only the intercept and decay
        rate are fitted.  When true the power is fitted as a third parameter,
        which serves as a diagnostic that the pinned value is recovered.

    Returns
    -------
    AsymptoticFit
        Fitted decay rate (``slope``), the prefactor exponent used or
        fitted, and the largest absolute log-space residual.

    Raises
    ------
    OutOfDomain
        If any grid separation is below the asymptotic regime threshold.
    ForceUnderflow
        If a closed-form force value drops below 1e-300.
    """
    if not isinstance(mode, Boundary):
        raise InvalidParameter("mode must be a Boundary value")
    validate(params)
    if params.boundary is not mode:
        raise WrongMode(f"params are {params.boundary.value}, fit asked for {mode.value}")
    grid = default_grid(mode) if L_grid is None else tuple(float(L) for L in L_grid)
    if len(grid) < 4:
        raise InvalidParameter("L_grid must hold at least 4 separations")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameter("L_grid must be strictly increasing")
    threshold = params.kappa_reflecting
    for L in grid:
        if L * threshold < _REGIME_THRESHOLD:
            raise OutOfDomain(
                f"L={L} lies below the asymptotic regime L*sqrt(2 beta) >= 3"
            )

    separations = np.array(grid)
    values = np.empty(separations.size)
    for k, L in enumerate(grid):
        value = _force_value(dataclasses.replace(params, L=L))
        if value < _UNDERFLOW_FLOOR:
            raise ForceUnderflow(f"force at L={L} underflowed ({value!r})")
        values[k] = value
    log_force = np.log(values)

    pinned = 0.0 if mode is Boundary.REFLECTING else -0.5
    if fit_prefactor_exponent:
        design = np.column_stack(
            (np.ones_like(separations), -separations, np.log(separations))
        )
        coeffs, *_ = np.linalg.lstsq(design, log_force, rcond=None)
        exponent = float(coeffs[2])
    else:
        design = np.column_stack((np.ones_like(separations), -separations))
        coeffs, *_ = np.linalg.lstsq(
            design, log_force - pinned * np.log(separations), rcond=None
        )
        exponent = pinned
    slope = float(coeffs[1])
    fitted = design @ coeffs
    target = log_force if fit_prefactor_exponent else log_force - pinned * np.log(separations)
    residual = float(np.max(np.abs(fitted - target)))
    return AsymptoticFit(
        mode=mode,
        L_grid=grid,
        slope=slope,
        prefactor_exponent=exponent,
        residual=residual,
    )


def saddle_point(beta: float) -> tuple[float, float]:
    """Minimizer and minimum of ``phi(u) = 4 beta u + 1 / u`` on (0, inf).

    The exponential decay rate of the absorbing force comes from this
    minimum: ``phi(u_c) = 4 sqrt(beta)`` at ``u_c = 1 / sqrt(4 beta)``.
    """
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise NonPositiveBeta("beta must be a positive finite real")
    u_critical = 1.0 / math.sqrt(4.0 * beta)
    return u_critical, 4.0 * math.sqrt(beta)
