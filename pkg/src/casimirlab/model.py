"""Shared parameter types, boundary modes, and validation.

Every other module consumes :class:`ModelParams` and produces or checks
:class:`ForceResult` records, so the conventions live here: ``beta`` is the
pair-immigration intensity (units 1/time), ``L`` the wall separation (units
length), and the momentum-transfer constant relating absorbed particles to
force is fixed at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveBeta(CasimirError):
    """Immigration intensity must be a positive finite real."""


class NonPositiveL(CasimirError):
    """Wall separation must be a positive finite real."""


class InvalidParameter(CasimirError):
    """A parameter is structurally invalid (wrong type, wrong range)."""


class OutOfDomain(CasimirError):
    """An evaluation point lies outside the domain of the formula."""


class WrongMode(CasimirError):
    """Operation called with an incompatible boundary mode."""


class Boundary(Enum):
    """Wall behaviour: particles bounce back or are removed."""

    REFLECTING = "reflecting"
    ABSORBING = "absorbing"


class Method(Enum):
    """Provenance of a force value."""

    CLOSED_FORM = "closed-form"
    PDE_ORACLE = "pde-oracle"
    SIMULATION = "simulation"
    FLUX_LIMIT = "flux-limit"


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters shared by all modules.

    Attributes
    ----------
    beta : float
        Pairwise immigration intensity, > 0.
    L : float
        Wall separation, > 0.
    boundary : Boundary
        Wall mode for the inside region.
    """

    beta: float
    L: float
    boundary: Boundary = Boundary.REFLECTING

    @property
    def kappa_reflecting(self) -> float:
        """Decay rate sqrt(2 beta) of interval parities."""
        return math.sqrt(2.0 * self.beta)

    @property
    def kappa_absorbing(self) -> float:
        """Decay rate sqrt(8 beta) of the absorbed-flux force."""
        return math.sqrt(8.0 * self.beta)


@dataclass(frozen=True)
class ForceResult:
    """A force value together with how it was obtained.

    ``uncertainty`` is None for deterministic evaluations and a one-sigma
    estimate for statistical or extrapolated ones.
    """

    value: float
    mode: Boundary
    method: Method
    uncertainty: float | None = None

    def __post_init__(self) -> None:
        if self.uncertainty is not None and not self.uncertainty >= 0.0:
            raise InvalidParameter("uncertainty must be nonnegative")
        # Closed-form forces are attractive; a negative value means a bug.
        if self.method is Method.CLOSED_FORM and not self.value >= 0.0:
            raise InvalidParameter("closed-form force must be nonnegative")


def validate(params: ModelParams) -> ModelParams:
    """Check invariants and return ``params`` unchanged.

    Raises
    ------
    NonPositiveBeta
        If beta is not a positive finite real (NaN and inf rejected).
    NonPositiveL
        If L is not a positive finite real.
    InvalidParameter
        If boundary is not a :class:`Boundary`.
    """
    beta, L = params.beta, params.L
    if not isinstance(beta, (int, float)) or not math.isfinite(beta) or beta <= 0:
        raise NonPositiveBeta(f"beta must be finite and > 0, got {beta!r}")
    if not isinstance(L, (int, float)) or not math.isfinite(L) or L <= 0:
        raise NonPositiveL(f"L must be finite and > 0, got {L!r}")
    if not isinstance(params.boundary, Boundary):
        raise InvalidParameter(f"boundary must be a Boundary, got {params.boundary!r}")
    return params
