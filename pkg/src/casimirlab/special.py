"""Jacobi theta evaluation with certified truncation error.

Everything heat-kernel shaped in this package funnels through the theta
series

    theta(z, tau) = sum_{n in Z} exp(i pi n^2 tau + 2 pi i n z),

with tau in the open upper half plane.  The series converges rapidly
when Im tau is large and very slowly when it is small, and the modular
transformation swaps those two regimes.  ``theta`` selects the fast
branch automatically, keeps a compensated running sum, and truncates
only once a geometric envelope certifies the requested absolute error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from scipy.special import erf as _scipy_erf

from .model import CasimirError, InvalidParameter

__all__ = [
    "NonConvergence",
    "TauNotInUpperHalfPlane",
    "ThetaArgument",
    "ThetaBranch",
    "ThetaTailBound",
    "erf",
    "theta",
    "theta_modular",
    "theta_tail",
]

# Hard cap on summed exponentials before the evaluation is abandoned.
_MAX_TERMS = 10_000

# Auto switches to the modular transform strictly below this Im tau.
_MODULAR_THRESHOLD = 1.0


class TauNotInUpperHalfPlane(CasimirError):
    """Raised when tau is not a finite point with Im tau > 0."""


class NonConvergence(CasimirError):
    """Raised when the theta series cannot reach the tolerance."""


class ThetaBranch(Enum):
    """Summation strategy for the theta series."""

    DIRECT_SERIES = "direct-series"
    MODULAR_TRANSFORM = "modular-transform"
    AUTO = "auto"


@dataclass(frozen=True)
class ThetaArgument:
    """Point (z, tau) at which the theta series is evaluated.

    Parameters
    ----------
    z : complex
        Elliptic argument.  Must be finite.
    tau : complex
        Lattice parameter.  Must be finite with Im tau > 0.
    branch : ThetaBranch
        Requested strategy.  AUTO sums directly when Im tau >= 1 and
        goes through the modular transformation otherwise.
    """

    z: complex
    tau: complex
    branch: ThetaBranch = ThetaBranch.AUTO

    def __post_init__(self) -> None:
        try:
            z = complex(self.z)
            tau = complex(self.tau)
        except (TypeError, ValueError) as exc:
            raise InvalidParameter(f"z and tau must be numbers: {exc}") from exc
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise InvalidParameter(f"z must be finite, got {self.z!r}")
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)):
            raise TauNotInUpperHalfPlane(f"tau must be finite, got {self.tau!r}")
        if tau.imag <= 0.0:
            raise TauNotInUpperHalfPlane(
                f"tau must satisfy Im tau > 0, got {self.tau!r}"
            )
        if not isinstance(self.branch, ThetaBranch):
            raise InvalidParameter(
                f"branch must be a ThetaBranch member, got {self.branch!r}"
            )
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "tau", tau)


@dataclass(frozen=True)
class ThetaTailBound:
    """Certified upper bound on the tail sum_{n >= 2} exp(-n^2 / u).

    The invariant 0 <= bound <= 1 / (1 - exp(-4/u)) keeps the bound on
    the scale of the first neglected term and rejects garbage values.
    """

    u: float
    bound: float

    def __post_init__(self) -> None:
        if not _is_positive_finite(self.u):
            raise InvalidParameter(f"u must be finite and positive, got {self.u!r}")
        cap = 1.0 / -math.expm1(-4.0 / self.u)
        if not (0.0 <= self.bound <= cap):
            raise InvalidParameter(
                f"bound {self.bound!r} outside [0, {cap!r}] for u={self.u!r}"
            )


def _is_positive_finite(x: object) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x) and x > 0


def _kahan_step(
    total: complex, comp: complex, term: complex
) -> tuple[complex, complex]:
    # Kahan compensation applied componentwise through complex addition.
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def _modular_data(z: complex, tau: complex) -> tuple[complex, complex, complex]:
    """Transformed argument and log prefactor of the modular identity."""
    # Re(-i tau) = Im tau > 0, so the principal log never hits the cut.
    taup = -1.0 / tau
    zp = z / tau
    log_pref = -0.5 * cmath.log(-1j * tau) - 1j * math.pi * z * z / tau
    return zp, taup, log_pref


def _sum_series(z: complex, tau: complex, log_pref: complex, tol: float) -> complex:
    """Compensated sum of exp(i pi n^2 tau + 2 pi i n z + log_pref).

    Folding the prefactor into each exponent keeps every term well
    scaled even when exp(log_pref) alone would overflow or underflow.
    Truncation stops once a geometric envelope bounds the remaining
    tail below tol / 2.
    """
    a = tau.imag
    b = abs(z.imag)
    re0 = log_pref.real

    total = cmath.exp(log_pref)
    comp = 0j
    terms = 1
    n = 0
    while True:
        n += 1
        if terms + 2 > _MAX_TERMS:
            raise NonConvergence(
                f"theta series exceeded {_MAX_TERMS} terms "
                f"(z={z!r}, tau={tau!r}, tol={tol:g})"
            )
        base = 1j * math.pi * (n * n) * tau + log_pref
        phase = 2j * math.pi * n * z
        total, comp = _kahan_step(total, comp, cmath.exp(base + phase))
        total, comp = _kahan_step(total, comp, cmath.exp(base - phase))
        terms += 2
        # Envelope of the next +-n pair; exponent clamped so that an
        # intermediate overflow cannot abort a still-converging sum.
        expo = re0 - math.pi * (n + 1) ** 2 * a + 2.0 * math.pi * (n + 1) * b
        env_next = 2.0 * math.exp(min(expo, 700.0))
        ratio = math.exp(min(-math.pi * (2 * n + 3) * a + 2.0 * math.pi * b, 700.0))
        if ratio < 1.0 and env_next / (1.0 - ratio) <= 0.5 * tol:
            return total


def theta(arg: ThetaArgument, tol: float = 1e-12) -> complex:
    """Evaluate the theta series with absolute error below ``tol``.

    Parameters
    ----------
    arg : ThetaArgument
        Evaluation point and branch selection.
    tol : float
        Absolute error budget, must lie in (0, 1e-3].

    Returns
    -------
    complex
        Value of sum_{n in Z} exp(i pi n^2 tau + 2 pi i n z).

    Raises
    ------
    NonConvergence
        If the truncation certificate is not reached within the hard
        term cap.
    """
    if not (isinstance(tol, (int, float)) and 0.0 < tol <= 1.0e-3):
        raise InvalidParameter(f"tol must lie in (0, 1e-3], got {tol!r}")
    tol = float(tol)
    use_modular = arg.branch is ThetaBranch.MODULAR_TRANSFORM or (
        arg.branch is ThetaBranch.AUTO and arg.tau.imag < _MODULAR_THRESHOLD
    )
    if use_modular:
        zp, taup, log_pref = _modular_data(arg.z, arg.tau)
        return _sum_series(zp, taup, log_pref, tol)
    return _sum_series(arg.z, arg.tau, 0j, tol)


def theta_modular(arg: ThetaArgument) -> tuple[ThetaArgument, complex]:
    """Modular transformation of a theta argument.

    Implements the identity

        theta(z, tau) = prefactor * theta(z / tau, -1 / tau),
        prefactor    = (-i tau)^(-1/2) * exp(-i pi z^2 / tau),

    which converts a slowly convergent series at small Im tau into a
    rapidly convergent one.

    Returns
    -------
    tuple[ThetaArgument, complex]
        The transformed argument (z / tau, -1 / tau) with the branch
        carried over, and the scalar prefactor.
    """
    zp, taup, log_pref = _modular_data(arg.z, arg.tau)
    return ThetaArgument(zp, taup, arg.branch), cmath.exp(log_pref)


def theta_tail(u: float) -> ThetaTailBound:
    """Certified bound on sum_{n >= 2} exp(-n^2 / u) for u > 0.

    Consecutive exponents differ by (n + 1)^2 - n^2 = 2 n + 1 >= 5 for
    n >= 2, so the tail is dominated by the geometric series with first
    term exp(-4/u) and ratio exp(-5/u).
    """
    if not _is_positive_finite(u):
        raise InvalidParameter(f"u must be finite and positive, got {u!r}")
    bound = math.exp(-4.0 / u) / -math.expm1(-5.0 / u)
    return ThetaTailBound(float(u), bound)


def erf(x: float) -> float:
    """Gauss error function on the real line, absolute error below 1e-15."""
    return float(_scipy_erf(x))
