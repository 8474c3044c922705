"""Closed-form observables of the walled reaction-diffusion steady state.

Two wall types are covered.  Reflecting walls admit elementary
hyperbolic expressions for the pair density, the interval parity, and
the wall force.  Absorbing walls lead to heat-kernel time integrals and
trigonometric double series; both are implemented here in two
independently derived forms each, so that every nontrivial number can
be checked route against route:

* the steady flux inside the interval has a theta-kernel integral form
  and a resummed Fourier-series form,
* the absorbing wall force has a two-integral theta form and a
  flux-difference extrapolation toward the wall.

All hyperbolic ratios are evaluated through negative exponentials so
that large decay rates never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import (
    Boundary,
    ForceResult,
    InvalidParameter,
    Method,
    ModelParams,
    OutOfDomain,
    WrongMode,
    validate,
)
from .quadrature import IntegralSpec, bessel_k0, default_split, integrate_halfline
from .special import NonConvergence, ThetaArgument, erf, theta

__all__ = [
    "DensityProfile",
    "FluxProfile",
    "FourierCoefficients",
    "density_inside_absorbing",
    "density_inside_tail_bound",
    "density_outside_absorbing",
    "flux_inside",
    "flux_outside",
    "force_absorbing",
    "force_absorbing_flux_limit",
    "force_reflecting",
    "fourier_coefficients",
    "parity_outside_absorbing",
    "parity_reflecting",
    "rho_reflecting_inside",
    "rho_reflecting_outside",
]

# Interior series are truncated once the term envelope falls below
# this fraction of the accumulated value.
_SERIES_EPS = 1e-16

_SERIES_CAP = 200_000

# Absolute tolerance handed to every theta evaluation inside integrands.
_THETA_TOL = 1e-14


# ----------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class DensityProfile:
    """Sampled one-point density along the axis.

    ``rho_se`` carries per-point standard errors when the profile comes
    from a stochastic estimator; exact evaluations leave it as None.
    """

    params: ModelParams
    x: np.ndarray
    rho: np.ndarray
    method: Method
    rho_se: np.ndarray | None = None

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        rho = np.asarray(self.rho, dtype=float)
        if x.ndim != 1 or x.shape != rho.shape:
            raise InvalidParameter("x and rho must be 1d arrays of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "rho", rho)
        if self.rho_se is not None:
            rho_se = np.asarray(self.rho_se, dtype=float)
            if rho_se.shape != rho.shape or np.any(rho_se < 0):
                raise InvalidParameter("rho_se must be nonnegative and match rho")
            object.__setattr__(self, "rho_se", rho_se)


@dataclass(frozen=True)
class FluxProfile:
    """Sampled steady pair flux along the axis."""

    params: ModelParams
    x: np.ndarray
    flux: np.ndarray
    method: Method

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        flux = np.asarray(self.flux, dtype=float)
        if x.ndim != 1 or x.shape != flux.shape:
            raise InvalidParameter("x and flux must be 1d arrays of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "flux", flux)


@dataclass(frozen=True)
class FourierCoefficients:
    """Cosine-cosine expansion table of the two-point parity deviation.

    ``table[m, n]`` multiplies cos(m pi x / L) cos(n pi y / L).  The
    table is exactly antisymmetric under index swap, matching the
    antisymmetry of the expanded field about the diagonal.
    """

    params: ModelParams
    order: int
    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.asarray(self.table, dtype=float)
        expected = (self.order + 1, self.order + 1)
        if table.shape != expected:
            raise InvalidParameter(f"table must have shape {expected}")
        if not np.array_equal(table, -table.T):
            raise InvalidParameter("table must be exactly antisymmetric")
        object.__setattr__(self, "table", table)

    def evaluate(self, x: float, y: float) -> float:
        """Antisymmetric field deviation at (x, y) inside the square."""
        L = self.params.L
        m = np.arange(self.order + 1)
        cx = np.cos(m * math.pi * x / L)
        cy = np.cos(m * math.pi * y / L)
        return float(cx @ self.table @ cy)


# ----------------------------------------------------------------------
# stable hyperbolic ratios


def _sinh_ratio(p: float, d: float) -> float:
    # sinh(p) / sinh(d) for 0 <= p <= d, via negative exponentials.
    return math.exp(p - d) * math.expm1(-2.0 * p) / math.expm1(-2.0 * d)


def _cosh_ratio(p: float, d: float) -> float:
    # cosh(p) / sinh(d) for 0 <= p <= d.
    return math.exp(p - d) * (1.0 + math.exp(-2.0 * p)) / -math.expm1(-2.0 * d)


def _coth(d: float) -> float:
    return (1.0 + math.exp(-2.0 * d)) / -math.expm1(-2.0 * d)


def _require(params: ModelParams, boundary: Boundary) -> ModelParams:
    validate(params)
    if params.boundary is not boundary:
        raise WrongMode(
            f"operation requires {boundary.value} boundaries, "
            f"got {params.boundary.value}"
        )
    return params


# ----------------------------------------------------------------------
# reflecting walls


def force_reflecting(params: ModelParams) -> ForceResult:
    """Steady force between two reflecting walls a distance L apart.

    The force is the excess wall density sqrt(2 beta) / (exp(s) + 1)
    with s = L sqrt(2 beta).  It is positive, decays like exp(-s), and
    approaches sqrt(beta / 2) as the walls close in.
    """
    _require(params, Boundary.REFLECTING)
    s = params.L * params.kappa_reflecting
    value = params.kappa_reflecting / (math.exp(s) + 1.0)
    return ForceResult(value=value, mode=Boundary.REFLECTING, method=Method.CLOSED_FORM)


def rho_reflecting_inside(params: ModelParams) -> float:
    """Uniform density between two reflecting walls."""
    _require(params, Boundary.REFLECTING)
    s = params.L * params.kappa_reflecting
    # (cosh s - 1) / sinh s collapses to tanh(s / 2).
    return math.sqrt(params.beta / 2.0) * math.tanh(0.5 * s)


def rho_reflecting_outside(params: ModelParams) -> float:
    """Density on the unbounded side of a reflecting wall."""
    _require(params, Boundary.REFLECTING)
    return math.sqrt(params.beta / 2.0)


def parity_reflecting(params: ModelParams, x: float) -> float:
    """Parity of the particle count in (0, x) between reflecting walls.

    Equals [sinh(a x) + sinh(a (L - x))] / sinh(a L) with
    a = sqrt(2 beta), evaluated through negative exponentials.
    """
    _require(params, Boundary.REFLECTING)
    if not (isinstance(x, (int, float)) and 0.0 <= x <= params.L):
        raise OutOfDomain(f"x must lie in [0, L], got {x!r}")
    a = params.kappa_reflecting
    return _sinh_ratio(a * x, a * params.L) + _sinh_ratio(
        a * (params.L - x), a * params.L
    )


# ----------------------------------------------------------------------
# absorbing wall, unbounded side


def density_outside_absorbing(params: ModelParams, x: float) -> float:
    """One-point density at x < 0 outside an absorbing wall at 0.

    Time integral of the killed heat kernel weighted by the pair
    injection rate; saturates at sqrt(beta / 2) far from the wall and
    vanishes linearly at the wall.
    """
    _require(params, Boundary.ABSORBING)
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x < 0.0):
        raise OutOfDomain(f"x must be negative, got {x!r}")
    beta = params.beta

    def f(u: float) -> float:
        w = math.exp(-4.0 * beta * u)
        if w == 0.0:
            return 0.0
        return -2.0 * beta * w / math.sqrt(2.0 * math.pi * u) * erf(
            x / math.sqrt(2.0 * u)
        )

    spec = IntegralSpec(
        f, split_point=default_split(params), abs_tol=1e-13, rel_tol=1e-11
    )
    value, _ = integrate_halfline(spec)
    return value


def parity_outside_absorbing(params: ModelParams, x: float, y: float) -> float:
    """Parity of the count in (x, y) outside an absorbing wall at 0.

    Defined for x <= y <= 0.  Equals one plus a time integral of the
    product of two error functions; tends to one when the interval
    shrinks and saturates off the diagonal.
    """
    _require(params, Boundary.ABSORBING)
    ok = (
        isinstance(x, (int, float))
        and isinstance(y, (int, float))
        and math.isfinite(x)
        and math.isfinite(y)
        and x <= y <= 0.0
    )
    if not ok:
        raise OutOfDomain(f"need x <= y <= 0, got x={x!r}, y={y!r}")
    if x == y:
        return 1.0
    beta = params.beta

    def f(u: float) -> float:
        w = math.exp(-4.0 * beta * u)
        if w == 0.0:
            return 0.0
        c = 2.0 * math.sqrt(2.0 * u)
        return 4.0 * beta * w * erf((x + y) / c) * erf((y - x) / c)

    spec = IntegralSpec(
        f, split_point=default_split(params), abs_tol=1e-13, rel_tol=1e-11
    )
    value, _ = integrate_halfline(spec)
    return 1.0 + value


def flux_outside(params: ModelParams, x: float) -> float:
    """Steady pair flux at x < 0 outside an absorbing wall at 0.

    Closed form (4 beta / pi) K0(2 |x| sqrt(2 beta)); diverges like
    -(4 beta / pi) log |x| toward the wall.
    """
    _require(params, Boundary.ABSORBING)
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x < 0.0):
        raise OutOfDomain(f"x must be negative, got {x!r}")
    beta = params.beta
    return 4.0 * beta / math.pi * bessel_k0(2.0 * abs(x) * math.sqrt(2.0 * beta))


# ----------------------------------------------------------------------
# absorbing walls, interval interior


def _check_interior(params: ModelParams, x: float) -> None:
    if not (isinstance(x, (int, float)) and 0.0 < x < params.L):
        raise OutOfDomain(f"x must lie strictly inside (0, L), got {x!r}")


def density_inside_absorbing(
    params: ModelParams,
    x: float,
    N: Optional[int] = None,
    method: str = "resummed",
) -> float:
    """One-point density at x between absorbing walls at 0 and L.

    Parameters
    ----------
    params : ModelParams
        Must carry absorbing boundaries.
    x : float
        Position in [0, L].  The walls themselves return exactly zero.
    N : int, optional
        Square cutoff of the partial sum.  Required for the direct
        method and ignored by the resummed one.
    method : str
        "resummed" evaluates the series exactly by collapsing the inner
        index into hyperbolic ratios, leaving a tail that decays
        exponentially.  "direct" returns the literal partial sum with
        both indices cut at N, whose tail only decays like 1 / N; see
        ``density_inside_tail_bound``.
    """
    _require(params, Boundary.ABSORBING)
    if method not in ("resummed", "direct"):
        raise InvalidParameter(f"method must be 'resummed' or 'direct', got {method!r}")
    if not (isinstance(x, (int, float)) and 0.0 <= x <= params.L):
        raise OutOfDomain(f"x must lie in [0, L], got {x!r}")
    if x == 0.0 or x == params.L:
        return 0.0
    if method == "direct":
        if not (isinstance(N, int) and N >= 1):
            raise InvalidParameter(f"direct method needs integer N >= 1, got {N!r}")
        return _density_direct(params, x, N)
    return _density_resummed(params, x)


def _density_direct(params: ModelParams, x: float, N: int) -> float:
    beta, L = params.beta, params.L
    pi = math.pi
    idx = np.arange(N + 1, dtype=float)
    cos_t = np.cos(pi * idx * x / L)
    sin_t = np.sin(pi * idx * x / L)

    n_odd = np.arange(1, N + 1, 2, dtype=float)
    single = np.sum(
        16.0 * beta * L
        / (n_odd * pi * (n_odd**2 * pi**2 + 4.0 * beta * L**2))
        * sin_t[1::2]
    )

    # Double sum over m >= 1, n >= 1 with m + n odd (so always n != m).
    m = np.arange(1, N + 1, dtype=float)[:, None]
    n = np.arange(1, N + 1, dtype=float)[None, :]
    opposite = ((m + n) % 2) == 1
    denom = (n**2 - m**2) * ((m**2 + n**2) * pi**2 + 4.0 * beta * L**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = np.where(opposite, 32.0 * beta * L * n / (pi * denom), 0.0)
    double = float(cos_t[1:] @ coef @ sin_t[1:])
    return float(single + double)


def _density_resummed(params: ModelParams, x: float) -> float:
    beta, L = params.beta, params.L
    pi = math.pi
    t = pi * x / L
    q = 2.0 * L * math.sqrt(beta) / pi
    r = 2.0 * math.sqrt(beta)

    single = (
        1.0 - _sinh_ratio(r * (L - x), r * L) - _sinh_ratio(r * x, r * L)
    ) / L

    c = q / math.sqrt(2.0)
    part_a = (
        8.0 * beta * L / pi**2
        * (
            pi / (8.0 * c) * (_coth(pi * c) + _cosh_ratio(c * abs(pi - 2.0 * t), c * pi))
            - 1.0 / (4.0 * c * c)
        )
    )

    part_b = 0.0
    m = 1
    while True:
        a = math.hypot(m, q)
        tm = (
            pi / 4.0
            * (
                _sinh_ratio(a * (pi - t), a * pi)
                + (-1.0 if m % 2 else 1.0) * _sinh_ratio(a * t, a * pi)
            )
        )
        term = math.cos(m * t) * tm / (2.0 * m * m + q * q)
        part_b += term
        envelope = (
            pi / 4.0 * (math.exp(-a * t) + math.exp(-a * (pi - t)))
            / (2.0 * m * m + q * q)
        )
        if m > 8 and envelope < _SERIES_EPS * (1.0 + abs(part_b)):
            break
        m += 1
        if m > _SERIES_CAP:
            raise NonConvergence(
                f"density series stalled after {_SERIES_CAP} terms at x={x!r}"
            )
    return single + part_a - 32.0 * beta * L / pi**3 * part_b


def density_inside_tail_bound(params: ModelParams, N: int) -> float:
    """Rigorous cap on the truncation error of the direct partial sum.

    The single sum tail is below 8 beta L / (pi^3 N^2) and the double
    sum tail below (32 beta L / pi^3) (ln N + 3) / N, uniformly in x.
    """
    _require(params, Boundary.ABSORBING)
    if not (isinstance(N, int) and N >= 2):
        raise InvalidParameter(f"need integer N >= 2, got {N!r}")
    beta, L = params.beta, params.L
    single = 8.0 * beta * L / (math.pi**3 * N * N)
    double = 32.0 * beta * L / math.pi**3 * (math.log(N) + 3.0) / N
    return single + double


def flux_inside(params: ModelParams, x: float, method: str = "series") -> float:
    """Steady pair flux at x strictly between absorbing walls at 0 and L.

    Antisymmetric about the midpoint: flux(L - x) = -flux(x).  Two
    independent routes are provided.  "series" resums the double
    Fourier expansion into hyperbolic ratios with an exponentially
    small tail.  "theta" integrates the difference of two squared
    theta kernels over diffusion time.
    """
    _require(params, Boundary.ABSORBING)
    _check_interior(params, x)
    if method == "series":
        return _flux_series(params, x)
    if method == "theta":
        return _flux_theta(params, x)
    raise InvalidParameter(f"method must be 'series' or 'theta', got {method!r}")


def _flux_series(params: ModelParams, x: float) -> float:
    beta, L = params.beta, params.L
    pi = math.pi
    t = pi * x / L
    q = 2.0 * L * math.sqrt(beta) / pi

    def odd_cos_sum(a: float, sign: float) -> float:
        # sum over one parity class of cos(n t) / (n^2 + a^2).
        return (
            pi / (4.0 * a)
            * (_cosh_ratio(a * (pi - t), a * pi) - sign * _cosh_ratio(a * t, a * pi))
        )

    total = 0.5 * odd_cos_sum(q, 1.0)
    m = 1
    while True:
        a = math.hypot(m, q)
        w = odd_cos_sum(a, -1.0 if m % 2 else 1.0)
        total += math.cos(m * t) * w
        envelope = pi / (4.0 * a) * (math.exp(-a * t) + math.exp(-a * (pi - t)))
        if m > 8 and envelope < _SERIES_EPS * (1.0 + abs(total)):
            break
        m += 1
        if m > _SERIES_CAP:
            raise NonConvergence(
                f"flux series stalled after {_SERIES_CAP} terms at x={x!r}"
            )
    return 16.0 * beta / pi**2 * total


def _flux_theta(params: ModelParams, x: float) -> float:
    beta, L = params.beta, params.L
    z1 = x / (2.0 * L)
    z2 = (x + L) / (2.0 * L)

    def f(u: float) -> float:
        w = math.exp(-4.0 * beta * u)
        if w == 0.0:
            return 0.0
        tau = 1j * math.pi * u / (L * L)
        t1 = theta(ThetaArgument(z1, tau), tol=_THETA_TOL).real
        t2 = theta(ThetaArgument(z2, tau), tol=_THETA_TOL).real
        return 2.0 * beta / (L * L) * w * (t1 * t1 - t2 * t2)

    spec = IntegralSpec(
        f, split_point=L * L / math.pi, abs_tol=1e-12, rel_tol=1e-10
    )
    value, _ = integrate_halfline(spec)
    return value


# ----------------------------------------------------------------------
# absorbing wall force, two routes


def force_absorbing(params: ModelParams, tol: float = 1e-13) -> ForceResult:
    """Force between two absorbing walls, theta-integral route.

    Sum of two diffusion-time integrals, one carrying the deficit
    1 - theta^2 at the periodic point and one the squared half-offset
    theta.  They cancel to an exponentially small remainder at large
    separation, so both are integrated to relative accuracy ``tol``,
    with an absolute fallback anchored to the decay-law magnitude
    ``kappa * exp(-kappa * L)``.  Without the anchor each integral
    would have to be certified relative to its own shrinking value,
    which drops below the quadrature roundoff floor at large ``L``.
    """
    _require(params, Boundary.ABSORBING)
    if not (isinstance(tol, float) and 0.0 < tol <= 1e-6):
        raise InvalidParameter(f"tol must lie in (0, 1e-6], got {tol!r}")
    beta, L = params.beta, params.L
    c = 4.0 * beta * L * L
    decay = params.kappa_absorbing
    floor = max(1e-250, 0.5 * tol * decay * math.exp(-decay * L))

    def f1(y: float) -> float:
        w = math.exp(-c * y)
        if w == 0.0:
            return 0.0
        th = theta(ThetaArgument(0.0, 1j / (math.pi * y)), tol=_THETA_TOL).real
        return 2.0 * beta / math.pi * w / y * (1.0 - th * th)

    def f2(y: float) -> float:
        w = math.exp(-c * y)
        if w == 0.0:
            return 0.0
        th = theta(ThetaArgument(0.5, 1j * math.pi * y), tol=_THETA_TOL).real
        return 2.0 * beta * w * th * th

    i1, e1 = integrate_halfline(
        IntegralSpec(
            f1,
            split_point=1.0 / (2.0 * L * math.sqrt(beta)),
            abs_tol=floor,
            rel_tol=tol,
        )
    )
    i2, e2 = integrate_halfline(
        IntegralSpec(
            f2,
            split_point=1.0 / (2.0 * L * math.sqrt(2.0 * beta)),
            abs_tol=floor,
            rel_tol=tol,
        )
    )
    return ForceResult(
        value=i1 + i2,
        mode=Boundary.ABSORBING,
        method=Method.CLOSED_FORM,
        uncertainty=e1 + e2,
    )


def force_absorbing_flux_limit(params: ModelParams) -> ForceResult:
    """Force between two absorbing walls, flux-difference route.

    The outside and inside fluxes both diverge logarithmically at the
    wall but their difference D(x) has a finite even-in-x limit, which
    equals the force.  D is sampled at three geometrically shrinking
    offsets and extrapolated with the even-order Richardson weights
    (D0 - 20 D1 + 64 D2) / 45; the spread of the two underlying
    second-order extrapolants serves as the uncertainty.
    """
    _require(params, Boundary.ABSORBING)
    beta, L = params.beta, params.L
    x0 = 0.05 * min(L, 1.0 / math.sqrt(beta))

    def deficit(x: float) -> float:
        j_out = 4.0 * beta / math.pi * bessel_k0(2.0 * x * math.sqrt(2.0 * beta))
        return j_out - _flux_series(params, x)

    d0 = deficit(x0)
    d1 = deficit(0.5 * x0)
    d2 = deficit(0.25 * x0)
    r1 = (4.0 * d1 - d0) / 3.0
    r2 = (4.0 * d2 - d1) / 3.0
    value = (16.0 * r2 - r1) / 15.0
    return ForceResult(
        value=value,
        mode=Boundary.ABSORBING,
        method=Method.FLUX_LIMIT,
        uncertainty=abs(r2 - r1),
    )


# ----------------------------------------------------------------------
# Fourier table of the two-point parity deviation


def fourier_coefficients(params: ModelParams, N: int) -> FourierCoefficients:
    """Cosine-cosine coefficients of the parity deviation up to order N.

    Only entries with m + n odd are nonzero.  Edge rows carry one
    index at zero; interior entries follow the antisymmetric kernel
    64 beta L^2 / (pi^2 (n^2 - m^2) ((m^2 + n^2) pi^2 + 4 beta L^2)).
    """
    _require(params, Boundary.ABSORBING)
    if not (isinstance(N, int) and N >= 1):
        raise InvalidParameter(f"need integer N >= 1, got {N!r}")
    beta, L = params.beta, params.L
    pi = math.pi
    table = np.zeros((N + 1, N + 1))

    n = np.arange(1, N + 1, 2, dtype=float)
    edge = 16.0 * beta * L**2 * 2.0 / (pi**2 * n**2 * (n**2 * pi**2 + 4.0 * beta * L**2))
    table[0, 1::2] = edge
    table[1::2, 0] = -edge

    mm = np.arange(1, N + 1, dtype=float)[:, None]
    nn = np.arange(1, N + 1, dtype=float)[None, :]
    odd = ((mm + nn) % 2) == 1
    upper = odd & (nn > mm)
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = 64.0 * beta * L**2 / (
            pi**2 * (nn**2 - mm**2) * ((mm**2 + nn**2) * pi**2 + 4.0 * beta * L**2)
        )
    block = np.where(upper, kernel, 0.0)
    block = block - block.T
    table[1:, 1:] = block
    return FourierCoefficients(params=params, order=N, table=table)
