"""Finite-difference oracles for the steady parity boundary-value problems.

The closed-form layer evaluates explicit series and integrals.  This module
solves the same steady problems by independent numerical means, a banded
direct solve in one dimension and a preconditioned conjugate-gradient solve
of a zero-flux (Neumann) problem in two dimensions, so the two routes can be
cross-checked without sharing code paths.

Conventions match :mod:`casimirlab.closed_form`: parity fields take the value
1 on an empty probe interval, and one-point densities are recovered from
one-sided parity derivatives at the probe boundary.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
import pyamg
import scipy.linalg
import scipy.sparse as sparse
import scipy.sparse.linalg as sparse_linalg

from .closed_form import DensityProfile
from .model import (
    Boundary,
    CasimirError,
    ForceResult,
    InvalidParameter,
    Method,
    ModelParams,
    WrongMode,
    validate,
)
from .quadrature import bessel_k0

__all__ = [
    "SingularSystem",
    "IterationLimitExceeded",
    "GridTooCoarse",
    "ParityField1D",
    "ParityField2D",
    "solve_parity_1d",
    "solve_parity_2d",
    "density_from_parity",
    "reflecting_force_oracle",
    "absorbing_force_oracle",
]

# Relative residual every 2d solve must reach, and the conjugate-gradient
# stopping tolerance requested below it so roundoff headroom remains.
_RESIDUAL_TARGET = 1e-10
_CG_RTOL = 1e-12
_MAX_CG_ITERATIONS = 100_000


class SingularSystem(CasimirError):
    """The discretized linear system could not be solved."""


class IterationLimitExceeded(CasimirError):
    """The iterative solver did not reach tolerance within its budget."""


class GridTooCoarse(CasimirError):
    """Too few grid points for the requested operation."""


def _uniform_grid(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise InvalidParameter("grid must be a 1d array with at least 2 nodes")
    steps = np.diff(x)
    if not np.all(steps > 0.0):
        raise InvalidParameter("grid must be strictly increasing")
    if not np.allclose(steps, steps[0], rtol=1e-8, atol=0.0):
        raise InvalidParameter("grid must be uniformly spaced")
    return x


@dataclass(frozen=True)
class ParityField1D:
    """Steady probe-interval parity sampled on a uniform grid over [0, L].

    ``values[i]`` approximates the stationary expected parity of the particle
    count in the probe interval ``(0, x[i])``.  The solver pins both endpoint
    values exactly; the interior obeys the discrete balance equation
    ``(V[i-1] - 2 V[i] + V[i+1]) / h**2 = 2 beta V[i]``.
    """

    params: ModelParams
    x: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        x = _uniform_grid(self.x)
        values = np.asarray(self.values, dtype=float)
        if values.shape != x.shape:
            raise InvalidParameter("values must match the grid shape")
        if not np.all(np.isfinite(values)):
            raise InvalidParameter("values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", values)

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])


@dataclass(frozen=True)
class ParityField2D:
    """Steady two-point parity sampled on a uniform grid over [0, L]^2.

    ``values[i, j]`` approximates the stationary expected parity of the count
    in the probe interval ``(x[i], x[j])``.  The deviation ``U = values - 1``
    is antisymmetric about the diagonal; ``residual`` and ``asymmetry`` record
    the relative linear-system residual and the largest antisymmetry defect
    of the raw iterate before it was antisymmetrized.
    """

    params: ModelParams
    x: np.ndarray
    values: np.ndarray
    residual: float
    asymmetry: float

    def __post_init__(self) -> None:
        x = _uniform_grid(self.x)
        values = np.asarray(self.values, dtype=float)
        if values.shape != (x.size, x.size):
            raise InvalidParameter("values must be square and match the grid")
        if not np.all(np.isfinite(values)):
            raise InvalidParameter("values must be finite")
        if not (0.0 <= self.residual < math.inf and 0.0 <= self.asymmetry < math.inf):
            raise InvalidParameter("residual and asymmetry must be nonnegative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", values)

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])


def solve_parity_1d(
    params: ModelParams,
    n: int = 4096,
    boundary_values: tuple[float, float] = (1.0, 1.0),
) -> ParityField1D:
    """Solve ``V'' = 2 beta V`` on [0, L] with pinned endpoint values.

    Parameters
    ----------
    params
        Model parameters; the boundary mode must be reflecting, since only
        the reflecting wall conserves probe parity and yields this equation.
    n
        Number of grid intervals, at least 8.  The grid has ``n + 1`` nodes.
    boundary_values
        Values pinned at ``x = 0`` and ``x = L``.  The default ``(1, 1)`` is
        the finite interval between two walls; ``(1, 0)`` on a domain several
        decay lengths long recovers the half-line field next to one wall.

    Returns
    -------
    ParityField1D
        Central-difference solution with the endpoints imposed exactly.

    Raises
    ------
    GridTooCoarse
        If ``n < 8``.
    SingularSystem
        If the banded solve fails or returns non-finite values.  The system
        is strictly diagonally dominant, so this is purely defensive.
    """
    validate(params)
    if params.boundary is not Boundary.REFLECTING:
        raise WrongMode("the 1d parity equation holds for reflecting walls")
    if n < 8:
        raise GridTooCoarse(f"need at least 8 grid intervals, got {n}")
    left, right = float(boundary_values[0]), float(boundary_values[1])
    if not (math.isfinite(left) and math.isfinite(right)):
        raise InvalidParameter("boundary values must be finite")

    h = params.L / n
    inv_h2 = 1.0 / (h * h)
    interior = n - 1
    bands = np.zeros((3, interior))
    bands[0, 1:] = inv_h2
    bands[1, :] = -2.0 * inv_h2 - 2.0 * params.beta
    bands[2, :-1] = inv_h2
    rhs = np.zeros(interior)
    rhs[0] -= left * inv_h2
    rhs[-1] -= right * inv_h2
    try:
        solution = scipy.linalg.solve_banded((1, 1), bands, rhs)
    except Exception as exc:  # pragma: no cover - defensive
        raise SingularSystem(str(exc)) from exc
    if not np.all(np.isfinite(solution)):  # pragma: no cover - defensive
        raise SingularSystem("banded solve produced non-finite values")

    values = np.concatenate(([left], solution, [right]))
    x = np.linspace(0.0, params.L, n + 1)
    return ParityField1D(params=params, x=x, values=values)


def _neumann_operator(beta: float, n: int, h: float) -> tuple[sparse.csr_matrix, np.ndarray]:
    """Assemble the symmetric operator for ``(4 beta - Laplacian) U`` on the square.

    Edge nodes use mirror ghosts (zero normal flux).  Each node equation is
    scaled by the trapezoidal weight ``w[i] * w[j]`` with ``w = (1/2, 1, ...,
    1, 1/2)``, which symmetrizes the edge rows and makes the matrix positive
    definite.
    """
    inv_h2 = 1.0 / (h * h)
    main = np.full(n + 1, 2.0 * inv_h2)
    main[0] = main[-1] = inv_h2
    off = np.full(n, -inv_h2)
    stiffness = sparse.diags((off, main, off), (-1, 0, 1))
    weights = np.ones(n + 1)
    weights[0] = weights[-1] = 0.5
    mass = sparse.diags(weights)
    operator = (
        4.0 * beta * sparse.kron(mass, mass)
        + sparse.kron(stiffness, mass)
        + sparse.kron(mass, stiffness)
    )
    return operator.tocsr(), weights


def _solve_neumann_system(
    beta: float,
    L: float,
    n: int,
    forcing: np.ndarray,
    max_iterations: int,
) -> tuple[np.ndarray, float]:
    """Solve ``(4 beta - Laplacian) U = -forcing`` with zero-flux edges.

    Returns the node values ``U`` on the ``(n + 1) x (n + 1)`` grid and the
    relative residual of the weighted linear system.
    """
    h = L / n
    operator, weights = _neumann_operator(beta, n, h)
    rhs = -(np.outer(weights, weights) * forcing).ravel()
    hierarchy = pyamg.smoothed_aggregation_solver(operator, max_coarse=64)
    preconditioner = hierarchy.aspreconditioner(cycle="V")
    solution, info = sparse_linalg.cg(
        operator,
        rhs,
        rtol=_CG_RTOL,
        atol=0.0,
        maxiter=max_iterations,
        M=preconditioner,
    )
    if info > 0:
        raise IterationLimitExceeded(
            f"conjugate gradient did not converge within {max_iterations} iterations"
        )
    if info < 0:  # pragma: no cover - defensive
        raise SingularSystem("conjugate gradient reported an invalid system")
    residual = float(
        np.linalg.norm(rhs - operator @ solution) / np.linalg.norm(rhs)
    )
    if residual > _RESIDUAL_TARGET:
        raise IterationLimitExceeded(
            f"relative residual {residual:.3e} above target {_RESIDUAL_TARGET:.1e}"
        )
    return solution.reshape(n + 1, n + 1), residual


def solve_parity_2d(
    params: ModelParams,
    n: int = 256,
    max_iterations: int = _MAX_CG_ITERATIONS,
) -> ParityField2D:
    """Solve the two-point parity equation for an absorbing interval.

    The deviation ``U = V - 1`` satisfies ``Laplacian(U) - 4 beta U =
    4 beta sign(y - x)`` on [0, L]^2 with zero normal derivative on all four
    edges, discretized with the five-point stencil and mirror ghost nodes.
    The raw iterate is antisymmetrized about the diagonal, which sets the
    diagonal of ``U`` to zero exactly, and the discarded defect is recorded
    in ``asymmetry``.

    Parameters
    ----------
    params
        Model parameters; the boundary mode must be absorbing.
    n
        Number of grid intervals per side, at least 32.
    max_iterations
        Conjugate-gradient iteration budget.

    Raises
    ------
    GridTooCoarse
        If ``n < 32``.
    IterationLimitExceeded
        If the solver does not reach a relative residual of 1e-10.
    """
    validate(params)
    if params.boundary is not Boundary.ABSORBING:
        raise WrongMode("the 2d parity equation holds for absorbing walls")
    if n < 32:
        raise GridTooCoarse(f"need at least 32 grid intervals, got {n}")

    index = np.arange(n + 1)
    forcing = 4.0 * params.beta * np.sign(index[None, :] - index[:, None])
    deviation, residual = _solve_neumann_system(
        params.beta, params.L, n, forcing, max_iterations
    )
    asymmetry = float(np.max(np.abs(deviation + deviation.T)))
    deviation = 0.5 * (deviation - deviation.T)
    x = np.linspace(0.0, params.L, n + 1)
    return ParityField2D(
        params=params,
        x=x,
        values=1.0 + deviation,
        residual=residual,
        asymmetry=asymmetry,
    )


def _density_from_1d(field: ParityField1D) -> DensityProfile:
    values = field.values
    if values.size < 9:
        raise GridTooCoarse("need at least 8 grid intervals for the wall stencil")
    h = field.h
    # One-sided second-order derivative at the wall; rho(0+) = -V'(0+) / 2.
    slope = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    rho = -0.5 * slope
    return DensityProfile(
        params=field.params,
        x=np.array([field.x[0]]),
        rho=np.array([rho]),
        method=Method.PDE_ORACLE,
    )


def _density_from_2d(field: ParityField2D) -> DensityProfile:
    values = field.values
    n = values.shape[0] - 1
    if n < 8:
        raise GridTooCoarse("need at least 8 grid intervals for the diagonal stencil")
    h = field.h
    scale = 1.0 / (12.0 * h)
    diag = [np.diagonal(values, k) for k in range(5)]
    rho = np.empty(n + 1)
    # Fourth-order one-sided derivative into the y > x half; rho = -dV/dy / 2.
    count = n - 3
    rho[:count] = -0.5 * scale * (
        -25.0 * diag[0][:count]
        + 48.0 * diag[1][:count]
        - 36.0 * diag[2][:count]
        + 16.0 * diag[3][:count]
        - 3.0 * diag[4][:count]
    )
    # Near the far wall the stencil leaves the grid; differentiate into the
    # y < x half instead, where the parity kink flips the sign.
    for i in range(count, n + 1):
        rho[i] = 0.5 * scale * (
            25.0 * values[i, i]
            - 48.0 * values[i, i - 1]
            + 36.0 * values[i, i - 2]
            - 16.0 * values[i, i - 3]
            + 3.0 * values[i, i - 4]
        )
    return DensityProfile(
        params=field.params, x=field.x.copy(), rho=rho, method=Method.PDE_ORACLE
    )


def density_from_parity(
    field: ParityField1D | ParityField2D, mode: Boundary
) -> DensityProfile:
    """Recover the one-point density from one-sided parity derivatives.

    For a 1d field the result holds a single sample, the density at the left
    wall.  For a 2d field it holds the full diagonal profile, one sample per
    grid node.

    Raises
    ------
    WrongMode
        If ``mode`` does not match the boundary mode the field was solved for.
    GridTooCoarse
        If the grid cannot accommodate the one-sided stencils.
    """
    if not isinstance(mode, Boundary):
        raise InvalidParameter("mode must be a Boundary value")
    if mode is not field.params.boundary:
        raise WrongMode(
            f"field was solved for {field.params.boundary.value}, not {mode.value}"
        )
    if isinstance(field, ParityField1D):
        return _density_from_1d(field)
    if isinstance(field, ParityField2D):
        return _density_from_2d(field)
    raise InvalidParameter("field must be a ParityField1D or ParityField2D")


def _wall_density_extrapolated(
    params: ModelParams, n: int, boundary_values: tuple[float, float]
) -> tuple[float, float]:
    """Left-wall density Richardson-extrapolated from grids n and 2n."""
    coarse = density_from_parity(
        solve_parity_1d(params, n, boundary_values), params.boundary
    ).rho[0]
    fine = density_from_parity(
        solve_parity_1d(params, 2 * n, boundary_values), params.boundary
    ).rho[0]
    value = (4.0 * fine - coarse) / 3.0
    return value, abs(fine - coarse) / 3.0


def reflecting_force_oracle(params: ModelParams, n: int = 4096) -> ForceResult:
    """Force on a reflecting wall from two independent banded parity solves.

    The force is the outside wall density minus the inside wall density.
    The inside density comes from the interval field on [0, L]; the outside
    density comes from a half-line field, approximated by pinning the parity
    to zero at a far boundary 25 decay lengths away.  Each wall density is
    Richardson-extrapolated from grids ``n`` and ``2 n``.
    """
    validate(params)
    if params.boundary is not Boundary.REFLECTING:
        raise WrongMode("reflecting_force_oracle needs reflecting parameters")
    inside, inside_spread = _wall_density_extrapolated(params, n, (1.0, 1.0))
    far_length = 25.0 / params.kappa_reflecting
    far_params = dataclasses.replace(params, L=far_length)
    outside, outside_spread = _wall_density_extrapolated(far_params, n, (1.0, 0.0))
    return ForceResult(
        value=outside - inside,
        mode=Boundary.REFLECTING,
        method=Method.PDE_ORACLE,
        uncertainty=inside_spread + outside_spread,
    )


def absorbing_force_oracle(params: ModelParams, n: int = 384) -> ForceResult:
    """Force on an absorbing wall from the two-dimensional parity solve.

    The flux deficit between the outside wall influx, known in closed form
    through the modified Bessel function, and the inside influx, obtained as
    the centered gradient of the PDE density profile, extends to an even
    function of the probe offset.  Sampling the deficit at L/8, L/16 and L/32
    and eliminating the quadratic and quartic terms leaves the limiting
    force.  Each influx is extrapolated from grids ``n / 2``, ``n`` and
    ``2 n`` with two Richardson stages at exponent 2; the discontinuous
    forcing leaves a slowly varying factor on the leading error term, so one
    stage alone does not reach the quartic remainder.  ``n`` must be a
    multiple of 64 so all probe offsets stay grid-aligned.
    """
    validate(params)
    if params.boundary is not Boundary.ABSORBING:
        raise WrongMode("absorbing_force_oracle needs absorbing parameters")
    if n < 192 or n % 64 != 0:
        raise GridTooCoarse("n must be a multiple of 64, at least 192")

    grids = (n // 2, n, 2 * n)
    profiles = []
    for intervals in grids:
        field = solve_parity_2d(params, intervals)
        profiles.append(density_from_parity(field, Boundary.ABSORBING).rho)

    decay = params.kappa_absorbing
    prefactor = 4.0 * params.beta / math.pi
    deficits = []
    grid_spread = 0.0
    for weight, divisor in ((1.0, 8), (20.0, 16), (64.0, 32)):
        influx = []
        for intervals, rho in zip(grids, profiles):
            i = intervals // divisor
            spacing = params.L / intervals
            influx.append((rho[i + 1] - rho[i - 1]) / (2.0 * spacing))
        stage_one = (4.0 * influx[1] - influx[0]) / 3.0
        stage_two = (4.0 * influx[2] - influx[1]) / 3.0
        inside = (4.0 * stage_two - stage_one) / 3.0
        grid_spread += weight * abs(stage_two - stage_one) / (3.0 * 45.0)
        x = params.L / divisor
        deficits.append(prefactor * bessel_k0(decay * x) - inside)

    first = (4.0 * deficits[1] - deficits[0]) / 3.0
    second = (4.0 * deficits[2] - deficits[1]) / 3.0
    return ForceResult(
        value=(16.0 * second - first) / 15.0,
        mode=Boundary.ABSORBING,
        method=Method.PDE_ORACLE,
        uncertainty=abs(second - first) + grid_spread,
    )
