"""Closed-form densities, parities, fluxes, and wall forces."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimirlab.closed_form import (
    FourierCoefficients,
    density_inside_absorbing,
    density_inside_tail_bound,
    density_outside_absorbing,
    flux_inside,
    flux_outside,
    force_absorbing,
    force_absorbing_flux_limit,
    force_reflecting,
    fourier_coefficients,
    parity_outside_absorbing,
    parity_reflecting,
    rho_reflecting_inside,
    rho_reflecting_outside,
)
from casimirlab.model import (
    Boundary,
    InvalidParameter,
    Method,
    ModelParams,
    OutOfDomain,
    WrongMode,
)

BETAS = (0.5, 1.0, 2.0)
LENGTHS = (0.5, 1.0, 2.0)


def absorbing(beta=1.0, L=1.0):
    return ModelParams(beta=beta, L=L, boundary=Boundary.ABSORBING)


def reflecting(beta=1.0, L=1.0):
    return ModelParams(beta=beta, L=L, boundary=Boundary.REFLECTING)


def _grid_key(beta, L):
    tag = lambda v: f"{v:g}".replace(".", "P")
    return f"FORCE_REFLECTING_B{tag(beta)}_L{tag(L)}"


# ----------------------------------------------------------------------
# reflecting walls


@pytest.mark.parametrize("beta", BETAS)
@pytest.mark.parametrize("L", LENGTHS)
def test_force_reflecting_grid(golden, beta, L):
    result = force_reflecting(reflecting(beta, L))
    assert result.mode is Boundary.REFLECTING
    assert result.method is Method.CLOSED_FORM
    assert result.value == pytest.approx(golden[_grid_key(beta, L)], rel=1e-14)


def test_force_is_density_deficit():
    # The wall force equals the outside density minus the uniform
    # inside density, exactly.
    for beta, L in [(0.5, 1.0), (1.0, 2.0), (3.0, 0.7)]:
        params = reflecting(beta, L)
        deficit = rho_reflecting_outside(params) - rho_reflecting_inside(params)
        assert force_reflecting(params).value == pytest.approx(deficit, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(
    beta=st.floats(min_value=0.01, max_value=50.0),
    L=st.floats(min_value=0.01, max_value=50.0),
)
def test_force_reflecting_bounds(beta, L):
    value = force_reflecting(reflecting(beta, L)).value
    assert 0.0 < value < math.sqrt(beta / 2.0)


def test_density_saturates_far_apart():
    params = reflecting(1.0, 50.0)
    assert rho_reflecting_inside(params) == pytest.approx(
        rho_reflecting_outside(params), rel=1e-14
    )


def test_parity_reflecting_midpoint(golden):
    value = parity_reflecting(reflecting(1.0, 2.0), 1.0)
    assert value == pytest.approx(golden["PARITY_MIDPOINT_B1_L2"], rel=1e-14)


def test_parity_reflecting_endpoints():
    params = reflecting(1.3, 1.7)
    assert parity_reflecting(params, 0.0) == pytest.approx(1.0, rel=1e-14)
    assert parity_reflecting(params, params.L) == pytest.approx(1.0, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(frac=st.floats(min_value=0.0, max_value=1.0))
def test_parity_reflecting_symmetric_and_bounded(frac):
    params = reflecting(1.0, 2.0)
    x = frac * params.L
    left = parity_reflecting(params, x)
    right = parity_reflecting(params, params.L - x)
    assert left == pytest.approx(right, rel=1e-12)
    assert 0.0 < left <= 1.0 + 1e-15


def test_parity_reflecting_domain():
    params = reflecting()
    with pytest.raises(OutOfDomain):
        parity_reflecting(params, -0.1)
    with pytest.raises(OutOfDomain):
        parity_reflecting(params, params.L + 0.1)


def test_reflecting_functions_reject_absorbing_params():
    params = absorbing()
    with pytest.raises(WrongMode):
        force_reflecting(params)
    with pytest.raises(WrongMode):
        rho_reflecting_inside(params)
    with pytest.raises(WrongMode):
        parity_reflecting(params, 0.5)


# ----------------------------------------------------------------------
# absorbing wall, unbounded side


def test_density_outside_reference(golden):
    value = density_outside_absorbing(absorbing(), -1.0)
    assert value == pytest.approx(golden["RHO_OUTSIDE_B1_X_MINUS1"], rel=1e-10)


def test_density_outside_saturation_and_monotonicity():
    params = absorbing()
    far = density_outside_absorbing(params, -50.0)
    assert far == pytest.approx(math.sqrt(0.5), rel=1e-10)
    # Ordered from near the wall outward; density grows monotonically.
    xs = [-0.05, -0.2, -0.5, -1.0, -2.0]
    values = [density_outside_absorbing(params, x) for x in xs]
    assert all(v > 0.0 for v in values)
    assert values == sorted(values)


def test_density_outside_domain():
    with pytest.raises(OutOfDomain):
        density_outside_absorbing(absorbing(), 0.0)
    with pytest.raises(OutOfDomain):
        density_outside_absorbing(absorbing(), 1.0)
    with pytest.raises(WrongMode):
        density_outside_absorbing(reflecting(), -1.0)


def test_parity_outside_reference(golden):
    value = parity_outside_absorbing(absorbing(), -2.0, -1.0)
    assert value == pytest.approx(golden["PARITY_OUTSIDE_B1_XM2_YM1"], rel=1e-9)


def test_parity_outside_diagonal_and_wall():
    params = absorbing()
    assert parity_outside_absorbing(params, -1.3, -1.3) == 1.0
    # Reflecting-type stationarity of the parity in the wall endpoint.
    h = 1e-4
    at_wall = parity_outside_absorbing(params, -1.0, 0.0)
    near_wall = parity_outside_absorbing(params, -1.0, -h)
    assert abs(at_wall - near_wall) / h < 1e-3


def test_parity_outside_below_one():
    value = parity_outside_absorbing(absorbing(), -2.0, -0.5)
    assert 0.0 < value < 1.0


def test_parity_outside_domain():
    params = absorbing()
    with pytest.raises(OutOfDomain):
        parity_outside_absorbing(params, -1.0, 0.5)
    with pytest.raises(OutOfDomain):
        parity_outside_absorbing(params, -0.5, -1.0)


def test_flux_outside_reference(golden):
    value = flux_outside(absorbing(), -0.5)
    assert value == pytest.approx(golden["FLUX_OUTSIDE_B1_X_MINUS_HALF"], rel=1e-12)


def test_flux_outside_decreasing_away_from_wall():
    params = absorbing()
    xs = [-0.05, -0.1, -0.3, -0.8, -2.0]
    values = [flux_outside(params, x) for x in xs]
    assert values == sorted(values, reverse=True)
    assert all(v > 0.0 for v in values)


def test_flux_outside_log_divergence():
    beta = 1.0
    x = -1e-30
    ratio = flux_outside(absorbing(beta), x) / (-4.0 * beta / math.pi * math.log(-x))
    assert ratio == pytest.approx(1.0, rel=0.02)


def test_flux_outside_domain():
    with pytest.raises(OutOfDomain):
        flux_outside(absorbing(), 0.0)
    with pytest.raises(WrongMode):
        flux_outside(reflecting(), -0.5)


# ----------------------------------------------------------------------
# absorbing walls, interval interior


def test_flux_inside_series_reference(golden):
    params = absorbing()
    assert flux_inside(params, 0.1) == pytest.approx(
        golden["FLUX_INSIDE_B1_L1_X0P1"], rel=1e-13
    )
    assert flux_inside(params, 0.3) == pytest.approx(
        golden["FLUX_INSIDE_B1_L1_X0P3"], rel=1e-13
    )
    # The midpoint value vanishes by antisymmetry.
    assert flux_inside(params, 0.5) == pytest.approx(0.0, abs=1e-14)


def test_flux_inside_theta_reference(golden):
    params = absorbing()
    assert flux_inside(params, 0.1, method="theta") == pytest.approx(
        golden["FLUX_INSIDE_B1_L1_X0P1"], rel=1e-12
    )
    assert flux_inside(params, 0.3, method="theta") == pytest.approx(
        golden["FLUX_INSIDE_B1_L1_X0P3"], rel=1e-12
    )


@pytest.mark.parametrize("method", ["series", "theta"])
def test_flux_inside_antisymmetry(method):
    params = absorbing(beta=0.8, L=1.3)
    x = 0.23 * params.L
    left = flux_inside(params, x, method=method)
    right = flux_inside(params, params.L - x, method=method)
    assert left == pytest.approx(-right, rel=1e-10)


def test_flux_inside_domain_and_method():
    params = absorbing()
    with pytest.raises(OutOfDomain):
        flux_inside(params, 0.0)
    with pytest.raises(OutOfDomain):
        flux_inside(params, 1.0)
    with pytest.raises(InvalidParameter):
        flux_inside(params, 0.5, method="nope")
    with pytest.raises(WrongMode):
        flux_inside(reflecting(), 0.5)


def test_density_inside_resummed_reference(golden):
    value = density_inside_absorbing(absorbing(), 0.5)
    assert value == pytest.approx(golden["DENSITY_INSIDE_B1_L1_X0P5"], rel=1e-13)


def test_density_inside_direct_reference(golden):
    value = density_inside_absorbing(absorbing(), 0.5, N=512, method="direct")
    assert value == pytest.approx(
        golden["DENSITY_INSIDE_PARTIAL_N512_B1_L1_X0P5"], rel=1e-13
    )


@pytest.mark.parametrize("N", [16, 64, 256])
@pytest.mark.parametrize("x", [0.21, 0.5, 0.83])
def test_density_direct_within_tail_bound(N, x):
    params = absorbing()
    direct = density_inside_absorbing(params, x, N=N, method="direct")
    exact = density_inside_absorbing(params, x)
    assert abs(direct - exact) <= density_inside_tail_bound(params, N)


def test_tail_bound_shrinks():
    params = absorbing()
    bounds = [density_inside_tail_bound(params, N) for N in (8, 32, 128, 512)]
    assert bounds == sorted(bounds, reverse=True)


def test_density_inside_walls_and_symmetry():
    params = absorbing(beta=1.4, L=0.9)
    assert density_inside_absorbing(params, 0.0) == 0.0
    assert density_inside_absorbing(params, params.L) == 0.0
    left = density_inside_absorbing(params, 0.2 * params.L)
    right = density_inside_absorbing(params, 0.8 * params.L)
    assert left == pytest.approx(right, rel=1e-12)
    assert left > 0.0


def test_flux_is_density_gradient():
    params = absorbing()
    h = 1e-6
    gradient = (
        density_inside_absorbing(params, 0.3 + h)
        - density_inside_absorbing(params, 0.3 - h)
    ) / (2.0 * h)
    assert gradient == pytest.approx(flux_inside(params, 0.3), rel=1e-8)


def test_density_inside_argument_errors():
    params = absorbing()
    with pytest.raises(InvalidParameter):
        density_inside_absorbing(params, 0.5, method="direct")
    with pytest.raises(InvalidParameter):
        density_inside_absorbing(params, 0.5, method="magic")
    with pytest.raises(OutOfDomain):
        density_inside_absorbing(params, -0.1)
    with pytest.raises(WrongMode):
        density_inside_absorbing(reflecting(), 0.5)


# ----------------------------------------------------------------------
# absorbing force, dual routes


@pytest.mark.parametrize(
    "L, key",
    [(0.5, "FORCE_ABSORBING_B1_L0P5"), (1.0, "FORCE_ABSORBING_B1_L1"), (2.0, "FORCE_ABSORBING_B1_L2")],
)
def test_force_absorbing_reference(golden, L, key):
    result = force_absorbing(absorbing(1.0, L))
    assert result.mode is Boundary.ABSORBING
    assert result.method is Method.CLOSED_FORM
    assert result.value == pytest.approx(golden[key], rel=1e-12)


@pytest.mark.parametrize(
    "L, key",
    [(0.5, "FORCE_ABSORBING_B1_L0P5"), (1.0, "FORCE_ABSORBING_B1_L1"), (2.0, "FORCE_ABSORBING_B1_L2")],
)
def test_force_flux_limit_reference(golden, L, key):
    result = force_absorbing_flux_limit(absorbing(1.0, L))
    assert result.method is Method.FLUX_LIMIT
    assert result.value == pytest.approx(golden[key], rel=1e-7)
    assert result.uncertainty is not None and result.uncertainty > 0.0
    assert abs(result.value - golden[key]) <= result.uncertainty


def test_force_absorbing_mode_and_tol():
    with pytest.raises(WrongMode):
        force_absorbing(reflecting())
    with pytest.raises(InvalidParameter):
        force_absorbing(absorbing(), tol=1e-3)
    with pytest.raises(WrongMode):
        force_absorbing_flux_limit(reflecting())


def test_scaling_reflecting_force():
    # (beta, L) -> (c^2 beta, L / c) multiplies the force by c.
    c = 2.0
    base = force_reflecting(reflecting(1.0, 1.0)).value
    scaled = force_reflecting(reflecting(c * c, 1.0 / c)).value
    assert scaled == pytest.approx(c * base, rel=1e-14)


def test_scaling_absorbing_force():
    # (beta, L) -> (c^2 beta, L / c) multiplies the force by c^2.
    c = 2.0
    base = force_absorbing(absorbing(1.0, 1.0)).value
    scaled = force_absorbing(absorbing(c * c, 1.0 / c)).value
    assert scaled == pytest.approx(c * c * base, rel=1e-10)


# ----------------------------------------------------------------------
# Fourier table


def test_fourier_leading_entry():
    table = fourier_coefficients(absorbing(), 8).table
    expected = -32.0 / (math.pi**2 * (math.pi**2 + 4.0))
    assert table[1, 0] == pytest.approx(expected, rel=1e-14)
    assert table[0, 1] == -table[1, 0]


def test_fourier_parity_structure():
    table = fourier_coefficients(absorbing(0.7, 1.9), 10).table
    m, n = np.indices(table.shape)
    assert np.all(table[(m + n) % 2 == 0] == 0.0)
    assert np.array_equal(table, -table.T)


def test_fourier_density_consistency():
    # Half the y-derivative of the reconstructed field on the diagonal
    # reproduces the direct density partial sum at the same cutoff.
    params = absorbing()
    N = 64
    coeffs = fourier_coefficients(params, N)
    x = 0.37
    theta_ang = math.pi * x / params.L
    idx = np.arange(N + 1, dtype=float)
    cos_v = np.cos(idx * theta_ang)
    sin_v = np.sin(idx * theta_ang)
    recon = 0.5 * math.pi / params.L * float(cos_v @ coeffs.table @ (idx * sin_v))
    direct = density_inside_absorbing(params, x, N=N, method="direct")
    assert recon == pytest.approx(direct, rel=1e-12)


def test_fourier_evaluate_antisymmetric():
    coeffs = fourier_coefficients(absorbing(), 32)
    value = coeffs.evaluate(0.25, 0.75)
    assert coeffs.evaluate(0.75, 0.25) == pytest.approx(-value, rel=1e-12)
    assert coeffs.evaluate(0.4, 0.4) == pytest.approx(0.0, abs=1e-15)


def test_fourier_container_validation():
    params = absorbing()
    with pytest.raises(InvalidParameter):
        fourier_coefficients(params, 0)
    with pytest.raises(WrongMode):
        fourier_coefficients(reflecting(), 4)
    bad = np.ones((3, 3))
    with pytest.raises(InvalidParameter):
        FourierCoefficients(params=params, order=2, table=bad)
