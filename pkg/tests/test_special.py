"""Theta series, modular transformation, tail bounds, and erf."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimirlab.model import InvalidParameter
from casimirlab.special import (
    NonConvergence,
    TauNotInUpperHalfPlane,
    ThetaArgument,
    ThetaBranch,
    ThetaTailBound,
    erf,
    theta,
    theta_modular,
    theta_tail,
)


def test_theta_large_im_tau_is_one():
    # Terms beyond n = 0 are below exp(-50 pi), far under double precision.
    value = theta(ThetaArgument(0.0, 50j))
    assert abs(value - 1.0) <= 1e-15


def test_theta_self_dual_point(golden):
    value = theta(ThetaArgument(0.0, 1j))
    expected = math.pi ** 0.25 / math.gamma(0.75)
    assert value.imag == pytest.approx(0.0, abs=1e-15)
    assert value.real == pytest.approx(expected, abs=1e-13)
    assert value.real == pytest.approx(golden["THETA_ZERO_TAU_I"], abs=1e-13)


@pytest.mark.parametrize("y", [0.5, 1.0, 2.0, 4.0])
def test_theta_half_offset_approaches_one(y):
    # Alternating series: the deviation is bounded by its first term.
    # The exact value sits within O(exp(-4 pi^2 y)) of the bound, far
    # below float resolution, so the evaluation tolerance is added.
    value = theta(ThetaArgument(0.5, 1j * math.pi * y), tol=1e-12)
    assert abs(value - 1.0) <= 2.0 * math.exp(-math.pi**2 * y) + 1e-12


@pytest.mark.parametrize("s", np.geomspace(0.05, 20.0, 9))
@pytest.mark.parametrize("z", [0.0, 0.3, 0.5])
def test_modular_consistency(z, s):
    arg = ThetaArgument(z, 1j * s, ThetaBranch.DIRECT_SERIES)
    direct = theta(arg)
    transformed, prefactor = theta_modular(arg)
    recombined = prefactor * theta(
        ThetaArgument(transformed.z, transformed.tau, ThetaBranch.DIRECT_SERIES)
    )
    assert abs(direct - recombined) < 1e-12 * (1.0 + abs(direct))


def test_auto_matches_forced_branches():
    for s in (0.07, 0.4, 3.0):
        arg_auto = ThetaArgument(0.2, 1j * s)
        arg_direct = ThetaArgument(0.2, 1j * s, ThetaBranch.DIRECT_SERIES)
        assert abs(theta(arg_auto) - theta(arg_direct)) < 1e-12


def test_branches_agree_for_complex_z():
    arg = ThetaArgument(0.2 + 0.1j, 2j, ThetaBranch.DIRECT_SERIES)
    via_direct = theta(arg)
    via_modular = theta(ThetaArgument(arg.z, arg.tau, ThetaBranch.MODULAR_TRANSFORM))
    assert abs(via_direct - via_modular) < 1e-12 * (1.0 + abs(via_direct))


def test_modular_example_gaussian_pair():
    # (0, i / (pi y)) maps to (0, i pi y) with prefactor sqrt(pi y).
    y = 2.0
    transformed, prefactor = theta_modular(ThetaArgument(0.0, 1j / (math.pi * y)))
    assert transformed.z == pytest.approx(0.0, abs=1e-15)
    assert transformed.tau.real == pytest.approx(0.0, abs=1e-15)
    assert transformed.tau.imag == pytest.approx(math.pi * y, rel=1e-14)
    assert prefactor.imag == pytest.approx(0.0, abs=1e-14)
    assert prefactor.real == pytest.approx(math.sqrt(math.pi * y), rel=1e-14)


def test_modular_prefactor_squared_is_heat_kernel():
    # At (x / 2L, i pi u / L^2) the squared prefactor reproduces the
    # one-dimensional heat kernel ratio L^2 / (pi u) times exp(-x^2 / 2u).
    L, u, x = 1.5, 0.3, 0.8
    _, prefactor = theta_modular(
        ThetaArgument(x / (2 * L), 1j * math.pi * u / L**2)
    )
    expected = (L**2 / (math.pi * u)) * math.exp(-(x**2) / (2 * u))
    assert (prefactor**2).real == pytest.approx(expected, rel=1e-13)
    assert (prefactor**2).imag == pytest.approx(0.0, abs=1e-13 * expected)


def test_modular_fixed_point():
    transformed, prefactor = theta_modular(ThetaArgument(0.0, 1j))
    assert transformed.z == 0.0
    assert transformed.tau == pytest.approx(1j)
    assert prefactor == pytest.approx(1.0 + 0.0j, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(
    z=st.floats(min_value=-3.0, max_value=3.0),
    s=st.floats(min_value=0.05, max_value=20.0),
)
def test_theta_periodic_in_z(z, s):
    left = theta(ThetaArgument(z + 1.0, 1j * s))
    right = theta(ThetaArgument(z, 1j * s))
    assert abs(left - right) < 1e-11 * (1.0 + abs(right))


@pytest.mark.parametrize("u", [0.1, 0.5, 1.0, 5.0, 50.0])
def test_tail_bound_dominates_brute_force(u):
    brute = sum(math.exp(-(n * n) / u) for n in range(2, 3000))
    result = theta_tail(u)
    assert result.u == u
    assert result.bound >= brute
    assert result.bound >= math.exp(-4.0 / u)
    assert result.bound <= 1.0 / -math.expm1(-4.0 / u)


def test_tail_bound_container_rejects_garbage():
    with pytest.raises(InvalidParameter):
        ThetaTailBound(u=-1.0, bound=0.0)
    with pytest.raises(InvalidParameter):
        ThetaTailBound(u=1.0, bound=-1e-3)
    with pytest.raises(InvalidParameter):
        ThetaTailBound(u=1.0, bound=2.0 / -math.expm1(-4.0))


@pytest.mark.parametrize("tau", [1.0, -1j, 0j, complex("nan")])
def test_tau_outside_upper_half_plane_rejected(tau):
    with pytest.raises(TauNotInUpperHalfPlane):
        ThetaArgument(0.0, tau)


def test_tolerance_domain():
    arg = ThetaArgument(0.0, 1j)
    with pytest.raises(InvalidParameter):
        theta(arg, tol=0.0)
    with pytest.raises(InvalidParameter):
        theta(arg, tol=1e-2)


def test_direct_branch_hits_term_cap():
    arg = ThetaArgument(0.0, 1e-8j, ThetaBranch.DIRECT_SERIES)
    with pytest.raises(NonConvergence):
        theta(arg)


def test_heat_kernel_identity_for_erf_profile():
    # f(x, u) = erf(x / (2 sqrt(2 u))) satisfies df/du = 2 d2f/dx2.
    def f(x, u):
        return erf(x / (2.0 * math.sqrt(2.0 * u)))

    for x, u in [(0.3, 0.2), (0.7, 0.5), (1.5, 1.0), (-0.4, 0.3)]:
        h = 1e-5 * u
        k = 1e-4
        df_du = (f(x, u + h) - f(x, u - h)) / (2 * h)
        d2f_dx2 = (f(x + k, u) - 2 * f(x, u) + f(x - k, u)) / k**2
        assert df_du - 2.0 * d2f_dx2 == pytest.approx(0.0, abs=1e-5)


def test_erf_reference_values(golden):
    assert erf(1.0) == pytest.approx(golden["ERF_ONE"], abs=1e-15)
    assert erf(0.0) == 0.0
    assert erf(-1.0) == -erf(1.0)
    assert erf(10.0) == pytest.approx(1.0, abs=1e-15)
