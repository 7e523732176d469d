import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from elliptic_rmatrix.elliptic import (
    DEFAULT_FLOOR,
    LatticeIndex,
    ModularParameter,
    PoleProximity,
    e1,
    e2,
    kronecker_phi,
    kronecker_phi_u_derivative,
    lattice_distance,
    omega,
    phi_index,
    phi_sym,
    pole_floor,
    singularity_floor,
    theta,
    theta_derivatives,
    weierstrass,
    wp,
    wp_prime,
    degenerate_phi,
)

POINTS = [0.31 + 0.17j, -0.42 + 0.05j, 0.07 - 0.33j, 0.5 + 0.4j, 0.9 + 0.71j]


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


cell = st.builds(complex, st.floats(0.0, 1.0), st.floats(0.0, 0.9))


def clear(x, tau=0.2 + 0.9j, floor=0.05):
    return lattice_distance(x, tau) > floor


@pytest.mark.parametrize("z", POINTS)
def test_theta_matches_mpmath_and_direct_sum(z, any_tau):
    th = theta(z, any_tau)
    assert rel(th, oracles.theta_mp(z, any_tau)) < 1e-12
    assert rel(th, oracles.theta_brute(z, any_tau)) < 1e-12


@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("z", POINTS[:3])
def test_theta_derivatives(z, order, tau):
    d = theta_derivatives(z, tau)[order]
    assert rel(d, oracles.theta_derivative_mp(z, tau, order)) < 1e-10


def test_theta_is_odd_with_unit_derivative_scale(tau):
    assert abs(theta(0.0, tau)) < 1e-15
    for z in POINTS:
        assert rel(theta(-z, tau), -theta(z, tau)) < 1e-13


@pytest.mark.parametrize("z", POINTS)
def test_e1_e2_against_mpmath(z, tau):
    assert rel(e1(z, tau), oracles.e1_mp(z, tau)) < 1e-10
    assert rel(e2(z, tau), oracles.e2_mp(z, tau)) < 1e-10


@pytest.mark.parametrize("z", POINTS)
def test_weierstrass_against_q_series(z, any_tau):
    p, dp = weierstrass(z, any_tau)
    assert rel(p, complex(oracles.wp_qseries(z, any_tau))) < 1e-11
    assert rel(dp, oracles.wp_prime_qseries(z, any_tau)) < 1e-10


def test_wp_prime_is_derivative_of_wp(tau):
    for z in POINTS:
        fd = oracles.finite_difference(lambda x: wp(x, tau), z, 1e-3)
        assert rel(wp_prime(z, tau), fd) < 1e-8


@pytest.mark.parametrize("tau_", [0.2 + 0.9j, -0.35 + 1.3j, 0.45 + 0.7j])
def test_weierstrass_differential_equation(tau_):
    g2, g3 = oracles.invariants(tau_)
    for z in POINTS:
        p, dp = weierstrass(z, tau_)
        assert rel(dp * dp, 4 * p ** 3 - g2 * p - g3) < 1e-11


def test_truncated_lattice_sum_roughly_agrees(tau):
    z = 0.31 + 0.17j
    assert rel(wp(z, tau), oracles.wp_lattice(z, tau)) < 1e-3


def test_laurent_starts(tau):
    # wp has no constant term; E1 = 1/z + c z + O(z^3) with c the wp shift
    c = ModularParameter(tau).wp_shift
    with pole_floor(0.0):
        for r in (1e-2, 5e-3):
            z = r * cmath.exp(0.7j)
            assert abs(wp(z, tau) - 1 / z ** 2) < 1e-3
            assert abs(e1(z, tau) - 1 / z - c * z) < 1e-4


@given(cell)
def test_quasiperiodicity_of_theta_and_e1(z):
    tau = 0.2 + 0.9j
    assume(clear(z))
    th = theta(z, tau)
    assert rel(theta(z + 1, tau), -th) < 1e-11
    shifted = -cmath.exp(-1j * math.pi * tau - 2j * math.pi * z) * th
    assert rel(theta(z + tau, tau), shifted) < 1e-10
    assert abs(e1(z + 1, tau) - e1(z, tau)) < 1e-9
    assert abs(e1(z + tau, tau) - (e1(z, tau) - 2j * math.pi)) < 1e-9
    assert rel(wp(z + tau, tau), wp(z, tau)) < 1e-9


@given(cell, cell)
def test_kronecker_phi_symmetry_and_derivative(z, u):
    tau = 0.2 + 0.9j
    assume(clear(z) and clear(u) and clear(z + u))
    assert rel(kronecker_phi(z, u, tau), kronecker_phi(u, z, tau)) < 1e-11
    assert rel(kronecker_phi(-z, -u, tau), -kronecker_phi(z, u, tau)) < 1e-11
    fd = oracles.finite_difference(lambda x: kronecker_phi(z, x, tau), u, 1e-4)
    assert rel(kronecker_phi_u_derivative(z, u, tau), fd) < 1e-6


@given(cell, cell)
def test_phi_product_with_opposite_argument(z, u):
    tau = 0.2 + 0.9j
    assume(clear(z) and clear(u) and clear(z + u) and clear(z - u))
    lhs = kronecker_phi(z, u, tau) * kronecker_phi(z, -u, tau)
    assert rel(lhs, wp(z, tau) - wp(u, tau)) < 1e-9


def test_pole_floor_rejects_and_can_be_lowered(tau):
    assert singularity_floor() == DEFAULT_FLOOR
    with pytest.raises(PoleProximity) as info:
        e1(0.01, tau)
    assert info.value.distance == pytest.approx(0.01)
    with pytest.raises(PoleProximity):
        wp(1 + tau + 0.005j, tau)
    with pole_floor(0.0):
        assert singularity_floor() == 0.0
        assert abs(e1(0.01, tau) - 100) < 0.1
        with pytest.raises(PoleProximity):
            e1(0.0, tau)
    assert singularity_floor() == DEFAULT_FLOOR


def test_pole_index_reported():
    err = PoleProximity(0.0, 0.0).with_index((1, 0))
    assert "(1, 0)" in str(err)


@pytest.mark.parametrize("bad", [0.3, 0.2 - 0.1j, 0.5 + 0.01j])
def test_modular_parameter_domain(bad):
    with pytest.raises(ValueError):
        ModularParameter(bad)


def test_wp_shift_constant(tau):
    # E2 and wp differ by a constant
    t = ModularParameter(tau)
    for z in POINTS:
        assert abs(wp(z, t) - e2(z, t) - t.wp_shift) < 1e-10


class TestLatticeIndex:
    def test_normalizes_and_adds(self):
        a = LatticeIndex(5, -1, 3)
        assert (a.a1, a.a2) == (2, 2)
        b = LatticeIndex(1, 2, 3)
        assert tuple(a + b) == (0, 1)
        assert tuple(a - b) == (1, 0)
        assert tuple(-b) == (2, 1)
        assert LatticeIndex(3, 6, 3).is_zero

    def test_mixed_orders_refused(self):
        with pytest.raises(ValueError):
            LatticeIndex(1, 0, 2) + LatticeIndex(1, 0, 3)

    def test_all_and_half_period(self, tau):
        idx = LatticeIndex.all(3)
        assert len(idx) == 9 and len(set(idx)) == 9
        assert LatticeIndex(1, 1, 2).half_period(tau) == pytest.approx((1 + tau) / 2)


def test_lattice_distance():
    tau = 0.2 + 0.9j
    assert lattice_distance(0.0, tau) == 0.0
    assert lattice_distance(3 - 2 * tau + 0.01, tau) == pytest.approx(0.01)
    assert lattice_distance(0.5, tau) == pytest.approx(0.5)


def test_phi_index_raw_pairs_need_order(tau):
    with pytest.raises(ValueError):
        phi_index((1, 0), 0.3, 0.4, tau)
    v = phi_index(LatticeIndex(0, 1, 2), 0.3 + 0.1j, 0.2 + 0.3j, tau)
    ref = cmath.exp(1j * math.pi * (0.3 + 0.1j)) * kronecker_phi(0.3 + 0.1j, 0.2 + 0.3j, tau)
    assert rel(v, ref) < 1e-14


def test_phi_sym_reduces_to_phi_for_trivial_tilde(tau):
    z, h = 0.3 + 0.1j, 0.2 + 0.3j
    v = phi_sym((1, 1), (0, 0), z, h, tau, n=2, m=3)
    ref = phi_index((1, 1), z, h + omega(1, 1, 2, tau), tau, n=2)
    assert rel(v, ref) < 1e-14


def test_degenerate_phi():
    assert degenerate_phi(0.5, 0.25) == pytest.approx(6.0)
    z, u = 0.3 + 0.2j, 0.1 - 0.4j
    ref = 1 / cmath.tanh(z) + 1 / cmath.tanh(u)
    assert degenerate_phi(z, u, "trigonometric") == pytest.approx(ref)
    with pytest.raises(PoleProximity):
        degenerate_phi(0, 1.0)
