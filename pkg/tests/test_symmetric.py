import cmath

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from elliptic_rmatrix.elliptic import (
    PoleProximity,
    lattice_distance,
    omega,
    phi_index,
    wp,
)
from elliptic_rmatrix.heisenberg import TensorOperator, embed, indices, kappa_sq, swap_matrix, t_matrix
from elliptic_rmatrix.rmatrix import RMatrixSpec, belavin, yang
from elliptic_rmatrix.symmetric import (
    SymmetricRSpec,
    combined_torsion_points,
    glnm_form,
    sym_r,
    sym_r_ab,
    sym_r_rational,
)

TAU = 0.2 + 0.9j
Z, H = 0.31 + 0.12j, 0.17 + 0.05j


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.abs(a - b).max() / max(np.abs(a).max(), np.abs(b).max())


def reference_sym(n, m, tau, z, hbar):
    """Direct double sum with every factor written out."""
    out = 0
    for a1, a2 in indices(n):
        ta = np.kron(t_matrix(a1, a2, n), t_matrix(-a1, -a2, n))
        for b1, b2 in indices(m):
            tb = np.kron(t_matrix(b1, b2, m), t_matrix(-b1, -b2, m))
            x = z + n * omega(b1, b2, m, tau)
            c = (cmath.exp(2j * cmath.pi * hbar * n * b2 / m)
                 * phi_index((a1, a2), x, hbar + omega(a1, a2, n, tau), tau, n=n))
            out = out + c * np.kron(ta, tb)
    return out


def full_swap(mat, n, m):
    p = np.kron(swap_matrix(n), swap_matrix(m))
    return p @ mat @ p


cell = st.builds(complex, st.floats(0.05, 0.95), st.floats(0.05, 0.85))


def far(x, k, tau=TAU):
    shifts = [omega(a1, a2, k, tau) for a1, a2 in indices(k)]
    return all(lattice_distance(x + s, tau) > 0.05 for s in shifts)


@pytest.mark.parametrize("n,m", [(2, 3), (3, 2), (2, 2), (1, 2)])
def test_matches_double_sum(n, m):
    s = SymmetricRSpec(n, m, TAU)
    assert rel(sym_r(s, Z, H).matrix, reference_sym(n, m, TAU, Z, H)) < 1e-13


def test_m1_collapse_is_belavin():
    a = sym_r(SymmetricRSpec(2, 1, TAU), Z, H).matrix
    b = belavin(RMatrixSpec(2, TAU), H, Z).matrix
    assert rel(a, b) < 1e-13


def test_n1_collapse_swaps_arguments():
    a = sym_r(SymmetricRSpec(1, 3, TAU), Z, H)
    assert a.slot_dims == (1, 1, 3, 3)
    b = belavin(RMatrixSpec(3, TAU), Z, H).matrix
    assert rel(a.matrix, b) < 1e-13


def test_equal_orders_use_kappa_squared():
    n = 2
    out = 0
    for a1, a2 in indices(n):
        for b1, b2 in indices(n):
            c = kappa_sq(a1, a2, b1, b2, n) * phi_index(
                (a1, a2), Z, omega(a1, a2, n, TAU) + H, TAU, n=n)
            out = out + c * np.kron(
                np.kron(t_matrix(a1, a2, n), t_matrix(-a1, -a2, n)),
                np.kron(t_matrix(b1, b2, n), t_matrix(-b1, -b2, n)))
    assert rel(sym_r(SymmetricRSpec(2, 2, TAU), Z, H).matrix, out) < 1e-10


@given(cell, cell)
def test_skew_symmetry(z, h):
    n, m = 2, 3
    assume(far(h, n) and far(z * m / n, m))
    s = SymmetricRSpec(n, m, TAU)
    try:
        lhs = sym_r(s, z, h).matrix
        rhs = -full_swap(sym_r(s, -z, -h).matrix, n, m)
    except PoleProximity:
        assume(False)
    assert rel(lhs, rhs) < 1e-10


@pytest.mark.parametrize("n,m", [(2, 3), (3, 2)])
def test_unitarity(n, m):
    s = SymmetricRSpec(n, m, TAU)
    dims = s.dims
    lhs = sym_r(s, Z, H) @ embed(sym_r(s, -Z, H), (1, 0, 2, 3), dims)
    scalar = n * n * m * m * (wp(n * H, TAU) - wp(m * Z, TAU))
    assert rel(lhs.matrix, scalar * np.eye(lhs.side)) < 1e-9


def assoc_yb_sides(s, z, h):
    def R(a, b, c, d):
        return sym_r_ab(s, z[a] - z[b], h[c] - h[d], (a, b), (c, d))

    lhs = R(0, 1, 0, 1) @ R(1, 2, 2, 1)
    rhs = R(0, 2, 2, 1) @ R(0, 1, 0, 2) + R(1, 2, 2, 0) @ R(0, 2, 0, 1)
    return lhs.matrix, rhs.matrix


@pytest.mark.parametrize("n,m", [(2, 3), (3, 2)])
def test_associative_yang_baxter(n, m):
    s = SymmetricRSpec(n, m, TAU)
    z = [0.11 + 0.07j, 0.52 + 0.31j, 0.83 + 0.12j]
    h = [0.06 + 0.21j, 0.44 + 0.05j, 0.71 + 0.38j]
    lhs, rhs = assoc_yb_sides(s, z, h)
    assert rel(lhs, rhs) < 1e-8


class TestRational:
    def test_m1_is_yang(self):
        a = sym_r_rational(3, 1, Z, H).matrix
        b = yang(3, H, Z).matrix
        # yang(N, hbar, z) = 1/hbar + N P / z
        assert rel(a, b) < 1e-14

    def test_associative_yang_baxter(self):
        s = SymmetricRSpec(2, 3, variant="rational")
        lhs, rhs = assoc_yb_sides(s, [0.9, 0.4 + 0.2j, 0.1], [0.3, 0.75j, -0.2 + 0.1j])
        assert rel(lhs, rhs) < 1e-13

    def test_product_with_tilde_swap_is_yang_type(self):
        n, m = 2, 3
        h = 0.37 + 0.1j
        z = [0.9, 0.4 + 0.2j, 0.1]
        dims = (n, n, n, m, m, m)
        ptilde = np.kron(np.eye(n * n), swap_matrix(m))

        def Y(a, b):
            op = sym_r_rational(n, m, z[a] - z[b], h).matrix @ ptilde
            return embed(TensorOperator(op, (n, n, m, m)), (a, b, 3 + a, 3 + b), dims)

        lhs = Y(0, 1) @ Y(0, 2) @ Y(1, 2)
        rhs = Y(1, 2) @ Y(0, 2) @ Y(0, 1)
        assert rel(lhs.matrix, rhs.matrix) < 1e-13

    def test_zero_arguments_refused(self):
        with pytest.raises(ZeroDivisionError):
            sym_r_rational(2, 3, 0, 0.1)


class TestGLNM:
    @pytest.mark.parametrize("n,m", [(2, 3), (3, 2)])
    def test_matches_product_with_permutation(self, n, m):
        s = SymmetricRSpec(n, m, TAU)
        p = n * np.kron(swap_matrix(n), np.eye(m * m))
        assert rel(sym_r(s, Z, H).matrix @ p, glnm_form(s, Z, H).matrix) < 1e-9

    def test_m1_is_belavin_times_permutation(self):
        s = SymmetricRSpec(2, 1, TAU)
        ref = belavin(RMatrixSpec(2, TAU), H, Z).matrix @ (2 * swap_matrix(2))
        assert rel(glnm_form(s, Z, H).matrix, ref) < 1e-10

    def test_needs_coprime(self):
        with pytest.raises(ValueError):
            glnm_form(SymmetricRSpec(2, 2, TAU), Z, H)

    @pytest.mark.parametrize("n,m", [(2, 3), (3, 4), (1, 5)])
    def test_combined_torsion_points_distinct(self, n, m):
        pts = combined_torsion_points(n, m, TAU)
        assert len(pts) == n * n * m * m
        for i, x in enumerate(pts):
            for y in pts[:i]:
                assert lattice_distance(x - y, TAU) > 1e-9


def test_spec_validation():
    with pytest.raises(ValueError, match="coprime"):
        SymmetricRSpec(2, 4, TAU)
    with pytest.raises(ValueError):
        SymmetricRSpec(0, 1, TAU)
    with pytest.raises(ValueError):
        SymmetricRSpec(2, 3)
    assert SymmetricRSpec(3, 3, TAU).dims == (3, 3, 3, 3)
    assert not SymmetricRSpec(3, 3, TAU).coprime


def test_pole_reports_index_pair():
    s = SymmetricRSpec(2, 3, TAU)
    with pytest.raises(PoleProximity) as info:
        sym_r(s, 0.3, 0.5 + 0.001)
    assert "(1, 0)" in str(info.value)
