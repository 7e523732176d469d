"""GL_N Baxter-Belavin and Yang R-matrices, classical terms and the block Lax matrix."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernel import theta_series
from .elliptic import (
    TWO_PI_I,
    ModularParameter,
    PoleProximity,
    TauLike,
    _guard,
    as_tau,
    kronecker_phi,
    kronecker_phi_u_derivative,
    omega,
    theta_log_derivatives,
    weierstrass,
)
from .heisenberg import TensorOperator, embed, indices, pair_stack, swap_matrix

VARIANTS = ("elliptic", "rational")


@dataclass(frozen=True)
class RMatrixSpec:
    N: int
    tau: ModularParameter | None = None
    variant: str = "elliptic"

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "elliptic":
            if self.tau is None:
                raise ValueError("the elliptic variant needs tau")
            object.__setattr__(self, "tau", as_tau(self.tau))
        elif self.tau is not None:
            raise ValueError("the rational variant takes no tau")


def belavin_coefficients(n: int, tau: TauLike, hbar: complex, z: complex) -> np.ndarray:
    """``phi_alpha(z, w_alpha + hbar)`` for alpha in :func:`indices` order."""
    tau = as_tau(tau)
    t = tau.tau
    _guard(z, tau, "z")
    th_z = theta_series(z, t)[0]
    pref = tau.theta_prime_zero / th_z
    out = np.empty(n * n, dtype=complex)
    for k, (a1, a2) in enumerate(indices(n)):
        w = omega(a1, a2, n, t) + hbar
        try:
            _guard(w, tau, "hbar + w_alpha")
        except PoleProximity as exc:
            raise exc.with_index((a1, a2))
        out[k] = (cmath.exp(TWO_PI_I * a2 * z / n) * pref
                  * theta_series(z + w, t)[0] / theta_series(w, t)[0])
    return out


def from_coefficients(n: int, coeffs: np.ndarray) -> TensorOperator:
    """``sum_alpha c_alpha T_alpha (x) T_{-alpha}``."""
    return TensorOperator(np.tensordot(coeffs, pair_stack(n), axes=1), (n, n))


def belavin(spec: RMatrixSpec, hbar: complex, z: complex) -> TensorOperator:
    """Baxter-Belavin R-matrix ``R^hbar_12(z)``."""
    return from_coefficients(spec.N, belavin_coefficients(spec.N, spec.tau, hbar, z))


def yang(n: int, hbar: complex, z: complex) -> TensorOperator:
    """Rational R-matrix ``1/hbar + N P_12 / z``."""
    if hbar == 0 or z == 0:
        raise ZeroDivisionError("Yang's R-matrix needs hbar != 0 and z != 0")
    mat = np.eye(n * n) / hbar + n * swap_matrix(n) / z
    return TensorOperator(mat, (n, n))


def r_matrix(spec: RMatrixSpec, hbar: complex, z: complex) -> TensorOperator:
    if spec.variant == "rational":
        return yang(spec.N, hbar, z)
    return belavin(spec, hbar, z)


def wp_scalar(spec: RMatrixSpec, z: complex) -> complex:
    """The Weierstrass function for the variant of ``spec`` (``1/z^2`` when rational)."""
    if spec.variant == "rational":
        return 1.0 / z ** 2
    return weierstrass(z, spec.tau)[0]


def wp_prime_scalar(spec: RMatrixSpec, z: complex) -> complex:
    if spec.variant == "rational":
        return -2.0 / z ** 3
    return weierstrass(z, spec.tau)[1]


def r_ab(spec: RMatrixSpec, hbar: complex, points: Sequence[complex], a: int, b: int,
         dims: Sequence[int] | None = None) -> TensorOperator:
    """``R^hbar_ab(z_a - z_b)`` acting on slots ``a, b`` of ``len(points)`` copies."""
    dims = dims or (spec.N,) * len(points)
    return embed(r_matrix(spec, hbar, points[a] - points[b]), (a, b), dims)


def classical_terms(spec: RMatrixSpec, z: complex) -> tuple[TensorOperator, TensorOperator]:
    """``(r, m)`` with ``R^hbar(z) = 1/hbar + r(z) + hbar m(z) + O(hbar^2)``."""
    n = spec.N
    if spec.variant == "rational":
        r = TensorOperator(n * swap_matrix(n) / z, (n, n))
        return r, TensorOperator(np.zeros((n * n, n * n)), (n, n))
    tau = spec.tau
    e1z, _ = theta_log_derivatives(z, tau)
    wpz = weierstrass(z, tau)[0]
    rc = np.empty(n * n, dtype=complex)
    mc = np.empty(n * n, dtype=complex)
    for k, (a1, a2) in enumerate(indices(n)):
        if a1 == 0 and a2 == 0:
            rc[k] = e1z
            mc[k] = 0.5 * (e1z * e1z - wpz)
            continue
        w = omega(a1, a2, n, tau.tau)
        ex = cmath.exp(TWO_PI_I * a2 * z / n)
        try:
            rc[k] = ex * kronecker_phi(z, w, tau)
            mc[k] = ex * kronecker_phi_u_derivative(z, w, tau)
        except PoleProximity as exc:
            raise exc.with_index((a1, a2))
    return from_coefficients(n, rc), from_coefficients(n, mc)


def cm_lax(spec: RMatrixSpec, hbar: complex, marked_points: Sequence[complex],
           n: int | None = None) -> TensorOperator:
    """Block matrix with ``(a, b)`` block ``(1 - delta_ab) R^hbar_ab(z_a - z_b)``.

    Slot 0 carries the block index (dimension n), slots 1..n the copies of C^N.
    """
    points = list(marked_points)
    if n is not None and n != len(points):
        raise ValueError(f"expected {n} marked points, got {len(points)}")
    n = len(points)
    for i in range(n):
        for j in range(i):
            if points[i] == points[j]:
                raise ValueError(f"marked points {j} and {i} coincide")
    dims = (spec.N,) * n
    side = spec.N ** n
    out = np.zeros((n * side, n * side), dtype=complex)
    for a in range(n):
        for b in range(n):
            if a != b:
                out[a * side:(a + 1) * side, b * side:(b + 1) * side] = \
                    r_ab(spec, hbar, points, a, b, dims).matrix
    return TensorOperator(out, (n,) + dims)


def scalar_cm_lax(spec: RMatrixSpec, hbar: complex, marked_points: Sequence[complex]) -> np.ndarray:
    """``l_ab = (1 - delta_ab) N phi(N hbar, z_a - z_b)``."""
    n = len(marked_points)
    l = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            if a != b:
                x = marked_points[a] - marked_points[b]
                if spec.variant == "rational":
                    l[a, b] = spec.N * (1.0 / (spec.N * hbar) + 1.0 / x)
                else:
                    l[a, b] = spec.N * kronecker_phi(spec.N * hbar, x, spec.tau)
    return l
