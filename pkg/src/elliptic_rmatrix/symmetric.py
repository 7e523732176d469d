"""Symmetric R-matrix on Mat(N)^2 (x) Mat(M)^2.

Two-point operators carry slot dims ``(N, N, M, M)`` in the order
``(1, 2, 1~, 2~)``.  Three-point identities use ``(N, N, N, M, M, M)`` with
slots ``(1, 2, 3, 1~, 2~, 3~)``; :func:`sym_r_ab` places the N-part and the
M-part independently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._kernel import theta_series
from .elliptic import (
    TWO_PI_I,
    ModularParameter,
    PoleProximity,
    _guard,
    as_tau,
    omega,
)
from .heisenberg import TensorOperator, embed, indices, swap_matrix, t_matrix
from .rmatrix import VARIANTS


@dataclass(frozen=True)
class SymmetricRSpec:
    N: int
    M: int
    tau: ModularParameter | None = None
    variant: str = "elliptic"

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise ValueError("N and M must be positive")
        if math.gcd(self.N, self.M) != 1 and self.N != self.M:
            raise ValueError(f"(N, M) = ({self.N}, {self.M}) must be coprime or equal")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "elliptic":
            if self.tau is None:
                raise ValueError("the elliptic variant needs tau")
            object.__setattr__(self, "tau", as_tau(self.tau))
        elif self.tau is not None:
            raise ValueError("the rational variant takes no tau")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.N, self.M) == 1

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.N, self.N, self.M, self.M)


@lru_cache(maxsize=None)
def sym_stack(n: int, m: int) -> np.ndarray:
    """``T_a (x) T_-a (x) T~_b (x) T~_-b`` over (a, b) in row-major order."""
    out = []
    for a1, a2 in indices(n):
        ta = np.kron(t_matrix(a1, a2, n), t_matrix(-a1, -a2, n))
        for b1, b2 in indices(m):
            out.append(np.kron(ta, np.kron(t_matrix(b1, b2, m), t_matrix(-b1, -b2, m))))
    stack = np.stack(out)
    stack.setflags(write=False)
    return stack


def sym_coefficients(n: int, m: int, tau, z: complex, hbar: complex) -> np.ndarray:
    """All ``Phi_{alpha, alpha~}(z, hbar)`` in :func:`sym_stack` order."""
    tau = as_tau(tau)
    t = tau.tau
    thp0 = tau.theta_prime_zero
    out = np.empty(n * n * m * m, dtype=complex)
    shifted = {}
    for b1, b2 in indices(m):
        x = z + n * omega(b1, b2, m, t)
        try:
            _guard(x, tau, "z + N w~")
        except PoleProximity as exc:
            raise exc.with_index(((0, 0), (b1, b2)))
        shifted[b1, b2] = (x, theta_series(x, t)[0])
    k = 0
    for a1, a2 in indices(n):
        y = hbar + omega(a1, a2, n, t)
        try:
            _guard(y, tau, "hbar + w_alpha")
        except PoleProximity as exc:
            raise exc.with_index(((a1, a2), (0, 0)))
        th_y = theta_series(y, t)[0]
        for b1, b2 in indices(m):
            x, th_x = shifted[b1, b2]
            phase = TWO_PI_I * (hbar * n * b2 / m + a2 * x / n)
            out[k] = cmath.exp(phase) * thp0 * theta_series(x + y, t)[0] / (th_x * th_y)
            k += 1
    return out


def sym_r(spec: SymmetricRSpec, z: complex, hbar: complex) -> TensorOperator:
    """``sum Phi_{alpha, alpha~}(z, hbar) T_a (x) T_-a (x) T~_b (x) T~_-b``."""
    if spec.variant == "rational":
        return sym_r_rational(spec.N, spec.M, z, hbar)
    c = sym_coefficients(spec.N, spec.M, spec.tau, z, hbar)
    return TensorOperator(np.tensordot(c, sym_stack(spec.N, spec.M), axes=1), spec.dims)


def sym_r_rational(n: int, m: int, z: complex, hbar: complex) -> TensorOperator:
    """``M (1 (x) 1 (x) P~) / hbar + N (P (x) 1~ (x) 1~) / z``."""
    if z == 0 or hbar == 0:
        raise ZeroDivisionError("the rational symmetric R-matrix needs z, hbar != 0")
    mat = (m * np.kron(np.eye(n * n), swap_matrix(m)) / hbar
           + n * np.kron(swap_matrix(n), np.eye(m * m)) / z)
    return TensorOperator(mat, (n, n, m, m))


def sym_r_ab(spec: SymmetricRSpec, z: complex, hbar: complex, n_slots: Sequence[int],
             m_slots: Sequence[int], points: int = 3) -> TensorOperator:
    """Place ``R(z, hbar)`` with its N-part on ``n_slots`` and M-part on ``m_slots``.

    Slot numbers are 0-based within each factor; the ambient space holds
    ``points`` copies of C^N followed by ``points`` copies of C^M.
    """
    dims = (spec.N,) * points + (spec.M,) * points
    slots = (n_slots[0], n_slots[1], points + m_slots[0], points + m_slots[1])
    return embed(sym_r(spec, z, hbar), slots, dims)


def glnm_form(spec: SymmetricRSpec, z: complex, hbar: complex) -> TensorOperator:
    """GL_NM Belavin form ``R(z, hbar) (N P_12 (x) 1~ (x) 1~)`` built directly.

    ``N sum exp(2 pi i N hbar (g2/N + b2/M)) phi(N hbar, w_g + w~_b + z/N)``
    times ``T_g (x) T_-g (x) T~_b (x) T~_-b``.
    """
    if not spec.coprime:
        raise ValueError("the GL_NM form needs coprime N and M")
    n, m = spec.N, spec.M
    tau = spec.tau
    t = tau.tau
    x = n * hbar
    _guard(x, tau, "N hbar")
    th_x = theta_series(x, t)[0]
    c = np.empty(n * n * m * m, dtype=complex)
    k = 0
    for g1, g2 in indices(n):
        for b1, b2 in indices(m):
            y = omega(g1, g2, n, t) + omega(b1, b2, m, t) + z / n
            try:
                _guard(y, tau, "w_g + w~_b + z/N")
            except PoleProximity as exc:
                raise exc.with_index(((g1, g2), (b1, b2)))
            phase = TWO_PI_I * x * (g2 / n + b2 / m)
            c[k] = n * cmath.exp(phase) * tau.theta_prime_zero * theta_series(x + y, t)[0] / (
                th_x * theta_series(y, t)[0])
            k += 1
    return TensorOperator(np.tensordot(c, sym_stack(n, m), axes=1), spec.dims)


def combined_torsion_points(n: int, m: int, tau) -> list[complex]:
    """``w_g + w~_b`` reduced to the fundamental cell, one per ``(g, b)``."""
    t = as_tau(tau).tau
    out = []
    for g1, g2 in indices(n):
        for b1, b2 in indices(m):
            # (M g + N b) / (N M) in units of 1 and tau
            c1 = (m * g1 + n * b1) % (n * m)
            c2 = (m * g2 + n * b2) % (n * m)
            out.append((c1 + c2 * t) / (n * m))
    return out
