"""Finite Heisenberg group basis of Mat(N) and dense multi-slot operators.

Composite indices put slot 0 slowest: ``row = sum_k i_k prod_{l>k} d_l``,
the same convention ``np.kron`` uses.

Basis elements ``T_gamma`` are defined for every integer pair ``gamma``.  Two
pairs congruent mod N give the same matrix only up to a sign, so products such
as ``T_alpha T_beta = kappa(alpha, beta) T_{alpha+beta}`` hold with the integer
sum ``alpha + beta``, not its reduction.  :func:`basis_sign` gives that sign.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .elliptic import LatticeIndex


class TensorOperator:
    """Dense complex square matrix acting on an ordered list of tensor slots."""

    __array_priority__ = 100
    __slots__ = ("slot_dims", "matrix")

    def __init__(self, matrix, slot_dims: Sequence[int]):
        dims = tuple(int(d) for d in slot_dims)
        mat = np.asarray(matrix, dtype=complex)
        side = math.prod(dims)
        if mat.shape != (side, side):
            raise ValueError(f"matrix of shape {mat.shape} does not fit slots {dims}")
        self.slot_dims = dims
        self.matrix = mat

    @classmethod
    def identity(cls, slot_dims: Sequence[int]) -> "TensorOperator":
        return cls(np.eye(math.prod(slot_dims), dtype=complex), slot_dims)

    @classmethod
    def kron(cls, *ops: "TensorOperator") -> "TensorOperator":
        mat = np.ones((1, 1), dtype=complex)
        dims: tuple[int, ...] = ()
        for op in ops:
            mat = np.kron(mat, op.matrix)
            dims += op.slot_dims
        return cls(mat, dims)

    def _coerce(self, other):
        if isinstance(other, TensorOperator):
            if other.slot_dims != self.slot_dims:
                raise ValueError(f"slot mismatch {self.slot_dims} vs {other.slot_dims}")
            return other.matrix
        return None

    def __matmul__(self, other):
        mat = self._coerce(other)
        if mat is None:
            return NotImplemented
        return TensorOperator(self.matrix @ mat, self.slot_dims)

    def __add__(self, other):
        mat = self._coerce(other)
        if mat is None:
            return NotImplemented
        return TensorOperator(self.matrix + mat, self.slot_dims)

    def __sub__(self, other):
        mat = self._coerce(other)
        if mat is None:
            return NotImplemented
        return TensorOperator(self.matrix - mat, self.slot_dims)

    def __neg__(self):
        return TensorOperator(-self.matrix, self.slot_dims)

    def __mul__(self, scalar):
        if isinstance(scalar, TensorOperator):
            return NotImplemented
        return TensorOperator(self.matrix * complex(scalar), self.slot_dims)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return TensorOperator(self.matrix / complex(scalar), self.slot_dims)

    def __pow__(self, k: int):
        return TensorOperator(np.linalg.matrix_power(self.matrix, k), self.slot_dims)

    def __repr__(self):
        return f"TensorOperator(slot_dims={self.slot_dims})"

    @property
    def side(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "TensorOperator":
        return TensorOperator(self.matrix.conj().T, self.slot_dims)

    def commutator(self, other: "TensorOperator") -> "TensorOperator":
        return self @ other - other @ self

    def anticommutator(self, other: "TensorOperator") -> "TensorOperator":
        return self @ other + other @ self

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0

    def allclose(self, other: "TensorOperator", rtol=1e-12, atol=1e-12) -> bool:
        return np.allclose(self.matrix, self._coerce(other), rtol=rtol, atol=atol)


@dataclass
class StructureConstantTable:
    """Map from normalized index triples ``(alpha, beta, gamma)`` to complex values."""

    n: int
    entries: dict = field(default_factory=dict)

    def _key(self, alpha, beta, gamma):
        out = []
        for x in (alpha, beta, gamma):
            a1, a2 = tuple(x)
            out.append((int(a1) % self.n, int(a2) % self.n))
        return tuple(out)

    def __setitem__(self, key, value):
        self.entries[self._key(*key)] = complex(value)

    def __getitem__(self, key):
        return self.entries[self._key(*key)]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries))


def _pair(gamma, n=None) -> tuple[int, int, int]:
    if isinstance(gamma, LatticeIndex):
        return gamma.a1, gamma.a2, gamma.n
    if n is None:
        raise ValueError("raw index pairs need an explicit lattice order n")
    return int(gamma[0]), int(gamma[1]), int(n)


@lru_cache(maxsize=None)
def _clock_shift(n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n)
    q = np.diag(np.exp(2j * np.pi * k / n))
    # Lambda_{kl} = 1 iff k - l + 1 = 0 mod n
    lam = np.zeros((n, n), dtype=complex)
    lam[k, (k + 1) % n] = 1.0
    q.setflags(write=False)
    lam.setflags(write=False)
    return q, lam


def clock_shift(n: int) -> tuple[TensorOperator, TensorOperator]:
    """Clock ``Q = diag(exp(2 pi i k / n))`` and cyclic shift ``Lambda``."""
    if n < 1:
        raise ValueError("N must be positive")
    q, lam = _clock_shift(n)
    return TensorOperator(q.copy(), (n,)), TensorOperator(lam.copy(), (n,))


@lru_cache(maxsize=None)
def t_matrix(g1: int, g2: int, n: int) -> np.ndarray:
    """``exp(pi i g1 g2 / n) Q^g1 Lambda^g2`` for raw integers (read-only array)."""
    q, lam = _clock_shift(n)
    mat = cmath.exp(1j * math.pi * g1 * g2 / n) * (
        np.linalg.matrix_power(q, g1 % n) @ np.linalg.matrix_power(lam, g2 % n)
    )
    mat.setflags(write=False)
    return mat


def t_basis(gamma, n: int | None = None) -> TensorOperator:
    """Heisenberg basis element ``T_gamma`` of Mat(n)."""
    g1, g2, n = _pair(gamma, n)
    return TensorOperator(t_matrix(g1, g2, n).copy(), (n,))


def basis_sign(g1: int, g2: int, n: int) -> int:
    """Sign ``s`` with ``T_(g1, g2) = s * T_(g1 mod n, g2 mod n)``."""
    p1, p2 = g1 % n, g2 % n
    k1, k2 = (g1 - p1) // n, (g2 - p2) // n
    return -1 if (k1 * p2 + k2 * p1 + n * k1 * k2) % 2 else 1


def kappa(alpha, beta, n: int | None = None) -> complex:
    """``exp(pi i (beta1 alpha2 - beta2 alpha1) / n)`` on raw integer pairs."""
    a1, a2, na = _pair(alpha, n)
    b1, b2, nb = _pair(beta, n)
    if na != nb:
        raise ValueError(f"lattice orders differ: {na} vs {nb}")
    return cmath.exp(1j * math.pi * (b1 * a2 - b2 * a1) / na)


def kappa_sq(a1: int, a2: int, b1: int, b2: int, n: int) -> complex:
    """``kappa^2``, which is periodic in both arguments."""
    return cmath.exp(2j * math.pi * ((b1 * a2 - b2 * a1) % n) / n)


def indices(n: int) -> list[tuple[int, int]]:
    """Representatives ``(a1, a2)`` of Z_n x Z_n in row-major order."""
    return [(a1, a2) for a1 in range(n) for a2 in range(n)]


@lru_cache(maxsize=None)
def pair_stack(n: int) -> np.ndarray:
    """Stack of ``T_alpha (x) T_{-alpha}`` over :func:`indices`, shape (n^2, n^2, n^2)."""
    stack = np.stack([np.kron(t_matrix(a1, a2, n), t_matrix(-a1, -a2, n))
                      for a1, a2 in indices(n)])
    stack.setflags(write=False)
    return stack


def swap_matrix(n: int, m: int | None = None) -> np.ndarray:
    """Explicit swap ``x (x) y -> y (x) x`` on C^n (x) C^m."""
    m = n if m is None else m
    p = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(m):
            p[j * n + i, i * m + j] = 1.0
    return p


def permutation_op(n: int) -> TensorOperator:
    """Permutation ``P_12`` assembled as ``(1/n) sum_alpha T_alpha (x) T_{-alpha}``."""
    return TensorOperator(pair_stack(n).sum(axis=0) / n, (n, n))


def embed(op: TensorOperator, target_slots: Sequence[int],
          ambient_dims: Sequence[int]) -> TensorOperator:
    """Place ``op`` on ``target_slots`` of the ambient space, identity elsewhere.

    ``op``'s k-th slot lands on ``target_slots[k]``; slots may be
    non-adjacent or in reversed order.
    """
    ambient = tuple(int(d) for d in ambient_dims)
    targets = tuple(int(s) for s in target_slots)
    if len(set(targets)) != len(targets):
        raise ValueError(f"repeated slot in {targets}")
    if len(targets) != len(op.slot_dims):
        raise ValueError("one target slot per operator slot is required")
    for s, d in zip(targets, op.slot_dims):
        if not 0 <= s < len(ambient):
            raise ValueError(f"slot {s} out of range for {len(ambient)} slots")
        if ambient[s] != d:
            raise ValueError(f"slot {s} has dimension {ambient[s]}, operator needs {d}")
    rest = [s for s in range(len(ambient)) if s not in targets]
    order = list(targets) + rest
    if order == list(range(len(ambient))):
        rest_side = math.prod(ambient[s] for s in rest)
        return TensorOperator(np.kron(op.matrix, np.eye(rest_side)), ambient)
    rest_side = math.prod(ambient[s] for s in rest)
    big = np.kron(op.matrix, np.eye(rest_side))
    k = len(ambient)
    dims_in_order = [ambient[s] for s in order]
    big = big.reshape(dims_in_order + dims_in_order)
    # axis j of `big` (and j + k) belongs to ambient slot order[j]
    inv = np.argsort(order)
    perm = list(inv) + [k + i for i in inv]
    big = big.transpose(perm).reshape(math.prod(ambient), math.prod(ambient))
    return TensorOperator(big, ambient)


def embed_many(op: TensorOperator, assignments: Iterable[Sequence[int]],
               ambient_dims: Sequence[int]) -> list[TensorOperator]:
    return [embed(op, slots, ambient_dims) for slots in assignments]
