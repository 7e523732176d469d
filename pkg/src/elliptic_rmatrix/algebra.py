"""Quantum Lax operators and Sklyanin-type exchange relations.

Generators ``S_alpha`` are labelled by residues in Z_N x Z_N.  Relations
are derived with integer index arithmetic; a generator with an unreduced
label ``mu`` stands for ``basis_sign(mu) * S_(mu mod N)`` so that
``S = sum_alpha T_alpha S_alpha`` does not depend on representatives.  The
emitted coefficients already carry those signs.

Structure constants use the torsion points of the unreduced index
combinations (e.g. ``w_alpha - w_beta - w_gamma``).  E1 is only
quasi-periodic, so reducing each index separately would shift a constant by
multiples of 2 pi i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .elliptic import (
    ModularParameter,
    LatticeIndex,
    PoleProximity,
    TauLike,
    as_tau,
    e1,
    omega,
    phi_index,
    weierstrass,
)
from .heisenberg import (
    StructureConstantTable,
    TensorOperator,
    basis_sign,
    indices,
    kappa,
    pair_stack,
    swap_matrix,
    t_matrix,
)
from .rmatrix import RMatrixSpec, belavin_coefficients, classical_terms


@dataclass
class RepresentationAssignment:
    """Matrices assigned to the N^2 generators ``S_alpha``."""

    N: int
    dim: int
    images: dict

    def __post_init__(self):
        normalized = {}
        for key, mat in self.images.items():
            idx = key if isinstance(key, LatticeIndex) else LatticeIndex(key[0], key[1], self.N)
            mat = np.asarray(mat, dtype=complex)
            if mat.shape != (self.dim, self.dim):
                raise ValueError(f"image of {idx} has shape {mat.shape}")
            normalized[idx] = mat
        if len(normalized) != self.N ** 2:
            raise ValueError(f"expected {self.N ** 2} images, got {len(normalized)}")
        self.images = normalized

    def image(self, a1: int, a2: int) -> np.ndarray:
        """Image of the generator with (possibly unreduced) label ``(a1, a2)``."""
        mat = self.images[LatticeIndex(a1, a2, self.N)]
        return basis_sign(a1, a2, self.N) * mat


def vector_rep(n: int) -> RepresentationAssignment:
    """``S_alpha -> T_{-alpha}``."""
    return RepresentationAssignment(
        n, n, {LatticeIndex(a1, a2, n): t_matrix(-a1, -a2, n) for a1, a2 in indices(n)}
    )


def scalar_rep(n: int, values: Mapping) -> RepresentationAssignment:
    """One-dimensional assignment from a mapping ``alpha -> number``."""
    return RepresentationAssignment(
        n, 1, {LatticeIndex(a1, a2, n): [[values.get((a1, a2), 0.0)]] for a1, a2 in indices(n)}
    )


def lax(rep: RepresentationAssignment, tau: TauLike, hbar: complex, z: complex) -> TensorOperator:
    """``sum_alpha T_alpha (x) S_alpha phi_alpha(z, w_alpha + hbar)`` on slots (N, d)."""
    n = rep.N
    coeffs = belavin_coefficients(n, tau, hbar, z)
    mat = np.zeros((n * rep.dim, n * rep.dim), dtype=complex)
    for c, (a1, a2) in zip(coeffs, indices(n)):
        mat += c * np.kron(t_matrix(a1, a2, n), rep.images[LatticeIndex(a1, a2, n)])
    return TensorOperator(mat, (n, rep.dim))


def _ints(x, n):
    if isinstance(x, LatticeIndex):
        return x.a1, x.a2
    return int(x[0]), int(x[1])


def coupled_f(alpha, beta, gamma, hbar: complex, eta: complex, tau: TauLike,
              n: int | None = None) -> complex:
    """Structure constant ``f^{hbar, eta}_{alpha, beta, gamma}``."""
    tau = as_tau(tau)
    if n is None:
        n = alpha.n
    a, b, g = _ints(alpha, n), _ints(beta, n), _ints(gamma, n)
    t = tau.tau

    def w(c1, c2):
        return omega(c1, c2, n, t)

    w_g = w(*g)
    w_amg = w(a[0] - g[0], a[1] - g[1])
    if b[0] % n == 0 and b[1] % n == 0:
        return weierstrass(w_g + hbar, tau)[0] - weierstrass(w_amg + eta, tau)[0]
    w_ambmg = w(a[0] - b[0] - g[0], a[1] - b[1] - g[1])
    w_bpg = w(b[0] + g[0], b[1] + g[1])
    return (e1(w_g + hbar, tau) - e1(w_ambmg + eta, tau)
            + e1(w_amg + eta, tau) - e1(w_bpg + hbar, tau))


def sklyanin_f(alpha, beta, gamma, hbar: complex, tau: TauLike, n: int | None = None) -> complex:
    """Sklyanin structure constant, the ``eta = hbar`` case of :func:`coupled_f`."""
    return coupled_f(alpha, beta, gamma, hbar, hbar, tau, n=n)


def structure_table(n: int, tau: TauLike, hbar: complex, eta: complex | None = None
                    ) -> StructureConstantTable:
    eta = hbar if eta is None else eta
    table = StructureConstantTable(n)
    for a in indices(n):
        for b in indices(n):
            for g in indices(n):
                table[a, b, g] = coupled_f(a, b, g, hbar, eta, tau, n=n)
    return table


Generator = tuple  # (family name, (a1, a2))


@dataclass
class Relation:
    """``sum coeff * X Y = 0`` over ordered generator pairs ``(X, Y)``."""

    alpha: tuple[int, int]
    beta: tuple[int, int]
    terms: dict = field(default_factory=dict)

    def add(self, left: Generator, right: Generator, coeff: complex) -> None:
        key = (left, right)
        self.terms[key] = self.terms.get(key, 0j) + coeff

    def evaluate(self, reps: Mapping[str, RepresentationAssignment]) -> np.ndarray:
        out = None
        for ((f1, i1), (f2, i2)), c in self.terms.items():
            term = c * (reps[f1].image(*i1) @ reps[f2].image(*i2))
            out = term if out is None else out + term
        return out

    def term_values(self, reps: Mapping[str, RepresentationAssignment]) -> list[np.ndarray]:
        """Each weighted product ``coeff * X Y`` separately."""
        return [c * (reps[f1].image(*i1) @ reps[f2].image(*i2))
                for ((f1, i1), (f2, i2)), c in self.terms.items()]

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "terms": [
                {"left": [f1, list(i1)], "right": [f2, list(i2)],
                 "coeff": [float(c.real), float(c.imag)]}
                for ((f1, i1), (f2, i2)), c in sorted(self.terms.items())
            ],
        }


def _signed_label(c1: int, c2: int, n: int):
    return (c1 % n, c2 % n), basis_sign(c1, c2, n)


def _relation_terms(rel: Relation, n: int, fam_left: str, fam_right: str,
                    coeff_of_gamma) -> None:
    a1, a2 = rel.alpha
    b1, b2 = rel.beta
    for g1, g2 in indices(n):
        left, s1 = _signed_label(a1 - g1, a2 - g2, n)
        right, s2 = _signed_label(b1 + g1, b2 + g2, n)
        k = kappa((g1, g2), (a1 - b1, a2 - b2), n)
        rel.add((fam_left, left), (fam_right, right), s1 * s2 * k * coeff_of_gamma((g1, g2)))


def sklyanin_relations(n: int, tau: TauLike, hbar: complex) -> list[Relation]:
    """``sum_gamma kappa_{gamma, alpha-beta} f_{alpha,beta,gamma} S_{alpha-gamma} S_{beta+gamma} = 0``."""
    tau = as_tau(tau)
    out = []
    for a in indices(n):
        for b in indices(n):
            rel = Relation(a, b)
            _relation_terms(rel, n, "S", "S",
                            lambda g, a=a, b=b: sklyanin_f(a, b, g, hbar, tau, n=n))
            out.append(rel)
    return out


def coupled_relations(n: int, tau: TauLike, hbar: complex, eta: complex) -> list[Relation]:
    """Cross relations between the ``hbar`` and ``eta`` Sklyanin families."""
    tau = as_tau(tau)
    out = []
    for a in indices(n):
        for b in indices(n):
            rel = Relation(a, b)
            _relation_terms(rel, n, "eta", "hbar",
                            lambda g, a=a, b=b: coupled_f(a, b, g, hbar, eta, tau, n=n))
            _relation_terms(rel, n, "hbar", "eta",
                            lambda g, a=a, b=b: coupled_f(a, b, g, eta, hbar, tau, n=n))
            out.append(rel)
    return out


def prop3_sides(alpha, beta, gamma, z: complex, w: complex, hbar: complex, eta: complex,
                tau: TauLike, n: int) -> tuple[complex, complex]:
    """Both sides of the three-point functional identity behind the coupled relations.

    ``phi^eta_{a-g}(z) phi^hbar_{b+g}(w) phi^hbar_g(z-w)
    - phi^hbar_{b+g}(z) phi^eta_{a-g}(w) phi^eta_{a-b-g}(z-w)
    = f^{hbar,eta}_{a,b,g} phi^{hbar+eta}_a(z) phi_b(w)`` with ``phi_0(w) = 1``.
    """
    tau = as_tau(tau)
    t = tau.tau
    a, b, g = _ints(alpha, n), _ints(beta, n), _ints(gamma, n)

    def ph(idx, x, shift):
        i1, i2 = idx[0] % n, idx[1] % n
        return phi_index((i1, i2), x, omega(i1, i2, n, t) + shift, tau, n=n)

    amg = (a[0] - g[0], a[1] - g[1])
    bpg = (b[0] + g[0], b[1] + g[1])
    ambmg = (a[0] - b[0] - g[0], a[1] - b[1] - g[1])
    lhs = (ph(amg, z, eta) * ph(bpg, w, hbar) * ph(g, z - w, hbar)
           - ph(bpg, z, hbar) * ph(amg, w, eta) * ph(ambmg, z - w, eta))
    phi_b = 1.0 if (b[0] % n == 0 and b[1] % n == 0) else ph(b, w, 0.0)
    rhs = coupled_f(a, b, g, hbar, eta, tau, n=n) * ph(a, z, hbar + eta) * phi_b
    return lhs, rhs


def k_function(alpha, hbar: complex, tau: TauLike, n: int) -> complex:
    """``K^hbar_alpha = E1(hbar + w_alpha) - E1(hbar) - E1(w_alpha)`` (alpha != 0)."""
    tau = as_tau(tau)
    w = omega(*_ints(alpha, n), n, tau.tau)
    return e1(hbar + w, tau) - e1(hbar, tau) - e1(w, tau)


def wp_shifted(alpha, hbar: complex, tau: TauLike, n: int) -> complex:
    """``wp(hbar + w_alpha) - wp(hbar)``."""
    tau = as_tau(tau)
    w = omega(*_ints(alpha, n), n, tau.tau)
    return weierstrass(hbar + w, tau)[0] - weierstrass(hbar, tau)[0]


def lie_poisson_constants(n: int) -> np.ndarray:
    """``C[alpha, beta, gamma]`` with ``{S_alpha, S_beta} = sum_gamma C S_gamma``.

    Read off from ``{S_1, S_2} = N [P_12, S_1]`` by projecting onto
    ``T_alpha (x) T_beta`` (the basis is orthogonal with norm N).
    """
    idx = indices(n)
    p = n * swap_matrix(n)
    basis2 = [np.kron(t_matrix(*a, n), t_matrix(*b, n)) for a in idx for b in idx]
    out = np.zeros((n * n, n * n, n * n), dtype=complex)
    for k, g in enumerate(idx):
        s1 = np.kron(t_matrix(*g, n), np.eye(n))
        x = p @ s1 - s1 @ p
        for ab, tb in enumerate(basis2):
            out[ab // (n * n), ab % (n * n), k] = np.trace(tb.conj().T @ x) / (n * n)
    return out


def classical_lax(values: np.ndarray, coeffs: np.ndarray, n: int) -> np.ndarray:
    """``sum_alpha s_alpha c_alpha T_alpha`` for commuting numbers ``s``."""
    return sum(v * c * t_matrix(*a, n) for v, c, a in zip(values, coeffs, indices(n)))


def poisson_bracket_lhs(values: np.ndarray, coeffs_z: np.ndarray, coeffs_w: np.ndarray,
                        n: int) -> np.ndarray:
    """``{L_1(z), L_2(w)} = sum c_a(z) c_b(w) {S_a, S_b} T_a (x) T_b``."""
    brackets = lie_poisson_constants(n) @ values
    idx = indices(n)
    out = np.zeros((n * n, n * n), dtype=complex)
    for i, a in enumerate(idx):
        for j, b in enumerate(idx):
            out += coeffs_z[i] * coeffs_w[j] * brackets[i, j] * np.kron(
                t_matrix(*a, n), t_matrix(*b, n))
    return out


def classical_coefficients(n: int, tau, z: complex) -> np.ndarray:
    """Coefficients of the classical r-matrix in the ``T_a (x) T_-a`` expansion."""
    r, _ = classical_terms(RMatrixSpec(n, as_tau(tau)), z)
    stack = pair_stack(n)
    return np.array([np.vdot(b, r.matrix) / (n * n) for b in stack])
