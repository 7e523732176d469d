"""Registry of checkable identities.

Each descriptor names its sampled parameters and a builder returning
``(lhs, rhs)`` arrays for one sample.  Builders raise
:class:`~elliptic_rmatrix.elliptic.PoleProximity` when a sample is too close
to a pole; the runner then resamples.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Callable

import numpy as np

from .. import algebra as alg
from ..elliptic import (
    TWO_PI_I,
    ModularParameter,
    as_tau,
    e1,
    kronecker_phi,
    omega,
    phi_index,
    phi_sym,
    pole_floor,
    weierstrass,
)
from ..heisenberg import (
    TensorOperator,
    basis_sign,
    clock_shift,
    embed,
    indices,
    kappa,
    kappa_sq,
    swap_matrix,
    t_matrix,
)
from ..rmatrix import (
    RMatrixSpec,
    belavin,
    belavin_coefficients,
    classical_terms,
    cm_lax,
    r_ab,
    r_matrix,
    scalar_cm_lax,
)
from ..symmetric import SymmetricRSpec, glnm_form, sym_r, sym_r_ab

DEFAULT_TOL = 1e-8
SCALAR_TOL = 1e-9


@dataclass(frozen=True)
class Setting:
    """Sizes, modulus and variant an identity is evaluated at."""

    N: int
    M: int = 1
    tau: complex | None = None
    variant: str = "elliptic"

    @cached_property
    def mod(self) -> ModularParameter | None:
        return None if self.tau is None else as_tau(self.tau)

    @cached_property
    def gl(self) -> RMatrixSpec:
        return RMatrixSpec(self.N, self.mod, self.variant)

    @cached_property
    def sym(self) -> SymmetricRSpec:
        return SymmetricRSpec(self.N, self.M, self.mod, self.variant)

    def wp(self, x):
        if self.variant == "rational":
            return 1.0 / x ** 2
        return weierstrass(x, self.mod)[0]

    def wp_prime(self, x):
        if self.variant == "rational":
            return -2.0 / x ** 3
        return weierstrass(x, self.mod)[1]


@dataclass
class IdentityDescriptor:
    key: str
    summary: str
    roles: dict
    builder: Callable
    sizes: tuple = ((1, 1), (2, 1), (3, 1))
    tol: float = DEFAULT_TOL
    samples: int = 100
    variants: tuple = ("elliptic",)
    as_printed: bool = False
    group: str = "gl"

    @property
    def arity(self) -> int:
        return len(self.roles)


REGISTRY: dict[str, IdentityDescriptor] = {}


def register(key, summary, roles, sizes=None, **kw):
    def deco(fn):
        if key in REGISTRY:
            raise ValueError(f"duplicate identity key {key!r}")
        d = IdentityDescriptor(key, summary, dict(roles), fn, **kw)
        if sizes is not None:
            d.sizes = tuple(sizes)
        REGISTRY[key] = d
        return fn
    return deco


Z3 = {"z1": "spectral", "z2": "spectral", "z3": "spectral"}
GL_SIZES = ((1, 1), (2, 1), (3, 1))
GL23 = ((2, 1), (3, 1))
SYM_SIZES = ((2, 3), (3, 2))
BOTH = ("elliptic", "rational")


def _stack(ops):
    return np.stack([o.matrix if isinstance(o, TensorOperator) else np.asarray(o) for o in ops])


def _eye(side):
    return np.eye(side, dtype=complex)


# ---------------------------------------------------------------- scalar


def _phi(s, z, u):
    return kronecker_phi(z, u, s.mod)


@register("fay", "Fay trisecant identity for the Kronecker function",
          {**Z3, "hbar": "planck", "eta": "planck"}, sizes=((1, 1),), tol=SCALAR_TOL,
          samples=200, group="scalar")
def _fay(s, p):
    z12, z23, z13 = p["z1"] - p["z2"], p["z2"] - p["z3"], p["z1"] - p["z3"]
    h, e = p["hbar"], p["eta"]
    lhs = _phi(s, z12, h) * _phi(s, z23, e)
    rhs = _phi(s, z13, e) * _phi(s, z12, h - e) + _phi(s, z23, e - h) * _phi(s, z13, h)
    return lhs, rhs


@register("phi-quasiperiodic", "phi(x+1,y) = phi(x,y), phi(x+tau,y) = exp(-2 pi i y) phi(x,y)",
          {"x": "spectral", "y": "planck"}, sizes=((1, 1),), tol=SCALAR_TOL, samples=200,
          group="scalar")
def _phi_qp(s, p):
    x, y, t = p["x"], p["y"], s.mod.tau
    lhs = [_phi(s, x + 1, y), _phi(s, x + t, y), _phi(s, y, x)]
    rhs = [_phi(s, x, y), cmath.exp(-TWO_PI_I * y) * _phi(s, x, y), _phi(s, x, y)]
    return np.array(lhs), np.array(rhs)


@register("fay-aa904", "Fay identity phi(x,u)phi(y,w) in two variables",
          {"x": "spectral", "y": "spectral", "u": "planck", "w": "planck"}, sizes=((1, 1),),
          tol=SCALAR_TOL, samples=200, group="scalar")
def _fay904(s, p):
    x, y, u, w = p["x"], p["y"], p["u"], p["w"]
    lhs = _phi(s, x, u) * _phi(s, y, w)
    rhs = _phi(s, x - y, u) * _phi(s, y, u + w) + _phi(s, y - x, w) * _phi(s, x, u + w)
    return lhs, rhs


@register("fay-aa905", "degenerate Fay identity with E1",
          {"x": "spectral", "z": "planck", "w": "planck"}, sizes=((1, 1),), tol=SCALAR_TOL,
          samples=200, group="scalar")
def _fay905(s, p):
    x, z, w = p["x"], p["z"], p["w"]
    t = s.mod
    lhs = _phi(s, x, z) * _phi(s, x, w)
    rhs = _phi(s, x, z + w) * (e1(x, t) + e1(z, t) + e1(w, t) - e1(x + z + w, t))
    return lhs, rhs


@register("phi-wp", "phi(z,u) phi(z,-u) = wp(z) - wp(u) = E2(z) - E2(u)",
          {"z": "spectral", "u": "planck"}, sizes=((1, 1),), tol=SCALAR_TOL, samples=200,
          group="scalar")
def _phi_wp(s, p):
    from ..elliptic import e2
    z, u = p["z"], p["u"]
    lhs = _phi(s, z, u) * _phi(s, z, -u)
    return np.array([lhs, lhs]), np.array([s.wp(z) - s.wp(u), e2(z, s.mod) - e2(u, s.mod)])


@register("fay-aa907", "three-point E1 identity behind the structure constants",
          {"z": "spectral", "w": "spectral", "u1": "planck", "u2": "planck", "v": "planck"},
          sizes=((1, 1),), tol=SCALAR_TOL, samples=200, group="scalar")
def _fay907(s, p):
    z, w, u1, u2, v = p["z"], p["w"], p["u1"], p["u2"], p["v"]
    t = s.mod
    lhs = (_phi(s, z, u1 - v) * _phi(s, w, u2 + v) * _phi(s, z - w, v)
           - _phi(s, z, u2 + v) * _phi(s, w, u1 - v) * _phi(s, z - w, u1 - u2 - v))
    rhs = _phi(s, z, u1) * _phi(s, w, u2) * (
        e1(v, t) - e1(u1 - u2 - v, t) + e1(u1 - v, t) - e1(u2 + v, t))
    return lhs, rhs


@register("fay-aa908", "three-point wp identity behind the beta = 0 structure constants",
          {"z": "spectral", "w": "spectral", "u": "planck", "v": "planck"},
          sizes=((1, 1),), tol=SCALAR_TOL, samples=200, group="scalar")
def _fay908(s, p):
    z, w, u, v = p["z"], p["w"], p["u"], p["v"]
    lhs = (_phi(s, z, u - v) * _phi(s, w, v) * _phi(s, z - w, v)
           - _phi(s, z, v) * _phi(s, w, u - v) * _phi(s, z - w, u - v))
    rhs = _phi(s, z, u) * (s.wp(v) - s.wp(u - v))
    return lhs, rhs


@register("wp-average", "sum over torsion points of wp(w_alpha + hbar) = N^2 wp(N hbar)",
          {"hbar": "planck"}, sizes=((2, 1), (3, 1)), tol=SCALAR_TOL, samples=200,
          group="scalar")
def _wp_avg(s, p):
    h, n, t = p["hbar"], s.N, s.mod.tau
    lhs = sum(s.wp(omega(a1, a2, n, t) + h) for a1, a2 in indices(n))
    return lhs, n * n * s.wp(n * h)


def _fourier(s, p, swap):
    z, h, n, t = p["z"], p["hbar"], s.N, s.mod.tau
    lhs, rhs = [], []
    # gamma runs over one extra period to exercise raw representatives
    for g1, g2 in product(range(-1, n + 1), repeat=2):
        if swap:
            acc = sum(kappa_sq(a1, a2, g1, g2, n)
                      * phi_index((a1, a2), z, omega(a1, a2, n, t) + h, s.mod, n=n)
                      for a1, a2 in indices(n)) / n
            ref = phi_index((g1, g2), n * h, omega(g1, g2, n, t) + z / n, s.mod, n=n)
        else:
            acc = sum(kappa_sq(a1, a2, g1, g2, n)
                      * phi_index((a1, a2), n * h, omega(a1, a2, n, t) + z / n, s.mod, n=n)
                      for a1, a2 in indices(n)) / n
            ref = phi_index((g1, g2), z, omega(g1, g2, n, t) + h, s.mod, n=n)
        lhs.append(acc)
        rhs.append(ref)
    return np.array(lhs), np.array(rhs)


@register("fourier-aa909", "finite Fourier transform of phi_alpha(N hbar, w_alpha + z/N)",
          {"z": "spectral", "hbar": "planck"}, sizes=((2, 1), (3, 1)), tol=SCALAR_TOL,
          samples=200, group="scalar")
def _f909(s, p):
    return _fourier(s, p, swap=False)


@register("fourier-a910", "finite Fourier transform of phi_alpha(z, w_alpha + hbar)",
          {"z": "spectral", "hbar": "planck"}, sizes=((2, 1), (3, 1)), tol=SCALAR_TOL,
          samples=200, group="scalar")
def _f910(s, p):
    return _fourier(s, p, swap=True)


@register("index-periodicity-x752", "phi_alpha is periodic in alpha with w shifted alongside",
          {"z": "spectral", "hbar": "planck"}, sizes=((2, 1), (3, 1)), tol=1e-12,
          samples=100, group="scalar")
def _x752(s, p):
    z, h, n, t = p["z"], p["hbar"], s.N, s.mod.tau
    lhs, rhs = [], []
    for a1, a2 in indices(n):
        base = phi_index((a1, a2), z, omega(a1, a2, n, t) + h, s.mod, n=n)
        for b1, b2 in ((a1 + n, a2), (a1, a2 + n)):
            lhs.append(phi_index((b1, b2), z, omega(b1, b2, n, t) + h, s.mod, n=n))
            rhs.append(base)
    return np.array(lhs), np.array(rhs)


# ------------------------------------------------------------- GL_N R-matrix


def _pts(p):
    return (p["z1"], p["z2"], p["z3"])


def _rab(s, h, pts, a, b):
    return r_ab(s.gl, h, pts, a, b)


@register("assoc-yb", "associative Yang-Baxter equation", {**Z3, "hbar": "planck", "eta": "planck"},
          sizes=GL_SIZES, variants=BOTH)
def _assoc(s, p):
    pts, h, e = _pts(p), p["hbar"], p["eta"]
    R = lambda hh, a, b: _rab(s, hh, pts, a, b)
    lhs = R(h, 0, 1) @ R(e, 1, 2)
    rhs = R(e, 0, 2) @ R(h - e, 0, 1) + R(e - h, 1, 2) @ R(h, 0, 2)
    return lhs.matrix, rhs.matrix


@register("qyb", "quantum Yang-Baxter equation", {**Z3, "hbar": "planck"}, sizes=GL_SIZES,
          variants=BOTH)
def _qyb(s, p):
    pts, h = _pts(p), p["hbar"]
    R = lambda a, b: _rab(s, h, pts, a, b)
    return (R(0, 1) @ R(0, 2) @ R(1, 2)).matrix, (R(1, 2) @ R(0, 2) @ R(0, 1)).matrix


@register("skew", "skew-symmetry R^hbar_ab = -R^-hbar_ba",
          {"z1": "spectral", "z2": "spectral", "hbar": "planck"}, sizes=GL_SIZES, variants=BOTH)
def _skew(s, p):
    pts, h = (p["z1"], p["z2"]), p["hbar"]
    return _rab(s, h, pts, 0, 1).matrix, -_rab(s, -h, pts, 1, 0).matrix


@register("unitarity", "R_12 R_21 = N^2 (wp(N hbar) - wp(z))",
          {"z": "spectral", "hbar": "planck"}, sizes=GL_SIZES, variants=BOTH)
def _unit(s, p):
    z, h, n = p["z"], p["hbar"], s.N
    pts = (z, 0.0)
    lhs = _rab(s, h, pts, 0, 1) @ _rab(s, h, pts, 1, 0)
    return lhs.matrix, n * n * (s.wp(n * h) - s.wp(z)) * _eye(n * n)


RESIDUE_RADIUS = 1e-2


def contour_residue(fn, radius=RESIDUE_RADIUS, points=8):
    """Mean of ``x f(x)`` over ``points`` equally spaced nodes on ``|x| = radius``."""
    with pole_floor(0.0):
        acc = None
        for k in range(points):
            x = radius * cmath.exp(TWO_PI_I * k / points)
            v = x * np.asarray(fn(x))
            acc = v if acc is None else acc + v
    return acc / points


@register("residue", "res_{z=0} R = N P_12 by contour averaging", {"hbar": "planck"},
          sizes=GL_SIZES, tol=1e-6, variants=BOTH)
def _residue(s, p):
    h, n = p["hbar"], s.N
    lhs = contour_residue(lambda z: r_matrix(s.gl, h, z).matrix)
    return lhs, n * swap_matrix(n)


@register("slot-swap-a190", "R_ba(z) = P_ab R_ab(-z) P_ab", {"z": "spectral", "hbar": "planck"},
          sizes=GL_SIZES, variants=BOTH)
def _a190(s, p):
    z, h, n = p["z"], p["hbar"], s.N
    P = swap_matrix(n)
    rba = _rab(s, h, (z, 0.0), 1, 0).matrix
    return rba, P @ r_matrix(s.gl, h, -z).matrix @ P


@register("cubic-x21", "Yang-Baxter equation for every ordering of three slots",
          {**Z3, "hbar": "planck"}, sizes=GL_SIZES, variants=BOTH, group="cubic")
def _x21(s, p):
    pts, h = _pts(p), p["hbar"]
    R = lambda i, j: _rab(s, h, pts, i, j)
    lhs, rhs = [], []
    for a, b, c in permutations(range(3)):
        lhs.append(R(a, b) @ R(a, c) @ R(b, c))
        rhs.append(R(b, c) @ R(a, c) @ R(a, b))
    return _stack(lhs), _stack(rhs)


@register("cubic-x22", "R_ab R_bc R_ca + R_ac R_cb R_ba = -N^3 wp'(N hbar)",
          {**Z3, "hbar": "planck"}, sizes=GL_SIZES, variants=BOTH, group="cubic")
def _x22(s, p):
    pts, h, n = _pts(p), p["hbar"], s.N
    R = lambda i, j: _rab(s, h, pts, i, j)
    lhs, rhs = [], []
    scal = -n ** 3 * s.wp_prime(n * h) * _eye(n ** 3)
    for a, b, c in permutations(range(3)):
        lhs.append(R(a, b) @ R(b, c) @ R(c, a) + R(a, c) @ R(c, b) @ R(b, a))
        rhs.append(scal)
    return _stack(lhs), _stack(rhs)


@register("cubic-x23", "cubic relation with two Planck constants and a wp right side",
          {**Z3, "hbar": "planck", "eta": "planck"}, sizes=GL_SIZES, variants=BOTH,
          group="cubic")
def _x23(s, p):
    pts, h, e, n = _pts(p), p["hbar"], p["eta"], s.N
    R = lambda hh, i, j: _rab(s, hh, pts, i, j)
    lhs, rhs = [], []
    for a, b, c in permutations(range(3)):
        lhs.append(R(e, a, b) @ R(h, a, c) @ R(e, b, c) - R(h, b, c) @ R(e, a, c) @ R(h, a, b))
        rhs.append(R(h + e, a, c) * (n * n * (s.wp(n * e) - s.wp(n * h))))
    return _stack(lhs), _stack(rhs)


@register("cubic-x24", "Yang-Baxter equation with two Planck constants",
          {**Z3, "hbar": "planck", "eta": "planck"}, sizes=GL_SIZES, variants=BOTH,
          group="cubic")
def _x24(s, p):
    pts, h, e = _pts(p), p["hbar"], p["eta"]
    R = lambda hh, i, j: _rab(s, hh, pts, i, j)
    lhs, rhs = [], []
    for a, b, c in permutations(range(3)):
        lhs.append(R(e, a, b) @ R(h, a, c) @ R(e, b, c) + R(h, a, b) @ R(e, a, c) @ R(h, b, c))
        rhs.append(R(e, b, c) @ R(h, a, c) @ R(e, a, b) + R(h, b, c) @ R(e, a, c) @ R(h, a, b))
    return _stack(lhs), _stack(rhs)


def _cm(s, p, n_pts):
    h = p["hbar"]
    pts = [p[f"z{k + 1}"] for k in range(n_pts)]
    L = cm_lax(s.gl, h, pts)
    l = scalar_cm_lax(s.gl, h, pts)
    side = s.N ** n_pts
    lhs, rhs = [], []
    for k in (2, 3):
        Lk = np.linalg.matrix_power(L.matrix, k)
        lk = np.linalg.matrix_power(l, k)
        for a in range(n_pts):
            lhs.append(Lk[a * side:(a + 1) * side, a * side:(a + 1) * side])
            rhs.append(lk[a, a] * _eye(side))
    return np.stack(lhs), np.stack(rhs)


@register("cm-lax-n2", "diagonal blocks of the block Lax matrix powers are scalar (two points)",
          {"z1": "spectral", "z2": "spectral", "hbar": "planck"}, sizes=((2, 1), (3, 1)),
          variants=BOTH, group="cm")
def _cm2(s, p):
    return _cm(s, p, 2)


@register("cm-lax-n3", "diagonal blocks of the block Lax matrix powers are scalar (three points)",
          {**Z3, "hbar": "planck"}, sizes=((2, 1), (3, 1)), variants=BOTH, group="cm")
def _cm3(s, p):
    return _cm(s, p, 3)


def _gl_ops(n):
    q, lam = (x.matrix for x in clock_shift(n))
    return q, lam, np.linalg.inv(q), np.linalg.inv(lam), np.eye(n)


@register("zn-symmetry-x7499", "R is invariant under conjugation by g (x) g for g = Q, Lambda",
          {"z": "spectral", "hbar": "planck"}, sizes=GL_SIZES)
def _x7499(s, p):
    R = belavin(s.gl, p["hbar"], p["z"]).matrix
    q, lam, qi, li, _ = _gl_ops(s.N)
    lhs = [np.kron(gi, gi) @ R @ np.kron(g, g) for g, gi in ((q, qi), (lam, li))]
    return np.stack(lhs), np.stack([R, R])


@register("z-quasiperiodic-x749", "quasiperiodicity of R in z on the lattice 1, tau",
          {"z": "spectral", "hbar": "planck"}, sizes=GL_SIZES)
def _x749(s, p):
    z, h, t = p["z"], p["hbar"], s.mod.tau
    q, lam, qi, li, one = _gl_ops(s.N)
    R = belavin(s.gl, h, z).matrix
    lhs = [belavin(s.gl, h, z + 1).matrix, belavin(s.gl, h, z + t).matrix]
    rhs = [np.kron(qi, one) @ R @ np.kron(q, one),
           cmath.exp(-TWO_PI_I * h) * np.kron(li, one) @ R @ np.kron(lam, one)]
    return np.stack(lhs), np.stack(rhs)


@register("hbar-quasiperiodic-x750", "quasiperiodicity of R in hbar on the lattice 1/N, tau/N",
          {"z": "spectral", "hbar": "planck"}, sizes=GL_SIZES)
def _x750(s, p):
    z, h, t, n = p["z"], p["hbar"], s.mod.tau, s.N
    q, lam, qi, li, one = _gl_ops(n)
    R = belavin(s.gl, h, z).matrix
    lhs = [belavin(s.gl, h + 1 / n, z).matrix, belavin(s.gl, h + t / n, z).matrix]
    rhs = [np.kron(qi, one) @ R @ np.kron(one, q),
           cmath.exp(-TWO_PI_I * z / n) * np.kron(li, one) @ R @ np.kron(one, lam)]
    return np.stack(lhs), np.stack(rhs)


@register("shift-x751", "T_gamma^-1 (x) 1 R (1 (x) T_gamma) = exp(2 pi i z gamma_2/N) R^{hbar+w_gamma}",
          {"z": "spectral", "hbar": "planck"}, sizes=GL_SIZES)
def _x751(s, p):
    z, h, n, t = p["z"], p["hbar"], s.N, s.mod.tau
    R = belavin(s.gl, h, z).matrix
    one = np.eye(n)
    lhs, rhs = [], []
    for g1, g2 in indices(n):
        lhs.append(np.kron(t_matrix(-g1, -g2, n), one) @ R @ np.kron(one, t_matrix(g1, g2, n)))
        rhs.append(cmath.exp(TWO_PI_I * z * g2 / n)
                   * belavin(s.gl, h + omega(g1, g2, n, t), z).matrix)
    return np.stack(lhs), np.stack(rhs)


@register("argument-symmetry-x748", "R^hbar(z) = R^{z/N}(N hbar) P",
          {"z": "spectral", "hbar": "planck"}, sizes=GL_SIZES, variants=BOTH)
def _x748(s, p):
    z, h, n = p["z"], p["hbar"], s.N
    lhs = r_matrix(s.gl, h, z).matrix
    return lhs, r_matrix(s.gl, z / n, n * h).matrix @ swap_matrix(n)


# ------------------------------------------------------------ classical limit


def _r_m(s, z):
    r, m = classical_terms(s.gl, z)
    return r, m


def _emb(op, a, b, npts):
    return embed(op, (a, b), (op.slot_dims[0],) * npts)


@register("classical-x052", "classical Yang-Baxter equation", dict(Z3), sizes=GL_SIZES,
          variants=BOTH, tol=SCALAR_TOL, group="classical")
def _x052(s, p):
    pts = _pts(p)
    r = lambda a, b: _emb(_r_m(s, pts[a] - pts[b])[0], a, b, 3)
    rab, rac, rbc = r(0, 1), r(0, 2), r(1, 2)
    lhs = rab.commutator(rac) + rac.commutator(rbc)
    return lhs.matrix, -rab.commutator(rbc).matrix


@register("classical-x053", "r_ab = -r_ba and m_ab = m_ba", {"z": "spectral"}, sizes=GL_SIZES,
          variants=BOTH, tol=SCALAR_TOL, group="classical")
def _x053(s, p):
    z = p["z"]
    r, m = _r_m(s, z)
    rm, mm = _r_m(s, -z)
    return (np.stack([r.matrix, m.matrix]),
            np.stack([-_emb(rm, 1, 0, 2).matrix, _emb(mm, 1, 0, 2).matrix]))


@register("classical-x054", "2 m_12 = r_12^2 - N^2 wp(z)", {"z": "spectral"}, sizes=GL_SIZES,
          variants=BOTH, tol=SCALAR_TOL, group="classical")
def _x054(s, p):
    # m vanishes for the rational variant, so compare 2m + N^2 wp with r^2
    z, n = p["z"], s.N
    r, m = _r_m(s, z)
    return 2 * m.matrix + n * n * s.wp(z) * _eye(n * n), r.matrix @ r.matrix


@register("classical-x055", "r_ab r_ac - r_bc r_ab + r_ac r_bc = m_ab + m_bc + m_ac", dict(Z3),
          sizes=GL_SIZES, variants=BOTH, tol=SCALAR_TOL, group="classical")
def _x055(s, p):
    pts = _pts(p)
    rm = {}
    for a, b in ((0, 1), (0, 2), (1, 2)):
        r, m = _r_m(s, pts[a] - pts[b])
        rm[a, b] = (_emb(r, a, b, 3), _emb(m, a, b, 3))
    r = lambda a, b: rm[a, b][0]
    m = lambda a, b: rm[a, b][1]
    # both sides vanish for the rational variant; move r_bc r_ab across
    lhs = r(0, 1) @ r(0, 2) + r(0, 2) @ r(1, 2)
    return lhs.matrix, (r(1, 2) @ r(0, 1) + m(0, 1) + m(1, 2) + m(0, 2)).matrix


@register("classical-e1-sum", "(E1(z_ab) + E1(z_bc) + E1(z_ca))^2 = wp(z_ab) + wp(z_bc) + wp(z_ca)",
          dict(Z3), sizes=((1, 1),), tol=SCALAR_TOL, samples=200, group="classical")
def _e1sum(s, p):
    a, b, c = _pts(p)
    t = s.mod
    lhs = (e1(a - b, t) + e1(b - c, t) + e1(c - a, t)) ** 2
    return lhs, s.wp(a - b) + s.wp(b - c) + s.wp(c - a)


LAURENT_STEPS = (1e-3, -1e-3, 2e-3, -2e-3)


def laurent_fit(fn, steps=LAURENT_STEPS):
    """Fit ``fn(h) - 1/h = c0 + c1 h + c2 h^2 + c3 h^3`` at the given steps; return (c0, c1)."""
    hs = np.array(steps, dtype=complex)
    with pole_floor(0.0):
        raw = [np.asarray(fn(h)) for h in steps]
    vals = np.stack([v - np.eye(v.shape[0]) / h for v, h in zip(raw, steps)])
    V = np.vander(hs, 4, increasing=True)
    coef = np.linalg.solve(V, vals.reshape(len(steps), -1))
    shape = vals.shape[1:]
    return coef[0].reshape(shape), coef[1].reshape(shape)


@register("classical-laurent", "(r, m) agree with a finite-hbar Laurent fit of R",
          {"z": "spectral"}, sizes=GL_SIZES, tol=1e-6, group="classical")
def _laurent(s, p):
    z = p["z"]
    r, m = _r_m(s, z)
    c0, c1 = laurent_fit(lambda h: belavin(s.gl, h, z).matrix)
    return np.stack([c0, c1]), np.stack([r.matrix, m.matrix])


@register("half-quantum-x99", "[R^eta_12, R^eta_23] + [R^eta_13, r_23] + [r_12, R^eta_13] = 0",
          {**Z3, "eta": "planck"}, sizes=GL_SIZES, variants=BOTH, group="classical")
def _x99(s, p):
    pts, e = _pts(p), p["eta"]
    R = lambda a, b: _rab(s, e, pts, a, b)
    r = lambda a, b: _emb(_r_m(s, pts[a] - pts[b])[0], a, b, 3)
    lhs = R(0, 1).commutator(R(1, 2))
    rhs = -(R(0, 2).commutator(r(1, 2)) + r(0, 1).commutator(R(0, 2)))
    return lhs.matrix, rhs.matrix


# -------------------------------------------------------------- quantum algebra

ALG_SIZES = ((2, 1), (3, 1))


def _lax3(s, h, z, aux):
    """Vector-representation Lax operator on (N, N, N) with auxiliary slot ``aux``."""
    L = alg.lax(alg.vector_rep(s.N), s.mod, h, z)
    return embed(L, (aux, 2), (s.N,) * 3)


def _r3(s, h, z):
    return embed(belavin(s.gl, h, z), (0, 1), (s.N,) * 3)


ZW = {"z": "spectral", "w": "spectral"}


@register("exchange-x075", "R L_1 L_2 = L_2 L_1 R in the vector representation",
          {**ZW, "hbar": "planck"}, sizes=ALG_SIZES, group="algebra")
def _x075(s, p):
    z, w, h = p["z"], p["w"], p["hbar"]
    R, L1, L2 = _r3(s, h, z - w), _lax3(s, h, z, 0), _lax3(s, h, w, 1)
    return (R @ L1 @ L2).matrix, (L2 @ L1 @ R).matrix


@register("heisenberg-x54", "L^hbar_1 L^eta_2 = L^{hbar+eta}_2 R^hbar - R^-eta L^{hbar+eta}_1",
          {**ZW, "hbar": "planck", "eta": "planck"}, sizes=ALG_SIZES, group="algebra")
def _x54(s, p):
    z, w, h, e = p["z"], p["w"], p["hbar"], p["eta"]
    lhs = _lax3(s, h, z, 0) @ _lax3(s, e, w, 1)
    rhs = _lax3(s, h + e, w, 1) @ _r3(s, h, z - w) - _r3(s, -e, z - w) @ _lax3(s, h + e, z, 0)
    return lhs.matrix, rhs.matrix


@register("heisenberg-x541", "L^eta_2 L^hbar_1 = R^hbar L^{hbar+eta}_2 - L^{hbar+eta}_1 R^-eta",
          {**ZW, "hbar": "planck", "eta": "planck"}, sizes=ALG_SIZES, group="algebra")
def _x541(s, p):
    z, w, h, e = p["z"], p["w"], p["hbar"], p["eta"]
    lhs = _lax3(s, e, w, 1) @ _lax3(s, h, z, 0)
    rhs = _r3(s, h, z - w) @ _lax3(s, h + e, w, 1) - _lax3(s, h + e, z, 0) @ _r3(s, -e, z - w)
    return lhs.matrix, rhs.matrix


def _s_ops(s):
    n = s.N
    rep = alg.vector_rep(n)
    S = TensorOperator(sum(np.kron(t_matrix(a1, a2, n), rep.images[alg.LatticeIndex(a1, a2, n)])
                           for a1, a2 in indices(n)), (n, n))
    dims = (n, n, n)
    return embed(S, (0, 2), dims), embed(S, (1, 2), dims), embed(
        TensorOperator(n * swap_matrix(n), (n, n)), (0, 1), dims)


@register("heisenberg-x55", "S_1 S_2 = N P_12 S_1 in the vector representation", {},
          sizes=ALG_SIZES, group="algebra")
def _x55(s, p):
    S1, S2, NP = _s_ops(s)
    return (S1 @ S2).matrix, (NP @ S1).matrix


@register("heisenberg-x56", "S_alpha S_beta = kappa_{alpha,beta} S_{alpha+beta}", {},
          sizes=ALG_SIZES, group="algebra")
def _x56(s, p):
    n = s.N
    rep = alg.vector_rep(n)
    lhs, rhs = [], []
    for a in indices(n):
        for b in indices(n):
            lhs.append(rep.image(*a) @ rep.image(*b))
            rhs.append(kappa(a, b, n) * rep.image(a[0] + b[0], a[1] + b[1]))
    return np.stack(lhs), np.stack(rhs)


@register("commutator-x57", "[L_1, L_2] in terms of R^-eta and R^hbar",
          {**ZW, "hbar": "planck", "eta": "planck"}, sizes=ALG_SIZES, group="algebra")
def _x57(s, p):
    z, w, h, e = p["z"], p["w"], p["hbar"], p["eta"]
    lhs = _lax3(s, h, z, 0).commutator(_lax3(s, e, w, 1))
    rhs = (_lax3(s, h + e, z, 0).commutator(_r3(s, -e, z - w))
           + _lax3(s, h + e, w, 1).commutator(_r3(s, h, z - w)))
    return lhs.matrix, rhs.matrix


@register("gl-x571", "[S_1, S_2] = N [P_12, S_1]", {}, sizes=ALG_SIZES, group="algebra")
def _x571(s, p):
    S1, S2, NP = _s_ops(s)
    return S1.commutator(S2).matrix, NP.commutator(S1).matrix


@register("poisson-x572", "{L_1, L_2} with the linear bracket {S_1, S_2} = N [P_12, S_1]",
          {**ZW, "hbar": "planck", "eta": "planck", "s": "values"}, sizes=ALG_SIZES,
          group="algebra")
def _x572(s, p):
    z, w, h, e, v = p["z"], p["w"], p["hbar"], p["eta"], p["s"]
    n, t = s.N, s.mod
    lhs = alg.poisson_bracket_lhs(v, belavin_coefficients(n, t, h, z),
                                  belavin_coefficients(n, t, e, w), n)
    one = np.eye(n)
    L1 = np.kron(alg.classical_lax(v, belavin_coefficients(n, t, h + e, z), n), one)
    L2 = np.kron(one, alg.classical_lax(v, belavin_coefficients(n, t, h + e, w), n))
    Rm = belavin(s.gl, -e, z - w).matrix
    Rh = belavin(s.gl, h, z - w).matrix
    rhs = (L1 @ Rm - Rm @ L1) + (L2 @ Rh - Rh @ L2)
    return lhs, rhs


@register("poisson-x573", "{l_1, l_2} = [l_1, r_12] + [l_2, r_12] with the classical r-matrix",
          {**ZW, "s": "values"}, sizes=ALG_SIZES, group="algebra")
def _x573(s, p):
    z, w, v = p["z"], p["w"], p["s"]
    n = s.N
    cz = alg.classical_coefficients(n, s.mod, z)
    cw = alg.classical_coefficients(n, s.mod, w)
    lhs = alg.poisson_bracket_lhs(v, cz, cw, n)
    one = np.eye(n)
    l1 = np.kron(alg.classical_lax(v, cz, n), one)
    l2 = np.kron(one, alg.classical_lax(v, cw, n))
    r = classical_terms(s.gl, z - w)[0].matrix
    return lhs, (l1 @ r - r @ l1) + (l2 @ r - r @ l2)


@register("coupled-exchange-x578", "exchange relation with two Planck constants, vector representation",
          {**ZW, "hbar": "planck", "eta": "planck"}, sizes=ALG_SIZES, group="algebra")
def _x578(s, p):
    z, w, h, e = p["z"], p["w"], p["hbar"], p["eta"]
    Rh, Re = _r3(s, h, z - w), _r3(s, e, z - w)
    Lh1, Le1 = _lax3(s, h, z, 0), _lax3(s, e, z, 0)
    Lh2, Le2 = _lax3(s, h, w, 1), _lax3(s, e, w, 1)
    lhs = Rh @ Le1 @ Lh2 + Re @ Lh1 @ Le2
    rhs = Lh2 @ Le1 @ Rh + Le2 @ Lh1 @ Re
    return lhs.matrix, rhs.matrix


@register("prop3-functional", "three-point functional identity for the coupled structure constants",
          {**ZW, "hbar": "planck", "eta": "planck"}, sizes=((2, 1),), tol=SCALAR_TOL,
          samples=200, group="algebra")
def _prop3(s, p):
    z, w, h, e = p["z"], p["w"], p["hbar"], p["eta"]
    n = s.N
    lhs, rhs = [], []
    for a, b, g in product(indices(n), repeat=3):
        l, r = alg.prop3_sides(a, b, g, z, w, h, e, s.mod, n)
        lhs.append(l)
        rhs.append(r)
    return np.array(lhs), np.array(rhs)


def _split_relations(rels, reps):
    """Largest term of each relation against minus the sum of the others."""
    lhs, rhs = [], []
    for rel in rels:
        terms = rel.term_values(reps)
        if not terms:
            continue
        k = max(range(len(terms)), key=lambda i: np.max(np.abs(terms[i])))
        lhs.append(terms[k])
        rhs.append(-sum(t for i, t in enumerate(terms) if i != k))
    return np.stack(lhs), np.stack(rhs)


@register("sklyanin-relations-x61", "Sklyanin relation table vanishes in the vector representation",
          {"hbar": "planck"}, sizes=ALG_SIZES, tol=1e-9, group="algebra")
def _x61(s, p):
    rels = alg.sklyanin_relations(s.N, s.mod, p["hbar"])
    return _split_relations(rels, {"S": alg.vector_rep(s.N)})


@register("coupled-relations-x5781", "coupled relation table vanishes in the vector representation",
          {"hbar": "planck", "eta": "planck"}, sizes=ALG_SIZES, group="algebra")
def _x5781(s, p):
    rels = alg.coupled_relations(s.N, s.mod, p["hbar"], p["eta"])
    v = alg.vector_rep(s.N)
    return _split_relations(rels, {"hbar": v, "eta": v})


NONZERO_2 = ((0, 1), (1, 0), (1, 1))


def _gl2_pairs():
    return [(a, b) for a in NONZERO_2 for b in NONZERO_2 if a != b]


def _pattern_fit(rel_terms: dict, pattern: dict):
    """Project a relation onto a pattern; return (relation vector, fitted multiple)."""
    keys = sorted(set(rel_terms) | set(pattern))
    r = np.array([rel_terms.get(k, 0j) for k in keys])
    q = np.array([pattern.get(k, 0j) for k in keys])
    lam = np.vdot(q, r) / np.vdot(q, q)
    return r, lam * q


def _gen(label, fam="S"):
    c1, c2 = label
    return (fam, (c1 % 2, c2 % 2)), basis_sign(c1, c2, 2)


def _pattern(entries):
    """``entries``: (coeff, left raw label, right raw label) -> signed residue dict."""
    out: dict = {}
    for c, l, r in entries:
        gl, sl = _gen(l)
        gr, sr = _gen(r)
        out[(gl, gr)] = out.get((gl, gr), 0j) + c * sl * sr
    return out


def _relation_map(n, tau, h):
    return {(r.alpha, r.beta): r for r in alg.sklyanin_relations(n, tau, h)}


@register("sklyanin-gl2-x63", "GL_2 relation [S_a, S_b] = kappa_ab [S_{a+b}, S_0]_+ from the table",
          {"hbar": "planck"}, sizes=((2, 1),), group="algebra")
def _x63(s, p):
    rels = _relation_map(2, s.mod, p["hbar"])
    lhs, rhs = [], []
    for a, b in _gl2_pairs():
        ab = (a[0] + b[0], a[1] + b[1])
        k = kappa(a, b, 2)
        pat = _pattern([(1, a, b), (-1, b, a), (-k, ab, (0, 0)), (-k, (0, 0), ab)])
        r, q = _pattern_fit(rels[a, b].terms, pat)
        lhs.append(r)
        rhs.append(q)
    return np.concatenate(lhs), np.concatenate(rhs)


def wp_shift_index(alpha, h, tau, n=2):
    """``wp(hbar + w_alpha) - wp(hbar)``."""
    return alg.wp_shifted(alpha, h, tau, n)


def _x65_sides(s, p, lead):
    h, t = p["hbar"], s.mod
    rels = _relation_map(2, t, h)
    lhs, rhs = [], []
    for a, b in _gl2_pairs():
        ab = (a[0] + b[0], a[1] + b[1])
        k = kappa(a, b, 2)
        wa, wb, wab = (alg.wp_shifted(x, h, t, 2) for x in (a, b, ab))
        c = k * (wa - wb)
        w0 = wab if lead == "sum" else wa
        pat = _pattern([(w0, (0, 0), ab), (-w0, ab, (0, 0)), (c, a, b), (c, b, a)])
        r, q = _pattern_fit(rels[(ab[0] % 2, ab[1] % 2), (0, 0)].terms, pat)
        lhs.append(r)
        rhs.append(q)
    return np.concatenate(lhs), np.concatenate(rhs)


@register("sklyanin-gl2-x65", "GL_2 relation wp_a [S_0, S_{a+b}] = -kappa (wp_a - wp_b) [S_a, S_b]_+",
          {"hbar": "planck"}, sizes=((2, 1),), group="algebra")
def _x65(s, p):
    return _x65_sides(s, p, "first")


@register("sklyanin-gl2-x65-derived",
          "GL_2 relation wp_{a+b} [S_0, S_{a+b}] = -kappa (wp_a - wp_b) [S_a, S_b]_+",
          {"hbar": "planck"}, sizes=((2, 1),), group="algebra")
def _x65d(s, p):
    return _x65_sides(s, p, "sum")


@register("sklyanin-gl2-kform", "GL_2 relation K_{a+b} [S_0, S_{a+b}] = kappa (K_a - K_b) [S_a, S_b]_+",
          {"hbar": "planck"}, sizes=((2, 1),), group="algebra")
def _kform(s, p):
    h, t = p["hbar"], s.mod
    rels = _relation_map(2, t, h)
    lhs, rhs = [], []
    for a, b in _gl2_pairs():
        ab = (a[0] + b[0], a[1] + b[1])
        k = kappa(a, b, 2)
        ka, kb, kab = (alg.k_function(x, h, t, 2) for x in (a, b, ab))
        c = -k * (ka - kb)
        pat = _pattern([(kab, (0, 0), ab), (-kab, ab, (0, 0)), (c, a, b), (c, b, a)])
        r, q = _pattern_fit(rels[(0, 0), (ab[0] % 2, ab[1] % 2)].terms, pat)
        lhs.append(r)
        rhs.append(q)
    return np.concatenate(lhs), np.concatenate(rhs)


@register("k-wp-identity", "(K_a - K_b)/K_{a+b} = -(wp_a - wp_b)/wp_{a+b} for GL_2",
          {"hbar": "planck"}, sizes=((2, 1),), tol=SCALAR_TOL, samples=200, group="algebra")
def _kwp(s, p):
    h, t = p["hbar"], s.mod
    lhs, rhs = [], []
    for a, b in _gl2_pairs():
        ab = (a[0] + b[0], a[1] + b[1])
        K = lambda x: alg.k_function(x, h, t, 2)
        W = lambda x: alg.wp_shifted(x, h, t, 2)
        lhs.append((K(a) - K(b)) / K(ab))
        rhs.append(-(W(a) - W(b)) / W(ab))
    return np.array(lhs), np.array(rhs)


@register("sklyanin-f-relations", "GL_2 relations among the Sklyanin structure constants",
          {"hbar": "planck"}, sizes=((2, 1),), tol=SCALAR_TOL, samples=200, group="algebra")
def _frel(s, p):
    h, t = p["hbar"], s.mod
    f = lambda a, b, g: alg.sklyanin_f(a, b, g, h, t, n=2)
    neg = lambda x: (-x[0], -x[1])
    sub = lambda x, y: (x[0] - y[0], x[1] - y[1])
    lhs, rhs = [], []
    for a, b in _gl2_pairs():
        f0 = f(a, b, (0, 0))
        lhs += [f(a, b, sub(a, b)), f(a, b, neg(b)), f(a, b, a)]
        rhs += [-f0, -f0, f0]
    for a in NONZERO_2:
        lhs.append(f(a, (0, 0), a))
        rhs.append(-f(a, (0, 0), (0, 0)))
        for b in NONZERO_2:
            if b != a:
                lhs.append(f(a, (0, 0), b))
                rhs.append(-f(a, (0, 0), sub(a, b)))
    return np.array(lhs), np.array(rhs)


# ------------------------------------------------------------- symmetric R-matrix

# three-point symmetric checks multiply (NM)^3-sided matrices
THREE_POINT_SAMPLES = 40

H3 = {"h1": "planck", "h2": "planck", "h3": "planck"}


def _sym3(s, p):
    z = _pts(p)
    h = (p["h1"], p["h2"], p["h3"])

    def R(a, b, at, bt, zz=None, hh=None):
        zz = z[a] - z[b] if zz is None else zz
        hh = h[at] - h[bt] if hh is None else hh
        return sym_r_ab(s.sym, zz, hh, (a, b), (at, bt))

    return z, h, R


def _sym_eye(s, points=2):
    return _eye((s.N * s.M) ** points)


def _sym_dims(s):
    return (s.N, s.N, s.M, s.M)


@register("sym-skew-x741", "skew-symmetry of the symmetric R-matrix",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, variants=BOTH, group="sym")
def _x741(s, p):
    z, h = p["z"], p["hbar"]
    lhs = embed(sym_r(s.sym, -z, -h), (1, 0, 3, 2), _sym_dims(s))
    return lhs.matrix, -sym_r(s.sym, z, h).matrix


@register("sym-assoc-yb-x742", "associative Yang-Baxter equation for the symmetric R-matrix",
          {**Z3, **H3}, sizes=SYM_SIZES, variants=BOTH, group="sym")
def _x742(s, p):
    _, _, R = _sym3(s, p)
    lhs = R(0, 1, 0, 1) @ R(1, 2, 2, 1)
    rhs = R(0, 2, 2, 1) @ R(0, 1, 0, 2) + R(1, 2, 2, 0) @ R(0, 2, 0, 1)
    return lhs.matrix, rhs.matrix


@register("sym-unitarity", "R_{12,1~2~} R_{21,1~2~} = N^2 M^2 (wp(N hbar) - wp(M z))",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, variants=BOTH, group="sym")
def _x743(s, p):
    z, h, n, m = p["z"], p["hbar"], s.N, s.M
    lhs = sym_r(s.sym, z, h) @ embed(sym_r(s.sym, -z, h), (1, 0, 2, 3), _sym_dims(s))
    return lhs.matrix, n * n * m * m * (s.wp(n * h) - s.wp(m * z)) * _sym_eye(s)


@register("sym-unitarity-x7431", "R_{12,1~2~} R_{12,2~1~} = N^2 M^2 (wp(M z) - wp(N hbar))",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, variants=BOTH, group="sym")
def _x7431(s, p):
    z, h, n, m = p["z"], p["hbar"], s.N, s.M
    lhs = sym_r(s.sym, z, h) @ embed(sym_r(s.sym, z, -h), (0, 1, 3, 2), _sym_dims(s))
    return lhs.matrix, n * n * m * m * (s.wp(m * z) - s.wp(n * h)) * _sym_eye(s)


@register("sym-cubic-x745", "cubic relation in the Planck constants for the symmetric R-matrix",
          {**Z3, **H3}, sizes=SYM_SIZES, variants=BOTH, samples=THREE_POINT_SAMPLES, group="sym")
def _x745(s, p):
    _, h, R = _sym3(s, p)
    n, m = s.N, s.M
    lhs = R(0, 1, 2, 1) @ R(0, 2, 0, 2) @ R(1, 2, 2, 1)
    sc = n * n * m * m * (s.wp(n * (h[2] - h[1])) - s.wp(n * (h[0] - h[2])))
    rhs = R(1, 2, 0, 2) @ R(0, 2, 2, 1) @ R(0, 1, 0, 2) + R(0, 2, 0, 1) * sc
    return lhs.matrix, rhs.matrix


@register("sym-cubic-x746", "Yang-Baxter-like equation at hbar_3~ = (hbar_1~ + hbar_2~)/2",
          {**Z3, "hbar": "planck"}, sizes=SYM_SIZES, variants=BOTH, samples=THREE_POINT_SAMPLES, group="sym")
def _x746(s, p):
    z, _, R = _sym3(s, {**p, "h1": 0.0, "h2": 0.0, "h3": 0.0})
    h = p["hbar"]
    lhs = R(0, 1, 2, 1, hh=h) @ R(0, 2, 0, 2, hh=h) @ R(1, 2, 2, 1, hh=h)
    rhs = R(1, 2, 0, 2, hh=h) @ R(0, 2, 2, 1, hh=h) @ R(0, 1, 0, 2, hh=h)
    return lhs.matrix, rhs.matrix


def _x747_lhs(s, p):
    _, _, R = _sym3(s, {**p, "h1": 0.0, "h2": 0.0, "h3": 0.0})
    h = p["hbar"]
    lhs = (R(1, 0, 1, 2, hh=h) @ R(0, 2, 0, 2, hh=h) @ R(2, 1, 1, 2, hh=h)
           + R(1, 2, 0, 2, hh=h) @ R(2, 0, 1, 2, hh=h) @ R(0, 1, 0, 2, hh=h))
    return lhs.matrix


def _p_tilde(s, a, b):
    n, m = s.N, s.M
    return embed(TensorOperator(swap_matrix(m), (m, m)), (3 + a, 3 + b), (n,) * 3 + (m,) * 3).matrix


@register("sym-cubic-x747", "cubic relation at hbar_1~ = hbar_2~, right side -P~_13 N^3 M^2 wp'(N hbar)",
          {**Z3, "hbar": "planck"}, sizes=SYM_SIZES, variants=BOTH, samples=THREE_POINT_SAMPLES, group="sym")
def _x747(s, p):
    n, m = s.N, s.M
    return _x747_lhs(s, p), -(n ** 3) * m ** 2 * s.wp_prime(n * p["hbar"]) * _p_tilde(s, 0, 2)


@register("sym-cubic-x747-derived",
          "x745 at hbar_1~ -> hbar_2~: right side -P~_12 N^3 M^3 wp'(N hbar)",
          {**Z3, "hbar": "planck"}, sizes=SYM_SIZES, variants=BOTH, samples=THREE_POINT_SAMPLES, group="sym")
def _x747d(s, p):
    # the hbar-residue of R is M P~, which supplies the third power of M
    n, m = s.N, s.M
    return _x747_lhs(s, p), -(n ** 3) * m ** 3 * s.wp_prime(n * p["hbar"]) * _p_tilde(s, 0, 1)


@register("sym-cubic-x7471", "cubic relation in the spectral parameters for the symmetric R-matrix",
          {**Z3, **H3}, sizes=SYM_SIZES, variants=BOTH, samples=THREE_POINT_SAMPLES, group="sym")
def _x7471(s, p):
    z, _, R = _sym3(s, p)
    n, m = s.N, s.M
    lhs = R(2, 1, 0, 1) @ R(0, 2, 0, 2) @ R(2, 1, 1, 2)
    sc = n * n * m * m * (s.wp(m * (z[1] - z[2])) - s.wp(m * (z[0] - z[2])))
    rhs = R(0, 2, 1, 2) @ R(2, 1, 0, 2) @ R(0, 2, 0, 1) + R(0, 1, 0, 2) * sc
    return lhs.matrix, rhs.matrix


@register("sym-four-term-hbar-printed", "four-term Yang-Baxter-like equation in hbar, as printed",
          {**Z3, **H3}, sizes=SYM_SIZES, variants=BOTH, as_printed=True, samples=THREE_POINT_SAMPLES, group="sym")
def _four_h(s, p):
    z, h, R = _sym3(s, p)
    z12, z13, z23 = z[0] - z[1], z[0] - z[2], z[1] - z[2]
    h32, h13 = h[2] - h[1], h[0] - h[2]
    lhs = (R(0, 1, 2, 1, z12, h32) @ R(0, 2, 0, 2, z13, h13) @ R(1, 2, 2, 1, z23, h32)
           + R(0, 1, 2, 1, z12, h13) @ R(0, 2, 0, 2, z13, h32) @ R(1, 2, 2, 1, z23, h13))
    rhs = (R(1, 2, 0, 2, z23, h13) @ R(0, 2, 2, 1, z13, h32) @ R(0, 1, 0, 2, z12, h13)
           + R(1, 2, 0, 2, z23, h32) @ R(0, 2, 2, 1, z13, h13) @ R(0, 1, 0, 2, z12, h32))
    return lhs.matrix, rhs.matrix


@register("sym-cubic-final-printed", "four-term Yang-Baxter-like equation in z, as printed",
          {**Z3, **H3}, sizes=SYM_SIZES, variants=BOTH, as_printed=True, samples=THREE_POINT_SAMPLES, group="sym")
def _four_z(s, p):
    z, h, R = _sym3(s, p)
    z32, z13 = z[2] - z[1], z[0] - z[2]
    h12, h13, h23 = h[0] - h[1], h[0] - h[2], h[1] - h[2]
    lhs = (R(2, 1, 0, 1, z32, h12) @ R(0, 2, 0, 2, z13, h13) @ R(2, 1, 1, 2, z32, h23)
           + R(2, 1, 0, 1, z13, h12) @ R(2, 1, 0, 2, z13, h13) @ R(2, 1, 1, 2, z13, h23))
    rhs = (R(0, 2, 1, 2, z13, h23) @ R(2, 1, 0, 2, z32, h13) @ R(0, 2, 0, 1, z13, h12)
           + R(0, 2, 1, 2, z32, h23) @ R(2, 1, 0, 2, z13, h13) @ R(0, 2, 0, 1, z32, h12))
    return lhs.matrix, rhs.matrix


def _sym_ops(s):
    n, m = s.N, s.M
    q, lam = (x.matrix for x in clock_shift(n))
    qt, lt = (x.matrix for x in clock_shift(m))
    In, Im = np.eye(n), np.eye(m)
    k4 = lambda a, b, c, d: np.kron(np.kron(a, b), np.kron(c, d))
    inv = np.linalg.inv
    mp = np.linalg.matrix_power
    return dict(
        Q1=k4(q, In, Im, Im), Q2=k4(In, q, Im, Im), L1=k4(lam, In, Im, Im), L2=k4(In, lam, Im, Im),
        Qt1=k4(In, In, qt, Im), Qt2=k4(In, In, Im, qt), Lt1=k4(In, In, lt, Im),
        Lt2=k4(In, In, Im, lt), QtN=k4(In, In, mp(qt, n), Im), LtN=k4(In, In, mp(lt, n), Im),
        inv=inv,
    )


@register("sym-z-quasiperiodic-x33", "quasiperiodicity of the symmetric R-matrix in z",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, group="sym")
def _x33(s, p):
    z, h, t = p["z"], p["hbar"], s.mod.tau
    o = _sym_ops(s)
    inv = o["inv"]
    R = sym_r(s.sym, z, h).matrix
    lhs = [sym_r(s.sym, z + 1, h).matrix, sym_r(s.sym, z + t, h).matrix]
    rhs = [inv(o["Q1"]) @ R @ o["Q1"],
           cmath.exp(-TWO_PI_I * h) * inv(o["L1"]) @ R @ o["L1"]]
    return np.stack(lhs), np.stack(rhs)


@register("sym-hbar-quasiperiodic-x34", "quasiperiodicity of the symmetric R-matrix in hbar",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, group="sym")
def _x34(s, p):
    z, h, t = p["z"], p["hbar"], s.mod.tau
    o = _sym_ops(s)
    inv = o["inv"]
    R = sym_r(s.sym, z, h).matrix
    lhs = [sym_r(s.sym, z, h + 1).matrix, sym_r(s.sym, z, h + t).matrix]
    rhs = [inv(o["QtN"]) @ R @ o["QtN"],
           cmath.exp(-TWO_PI_I * z) * inv(o["LtN"]) @ R @ o["LtN"]]
    return np.stack(lhs), np.stack(rhs)


@register("sym-small-z-x35", "quasiperiodicity in z on the lattice N/M, N tau/M",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, group="sym")
def _x35(s, p):
    z, h, t, n, m = p["z"], p["hbar"], s.mod.tau, s.N, s.M
    o = _sym_ops(s)
    inv = o["inv"]
    R = sym_r(s.sym, z, h).matrix
    lhs = [sym_r(s.sym, z + n / m, h).matrix, sym_r(s.sym, z + n * t / m, h).matrix]
    rhs = [inv(o["Qt1"]) @ R @ o["Qt2"],
           cmath.exp(-TWO_PI_I * n * h / m) * inv(o["Lt1"]) @ R @ o["Lt2"]]
    return np.stack(lhs), np.stack(rhs)


@register("sym-small-hbar-x36", "quasiperiodicity in hbar on the lattice 1/N, tau/N",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, group="sym")
def _x36(s, p):
    z, h, t, n = p["z"], p["hbar"], s.mod.tau, s.N
    o = _sym_ops(s)
    inv = o["inv"]
    R = sym_r(s.sym, z, h).matrix
    lhs = [sym_r(s.sym, z, h + 1 / n).matrix, sym_r(s.sym, z, h + t / n).matrix]
    rhs = [inv(o["Q1"]) @ inv(o["Qt1"]) @ R @ o["Qt1"] @ o["Q2"],
           cmath.exp(-TWO_PI_I * z / n) * inv(o["L1"]) @ inv(o["Lt1"]) @ R @ o["Lt1"] @ o["L2"]]
    return np.stack(lhs), np.stack(rhs)


def _phi_sym_raw(s, a, at, z, h):
    return phi_sym(a, at, z, h, s.mod, n=s.N, m=s.M)


@register("sym-index-x342", "Phi is periodic in the Z_N index",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, tol=1e-12, group="sym")
def _x342(s, p):
    z, h, n = p["z"], p["hbar"], s.N
    lhs, rhs = [], []
    for a in indices(n):
        for at in indices(s.M):
            base = _phi_sym_raw(s, a, at, z, h)
            for b in ((a[0] + n, a[1]), (a[0], a[1] + n)):
                lhs.append(_phi_sym_raw(s, b, at, z, h))
                rhs.append(base)
    return np.array(lhs), np.array(rhs)


@register("sym-index-x343", "Phi is periodic in the Z_M index",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, tol=1e-12, group="sym")
def _x343(s, p):
    z, h, m = p["z"], p["hbar"], s.M
    lhs, rhs = [], []
    for a in indices(s.N):
        for at in indices(m):
            base = _phi_sym_raw(s, a, at, z, h)
            for bt in ((at[0] + m, at[1]), (at[0], at[1] + m)):
                lhs.append(_phi_sym_raw(s, a, bt, z, h))
                rhs.append(base)
    return np.array(lhs), np.array(rhs)


@register("sym-shift", "Phi_{a+g, a~}(z, hbar) = exp(2 pi i z g_2/N) kappa~^2 Phi_{a, a~}(z, hbar + w_g)",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, tol=SCALAR_TOL, group="sym")
def _sym_shift(s, p):
    z, h, n, m, t = p["z"], p["hbar"], s.N, s.M, s.mod.tau
    lhs, rhs = [], []
    for a in indices(n):
        for g in indices(n):
            for at in indices(m):
                lhs.append(_phi_sym_raw(s, (a[0] + g[0], a[1] + g[1]), at, z, h))
                k2 = cmath.exp(TWO_PI_I * (at[0] * g[1] - at[1] * g[0]) / m)
                rhs.append(cmath.exp(TWO_PI_I * z * g[1] / n) * k2
                           * _phi_sym_raw(s, a, at, z, h + omega(g[0], g[1], n, t)))
    return np.array(lhs), np.array(rhs)


@register("sym-fay-x744", "Fay identity for Phi", {"z": "spectral", "w": "spectral",
          "hbar": "planck", "eta": "planck"}, sizes=SYM_SIZES, tol=SCALAR_TOL, samples=10,
          group="sym")
def _x744(s, p):
    z, w, h, e = p["z"], p["w"], p["hbar"], p["eta"]
    n, m = s.N, s.M
    F = lambda a, at, x, y: _phi_sym_raw(s, a, at, x, y)
    lhs, rhs = [], []
    for a, b in product(indices(n), repeat=2):
        for at, bt in product(indices(m), repeat=2):
            abt = (at[0] + bt[0], at[1] + bt[1])
            lhs.append(F(a, at, z, h) * F(b, bt, w, e))
            rhs.append(F(b, abt, z + w, e) * F((a[0] - b[0], a[1] - b[1]), at, z, h - e)
                       + F((b[0] - a[0], b[1] - a[1]), bt, w, e - h) * F(a, abt, z + w, h))
    return np.array(lhs), np.array(rhs)


@register("sym-glnm", "R (N P_12 (x) 1 (x) 1) equals the GL_NM Belavin form",
          {"z": "spectral", "hbar": "planck"}, sizes=SYM_SIZES, group="sym")
def _glnm(s, p):
    z, h, n = p["z"], p["hbar"], s.N
    NP = embed(TensorOperator(n * swap_matrix(n), (n, n)), (0, 1), _sym_dims(s))
    return (sym_r(s.sym, z, h) @ NP).matrix, glnm_form(s.sym, z, h).matrix


@register("sym-m-equals-n", "for M = N, Phi = kappa^2_{a,a~} phi_a(z, w_a + hbar)",
          {"z": "spectral", "hbar": "planck"}, sizes=((2, 2), (3, 3)), tol=1e-10, group="sym")
def _meqn(s, p):
    z, h, n, t = p["z"], p["hbar"], s.N, s.mod.tau
    lhs = sym_r(s.sym, z, h).matrix
    acc = 0
    for a in indices(n):
        c = phi_index(a, z, omega(a[0], a[1], n, t) + h, s.mod, n=n)
        ta = np.kron(t_matrix(a[0], a[1], n), t_matrix(-a[0], -a[1], n))
        for at in indices(n):
            tt = np.kron(t_matrix(at[0], at[1], n), t_matrix(-at[0], -at[1], n))
            acc = acc + kappa_sq(a[0], a[1], at[0], at[1], n) * c * np.kron(ta, tt)
    return lhs, acc


@register("sym-rational-x74",
          "rational symmetric R: associative YB, and R (1 (x) 1 (x) P~) solves the quantum YB",
          {**Z3, **H3, "hbar": "planck"}, sizes=SYM_SIZES, variants=("rational",), samples=THREE_POINT_SAMPLES, group="sym")
def _x74(s, p):
    rs = Setting(s.N, s.M, None, "rational")
    _, _, R = _sym3(rs, p)
    lhs1 = R(0, 1, 0, 1) @ R(1, 2, 2, 1)
    rhs1 = R(0, 2, 2, 1) @ R(0, 1, 0, 2) + R(1, 2, 2, 0) @ R(0, 2, 0, 1)
    # Y_ab = R_{ab,ab}(z_ab, hbar) P~_ab is a Yang-type R-matrix of GL_NM
    z, h = _pts(p), p["hbar"]

    def Y(a, b):
        return sym_r_ab(rs.sym, z[a] - z[b], h, (a, b), (a, b)).matrix @ _p_tilde(s, a, b)

    lhs2 = Y(0, 1) @ Y(0, 2) @ Y(1, 2)
    rhs2 = Y(1, 2) @ Y(0, 2) @ Y(0, 1)
    return np.stack([lhs1.matrix, lhs2]), np.stack([rhs1.matrix, rhs2])


@register("sym-collapse-m1", "M = 1: the symmetric R-matrix is the Belavin R-matrix",
          {"z": "spectral", "hbar": "planck"}, sizes=((2, 1), (3, 1)), variants=BOTH, group="sym")
def _m1(s, p):
    z, h = p["z"], p["hbar"]
    return sym_r(s.sym, z, h).matrix, r_matrix(s.gl, h, z).matrix


@register("sym-collapse-n1", "N = 1: the symmetric R-matrix is the Belavin R-matrix with z, hbar swapped",
          {"z": "spectral", "hbar": "planck"}, sizes=((1, 2), (1, 3)), variants=BOTH, group="sym")
def _n1(s, p):
    z, h = p["z"], p["hbar"]
    spec = RMatrixSpec(s.M, s.mod, s.variant)
    return sym_r(s.sym, z, h).matrix, r_matrix(spec, z, h).matrix


# Every in-scope identity must have a descriptor; checked at import.
REQUIRED_KEYS = frozenset({
    "assoc-yb", "qyb", "skew", "unitarity", "residue",
    "cubic-x21", "cubic-x22", "cubic-x23", "cubic-x24",
    "cm-lax-n2", "cm-lax-n3",
    "classical-x052", "classical-x053", "classical-x054", "classical-x055",
    "exchange-x075", "heisenberg-x54", "heisenberg-x541",
    "coupled-exchange-x578", "prop3-functional",
    "sym-skew-x741", "sym-assoc-yb-x742", "sym-unitarity", "sym-unitarity-x7431",
    "sym-cubic-x745", "sym-cubic-x746", "sym-cubic-x747", "sym-cubic-x7471",
    "sym-rational-x74", "sym-collapse-m1", "sym-collapse-n1",
    "sklyanin-relations-x61", "coupled-relations-x5781", "sklyanin-gl2-x63",
    "sklyanin-gl2-x65", "k-wp-identity", "fay", "classical-laurent", "shift-x751",
    "sym-four-term-hbar-printed", "sym-cubic-final-printed",
    "sym-z-quasiperiodic-x33", "sym-hbar-quasiperiodic-x34", "sym-small-z-x35",
    "sym-small-hbar-x36", "sym-index-x342", "sym-index-x343",
    "argument-symmetry-x748", "z-quasiperiodic-x749", "hbar-quasiperiodic-x750",
    "shift-x751", "index-periodicity-x752", "zn-symmetry-x7499",
    "sym-glnm", "sym-m-equals-n",
    "phi-quasiperiodic", "fay-aa904", "fay-aa905", "phi-wp", "fay-aa907", "fay-aa908",
    "wp-average", "fourier-aa909", "fourier-a910",
    "half-quantum-x99",
})

_missing = REQUIRED_KEYS - set(REGISTRY)
assert not _missing, f"identity registry is missing {sorted(_missing)}"


def setting_problem(d: IdentityDescriptor, n: int, m: int) -> str | None:
    """Reason why ``(n, m)`` does not suit ``d``, or None."""
    if n < 1 or m < 1:
        return "N and M must be positive"
    if d.group != "sym":
        return None if m == 1 else "M must be 1 outside the symmetric family"
    if d.key == "sym-m-equals-n":
        return None if n == m else "needs M = N"
    if d.key == "sym-collapse-m1":
        return None if m == 1 else "needs M = 1"
    if d.key == "sym-collapse-n1":
        return None if n == 1 else "needs N = 1"
    if math.gcd(n, m) != 1:
        return f"(N, M) = ({n}, {m}) must be coprime"
    return None
