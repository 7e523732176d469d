"""Scalar elliptic functions on the curve with periods 1 and tau.

Everything here is built from one odd theta series and its term-wise
derivatives: the Kronecker function ``phi(z, u)``, the Eisenstein functions
``E1``/``E2``, Weierstrass ``wp``/``wp'`` and the index-decorated functions
``phi_alpha`` used as R-matrix coefficients.

Evaluations closer than the singularity floor (0.02 in the lattice metric) to
a pole raise :class:`PoleProximity`.  The floor can be lowered locally with
:func:`pole_floor`, which residue and Laurent-expansion checks need.
"""

from __future__ import annotations

import cmath
import contextlib
import contextvars
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union

from ._kernel import theta_series

TWO_PI_I = 2j * math.pi
MIN_IMAG_TAU = 0.05
DEFAULT_FLOOR = 0.02

_floor: contextvars.ContextVar[float] = contextvars.ContextVar(
    "singularity_floor", default=DEFAULT_FLOOR
)


class PoleProximity(ValueError):
    """An argument lies within the singularity floor of a pole.

    ``index`` is filled in by callers that sum over lattice indices so the
    offending term can be reported.
    """

    def __init__(self, argument, distance, index=None, what="argument"):
        self.argument = complex(argument)
        self.distance = distance
        self.index = index
        self.what = what
        super().__init__(self._message())

    def _message(self):
        msg = f"{self.what} {self.argument:.6g} is {self.distance:.3g} from a lattice point"
        if self.index is not None:
            msg += f" (index {self.index})"
        return msg

    def with_index(self, index):
        self.index = index
        self.args = (self._message(),)
        return self


def singularity_floor() -> float:
    return _floor.get()


@contextlib.contextmanager
def pole_floor(value: float) -> Iterator[None]:
    """Temporarily replace the singularity floor (0 disables rejection)."""
    token = _floor.set(float(value))
    try:
        yield
    finally:
        _floor.reset(token)


@dataclass(frozen=True)
class ModularParameter:
    """Modular parameter ``tau`` in the upper half-plane."""

    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if not tau.imag > 0:
            raise ValueError(f"tau must lie in the upper half-plane, got {tau}")
        if tau.imag < MIN_IMAG_TAU:
            raise ValueError(
                f"imag(tau) = {tau.imag} is below the convergence floor {MIN_IMAG_TAU}"
            )

    @cached_property
    def _theta_at_zero(self):
        return theta_series(0.0, self.tau)

    @property
    def theta_prime_zero(self) -> complex:
        return self._theta_at_zero[1]

    @cached_property
    def wp_shift(self) -> complex:
        """The constant ``theta'''(0) / (3 theta'(0))`` with ``wp = E2 + wp_shift``."""
        d = self._theta_at_zero
        return d[3] / (3.0 * d[1])


TauLike = Union[ModularParameter, complex, float]


def as_tau(tau: TauLike) -> ModularParameter:
    return tau if isinstance(tau, ModularParameter) else ModularParameter(tau)


@dataclass(frozen=True)
class LatticeIndex:
    """A pair of residues ``(a1, a2)`` modulo ``n``, normalized to ``[0, n)``."""

    a1: int
    a2: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("lattice order must be positive")
        object.__setattr__(self, "a1", int(self.a1) % self.n)
        object.__setattr__(self, "a2", int(self.a2) % self.n)

    def __add__(self, other: "LatticeIndex") -> "LatticeIndex":
        self._check(other)
        return LatticeIndex(self.a1 + other.a1, self.a2 + other.a2, self.n)

    def __sub__(self, other: "LatticeIndex") -> "LatticeIndex":
        self._check(other)
        return LatticeIndex(self.a1 - other.a1, self.a2 - other.a2, self.n)

    def __neg__(self) -> "LatticeIndex":
        return LatticeIndex(-self.a1, -self.a2, self.n)

    def __iter__(self):
        return iter((self.a1, self.a2))

    def _check(self, other):
        if other.n != self.n:
            raise ValueError(f"lattice orders differ: {self.n} vs {other.n}")

    @property
    def is_zero(self) -> bool:
        return self.a1 == 0 and self.a2 == 0

    def half_period(self, tau: TauLike) -> complex:
        return omega(self.a1, self.a2, self.n, as_tau(tau).tau)

    @classmethod
    def all(cls, n: int) -> list["LatticeIndex"]:
        return [cls(a1, a2, n) for a1 in range(n) for a2 in range(n)]


def omega(a1: int, a2: int, n: int, tau: complex) -> complex:
    """Torsion point ``(a1 + a2 tau) / n`` for raw (unreduced) integers."""
    return (a1 + a2 * tau) / n


def lattice_distance(x: complex, tau: TauLike) -> float:
    """Distance from ``x`` to the nearest point of ``Z + tau Z``."""
    t = as_tau(tau).tau
    x = complex(x)
    n0 = math.floor(x.imag / t.imag + 0.5)
    best = math.inf
    for n in (n0 - 1, n0, n0 + 1):
        y = x - n * t
        m0 = math.floor(y.real + 0.5)
        for m in (m0 - 1, m0, m0 + 1):
            d = abs(y - m)
            if d < best:
                best = d
    return best


def _guard(x: complex, tau: ModularParameter, what: str = "argument") -> None:
    floor = _floor.get()
    d = lattice_distance(x, tau)
    if d < floor or d == 0.0:
        raise PoleProximity(x, d, what=what)


def _ratios(z: complex, tau: ModularParameter):
    th, d1, d2, d3 = theta_series(z, tau.tau)
    return d1 / th, d2 / th, d3 / th


def theta(z: complex, tau: TauLike) -> complex:
    """Odd theta function with a simple zero at ``z = 0``."""
    return theta_series(complex(z), as_tau(tau).tau)[0]


def theta_derivatives(z: complex, tau: TauLike) -> tuple[complex, complex, complex, complex]:
    """Theta and its first three z-derivatives, summed term by term."""
    return theta_series(complex(z), as_tau(tau).tau)


def theta_log_derivatives(z: complex, tau: TauLike) -> tuple[complex, complex]:
    """``(E1, E2)`` with ``E1 = theta'/theta`` and ``E2 = -dE1/dz``."""
    tau = as_tau(tau)
    _guard(z, tau)
    t1, t2, _ = _ratios(z, tau)
    return t1, t1 * t1 - t2


def e1(z: complex, tau: TauLike) -> complex:
    return theta_log_derivatives(z, tau)[0]


def e2(z: complex, tau: TauLike) -> complex:
    return theta_log_derivatives(z, tau)[1]


def weierstrass(z: complex, tau: TauLike) -> tuple[complex, complex]:
    """Weierstrass ``(wp(z), wp'(z))`` for the lattice ``Z + tau Z``."""
    tau = as_tau(tau)
    _guard(z, tau)
    t1, t2, t3 = _ratios(z, tau)
    wp = t1 * t1 - t2 + tau.wp_shift
    wp_prime = -(t3 - 3.0 * t1 * t2 + 2.0 * t1 ** 3)
    return wp, wp_prime


def wp(z: complex, tau: TauLike) -> complex:
    return weierstrass(z, tau)[0]


def wp_prime(z: complex, tau: TauLike) -> complex:
    return weierstrass(z, tau)[1]


def kronecker_phi(z: complex, u: complex, tau: TauLike) -> complex:
    """Kronecker function ``theta'(0) theta(z+u) / (theta(z) theta(u))``."""
    tau = as_tau(tau)
    _guard(z, tau, "z")
    _guard(u, tau, "u")
    num = theta_series(z + u, tau.tau)[0]
    return tau.theta_prime_zero * num / (
        theta_series(z, tau.tau)[0] * theta_series(u, tau.tau)[0]
    )


def kronecker_phi_u_derivative(z: complex, u: complex, tau: TauLike) -> complex:
    """``d phi(z, u) / du = phi(z, u) (E1(z + u) - E1(u))``."""
    tau = as_tau(tau)
    _guard(z + u, tau, "z+u")
    return kronecker_phi(z, u, tau) * (e1(z + u, tau) - e1(u, tau))


def _index_parts(alpha, n):
    if isinstance(alpha, LatticeIndex):
        if n is not None and n != alpha.n:
            raise ValueError(f"lattice orders differ: {alpha.n} vs {n}")
        return alpha.a1, alpha.a2, alpha.n
    if n is None:
        raise ValueError("raw index pairs need an explicit lattice order n")
    a1, a2 = alpha
    return int(a1), int(a2), int(n)


def phi_index(alpha, z: complex, w: complex, tau: TauLike, n: int | None = None) -> complex:
    """``exp(2 pi i alpha_2 z / n) phi(z, w)``.

    ``alpha`` is a :class:`LatticeIndex` or a raw integer pair together with
    ``n``; raw pairs are not reduced, so index periodicity can be checked.
    """
    _, a2, n = _index_parts(alpha, n)
    return cmath.exp(TWO_PI_I * a2 * z / n) * kronecker_phi(z, w, tau)


def phi_sym(alpha, alpha_t, z: complex, hbar: complex, tau: TauLike,
            n: int | None = None, m: int | None = None) -> complex:
    """Coefficient of the symmetric R-matrix for ``(alpha, alpha_t)`` in Z_n^2 x Z_m^2.

    ``exp(2 pi i hbar n alpha_t2 / m) phi_alpha(z + n w~, hbar + w_alpha)`` with
    ``w~`` the Z_m torsion point of ``alpha_t``.
    """
    tau = as_tau(tau)
    a1, a2, n = _index_parts(alpha, n)
    b1, b2, m = _index_parts(alpha_t, m)
    x = z + n * omega(b1, b2, m, tau.tau)
    y = hbar + omega(a1, a2, n, tau.tau)
    return cmath.exp(TWO_PI_I * hbar * n * b2 / m) * phi_index((a1, a2), x, y, tau, n=n)


def degenerate_phi(z: complex, u: complex, kind: str = "rational") -> complex:
    """Rational ``1/z + 1/u`` or trigonometric ``coth z + coth u`` Kronecker function."""
    z = complex(z)
    u = complex(u)
    if kind == "rational":
        for name, x in (("z", z), ("u", u)):
            if x == 0:
                raise PoleProximity(x, 0.0, what=name)
        return 1.0 / z + 1.0 / u
    if kind == "trigonometric":
        for name, x in (("z", z), ("u", u)):
            k = round(x.imag / math.pi)
            if x.real == 0 and x.imag == k * math.pi:
                raise PoleProximity(x, 0.0, what=name)
        return 1.0 / cmath.tanh(z) + 1.0 / cmath.tanh(u)
    raise ValueError(f"unknown degeneration {kind!r}")
