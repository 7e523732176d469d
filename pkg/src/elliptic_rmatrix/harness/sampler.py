"""Seeded sampling of admissible complex parameters."""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from ..elliptic import PoleProximity, as_tau, lattice_distance, omega, singularity_floor
from ..heisenberg import indices

MAX_REJECTIONS = 10_000

# Roles: "spectral" and "planck" are points of the curve; "values" draws N^2
# complex normals (commuting sample values for classical generators).
ROLES = ("spectral", "planck", "values")


class SamplerExhausted(RuntimeError):
    """Too many consecutive rejections while drawing one point."""


@dataclass
class SampleSet:
    points: list = field(default_factory=list)
    rejected: int = 0


def derive_rng(seed: int, *labels) -> np.random.Generator:
    """Independent stream per (seed, labels); labels may be strings or ints."""
    words = [int(seed) & 0xFFFFFFFF]
    for lab in labels:
        if isinstance(lab, str):
            words.append(zlib.crc32(lab.encode()))
        else:
            words.append(int(lab) & 0xFFFFFFFF)
    return np.random.default_rng(words)


def box_point(rng: np.random.Generator, tau) -> complex:
    """Uniform in (0,1) x (0, Im tau), shifted off the lattice symmetry axes."""
    t = as_tau(tau).tau
    y = t.imag
    return complex(rng.uniform(0.0, 1.0) + 0.13, rng.uniform(0.0, y) + 0.07 * y)


def _clear(x: complex, tau, floor: float, shifts: Sequence[complex]) -> bool:
    return all(lattice_distance(x + s, tau) >= floor for s in shifts)


def admissible(params: dict, roles: dict, tau, n: int = 1, m: int = 1,
               floor: float | None = None) -> bool:
    """Basic pole conditions shared by all identities.

    Spectral values, their pairwise differences and sums must clear the
    floor after every Z_M torsion shift; Planck values, differences and
    sums likewise after every Z_N torsion shift.
    """
    floor = singularity_floor() if floor is None else floor
    if tau is None:
        return _rational_clear(params, roles, floor)
    t = as_tau(tau).tau
    shifts = {
        "spectral": [n * omega(a1, a2, m, t) for a1, a2 in indices(m)],
        "planck": [omega(a1, a2, n, t) for a1, a2 in indices(n)],
    }
    for role, sh in shifts.items():
        vals = [params[k] for k, r in roles.items() if r == role]
        cands = list(vals)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                cands += [vals[i] - vals[j], vals[i] + vals[j]]
        for x in cands:
            if not _clear(x, tau, floor, sh):
                return False
    return True


def _rational_clear(params, roles, floor):
    for role in ("spectral", "planck"):
        vals = [params[k] for k, r in roles.items() if r == role]
        cands = list(vals)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                cands += [vals[i] - vals[j], vals[i] + vals[j]]
        if any(abs(x) < floor for x in cands):
            return False
    return True


def draw(rng: np.random.Generator, roles: dict, tau, n: int = 1, box_tau=None) -> dict:
    out = {}
    bt = box_tau if box_tau is not None else (tau if tau is not None else 1j)
    for name, role in roles.items():
        if role == "values":
            v = rng.standard_normal((2, n * n))
            out[name] = v[0] + 1j * v[1]
        elif role in ("spectral", "planck"):
            out[name] = box_point(rng, bt)
        else:
            raise ValueError(f"unknown role {role!r}")
    return out


def point_stream(rng: np.random.Generator, roles: dict, tau, n: int = 1, m: int = 1,
                 check: Callable[[dict], object] | None = None,
                 max_rejections: int = MAX_REJECTIONS) -> Iterator[tuple[dict, object, int]]:
    """Yield ``(params, check(params), rejections)`` for admissible draws.

    ``check`` is evaluated on each candidate; a :class:`PoleProximity`
    raised from it counts as a rejection.
    """
    while True:
        rejected = 0
        while True:
            p = draw(rng, roles, tau, n)
            result = None
            ok = admissible(p, roles, tau, n, m)
            if ok and check is not None:
                try:
                    result = check(p)
                except PoleProximity:
                    ok = False
            if ok:
                break
            rejected += 1
            if rejected >= max_rejections:
                raise SamplerExhausted(
                    f"gave up after {rejected} rejections; the domain is over-constrained"
                )
        yield p, result, rejected


def sample_points(seed: int, count: int, roles: dict, tau, n: int = 1, m: int = 1,
                  check=None) -> SampleSet:
    """``count`` admissible parameter dicts, deterministic in ``seed``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = derive_rng(seed)
    out = SampleSet()
    stream = point_stream(rng, roles, tau, n, m, check)
    for _ in range(count):
        p, _, rej = next(stream)
        out.points.append(p)
        out.rejected += rej
    return out
