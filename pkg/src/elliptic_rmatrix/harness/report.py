"""Residual evaluation and the structured report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .. import __version__
from .identities import REGISTRY, IdentityDescriptor, Setting, setting_problem
from .sampler import SamplerExhausted, derive_rng, point_stream

PASS, FAIL, FLAGGED = "pass", "fail", "flagged-as-printed"


class IdentityEvaluationError(RuntimeError):
    """A builder failed for a reason other than pole proximity."""

    def __init__(self, key: str, params: dict, cause: BaseException):
        self.key = key
        self.params = params
        super().__init__(f"{key}: {type(cause).__name__}: {cause} at {encode(params)}")


def encode(value):
    """JSON-friendly copy: complex -> [re, im], arrays -> lists."""
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, np.ndarray):
        return [encode(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def relative_residual(lhs, rhs) -> float:
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    diff = float(np.max(np.abs(lhs - rhs)))
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))), 1e-300)
    return diff / scale


@dataclass
class IdentityReport:
    identity: str
    spec: dict
    seed: int
    samples: dict
    max_relative_residual: float
    tolerance: float
    verdict: str
    worst: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "spec": self.spec,
            "seed": self.seed,
            "samples": self.samples,
            "max_relative_residual": self.max_relative_residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "worst": self.worst,
        }

    @property
    def sort_key(self):
        s = self.spec
        return (self.identity, s["N"], s["M"], s["variant"])


def _descriptor(d) -> IdentityDescriptor:
    return REGISTRY[d] if isinstance(d, str) else d


def run_identity(descriptor, n: int = 2, m: int = 1, tau=0.2 + 0.9j,
                 variant: str = "elliptic", seed: int = 0, count: int | None = None,
                 tol: float | None = None) -> IdentityReport:
    """Evaluate one identity at ``count`` seeded samples and summarise."""
    d = _descriptor(descriptor)
    problem = setting_problem(d, n, m)
    if problem:
        raise ValueError(f"{d.key}: {problem}")
    if variant not in d.variants:
        raise ValueError(f"{d.key} has no {variant} form")
    tau = None if variant == "rational" else complex(tau)
    setting = Setting(n, m, tau, variant)
    tol = d.tol if tol is None else tol
    # parameter-free identities have a single evaluation
    count = 1 if not d.roles else (d.samples if count is None else count)
    if count < 1:
        raise ValueError("count must be at least 1")

    def build(p):
        try:
            return d.builder(setting, p)
        except (ArithmeticError, ValueError) as exc:
            if type(exc).__name__ == "PoleProximity":
                raise
            raise IdentityEvaluationError(d.key, p, exc) from exc

    rng = derive_rng(seed, d.key, n, m)
    stream = point_stream(rng, d.roles, tau, n, m, check=build)
    worst_res, worst_args, rejected = -1.0, {}, 0
    for _ in range(count):
        p, (lhs, rhs), rej = next(stream)
        rejected += rej
        res = relative_residual(lhs, rhs)
        if not res <= worst_res:
            worst_res, worst_args = res, p
    if worst_res < tol:
        verdict = PASS
    else:
        verdict = FLAGGED if d.as_printed else FAIL
    return IdentityReport(
        identity=d.key,
        spec={"N": n, "M": m, "tau": encode(tau), "variant": variant},
        seed=seed,
        samples={"requested": count, "accepted": count, "rejected": rejected},
        max_relative_residual=worst_res,
        tolerance=tol,
        verdict=verdict,
        worst={"arguments": encode(worst_args), "residual": worst_res},
    )


def planned_runs(keys: Iterable[str], n: int | None = None, m: int | None = None,
                 variant: str | None = None):
    """Yield ``(descriptor, n, m, variant)`` plus skip notes for unsuitable overrides."""
    runs, skipped = [], []
    for key in keys:
        d = REGISTRY[key]
        sizes = []
        for dn, dm in d.sizes:
            nn = dn if n is None else n
            mm = dm if m is None else m
            if d.group != "sym" and m is None:
                mm = 1
            if (nn, mm) not in sizes:
                sizes.append((nn, mm))
        variants = d.variants if variant is None else (variant,)
        for nn, mm in sizes:
            for v in variants:
                problem = setting_problem(d, nn, mm)
                if problem is None and v not in d.variants:
                    problem = f"no {v} form"
                if problem:
                    skipped.append(f"{key} skipped at N={nn}, M={mm}, {v}: {problem}")
                else:
                    runs.append((d, nn, mm, v))
    return runs, skipped


def run_all(keys, seed=0, tau=0.2 + 0.9j, n=None, m=None, variant=None, count=None, tol=None):
    runs, skipped = planned_runs(keys, n, m, variant)
    reports = []
    for d, nn, mm, v in runs:
        try:
            reports.append(run_identity(d, nn, mm, tau, v, seed, count, tol))
        except SamplerExhausted as exc:
            skipped.append(f"{d.key} at N={nn}, M={mm}, {v}: {exc}")
    return reports, skipped


def exit_code(reports) -> int:
    return 1 if any(r.verdict == FAIL for r in reports) else 0


def emit_report(reports, seed: int = 0, config: dict | None = None, path=None,
                notes: Iterable[str] = (), timestamp: str | None = None) -> tuple[str, int]:
    """Serialise reports; return ``(document, exit code)`` and write ``path`` if given."""
    reports = sorted(reports, key=lambda r: r.sort_key)
    warnings = list(notes)
    for r in reports:
        if r.verdict == FLAGGED:
            s = r.spec
            warnings.append(
                f"{r.identity} (N={s['N']}, M={s['M']}, {s['variant']}) does not hold as printed: "
                f"max relative residual {r.max_relative_residual:.3e}"
            )
    if timestamp is None:
        timestamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    doc = {
        "meta": {"version": __version__, "seed": seed, "config": dict(config or {}),
                 "timestamp": timestamp},
        "results": [r.to_dict() for r in reports],
        "warnings": warnings,
    }
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text, exit_code(reports)
