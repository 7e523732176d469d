"""``verify`` command line."""

from __future__ import annotations

import argparse
import sys

from .identities import REGISTRY
from .report import emit_report, run_all

DEFAULTS = {
    "identity": "all",
    "n": None,
    "m": None,
    "tau": "0.2+0.9i",
    "variant": None,
    "samples": None,
    "seed": 0,
    "tol": None,
    "report": None,
}

CASTS = {"n": int, "m": int, "samples": int, "seed": int, "tol": float}


class UsageError(Exception):
    pass


def parse_tau(text: str) -> complex:
    try:
        tau = complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot read tau from {text!r}") from None
    if tau.imag <= 0:
        raise UsageError("tau must lie in the upper half-plane")
    return tau


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Check elliptic R-matrix identities at seeded random points.",
    )
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--identity", help="registry key, comma-separated keys, or 'all'")
    p.add_argument("--n", type=int, help="override N for every identity")
    p.add_argument("--m", type=int, help="override M for symmetric identities")
    p.add_argument("--tau", help="modular parameter, e.g. 0.2+0.9i")
    p.add_argument("--variant", choices=("elliptic", "rational"))
    p.add_argument("--samples", type=int, help="points per identity")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, help="override every tolerance")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--list", action="store_true", help="print registry keys and exit")
    return p


def resolve(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        for k, v in read_config(args.config).items():
            try:
                cfg[k] = CASTS.get(k, str)(v)
            except ValueError:
                raise UsageError(f"config value for {k!r} is not valid: {v!r}") from None
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    if cfg["variant"] not in (None, "elliptic", "rational"):
        raise UsageError(f"unknown variant {cfg['variant']!r}")
    if cfg["samples"] is not None and cfg["samples"] < 1:
        raise UsageError("samples must be at least 1")
    return cfg


def selected_keys(spec: str) -> list[str]:
    if spec == "all":
        return sorted(REGISTRY)
    keys = [k.strip() for k in spec.split(",") if k.strip()]
    unknown = [k for k in keys if k not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown identity {', '.join(unknown)}; see --list")
    return keys


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.list:
        for key in sorted(REGISTRY):
            print(f"{key:34s} {REGISTRY[key].summary}")
        return 0
    try:
        cfg = resolve(args)
        keys = selected_keys(cfg["identity"])
        tau = parse_tau(cfg["tau"])
        reports, skipped = run_all(keys, seed=cfg["seed"], tau=tau, n=cfg["n"], m=cfg["m"],
                                   variant=cfg["variant"], count=cfg["samples"],
                                   tol=cfg["tol"])
        if not reports and keys:
            raise UsageError("no runnable identity for these settings: " + "; ".join(skipped))
    except UsageError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    config = {k: cfg[k] for k in DEFAULTS if k != "report"}
    try:
        text, code = emit_report(reports, cfg["seed"], config, cfg["report"], skipped)
    except OSError as exc:
        print(f"verify: cannot write report: {exc}", file=sys.stderr)
        return 2
    if cfg["report"] is None:
        sys.stdout.write(text)
    else:
        bad = [r for r in reports if r.verdict != "pass"]
        print(f"{len(reports)} runs, {len(bad)} not passing; report in {cfg['report']}")
        for r in bad:
            s = r.spec
            print(f"  {r.verdict:18s} {r.identity} N={s['N']} M={s['M']} {s['variant']} "
                  f"{r.max_relative_residual:.2e}")
    return code


if __name__ == "__main__":
    sys.exit(main())
