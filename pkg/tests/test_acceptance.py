"""Acceptance gate: one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or as a script.  Each line
gives the worst residual against the criterion's tolerance and the wall time
against its budget.  Criteria that fail are left failing, with the reason.
"""

import contextlib
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from elliptic_rmatrix.elliptic import e1, e2, theta, wp, wp_prime  # noqa: E402
from elliptic_rmatrix.harness import cli  # noqa: E402
from elliptic_rmatrix.harness.identities import REGISTRY  # noqa: E402
from elliptic_rmatrix.harness.report import FLAGGED, PASS, run_identity  # noqa: E402

TAU = 0.2 + 0.9j
SEED = 0


@dataclass
class Outcome:
    ok: bool
    summary: str
    seconds: float
    notes: list = field(default_factory=list)


def line(num, title, out):
    mark = "PASS" if out.ok else "FAIL"
    text = f"criterion {num} [{mark}] {title}: {out.summary}"
    for note in out.notes:
        text += f"\n    - {note}"
    return text


def _runs(key, sizes=None, variants=None):
    d = REGISTRY[key]
    for n, m in sizes or d.sizes:
        for v in variants or d.variants:
            yield d, n, m, v


def run_suite(plan, tol, count=None, allow_flag=()):
    """Run ``plan`` (key -> sizes or None) at tolerance ``tol``.

    Returns ``(reports, bad, seconds)``; ``bad`` lists runs that are neither
    passing nor an allowed flag.
    """
    reports, bad = [], []
    t0 = time.perf_counter()
    for key, sizes in plan.items():
        key_tol = tol[key] if isinstance(tol, dict) else tol
        for d, n, m, v in _runs(key, sizes):
            rep = run_identity(d, n, m, TAU, v, SEED, count, key_tol)
            reports.append(rep)
            if rep.verdict == PASS or (key in allow_flag and rep.verdict == FLAGGED):
                continue
            bad.append(rep)
    return reports, bad, time.perf_counter() - t0


def describe(rep):
    s = rep.spec
    return (f"{rep.identity} N={s['N']} M={s['M']} {s['variant']}: "
            f"{rep.max_relative_residual:.2e} (tol {rep.tolerance:.0e})")


def suite_outcome(reports, bad, seconds, budget=None, exclude_worst=()):
    considered = [r for r in reports if r.identity not in exclude_worst]
    worst = max(considered, key=lambda r: r.max_relative_residual / r.tolerance)
    ok = not bad and (budget is None or seconds < budget)
    limit = f" (limit {budget:.0f} s)" if budget else ""
    summary = (f"{len(reports)} runs, {len(bad)} failing, worst {describe(worst)}, "
               f"{seconds:.1f} s{limit}")
    notes = [f"failing: {describe(r)}" for r in bad]
    return Outcome(ok, summary, seconds, notes)


# criterion 1 -------------------------------------------------------------

def criterion_1():
    rng = np.random.default_rng(SEED)
    pts = [complex(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.85)) for _ in range(20)]
    t0 = time.perf_counter()
    ours = [(theta(z, TAU), e1(z, TAU), e2(z, TAU), wp(z, TAU), wp_prime(z, TAU)) for z in pts]
    lib_seconds = time.perf_counter() - t0
    t0 = time.perf_counter()
    refs = []
    for z in pts:
        # E1 also from a finite difference of the brute-force theta series
        fd_e1 = oracles.finite_difference(lambda x: oracles.theta_brute(x, TAU), z, 1e-3) \
            / oracles.theta_brute(z, TAU)
        refs.append((oracles.theta_brute(z, TAU), oracles.e1_mp(z, TAU), oracles.e2_mp(z, TAU),
                     complex(oracles.wp_qseries(z, TAU)), oracles.wp_prime_qseries(z, TAU),
                     fd_e1))
    oracle_seconds = time.perf_counter() - t0
    names = ("theta", "E1", "E2", "wp", "wp'")
    worst = dict.fromkeys(names + ("E1 (finite difference)",), 0.0)
    for mine, ref in zip(ours, refs):
        for name, a, b in zip(names, mine, ref):
            worst[name] = max(worst[name], abs(a - b) / max(abs(a), abs(b)))
        a, b = mine[1], ref[5]
        worst["E1 (finite difference)"] = max(worst["E1 (finite difference)"],
                                              abs(a - b) / max(abs(a), abs(b)))
    top = max(worst.values())
    ok = top < 1e-7 and lib_seconds < 1.0
    summary = (f"20 points, worst relative error {top:.1e} (tol 1e-07), "
               f"evaluation {lib_seconds * 1e3:.1f} ms (limit 1 s), oracles {oracle_seconds:.2f} s")
    notes = [", ".join(f"{k} {v:.1e}" for k, v in worst.items())]
    return Outcome(ok, summary, lib_seconds, notes)


# criteria 2-8 ------------------------------------------------------------

def criterion_2():
    keys = ["fay", "phi-quasiperiodic", "fay-aa904", "fay-aa905", "phi-wp", "fay-aa907",
            "fay-aa908", "wp-average", "fourier-aa909", "fourier-a910"]
    reps, bad, sec = run_suite(dict.fromkeys(keys), 1e-9, count=200)
    return suite_outcome(reps, bad, sec, budget=5.0)


def criterion_3():
    keys = ["assoc-yb", "qyb", "skew", "unitarity", "residue", "z-quasiperiodic-x749",
            "hbar-quasiperiodic-x750", "zn-symmetry-x7499", "shift-x751",
            "argument-symmetry-x748"]
    tol = {k: 1e-8 for k in keys}
    tol["residue"] = 1e-6
    reps, bad, sec = run_suite(dict.fromkeys(keys), tol, count=100)
    return suite_outcome(reps, bad, sec, budget=20.0)


def criterion_4():
    keys = ["cubic-x21", "cubic-x22", "cubic-x23", "cubic-x24"]
    reps, bad, sec = run_suite(dict.fromkeys(keys, [(2, 1), (3, 1)]), 1e-8, count=100)
    return suite_outcome(reps, bad, sec)


def criterion_5():
    tol = {"classical-laurent": 1e-6, "classical-x052": 1e-9, "classical-x053": 1e-9,
           "classical-x054": 1e-9, "classical-x055": 1e-9, "classical-e1-sum": 1e-9,
           "half-quantum-x99": 1e-8}
    reps, bad, sec = run_suite(dict.fromkeys(tol), tol)
    return suite_outcome(reps, bad, sec)


def criterion_6():
    plan = {"cm-lax-n2": [(2, 1)], "cm-lax-n3": [(2, 1)]}
    reps, bad, sec = run_suite(plan, 1e-8, count=100)
    out = suite_outcome(reps, bad, sec)
    out.notes.insert(0, "powers k = 2, 3 of the block Lax matrix at n = 2 and n = 3 points")
    return out


SYM_PAIRS = [(2, 3), (3, 2)]
FOUR_TERM = ("sym-four-term-hbar-printed", "sym-cubic-final-printed")


def criterion_7():
    plan = {k: SYM_PAIRS for k in (
        "sym-skew-x741", "sym-assoc-yb-x742", "sym-unitarity", "sym-unitarity-x7431",
        "sym-cubic-x745", "sym-cubic-x746", "sym-cubic-x747", "sym-cubic-x7471",
        "sym-z-quasiperiodic-x33", "sym-hbar-quasiperiodic-x34", "sym-small-z-x35",
        "sym-small-hbar-x36", "sym-index-x342", "sym-index-x343", "sym-shift", "sym-glnm",
        "sym-rational-x74") + FOUR_TERM}
    plan["sym-collapse-m1"] = None
    plan["sym-collapse-n1"] = None
    plan["sym-m-equals-n"] = [(2, 2)]
    reps, bad, sec = run_suite(plan, 1e-8, allow_flag=FOUR_TERM)
    out = suite_outcome(reps, bad, sec, budget=60.0, exclude_worst=FOUR_TERM)
    for r in reps:
        if r.identity in FOUR_TERM:
            out.notes.append(f"four-term equation as printed, verdict {r.verdict}: {describe(r)}")
    if any(r.identity == "sym-cubic-x747" for r in bad):
        derived, derived_bad, _ = run_suite({"sym-cubic-x747-derived": SYM_PAIRS}, 1e-8)
        worst = max(r.max_relative_residual for r in derived)
        out.notes.append(
            "sym-cubic-x747 as stated (right side -P~_13 N^3 M^2 wp'(N hbar)) leaves a "
            "residual of order one. Taking hbar1 -> hbar2 in the hbar-cubic relation gives "
            "-P~_12 N^3 M^3 wp'(N hbar) instead; that form passes at "
            f"{worst:.1e} in all {len(derived)} settings "
            f"({'none' if not derived_bad else len(derived_bad)} failing).")
    return out


def criterion_8():
    plan = {"exchange-x075": None, "coupled-exchange-x578": None, "heisenberg-x54": None,
            "heisenberg-x541": None, "prop3-functional": None, "sklyanin-relations-x61": None,
            "sklyanin-gl2-x63": None, "sklyanin-gl2-x65": None, "sklyanin-gl2-kform": None,
            "k-wp-identity": None}
    reps, bad, sec = run_suite(plan, 1e-8)
    out = suite_outcome(reps, bad, sec)
    prop3 = [r for r in reps if r.identity == "prop3-functional"]
    out.notes.insert(0, f"three-point functional identity: all (alpha, beta, gamma) at N=2, "
                        f"{prop3[0].samples['accepted']} points")
    if any(r.identity == "sklyanin-gl2-x65" for r in bad):
        derived, _, _ = run_suite({"sklyanin-gl2-x65-derived": None}, 1e-8)
        out.notes.append(
            "sklyanin-gl2-x65 as stated carries the prefactor wp_alpha on the commutator "
            "side. The K/wp identity (checked by k-wp-identity and sklyanin-gl2-kform, both "
            "passing) forces wp_(alpha+beta) there; with that prefactor the relation holds "
            f"at {derived[0].max_relative_residual:.1e} (sklyanin-gl2-x65-derived).")
    return out


# criterion 9 -------------------------------------------------------------

def _strip_timestamp(text):
    doc = json.loads(text)
    doc["meta"].pop("timestamp")
    return [ln for ln in text.splitlines() if '"timestamp"' not in ln], doc


def criterion_9(tmp_dir):
    paths = [Path(tmp_dir) / f"run{k}.json" for k in (1, 2)]
    argv = ["--identity", "all", "--samples", "3", "--seed", "5"]
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(io.StringIO()):
        codes = [cli.main(argv + ["--report", str(p)]) for p in paths]
    sec = time.perf_counter() - t0
    (lines_a, doc_a), (lines_b, doc_b) = (_strip_timestamp(p.read_text()) for p in paths)
    same = lines_a == lines_b and doc_a == doc_b
    summary = (f"two runs of all {len(doc_a['results'])} settings (3 samples, seed 5): "
               f"{'byte-identical' if same else 'DIFFERENT'} apart from the timestamp, "
               f"exit codes {codes}, {sec:.1f} s")
    return Outcome(same and codes[0] == codes[1], summary, sec)


CRITERIA = {
    1: ("elliptic kernel against independent oracles", criterion_1),
    2: ("scalar identity suite", criterion_2),
    3: ("GL_N R-matrix suite", criterion_3),
    4: ("cubic relations", criterion_4),
    5: ("classical limit", criterion_5),
    6: ("block Lax matrix", criterion_6),
    7: ("symmetric R-matrix suite", criterion_7),
    8: ("quantum algebra suite", criterion_8),
    9: ("determinism", criterion_9),
}


def evaluate(num, tmp_dir):
    title, fn = CRITERIA[num]
    out = fn(tmp_dir) if num == 9 else fn()
    return out, line(num, title, out)


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, tmp_path, capsys):
    out, text = evaluate(num, tmp_path)
    with capsys.disabled():
        print("\n" + text)
    assert out.ok, text


def test_full_default_run(tmp_path, capsys):
    report = tmp_path / "full.json"
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(io.StringIO()):
        code = cli.main(["--identity", "all", "--report", str(report)])
    sec = time.perf_counter() - t0
    doc = json.loads(report.read_text())
    verdicts = [r["verdict"] for r in doc["results"]]
    text = (f"full default run [{'PASS' if sec < 120 else 'FAIL'}]: {len(verdicts)} runs, "
            f"{verdicts.count('pass')} pass, {verdicts.count('fail')} fail, "
            f"{verdicts.count('flagged-as-printed')} flagged, exit code {code}, "
            f"{sec:.1f} s (limit 120 s)")
    with capsys.disabled():
        print("\n" + text)
    assert sec < 120
    assert code == (1 if "fail" in verdicts else 0)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        results = [evaluate(num, tmp) for num in sorted(CRITERIA)]
    for _, text in results:
        print(text)
    sys.exit(0 if all(out.ok for out, _ in results) else 1)
