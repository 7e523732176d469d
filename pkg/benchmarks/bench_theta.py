"""Compare the compiled theta kernel with the pure-Python fallback.

Usage::

    python benchmarks/bench_theta.py --points 2000 --repeat 5
    python benchmarks/bench_theta.py --end-to-end qyb

The kernel comparison calls both implementations on the same seeded points
and checks that they agree.  ``--end-to-end`` times one harness identity in
two subprocesses, one per backend.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from elliptic_rmatrix import _theta_py

try:
    from elliptic_rmatrix import _theta_ext
except ImportError:
    _theta_ext = None


def parse_tau(text):
    return complex(text.replace("i", "j"))


def time_kernel(fn, points, tau, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for z in points:
            fn(z, tau)
        best = min(best, time.perf_counter() - t0)
    return best / len(points)


def max_disagreement(points, tau):
    worst = 0.0
    for z in points:
        a = np.asarray(_theta_py.theta_series(z, tau))
        b = np.asarray(_theta_ext.theta_series(z, tau))
        worst = max(worst, float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300))))
    return worst


def time_identity(key, pure, samples):
    env = dict(os.environ)
    if pure:
        env["ELLIPTIC_RMATRIX_PURE"] = "1"
    else:
        env.pop("ELLIPTIC_RMATRIX_PURE", None)
    code = (
        "import time\n"
        "from elliptic_rmatrix import BACKEND\n"
        "from elliptic_rmatrix.harness.report import run_identity\n"
        "t0 = time.perf_counter()\n"
        f"run_identity({key!r}, n=3, count={samples})\n"
        "print(BACKEND, time.perf_counter() - t0)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=2000, help="points per timing pass")
    p.add_argument("--repeat", type=int, default=5, help="timing passes; the best is kept")
    p.add_argument("--tau", type=parse_tau, default=0.2 + 0.9j)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--end-to-end", metavar="KEY",
                   help="also time this harness identity at N=3 under each backend")
    p.add_argument("--samples", type=int, default=50, help="samples for --end-to-end")
    args = p.parse_args(argv)

    if _theta_ext is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return 1

    rng = np.random.default_rng(args.seed)
    # a few cells wide so the shifted summation window is exercised
    x = rng.uniform(-2.0, 2.0, args.points)
    y = rng.uniform(-2.0, 2.0, args.points) * args.tau.imag
    points = list(x + 1j * y)

    t_py = time_kernel(_theta_py.theta_series, points, args.tau, args.repeat)
    t_ext = time_kernel(_theta_ext.theta_series, points, args.tau, args.repeat)
    print(f"tau = {args.tau}, {args.points} points, best of {args.repeat}")
    print(f"  python  {t_py * 1e6:9.2f} us/call")
    print(f"  cython  {t_ext * 1e6:9.2f} us/call")
    print(f"  speedup {t_py / t_ext:9.1f}x")
    print(f"  max relative disagreement {max_disagreement(points, args.tau):.1e}")

    if args.end_to_end:
        for pure in (True, False):
            backend, sec = time_identity(args.end_to_end, pure, args.samples)
            print(f"  {args.end_to_end} N=3, {args.samples} samples, {backend:6s} {sec:.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
