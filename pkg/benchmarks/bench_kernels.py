"""Compare the compiled and pure-Python polynomial product kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Part 1 times the raw ``mul`` kernels on random dense polynomials.  Part 2
runs the exterior-law suite end to end in two subprocesses, one with
TWOPLECTIC_PURE_PYTHON=1.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from twoplectic import _pykernels
from twoplectic.polyring import random_polynomial

try:
    from twoplectic import _ckernels
except ImportError:
    _ckernels = None

E2E = (
    "import time; from twoplectic.laws import check_exterior_laws; from twoplectic.polyring import KERNEL;"
    "t = time.perf_counter(); r = check_exterior_laws({n}, seed=1);"
    "print(KERNEL, r.status, round(time.perf_counter() - t, 2))"
)


def operands(nvars, degree, terms, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(2):
        p = random_polynomial(rng, nvars, max_degree=degree, max_terms=terms, allow_zero=False)
        out.append(p._terms)
    return out


def bench_mul(repeat):
    print(f"{'nvars':>5} {'deg':>4} {'terms':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for nvars, degree, terms in [(3, 3, 10), (3, 6, 40), (5, 4, 60), (5, 8, 150)]:
        a, b = operands(nvars, degree, terms, seed=nvars * 100 + degree)
        assert _ckernels is None or _ckernels.mul(a, b, nvars) == _pykernels.mul(a, b, nvars)
        tp = min(timeit.repeat(lambda: _pykernels.mul(a, b, nvars), number=repeat, repeat=3)) / repeat
        if _ckernels is None:
            print(f"{nvars:>5} {degree:>4} {len(a):>3}x{len(b):<3}{tp * 1e3:>10.3f} {'n/a':>10} {'n/a':>8}")
            continue
        tc = min(timeit.repeat(lambda: _ckernels.mul(a, b, nvars), number=repeat, repeat=3)) / repeat
        print(f"{nvars:>5} {degree:>4} {len(a):>3}x{len(b):<3}{tp * 1e3:>10.3f} {tc * 1e3:>10.3f} {tp / tc:>7.1f}x")


def bench_suite(n):
    for pure in (False, True):
        env = dict(os.environ)
        if pure:
            env["TWOPLECTIC_PURE_PYTHON"] = "1"
        else:
            env.pop("TWOPLECTIC_PURE_PYTHON", None)
        out = subprocess.run([sys.executable, "-c", E2E.format(n=n)], env=env, capture_output=True, text=True)
        kernel, status, secs = out.stdout.split()
        print(f"exterior-laws x{n}: kernel={kernel:<11} status={status} {secs}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=50)
    ap.add_argument("--suite-tuples", type=int, default=300)
    args = ap.parse_args()
    bench_mul(args.repeat)
    bench_suite(args.suite_tuples)
