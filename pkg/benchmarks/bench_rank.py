"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_rank.py [--sizes 50 100 200] [--repeat 3] [--pipeline]

Times rank_mod_p on random dense integer matrices and trace_product_mod_p on
random 3x3 matrix words, checking that both backends agree.  ``--pipeline``
additionally times ``umpspan character --d 14`` end to end under each backend
(in a subprocess, since the backend is fixed at import).
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

import gmpy2

from umpspan.exact_algebra import _kernels_py

try:
    from umpspan.exact_algebra import _kernels as _compiled
except ImportError:
    _compiled = None


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rank(sizes, repeat, rng, p):
    print(f"{'kernel':<22}{'size':>8}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for n in sizes:
        # rank-deficient on purpose: last quarter of rows are combinations
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n - n // 4)]
        for _ in range(n // 4):
            a, b = rng.sample(range(len(rows)), 2)
            rows.append([x + 2 * y for x, y in zip(rows[a], rows[b])])
        rp = _kernels_py.rank_mod_p(rows, n, p)
        tp = best_of(lambda: _kernels_py.rank_mod_p(rows, n, p), repeat)
        report("rank_mod_p", f"{n}x{n}", tp, rows, n, p, rp, repeat)


def report(name, size, tp, rows, n, p, expect, repeat):
    if _compiled is None:
        print(f"{name:<22}{size:>8}{tp:>12.4f}{'n/a':>12}{'':>10}")
        return
    rc = _compiled.rank_mod_p(rows, n, p)
    assert rc == expect, f"backends disagree: {rc} != {expect}"
    tc = best_of(lambda: _compiled.rank_mod_p(rows, n, p), repeat)
    print(f"{name:<22}{size:>8}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


def bench_trace(lengths, repeat, rng, p):
    mats = [[[rng.randrange(p) for _ in range(3)] for _ in range(3)] for _ in range(3)]
    for d in lengths:
        words = [[rng.randrange(3) for _ in range(d)] for _ in range(200)]

        def run(mod):
            return [mod.trace_product_mod_p(mats, w, p) for w in words]

        ref = run(_kernels_py)
        tp = best_of(lambda: run(_kernels_py), repeat)
        if _compiled is None:
            print(f"{'trace_product x200':<22}{'d=' + str(d):>8}{tp:>12.4f}{'n/a':>12}")
            continue
        assert run(_compiled) == ref, "backends disagree on traces"
        tc = best_of(lambda: run(_compiled), repeat)
        print(f"{'trace_product x200':<22}{'d=' + str(d):>8}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


def bench_pipeline(d: int):
    cmd = [sys.executable, "-m", "umpspan.cli", "character", "--d", str(d), "--format", "csv"]
    out = {}
    for label, env_val in (("python", "1"), ("compiled", "0")):
        env = dict(os.environ, UMPSPAN_PURE_PYTHON=env_val)
        t0 = time.perf_counter()
        res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        out[label] = (time.perf_counter() - t0, res.stdout)
    assert out["python"][1] == out["compiled"][1], "pipeline output differs between backends"
    print(f"pipeline character --d {d}: python {out['python'][0]:.2f}s, compiled {out['compiled'][0]:.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--lengths", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--pipeline", action="store_true")
    ap.add_argument("--pipeline-d", type=int, default=14)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    p = int(gmpy2.next_prime(rng.getrandbits(61) | (1 << 60)))
    print(f"compiled kernels: {'available' if _compiled is not None else 'NOT built'}; p = {p}")
    bench_rank(args.sizes, args.repeat, rng, p)
    bench_trace(args.lengths, args.repeat, rng, p)
    if args.pipeline:
        bench_pipeline(args.pipeline_d)


if __name__ == "__main__":
    main()
