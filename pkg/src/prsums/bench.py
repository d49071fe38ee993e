"""Benchmark the compiled kernels against the pure-Python fallback.

Run as `python -m prsums.bench [--p P] [--repeat K]`.  Both backends are
imported directly (independently of which one the package selected), each
kernel is timed on the same inputs, and the results are cross-checked to
1e-10 before any timing is trusted.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _kernels_py
from .averaged import power_phase_table, units_array
from .expsum import SumSpec, root_table
from .numtheory import prime_context


def _best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(p: int = 499, repeat: int = 3) -> int:
    try:
        from . import _kernels
    except ImportError:
        print("compiled backend not built; run `pip install -e . --no-build-isolation` first")
        return 1

    ctx = prime_context(p)
    table = root_table(p)
    us = units_array(ctx)
    B = power_phase_table(1, ctx.g0, p)
    c = SumSpec(p, p - 1, 1, ((1, ctx.g0),)).phase_vector()
    phases = np.tile(c[1:], 64)

    cases = [
        ("sum_roots (64 periods)", lambda k: k.sum_roots(table.roots, phases)),
        ("avg_inner_rows", lambda k: k.avg_inner_rows(table.roots, B, c, p - 1, us)),
        ("inner_matrix", lambda k: k.inner_matrix(table.roots, B, c, us)),
        ("mordell_scan_g (p=61)", None),  # filled below with its own table
        ("count_solutions (t_d=24)", None),
    ]

    ctx61 = prime_context(61)
    t61 = root_table(61)
    cases[3] = ("mordell_scan_g (p=61)", lambda k: k.mordell_scan_g(t61.roots, 61, ctx61.g0))

    ctx97 = prime_context(97)
    lam_d = pow(ctx97.g0, 4, 97)  # order (97-1)/4 = 24
    pows = np.array([pow(lam_d, j, 97) for j in range(24)], dtype=np.int64)
    cases[4] = ("count_solutions (t_d=24)", lambda k: k.count_solutions_range(pows, 24, 97, 1, 24))

    print(f"kernel benchmark at p={p} (phi(p-1)={ctx.phi_pm1}), best of {repeat}")
    print(f"{'kernel':<28} {'cython':>12} {'python':>12} {'speedup':>9}")
    for name, fn in cases:
        tc, vc = _best_of(lambda: fn(_kernels), repeat)
        tp, vp = _best_of(lambda: fn(_kernels_py), repeat)
        a = np.asarray(vc, dtype=np.complex128).ravel()
        b = np.asarray(vp, dtype=np.complex128).ravel()
        diff = float(np.max(np.abs(a - b)))
        if diff > 1e-10:
            raise ArithmeticError(f"backend mismatch in {name}: {diff}")
        print(f"{name:<28} {tc * 1e3:>10.2f}ms {tp * 1e3:>10.2f}ms {tp / tc:>8.1f}x")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="prsums.bench")
    ap.add_argument("--p", type=int, default=499)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    return run(args.p, args.repeat)


if __name__ == "__main__":
    raise SystemExit(main())
