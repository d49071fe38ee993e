"""Verification suites: every explicit identity, inequality and bound the
package claims, run at desk scale with full reproduction parameters on any
failure.

Independent oracles (literal enumeration via cmath, no root tables, no
kernels) live here too, so the suites can cross-check the production paths
against arithmetic that shares nothing with them.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .averaged import (
    AvgSpec,
    chain_majorants,
    check_chain,
    eval_avg_direct,
    eval_avg_u_param,
)
from .completion import (
    IntervalSpec,
    _diff_row,
    complete_sum_tables,
    final_bound_check,
    geometric_sum,
    geometric_tail_bound,
    harmonic_factor,
    incomplete_completed,
)
from .expsum import SumSpec, eval_sum, root_table
from .moments import (
    count_solutions,
    fourth_moment,
    lambda_context,
    orthogonality_identity,
    solution_count_ratio,
)
from .numtheory import enumerate_primitive_roots, prime_context, primes_in_range
from .reports import mordell_rhs


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        # timing deliberately omitted: repeated runs must be byte-identical
        out = [f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.checked} checks"]
        out += [f"  note: {n}" for n in self.notes]
        out += [f"  FAIL: {f}" for f in self.failures]
        return out


# ----------------------------------------------------------------------
# independent brute-force oracles (cmath only; no tables, no kernels)
# ----------------------------------------------------------------------

def _ep(k: int, p: int) -> complex:
    return cmath.exp(2j * cmath.pi * (k % p) / p)


def fourth_moment_oracle(p: int, lam: int, a: int, b: int) -> float:
    """H(a, b) by literal enumeration with cmath exponentials."""
    total = 0.0
    for y in range(1, p):
        inner = 0.0 + 0.0j
        for x in range(1, p):
            if math.gcd(x, p - 1) == 1:
                inner += _ep(a * pow(lam, x, p) + b * pow(lam, x * y, p), p)
        total += abs(inner) ** 4
    return total


def count_solutions_oracle(p: int, lam_d: int, td: int) -> int:
    """T_d by five literal nested loops."""
    count = 0
    for x1 in range(1, td + 1):
        for x2 in range(1, td + 1):
            for x3 in range(1, td + 1):
                for x4 in range(1, td + 1):
                    if (pow(lam_d, x1, p) + pow(lam_d, x2, p)
                            - pow(lam_d, x3, p) - pow(lam_d, x4, p)) % p:
                        continue
                    for y in range(1, td + 1):
                        if (pow(lam_d, x1 * y, p) + pow(lam_d, x2 * y, p)
                                - pow(lam_d, x3 * y, p) - pow(lam_d, x4 * y, p)) % p == 0:
                            count += 1
    return count


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------

def full_period_suite(pmax: int = 101, tol: float = 1e-9) -> SuiteResult:
    """S_{p-1}(b, g0) = -1 for every prime p <= pmax and every b in [1, p-1]:
    g^x permutes the nonzero residues over a full period.
    """
    t0 = time.perf_counter()
    res = SuiteResult("full_period")
    for p in primes_in_range(3, pmax):
        ctx = prime_context(p)
        table = root_table(p)
        for b in range(1, p):
            val = eval_sum(SumSpec(p, p - 1, 0, ((b, ctx.g0),)), table)
            res.checked += 1
            if abs(val + 1.0) > tol:
                res.failures.append(f"p={p} b={b} g={ctx.g0}: S={val!r}, |S+1|={abs(val + 1)}")
    res.elapsed = time.perf_counter() - t0
    return res


def mordell_suite(pmax: int = 61, threads: int = 1) -> SuiteResult:
    """|S_N(a, b, g)| < 2*sqrt(p)*ln(p) + 2*sqrt(p) + 1, exhaustively: every
    prime p <= pmax, every a, b in [1, p-1], every primitive root, every N.
    """
    t0 = time.perf_counter()
    res = SuiteResult("mordell")
    ps = primes_in_range(3, pmax)

    def one_prime(p):
        ctx = prime_context(p)
        table = root_table(p)
        rhs = mordell_rhs(p)
        worst = (0.0, None)
        checked = 0
        for g in enumerate_primitive_roots(ctx):
            max_sq, a, b, n = kernels.mordell_scan_g(table.roots, p, g)
            checked += (p - 1) ** 3
            ratio = math.sqrt(max_sq) / rhs
            if ratio > worst[0]:
                worst = (ratio, (a, b, g, n))
        return p, rhs, worst, checked

    if threads > 1 and len(ps) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(one_prime, ps))
    else:
        rows = [one_prime(p) for p in ps]

    worst_overall = (0.0, None, None)
    for p, rhs, (ratio, at), checked in rows:
        res.checked += checked
        if ratio >= 1.0:
            res.failures.append(f"p={p}: |S|={ratio * rhs} >= rhs={rhs} at (a,b,g,N)={at}")
        if ratio > worst_overall[0]:
            worst_overall = (ratio, p, at)
    res.notes.append(
        f"largest |S|/rhs = {worst_overall[0]:.6f} at p={worst_overall[1]}, (a,b,g,N)={worst_overall[2]}"
    )
    res.elapsed = time.perf_counter() - t0
    return res


def path_equality_suite(
    trials: int = 200, pmax: int = 499, seed: int = 0, tol: float = 1e-10
) -> SuiteResult:
    """eval_avg_direct vs eval_avg_u_param on seeded random specs."""
    t0 = time.perf_counter()
    res = SuiteResult("path_equality")
    rng = random.Random(seed * 1_000_003 + 1)
    ps = [p for p in primes_in_range(5, pmax)]
    for _ in range(trials):
        p = ps[rng.randrange(len(ps))]
        ctx = prime_context(p)
        table = root_table(p)
        proots = enumerate_primitive_roots(ctx)
        r = rng.randrange(0, 3)
        fixed = tuple(
            (rng.randrange(1, p), proots[rng.randrange(len(proots))]) for _ in range(r)
        )
        spec = AvgSpec(p, rng.randrange(1, p), rng.randrange(p), rng.randrange(1, p), fixed)
        da = eval_avg_direct(spec, ctx, table)
        ua = eval_avg_u_param(spec, ctx, table)
        res.checked += 1
        diff = abs(da.value - ua.value)
        if diff > tol:
            res.failures.append(f"{spec}: direct={da.value!r} uparam={ua.value!r} diff={diff}")
        if abs(da.sigma_N - ua.sigma_N) > tol * max(1.0, da.sigma_N):
            res.failures.append(f"{spec}: sigma mismatch {da.sigma_N} vs {ua.sigma_N}")
    res.elapsed = time.perf_counter() - t0
    return res


def chain_suite(primes=(5, 7, 11, 13), rel_tol: float = 1e-8) -> SuiteResult:
    """Complete-interval inequality chain on exhaustive coefficient grids:
    every a in [0, p-1], every b in [1, p-1], and fixed terms ranging over
    none plus every (b1, g1) with b1 in [1, p-1] and g1 a primitive root.
    """
    t0 = time.perf_counter()
    res = SuiteResult("chain")
    min_slack = math.inf
    for p in primes:
        ctx = prime_context(p)
        table = root_table(p)
        proots = enumerate_primitive_roots(ctx)
        fixed_choices = [()] + [((b1, g),) for b1 in range(1, p) for g in proots]
        for b in range(1, p):
            majorants = chain_majorants(b, ctx, table)
            for a in range(p):
                for fixed in fixed_choices:
                    spec = AvgSpec(p, p - 1, a, b, fixed)
                    report = check_chain(spec, ctx, table, majorants=majorants)
                    res.checked += len(report)
                    for row in report:
                        min_slack = min(min_slack, row.rel_slack)
                        if row.rel_slack < -rel_tol:
                            res.failures.append(
                                f"p={p} a={a} b={b} fixed={fixed} {row.label}: "
                                f"lhs={row.lhs!r} > rhs={row.rhs!r}"
                            )
    res.notes.append(f"minimum relative slack = {min_slack:.3e}")
    res.elapsed = time.perf_counter() - t0
    return res


def lemma_suite(primes=(5, 7, 11, 13), rel_tol: float = 1e-6, threads: int = 1) -> SuiteResult:
    """Orthogonality identity, T_d bracket and ratio reports for every
    (p, lam primitive, d | p-1); plus the hand values T_d(p=5, d=2) = 12 and
    H(1,1) at (p=5, lam=2) ~ 29.854, reproduced by the literal oracles.
    """
    t0 = time.perf_counter()
    res = SuiteResult("lemma")
    for p in primes:
        ctx = prime_context(p)
        table = root_table(p)
        counts_by_d: dict[int, set] = {}
        for lam in enumerate_primitive_roots(ctx):
            for d in ctx.pm1.divisors():
                lctx = lambda_context(p, lam, d)
                cnt = count_solutions(lctx, threads=threads)
                counts_by_d.setdefault(d, set()).add(cnt.count)
                res.checked += 1
                if not cnt.lower_bound <= cnt.count <= cnt.upper_bound:
                    res.failures.append(
                        f"T_d bracket broken at p={p} lam={lam} d={d}: "
                        f"{cnt.lower_bound} <= {cnt.count} <= {cnt.upper_bound}"
                    )
                lhs, rhs = orthogonality_identity(lctx, table, cnt)
                if abs(lhs - rhs) > rel_tol * rhs:
                    res.failures.append(
                        f"orthogonality broken at p={p} lam={lam} d={d}: lhs={lhs!r} rhs={rhs!r}"
                    )
                solution_count_ratio(lctx, cnt)  # reported elsewhere; must not raise
        for d, vals in counts_by_d.items():
            if len(vals) != 1:
                res.failures.append(
                    f"T_d at p={p} d={d} depends on the primitive root: {sorted(vals)}"
                )
    # hand values against the independent oracles
    c5 = count_solutions(lambda_context(5, 2, 2))
    o5 = count_solutions_oracle(5, pow(2, 2, 5), 2)
    res.checked += 2
    if not (c5.count == o5 == 12):
        res.failures.append(f"T_d hand value: production={c5.count} oracle={o5} expected=12")
    h = fourth_moment(5, 2, 1, 1, root_table(5))
    ho = fourth_moment_oracle(5, 2, 1, 1)
    if abs(h - ho) > 1e-9 or abs(h - 29.854101966249685) > 1e-6:
        res.failures.append(f"H(1,1) hand value: production={h!r} oracle={ho!r}")
    res.elapsed = time.perf_counter() - t0
    return res


def indicator_exhaustive(p: int, tol: float = 1e-9) -> int:
    """Check the characteristic-function identity for every (x, interval)
    pair at this prime; returns the number of distinct checks.

    The indicator value depends on (x, lo, hi) only through the arc start
    s = (lo - x) mod p and the length L, with identical floats and identical
    summation order, so checking every (s, L) *is* the exhaustive check.
    """
    table = root_table(p)
    R = _diff_row(table)
    V = np.zeros(p, dtype=np.complex128)
    for L in range(1, p):
        V = V + np.roll(R, -(L - 1))
        vals = V / p
        expected = np.zeros(p)
        expected[0] = 1.0
        if L >= 2:
            expected[p - L + 1 :] = 1.0
        err = np.abs(vals - expected).max()
        if err > tol:
            raise ArithmeticError(f"indicator off by {err} at p={p}, L={L}")
    return p * (p - 1)


def completion_suite(
    primes=(97, 101, 997),
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
    threads: int = 1,
    indicator_pmax: int = 101,
) -> SuiteResult:
    """Completion identity on seeded random (spec, interval) pairs, the
    separated-term majorant, the closing bound on a subsample, and the
    exhaustive indicator identity for all primes <= indicator_pmax.
    """
    t0 = time.perf_counter()
    res = SuiteResult("completion")
    for p in primes_in_range(3, indicator_pmax):
        res.checked += indicator_exhaustive(p)
    for p in primes:
        ctx = prime_context(p)
        table = root_table(p)
        proots = enumerate_primitive_roots(ctx)
        rng = random.Random(seed * 1_000_003 + p)
        for trial in range(trials):
            a = rng.randrange(p)
            b = rng.randrange(1, p)
            r = rng.randrange(0, 3)
            fixed = tuple(
                (rng.randrange(1, p), proots[rng.randrange(len(proots))]) for _ in range(r)
            )
            lo = rng.randint(1, p - 1)
            hi = rng.randint(lo, p - 1)
            spec = AvgSpec(p, p - 1, a, b, fixed)
            interval = IntervalSpec(lo, hi)
            tables = complete_sum_tables(spec, ctx, table, threads)
            rep = incomplete_completed(spec, interval, ctx, table, threads, tables)
            res.checked += 1
            diff = abs(rep.direct - rep.completed)
            if diff > tol * max(1.0, abs(rep.direct)):
                res.failures.append(
                    f"completion identity p={p} seed={seed} trial={trial} "
                    f"spec={spec} I=[{lo},{hi}]: direct={rep.direct!r} "
                    f"completed={rep.completed!r} diff={diff}"
                )
            if abs(rep.direct) > rep.per_k_bound_sum + rep.main_term_bound + 1e-6:
                res.failures.append(
                    f"separated majorant broken p={p} trial={trial}: |S(I)|={abs(rep.direct)} "
                    f"> {rep.per_k_bound_sum} + {rep.main_term_bound}"
                )
            if trial % 25 == 0:
                lhs, rhs = final_bound_check(spec, interval, ctx, table, threads, tables)
                res.checked += 1
                if lhs > rhs + 1e-6:
                    res.failures.append(
                        f"closing bound broken p={p} trial={trial}: lhs={lhs} rhs={rhs}"
                    )
    res.elapsed = time.perf_counter() - t0
    return res


def tail_suite(
    primes=(31, 101), intervals: int = 500, seed: int = 0, harmonic_pmax: int = 10**4
) -> SuiteResult:
    """Geometric tail bound on seeded intervals for all k, the sine-distance
    inequality |e_p(k) - 1| >= 4*||k/p|| it rests on, and the harmonic factor
    sum against 3 + ln p for every prime up to harmonic_pmax.
    """
    t0 = time.perf_counter()
    res = SuiteResult("tail")
    for p in primes:
        table = root_table(p)
        for k in range(1, p):
            res.checked += 1
            dist = min(k, p - k) / p
            if abs(table.roots[k % p] - 1.0) < 4.0 * dist - 1e-12:
                res.failures.append(f"sine-distance inequality broken at p={p} k={k}")
        rng = random.Random(seed * 1_000_003 + p)
        for _ in range(intervals):
            lo = rng.randint(1, p - 1)
            hi = rng.randint(lo, p - 1)
            interval = IntervalSpec(lo, hi)
            for k in range(1, p):
                actual = abs(geometric_sum(k, interval, table))
                bound = geometric_tail_bound(k, interval, p)
                res.checked += 1
                if actual > bound + 1e-9:
                    res.failures.append(
                        f"tail bound broken p={p} k={k} I=[{lo},{hi}]: {actual} > {bound}"
                    )
    for p in primes_in_range(3, harmonic_pmax):
        res.checked += 1
        hf = harmonic_factor(p)
        if hf > 3.0 + math.log(p):
            res.failures.append(f"harmonic factor {hf} > 3 + ln {p}")
    res.elapsed = time.perf_counter() - t0
    return res
