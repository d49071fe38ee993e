"""Seeded scans: draw random averaged-sum specs per prime, record the
largest average magnitude, and serialize ScanRecords.

Reproducibility contract: the per-prime RNG stream depends only on
(seed, p), so scans parallelize across primes without changing a single
draw, and repeated runs are byte-identical.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor

from .averaged import AvgSpec, eval_avg_u_param
from .expsum import root_table
from .moments import count_solutions, lambda_context, solution_count_ratio
from .numtheory import enumerate_primitive_roots, prime_context, primes_in_range
from .reports import ScanRecord, make_record

SCAN_QUANTITY = "avg_abs_max"


def _prime_rng(seed: int, p: int) -> random.Random:
    return random.Random(seed * 1_000_003 + p)


def draw_spec(p: int, proots: list[int], rng: random.Random) -> AvgSpec:
    """One random spec: a in [0, p-1], b in [1, p-1], one fixed term with a
    random coefficient and a random primitive root (the r >= 1 regime the
    averaged bound addresses).
    """
    a = rng.randrange(p)
    b = rng.randrange(1, p)
    b1 = rng.randrange(1, p)
    g1 = proots[rng.randrange(len(proots))]
    return AvgSpec(p, p - 1, a, b, ((b1, g1),))


def scan_prime(p: int, samples: int, seed: int) -> ScanRecord:
    """max |averaged sum| over `samples` seeded draws at N = p-1."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    ctx = prime_context(p)
    table = root_table(p)
    proots = enumerate_primitive_roots(ctx)
    rng = _prime_rng(seed, p)
    max_abs = 0.0
    for _ in range(samples):
        spec = draw_spec(p, proots, rng)
        res = eval_avg_u_param(spec, ctx, table)
        max_abs = max(max_abs, abs(res.value))
    if max_abs > p - 1 + 1e-6:
        raise ArithmeticError(f"averaged sum exceeded N at p={p}: {max_abs}")
    return make_record(p, SCAN_QUANTITY, max_abs, samples, seed)


def scan_primes(ps, samples: int, seed: int, threads: int = 1) -> list[ScanRecord]:
    """ScanRecords for the given primes, in ascending-p order regardless of
    how the work was scheduled.
    """
    ps = sorted(ps)
    if threads <= 1 or len(ps) <= 1:
        return [scan_prime(p, samples, seed) for p in ps]
    with ThreadPoolExecutor(max_workers=min(threads, len(ps))) as ex:
        return list(ex.map(lambda p: scan_prime(p, samples, seed), ps))


def scan_range(pmin: int, pmax: int, samples: int, seed: int, threads: int = 1) -> list[ScanRecord]:
    """One record for every odd prime in [pmin, pmax]."""
    if pmin > pmax:
        raise ValueError(f"empty scan range [{pmin}, {pmax}]")
    ps = [p for p in primes_in_range(pmin, pmax) if p >= 3]
    return scan_primes(ps, samples, seed, threads)


def td_ratio_records(
    pmin: int = 5, pmax: int = 13, seed: int = 0, threads: int = 1
) -> list[ScanRecord]:
    """The congruence-count ratio table: one row per (p, d | p-1), with lam
    the least primitive root (the count only depends on the subgroup
    generated by lam^d, so one primitive root represents them all).  The
    ratio is reported, never asserted: its implied constant is unknown.
    """
    records = []
    for p in primes_in_range(max(pmin, 3), pmax):
        ctx = prime_context(p)
        for d in ctx.pm1.divisors():
            lctx = lambda_context(p, ctx.g0, d)
            cnt = count_solutions(lctx, threads=threads)
            ratio = solution_count_ratio(lctx, cnt)
            records.append(
                make_record(
                    p,
                    f"td_ratio[lam={ctx.g0},d={d},t_d={lctx.t_d},Td={cnt.count}]",
                    ratio,
                    1,
                    seed,
                )
            )
    return records


def geometric_primes(pmin: int, pmax: int, count: int) -> list[int]:
    """`count` distinct primes roughly geometrically spaced in [pmin, pmax]
    (for log-log exponent fits, which want even coverage in ln p).
    """
    out: list[int] = []
    ratio = (pmax / pmin) ** (1.0 / max(count - 1, 1))
    candidates = primes_in_range(pmin, pmax)
    if len(candidates) < count:
        raise ValueError(f"only {len(candidates)} primes in [{pmin}, {pmax}]")
    for i in range(count):
        target = pmin * ratio**i
        nxt = next((q for q in candidates if q >= target and q not in out), None)
        if nxt is None:
            nxt = next(q for q in reversed(candidates) if q not in out)
        out.append(nxt)
    return sorted(out)
