"""Averaged sums: the mean of S_N over all primitive roots in one slot.

Two evaluation paths compute the same number and are kept deliberately
independent so they can check each other:

* eval_avg_direct enumerates the primitive roots themselves and advances
  every power g^x by one modular multiplication per step;
* eval_avg_u_param writes each root as g0^u with gcd(u, p-1) = 1 and reads
  phases out of a precomputed table indexed by u*x mod (p-1).

The u-parameterization is the performance device: one length-(p-1) phase
table per (b, g0) turns the double loop into integer index updates plus
table lookups.  Per-u partial sums are always reduced in a fixed order, so
results are identical regardless of how the rows were chunked over threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .expsum import RootTable, SumSpec
from .numtheory import PrimeContext, enumerate_primitive_roots, is_primitive_root

_CHUNK_MIN = 64  # don't spin up threads for tiny unit groups


@dataclass(frozen=True)
class AvgSpec:
    """An averaged sum: like SumSpec, but one designated coefficient b whose
    primitive root runs over all of them; gcd(b, p) = 1 is required.
    """

    p: int
    N: int
    a: int
    b: int
    fixed_terms: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        from .numtheory import prime_context

        ctx = prime_context(self.p)
        if not 1 <= self.N <= self.p - 1:
            raise ValueError(f"N must be in [1, p-1], got N={self.N} for p={self.p}")
        if self.b % self.p == 0:
            raise ValueError(f"averaged coefficient b={self.b} is divisible by p={self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        reduced = []
        for bi, gi in self.fixed_terms:
            gi %= self.p
            if not is_primitive_root(gi, ctx):
                raise ValueError(f"{gi} is not a primitive root mod {self.p}")
            reduced.append((bi % self.p, gi))
        object.__setattr__(self, "fixed_terms", tuple(reduced))

    @property
    def only_averaged_term(self) -> bool:
        """True when a == 0 and every fixed coefficient vanishes mod p, i.e.
        only the averaged b*g^x phase survives.  Permitted, but reports flag
        it because the r >= 1 hypotheses are then vacuous.
        """
        return self.a == 0 and all(bi == 0 for bi, _ in self.fixed_terms)

    def fixed_phase_vector(self) -> np.ndarray:
        """(a*x + sum of fixed b_i*g_i^x) mod p for x in [1, N] (slot 0 unused)."""
        return SumSpec(self.p, self.N, self.a, self.fixed_terms).phase_vector()


@dataclass(frozen=True)
class AvgResult:
    value: complex
    sigma_N: float  # sum over u of |inner sum|, before the 1/phi(p-1)
    phi_pm1: int


@dataclass(frozen=True)
class ChainRow:
    """One verified inequality: lhs <= rhs is the claim."""

    label: str
    lhs: float
    rhs: float

    @property
    def rel_slack(self) -> float:
        return (self.rhs - self.lhs) / max(1.0, abs(self.rhs))


ChainReport = list  # list[ChainRow]


def min_rel_slack(report: "list[ChainRow]") -> float:
    return min(row.rel_slack for row in report)


def power_phase_table(b: int, g0: int, p: int) -> np.ndarray:
    """B[t] = (b * g0^t) mod p for t in [0, p-2], by one multiplication per step."""
    out = np.empty(p - 1, dtype=np.int64)
    v = 1
    for t in range(p - 1):
        out[t] = b * v % p
        v = v * g0 % p
    return out


def units_array(ctx: PrimeContext) -> np.ndarray:
    return np.array(ctx.units(), dtype=np.int64)


def _map_over_units(fn, us: np.ndarray, threads: int) -> np.ndarray:
    """fn on contiguous chunks of us, concatenated in chunk order.

    Output is independent of the chunking, so any thread count gives the
    same array.
    """
    if threads <= 1 or len(us) < _CHUNK_MIN:
        return fn(us)
    k = min(threads, len(us))
    chunks = np.array_split(us, k)
    with ThreadPoolExecutor(max_workers=k) as ex:
        parts = list(ex.map(fn, chunks))
    return np.concatenate(parts)


def avg_inner_rows(
    spec: AvgSpec,
    ctx: PrimeContext,
    table: RootTable,
    us: np.ndarray | None = None,
    threads: int = 1,
) -> np.ndarray:
    """Per-u inner sums (the u-parameterized path), in the order of us."""
    if not (spec.p == ctx.p == table.p):
        raise ValueError("inconsistent p across spec, context and table")
    if us is None:
        us = units_array(ctx)
    B = power_phase_table(spec.b, ctx.g0, spec.p)
    c = spec.fixed_phase_vector()
    return _map_over_units(
        lambda chunk: kernels.avg_inner_rows(table.roots, B, c, spec.N, chunk),
        np.asarray(us, dtype=np.int64),
        threads,
    )


def _result_from_rows(rows: np.ndarray, phi: int) -> AvgResult:
    value = complex(np.sum(rows) / phi)
    sigma = float(np.sum(np.abs(rows)))
    assert abs(value) <= sigma / phi * (1 + 1e-12) + 1e-12
    return AvgResult(value, sigma, phi)


def eval_avg_u_param(
    spec: AvgSpec,
    ctx: PrimeContext,
    table: RootTable,
    us: np.ndarray | None = None,
    threads: int = 1,
) -> AvgResult:
    """Averaged sum via the u-parameterization (the fast path).

    Passing an explicit us restricts the outer sum (debug mode); the
    normalization stays 1/phi(p-1) only when us is the full unit set, so
    restricted calls divide by len(us) instead.
    """
    rows = avg_inner_rows(spec, ctx, table, us, threads)
    phi = ctx.phi_pm1 if us is None else len(us)
    return _result_from_rows(rows, phi)


def eval_avg_direct(spec: AvgSpec, ctx: PrimeContext, table: RootTable) -> AvgResult:
    """Averaged sum by enumerating the primitive roots themselves.

    Powers advance by one modular multiplication per step for every root in
    parallel (vectorized over the root list, compensated over x).
    """
    if not (spec.p == ctx.p == table.p):
        raise ValueError("inconsistent p across spec, context and table")
    p = spec.p
    gs = np.array(enumerate_primitive_roots(ctx), dtype=np.int64)
    cf = spec.fixed_phase_vector()
    pw = np.ones(len(gs), dtype=np.int64)
    acc = np.zeros(len(gs), dtype=np.complex128)
    comp = np.zeros(len(gs), dtype=np.complex128)
    for x in range(1, spec.N + 1):
        pw = pw * gs % p
        ph = (cf[x] + spec.b * pw) % p
        y = table.roots[ph] - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return _result_from_rows(acc, ctx.phi_pm1)


def chain_majorants(b: int, ctx: PrimeContext, table: RootTable) -> tuple[float, float, float]:
    """The b-only right-hand-side ingredients of the inequality chain:

    (s1, s4, v4) = (sum_{x,y} |U|, sum_{x,y} |U|^4, sum_{lam,y} |V|^4) with
    U(x, y) = sum_u e_p(b (g0^{ux} - g0^{uy})) over x, y in [1, p-1] and
    V(lam, y) = sum_u e_p(b (lam^u - lam^{uy})) over all nonzero residues
    lam (a majorant, matching the direction of the proven inequality).

    None of this depends on a or on the fixed terms, so grid drivers cache
    one triple per (p, b).
    """
    p = ctx.p
    pm1 = p - 1
    b %= p
    us = units_array(ctx)
    B = power_phase_table(b, ctx.g0, p)
    xs = np.arange(1, p, dtype=np.int64)
    U = np.zeros((pm1, pm1), dtype=np.complex128)
    for u in us:
        Bu = B[(int(u) * xs) % pm1]
        U += table.roots[(Bu[:, None] - Bu[None, :]) % p]
    absU = np.abs(U)
    s1 = float(absU.sum())
    s4 = float((absU**4).sum())

    v4 = 0.0
    for lam in range(1, p):
        P = np.empty(pm1, dtype=np.int64)
        v = 1
        for t in range(pm1):
            P[t] = v
            v = v * lam % p
        Pu = P[us]
        for y in range(1, p):
            Puy = P[(us * y) % pm1]
            V = table.roots[(b * (Pu - Puy)) % p].sum()
            v4 += abs(V) ** 4
    return s1, s4, v4


def check_chain(
    spec: AvgSpec,
    ctx: PrimeContext,
    table: RootTable,
    threads: int = 1,
    majorants: tuple[float, float, float] | None = None,
) -> "list[ChainRow]":
    """Numeric audit of the complete-interval inequality chain.

    Requires N = p-1.  Returns rows (label, lhs, rhs), each a proven
    inequality, so any materially negative slack means a bug:

      cauchy_schwarz      SIGMA^2 <= phi * sum_u |inner_u|^2
      expansion_triangle  SIGMA^8 <= phi^4 * (sum_{x,y} |U(x,y)|)^4
      holder              SIGMA^8 <= phi^4 * ((p-1)^2)^3 * sum_{x,y} |U|^4
      lambda_majorant     SIGMA^8 <= p^10 * sum_{lam=1..p-1, y} |V(lam,y)|^4

    majorants, if given, must be chain_majorants(spec.b, ctx, table).
    """
    p = spec.p
    if spec.N != p - 1:
        raise ValueError(f"chain check needs N = p-1, got N={spec.N}")
    phi = ctx.phi_pm1
    pm1 = p - 1
    rows = avg_inner_rows(spec, ctx, table, None, threads)
    sigma = float(np.sum(np.abs(rows)))
    sum_sq = float(np.sum(np.abs(rows) ** 2))
    s1, s4, v4 = majorants if majorants is not None else chain_majorants(spec.b, ctx, table)
    return [
        ChainRow("cauchy_schwarz", sigma**2, phi * sum_sq),
        ChainRow("expansion_triangle", sigma**8, phi**4 * s1**4),
        ChainRow("holder", sigma**8, phi**4 * float(pm1) ** 6 * s4),
        ChainRow("lambda_majorant", sigma**8, float(p) ** 10 * v4),
    ]
