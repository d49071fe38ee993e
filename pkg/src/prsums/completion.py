"""Incomplete sums over an interval and their completion to full sums.

S(I) sums the u-parameterized phases over x in an integer interval
I = [lo, hi] inside [1, p-1].  The sharp-cutoff characteristic function of
I turns S(I) into a k-indexed combination of complete sums whose linear
coefficient is shifted by -k; the reconstruction is an algebraic identity
and the two evaluation paths must agree to rounding.

The k != p terms are controlled by the geometric-progression bound
|sum_{y in I} e_p(ky)| <= min(|I|, 1/(2*||k/p||)), with ||.|| the distance
to the nearest integer.  All complete sums C(m), and the per-u magnitude
totals behind the bound components, come from one (phi x p) inner-sum
matrix: the u-phase table is built once per (b, g0) and every shift m is
just a different column, so the whole family costs one precomputation plus
lookups and dots.  Wrap-around intervals are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .averaged import AvgSpec, _map_over_units, power_phase_table, units_array
from .expsum import RootTable, SumSpec
from .numtheory import PrimeContext


@dataclass(frozen=True)
class IntervalSpec:
    """Inclusive integer interval [lo, hi]; hi = lo - 1 encodes empty."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.hi < self.lo - 1:
            raise ValueError(f"malformed interval [{self.lo}, {self.hi}]")

    @classmethod
    def empty(cls) -> "IntervalSpec":
        return cls(1, 0)

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1

    @property
    def is_empty(self) -> bool:
        return self.hi < self.lo

    def validate_for(self, p: int):
        if self.is_empty:
            return
        if not 1 <= self.lo <= self.hi <= p - 1:
            raise ValueError(f"interval [{self.lo}, {self.hi}] not inside [1, {p - 1}]")


@dataclass(frozen=True)
class CompletionReport:
    direct: complex
    completed: complex
    per_k_bound_sum: float  # the k != p majorant component
    main_term_bound: float  # the k = p component


def nearest_int_distance(num: int, den: int) -> float:
    """|| num/den ||: distance from num/den to the nearest integer, exactly
    min(num mod den, den - num mod den) / den.
    """
    r = num % den
    return min(r, den - r) / den


_diff_row_cache: dict[int, np.ndarray] = {}


def _diff_row(table: RootTable) -> np.ndarray:
    """R[c] = sum_{k=1}^{p} e_p(k*c), cached per prime.

    The indicator's inner sum depends on (y - x) only through this row, so
    caching is transparent: identical phases, identical floats.
    """
    p = table.p
    row = _diff_row_cache.get(p)
    if row is None:
        ks = np.arange(1, p + 1, dtype=np.int64)
        row = np.empty(p, dtype=np.complex128)
        for c in range(p):
            row[c] = table.roots[(ks * c) % p].sum()
        row.setflags(write=False)
        _diff_row_cache[p] = row
    return row


def indicator(x: int, interval: IntervalSpec, p: int, table: RootTable) -> float:
    """(1/p) sum_{y in I} sum_{k=1}^{p} e_p(k(y-x)), numerically.

    Within 1e-9 of 1 if x in I, of 0 otherwise.
    """
    interval.validate_for(p)
    if table.p != p:
        raise ValueError(f"modulus mismatch: p={p}, table p={table.p}")
    if interval.is_empty:
        return 0.0
    row = _diff_row(table)
    ys = np.arange(interval.lo, interval.hi + 1, dtype=np.int64)
    val = row[(ys - x) % p].sum() / p
    assert abs(val.imag) <= 1e-9
    return float(val.real)


def geometric_sum(k: int, interval: IntervalSpec, table: RootTable) -> complex:
    """sum_{y in I} e_p(k*y), from the root table."""
    if interval.is_empty:
        return 0.0 + 0.0j
    ys = np.arange(interval.lo, interval.hi + 1, dtype=np.int64)
    return complex(table.roots[(k * ys) % table.p].sum())


def geometric_tail_bound(k: int, interval: IntervalSpec, p: int) -> float:
    """min(|I|, 1/(2*||k/p||)); dominates |sum_{y in I} e_p(ky)| for p∤k."""
    if k % p == 0:
        raise ValueError(f"k={k} is divisible by p={p}")
    return min(float(interval.length), 1.0 / (2.0 * nearest_int_distance(k, p)))


def harmonic_factor(p: int) -> float:
    """(1/p) * sum_{k=1}^{p-1} 1/(2*||k/p||)."""
    ks = np.arange(1, p)
    dist = np.minimum(ks, p - ks) / p
    return float((1.0 / (2.0 * dist)).sum() / p)


def incomplete_direct(
    spec: AvgSpec, interval: IntervalSpec, ctx: PrimeContext, table: RootTable,
    threads: int = 1,
) -> complex:
    """S(I) by the direct double loop over u and x in I (unnormalized)."""
    if not (spec.p == ctx.p == table.p):
        raise ValueError("inconsistent p across spec, context and table")
    interval.validate_for(spec.p)
    if interval.is_empty:
        return 0.0 + 0.0j
    B = power_phase_table(spec.b, ctx.g0, spec.p)
    c = SumSpec(spec.p, spec.p - 1, spec.a, spec.fixed_terms).phase_vector()
    us = units_array(ctx)
    rows = _map_over_units(
        lambda chunk: kernels.interval_inner_rows(
            table.roots, B, c, chunk, interval.lo, interval.hi
        ),
        us,
        threads,
    )
    return complex(np.sum(rows))


def complete_sum_tables(
    spec: AvgSpec, ctx: PrimeContext, table: RootTable, threads: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """(C, T) indexed by the linear coefficient m in [0, p-1]:

    C[m] = sum_u inner_u(m)    (the complete sum with coefficient m),
    T[m] = sum_u |inner_u(m)|  (the majorant the bound components use),

    where inner_u(m) = sum_{x=1}^{p-1} e_p(m*x + b*g0^{ux} + fixed(x)).
    One (phi x p) matrix feeds both; rows are reduced in fixed order.
    """
    if not (spec.p == ctx.p == table.p):
        raise ValueError("inconsistent p across spec, context and table")
    B = power_phase_table(spec.b, ctx.g0, spec.p)
    c0 = SumSpec(spec.p, spec.p - 1, 0, spec.fixed_terms).phase_vector()
    us = units_array(ctx)
    M = _map_over_units(
        lambda chunk: kernels.inner_matrix(table.roots, B, c0, chunk), us, threads
    )
    return M.sum(axis=0), np.abs(M).sum(axis=0)


def incomplete_completed(
    spec: AvgSpec, interval: IntervalSpec, ctx: PrimeContext, table: RootTable,
    threads: int = 1, tables: tuple[np.ndarray, np.ndarray] | None = None,
) -> CompletionReport:
    """S(I) reconstructed through the characteristic-function identity:

        S(I) = (1/p) sum_{k=1}^{p} (sum_{y in I} e_p(ky)) * C(a - k)

    together with the two bound components obtained by separating k = p and
    majorizing everything else by absolute values.

    tables, if given, must be complete_sum_tables(spec, ctx, table).
    """
    interval.validate_for(spec.p)
    p, a = spec.p, spec.a
    direct = incomplete_direct(spec, interval, ctx, table, threads)
    if interval.is_empty:
        return CompletionReport(direct, 0.0 + 0.0j, 0.0, 0.0)
    C, T = tables if tables is not None else complete_sum_tables(spec, ctx, table, threads)
    total = 0.0 + 0.0j
    per_k = 0.0
    for k in range(1, p):
        G = geometric_sum(k, interval, table)
        total += G * C[(a - k) % p]
        per_k += abs(G) * T[(a - k) % p]
    total += float(interval.length) * C[a % p]  # k = p: the geometric sum is |I| exactly
    completed = complex(total / p)
    main_term = float(interval.length) * float(T[a % p]) / p
    return CompletionReport(direct, completed, per_k / p, main_term)


def final_bound_check(
    spec: AvgSpec, interval: IntervalSpec, ctx: PrimeContext, table: RootTable,
    threads: int = 1, tables: tuple[np.ndarray, np.ndarray] | None = None,
) -> tuple[float, float]:
    """(lhs, rhs) of the closing incomplete-sum estimate:

    lhs = |S(I)|; rhs = (max_m T[m]) * (harmonic_factor(p) + |I|/p),
    using the largest complete-sum magnitude actually computed rather than
    any asymptotic stand-in.  lhs <= rhs by the completion chain.
    """
    interval.validate_for(spec.p)
    lhs = abs(incomplete_direct(spec, interval, ctx, table, threads))
    _, T = tables if tables is not None else complete_sum_tables(spec, ctx, table, threads)
    rhs = float(T.max()) * (harmonic_factor(spec.p) + interval.length / spec.p)
    return lhs, rhs
