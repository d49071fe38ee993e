"""Brute-force laboratory for the fourth-moment bound machinery.

The central quantity is the y-summed fourth moment

    H(a, b) = sum_{y=1}^{p-1} | sum_{x coprime to p-1} e_p(a*lam^x + b*lam^{x*y}) |^4

for a primitive root lam.  Its divisor-block decomposition leads, for each
d | p-1 with t_d = (p-1)/d and lam_d = lam^d (of order exactly t_d), to the
exact orthogonality identity

    sum_{alpha,beta=0}^{p-1} sum_{y,x1..x4=1}^{t_d}
        e_p(alpha*(...) + beta*(...))  =  p^2 * T_d,

where T_d counts solutions of the paired power-sum congruence system.  The
identity is checked numerically against the exhaustive integer count; it is
this module's strongest oracle.  The known T_d upper estimate has an
unspecified constant, so its ratio is reported, never asserted.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .averaged import ChainRow
from .expsum import RootTable
from .numtheory import is_primitive_root, mobius, prime_context, sigma_int

_COUNT_GUARD_TD = 64  # t_d^5 <= 2^30: the count is an oracle, not a production path


@dataclass(frozen=True)
class LambdaContext:
    """(p, lam, d, t_d, lam_d) with lam primitive mod p, d | p-1,
    t_d = (p-1)/d and lam_d = lam^d of multiplicative order exactly t_d.
    """

    p: int
    lam: int
    d: int
    t_d: int
    lam_d: int


def lambda_context(p: int, lam: int, d: int) -> LambdaContext:
    ctx = prime_context(p)
    lam %= p
    if not is_primitive_root(lam, ctx):
        raise ValueError(f"{lam} is not a primitive root mod {p}")
    if d < 1 or (p - 1) % d != 0:
        raise ValueError(f"d={d} does not divide p-1={p - 1}")
    t_d = (p - 1) // d
    lam_d = pow(lam, d, p)
    # order of lam_d must be exactly t_d: lam primitive makes this automatic,
    # but it is cheap to verify and the invariant is load-bearing downstream
    assert pow(lam_d, t_d, p) == 1
    return LambdaContext(p, lam, d, t_d, lam_d)


@dataclass(frozen=True)
class TdCount:
    ctx: LambdaContext
    count: int

    @property
    def lower_bound(self) -> int:
        """Diagonal solutions (x1=x3, x2=x4 and x1=x4, x2=x3, any y)."""
        t = self.ctx.t_d
        return t * (2 * t * t - t)

    @property
    def upper_bound(self) -> int:
        return self.ctx.t_d**5


def _power_cycle(base: int, length: int, p: int) -> np.ndarray:
    """[base^0, base^1, ..., base^(length-1)] mod p, exact."""
    out = np.empty(length, dtype=np.int64)
    v = 1
    for t in range(length):
        out[t] = v
        v = v * base % p
    return out


def fourth_moment(p: int, lam: int, a: int, b: int, table: RootTable) -> float:
    """H(a, b) for primitive lam; a, b must not both vanish mod p.

    Exponents x*y are reduced mod p-1 before the power is taken.
    """
    ctx = prime_context(p)
    lam %= p
    if not is_primitive_root(lam, ctx):
        raise ValueError(f"{lam} is not a primitive root mod {p}")
    if a % p == 0 and b % p == 0:
        raise ValueError("a and b must not both be divisible by p")
    if table.p != p:
        raise ValueError(f"modulus mismatch: p={p}, table p={table.p}")
    pm1 = p - 1
    P = _power_cycle(lam, pm1, p)
    us = np.array(ctx.units(), dtype=np.int64)
    aPx = (a % p) * P[us % pm1] % p
    total = 0.0
    for y in range(1, p):
        ph = (aPx + (b % p) * P[(us * y) % pm1]) % p
        total += abs(table.roots[ph].sum()) ** 4
    return float(total)


def count_solutions(ctx: LambdaContext, threads: int = 1) -> TdCount:
    """Exhaustive T_d: solutions of the paired congruence system over
    (x1, x2, x3, x4, y) in [1, t_d]^5.  Guarded to t_d <= 64 (t_d^5 <= 2^30);
    chunked over x1 when threads > 1 (integer partial counts, so the split
    cannot change the result).
    """
    td = ctx.t_d
    if td > _COUNT_GUARD_TD:
        raise ValueError(f"t_d={td} too large for the exhaustive count (max {_COUNT_GUARD_TD})")
    pows = _power_cycle(ctx.lam_d, td, ctx.p)
    if threads <= 1 or td < 8:
        n = kernels.count_solutions_range(pows, td, ctx.p, 1, td)
    else:
        k = min(threads, td)
        edges = np.linspace(1, td + 1, k + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=k) as ex:
            parts = ex.map(
                lambda se: kernels.count_solutions_range(pows, td, ctx.p, int(se[0]), int(se[1]) - 1),
                zip(edges[:-1], edges[1:]),
            )
            n = sum(parts)
    out = TdCount(ctx, int(n))
    assert out.lower_bound <= out.count <= out.upper_bound
    return out


def orthogonality_identity(
    ctx: LambdaContext, table: RootTable, count: TdCount | None = None
) -> tuple[float, float]:
    """Both sides of the p^2 * T_d identity, computed independently.

    lhs: the full character sum over (alpha, beta, y, x1..x4), evaluated
    numerically via D(c) = sum_alpha e_p(alpha*c) read off the root table;
    rhs: p^2 times the exhaustive integer count.  The imaginary part of the
    lhs must not exceed 1e-6 in magnitude.
    """
    p, td = ctx.p, ctx.t_d
    if table.p != p:
        raise ValueError(f"modulus mismatch: p={p}, table p={table.p}")
    if count is None:
        count = count_solutions(ctx)
    # D[c] = sum_{alpha=0}^{p-1} e_p(alpha*c), from the table (no shortcut)
    ks = np.arange(p, dtype=np.int64)
    D = np.empty(p, dtype=np.complex128)
    for c in range(p):
        D[c] = table.roots[(ks * c) % p].sum()

    pows = _power_cycle(ctx.lam_d, td, ctx.p)
    idx = np.arange(1, td + 1, dtype=np.int64)
    X1, X2, X3, X4 = (g.ravel() for g in np.meshgrid(idx, idx, idx, idx, indexing="ij"))
    A = (pows[X1 % td] + pows[X2 % td] - pows[X3 % td] - pows[X4 % td]) % p
    DA = D[A]
    lhs = 0.0 + 0.0j
    for y in range(1, td + 1):
        py = pows[(idx * y) % td]
        Bph = (py[X1 - 1] + py[X2 - 1] - py[X3 - 1] - py[X4 - 1]) % p
        lhs += (DA * D[Bph]).sum()
    rhs = float(p * p * count.count)
    assert abs(lhs.imag) <= 1e-6, f"orthogonality lhs has imaginary part {lhs.imag}"
    return float(lhs.real), rhs


def solution_count_ratio(ctx: LambdaContext, count: TdCount | None = None) -> float:
    """T_d / (t_d^{14/3} / p): the reported (never asserted) ratio against
    the known upper estimate, whose implied constant is unspecified.
    """
    if count is None:
        count = count_solutions(ctx)
    return count.count * ctx.p / float(ctx.t_d) ** (14.0 / 3.0)


def d_block_full(p: int, lam: int, a: int, b: int, d: int, table: RootTable) -> float:
    """sum_{y=1}^{p-1} |sum_{x=1}^{(p-1)/d} e_p(a*lam^{dx} + b*lam^{dxy})|^4."""
    pm1 = p - 1
    td = pm1 // d
    P = _power_cycle(lam, pm1, p)
    xs = np.arange(1, td + 1, dtype=np.int64)
    aP = (a % p) * P[(d * xs) % pm1] % p
    total = 0.0
    for y in range(1, p):
        ph = (aP + (b % p) * P[(d * xs * y) % pm1]) % p
        total += abs(table.roots[ph].sum()) ** 4
    return float(total)


def d_block_folded(p: int, lam: int, a: int, b: int, d: int, table: RootTable) -> float:
    """Same block computed as d * sum_{y=1}^{t_d} ... using lam_d = lam^d;
    the y-sum collapses d-fold because the inner sum has period t_d in y.
    """
    pm1 = p - 1
    td = pm1 // d
    lam_d = pow(lam, d, p)
    pows = _power_cycle(lam_d, td, p)
    xs = np.arange(1, td + 1, dtype=np.int64)
    aP = (a % p) * pows[xs % td] % p
    total = 0.0
    for y in range(1, td + 1):
        ph = (aP + (b % p) * pows[(xs * y) % td]) % p
        total += abs(table.roots[ph].sum()) ** 4
    return float(d * total)


def mobius_identity_maxdiff(p: int, lam: int, a: int, b: int, table: RootTable) -> float:
    """Max over y of |sum_{d | p-1} mu(d) * (sum over d|x) - (sum over coprime x)|.

    Mobius inversion makes the two sides identical term-by-term, so the
    difference is pure rounding.
    """
    ctx = prime_context(p)
    pm1 = p - 1
    P = _power_cycle(lam, pm1, p)
    divs = ctx.pm1.divisors()
    mus = {d: mobius(d) for d in divs}
    us = np.array(ctx.units(), dtype=np.int64)
    worst = 0.0
    for y in range(1, p):
        direct = table.roots[((a % p) * P[us % pm1] + (b % p) * P[(us * y) % pm1]) % p].sum()
        total = 0.0 + 0.0j
        for d in divs:
            if mus[d] == 0:
                continue
            xs = np.arange(d, pm1 + 1, d, dtype=np.int64)  # x in [1, p-1], d | x
            ph = ((a % p) * P[xs % pm1] + (b % p) * P[(xs * y) % pm1]) % p
            total += mus[d] * table.roots[ph].sum()
        worst = max(worst, abs(total - direct))
    return worst


def fourth_moment_chain(
    p: int, lam: int, a: int, b: int, table: RootTable, threads: int = 1
) -> "list[ChainRow]":
    """Numeric audit of the divisor-block chain bounding H(a, b).

    Rows (each lhs <= rhs by proof, up to rounding):

      mobius_identity   max-y |Mobius regrouping - coprime sum|  vs  1e-10
      mobius_holder     H(a,b) <= sigma_0(p-1)^3 * sum_d block_d
      d_block[d=k]      block_k <= (k/t_k) * p^2 * T_k

    Every d-block is evaluated in both y-range forms (full [1, p-1] and the
    d-fold collapse over [1, t_d]) and the two must agree to rounding.
    """
    H = fourth_moment(p, lam, a, b, table)
    ctx = prime_context(p)
    divs = ctx.pm1.divisors()
    rows = [ChainRow("mobius_identity", mobius_identity_maxdiff(p, lam, a, b, table), 1e-10)]
    blocks = {}
    for d in divs:
        full = d_block_full(p, lam, a, b, d, table)
        folded = d_block_folded(p, lam, a, b, d, table)
        if abs(full - folded) > 1e-8 * max(1.0, folded):
            raise ArithmeticError(
                f"y-range fold mismatch at d={d}: full={full!r} folded={folded!r}"
            )
        blocks[d] = full
    s0 = sigma_int(p - 1, 0)
    rows.append(ChainRow("mobius_holder", H, float(s0**3) * sum(blocks.values())))
    for d in divs:
        lctx = lambda_context(p, lam, d)
        td_count = count_solutions(lctx, threads=threads)
        rows.append(
            ChainRow(f"d_block[d={d}]", blocks[d], (d / lctx.t_d) * p * p * td_count.count)
        )
    return rows
