"""Single exponential sums S_N(a, b, g) = sum of e_p(a*x + b1*g1^x + ...).

The root of unity e_p(k) = exp(2*pi*i*k/p) is tabulated once per prime,
each entry computed from its own angle (never by repeated multiplication,
which would drift over a long table).  Every sum evaluation then reduces
to exact integer phase bookkeeping plus table lookups, accumulated with
compensated summation in ascending-x order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .numtheory import is_primitive_root, prime_context


class RootTable:
    """e_p(k) for k in [0, p-1] as a complex128 array.

    Immutable after construction; share one instance per prime across
    threads.  roots[0] is exactly 1; the full sum vanishes to ~1e-13*p.
    """

    __slots__ = ("p", "roots")

    def __init__(self, p: int, roots: np.ndarray):
        self.p = p
        self.roots = roots

    def __repr__(self):
        return f"RootTable(p={self.p})"


def build_root_table(p: int) -> RootTable:
    """Tabulate e_p(k) for k in [0, p-1]; p must be an odd prime."""
    prime_context(p)  # rejects even or composite p with a diagnostic
    if p >= 2**31:
        # keeps every downstream int64 phase product exact
        raise ValueError(f"p={p} beyond supported desk scale (needs p < 2^31)")
    k = np.arange(p)
    roots = np.exp((2j * np.pi / p) * k)
    roots[0] = 1.0 + 0.0j
    err = np.abs(np.abs(roots) - 1.0).max()
    if err > 1e-12:
        raise ArithmeticError(f"root table for p={p} off the unit circle by {err}")
    tot = abs(roots.sum())
    if tot > 1e-9 * p:
        raise ArithmeticError(f"root table for p={p} sums to {tot}, expected ~0")
    roots.setflags(write=False)
    return RootTable(p, roots)


_table_cache: dict[int, RootTable] = {}


def root_table(p: int) -> RootTable:
    """Cached build_root_table; tables are immutable so sharing is safe."""
    t = _table_cache.get(p)
    if t is None:
        t = _table_cache[p] = build_root_table(p)
    return t


@dataclass(frozen=True)
class SumSpec:
    """One sum: modulus p, range [1, N], linear coefficient a, and r >= 0
    (coefficient, primitive root) pairs.  Coefficients are reduced mod p at
    construction; each g_i is checked to actually be a primitive root.
    """

    p: int
    N: int
    a: int
    terms: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        ctx = prime_context(self.p)
        if not 1 <= self.N <= self.p - 1:
            raise ValueError(f"N must be in [1, p-1], got N={self.N} for p={self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        reduced = []
        for b, g in self.terms:
            g %= self.p
            if not is_primitive_root(g, ctx):
                raise ValueError(f"{g} is not a primitive root mod {self.p}")
            reduced.append((b % self.p, g))
        object.__setattr__(self, "terms", tuple(reduced))

    @property
    def has_zero_coeff(self) -> bool:
        """True if some stored b_i is divisible by p."""
        return any(b == 0 for b, _ in self.terms)

    def phase_vector(self) -> np.ndarray:
        """Exact phases (a*x + sum_i b_i*g_i^x) mod p for x in [1, N].

        Index x of the returned int64 array is the phase at x (slot 0
        unused).  The linear part advances by addition and each power by one
        modular multiplication per step.
        """
        p, N, a = self.p, self.N, self.a
        out = np.zeros(N + 1, dtype=np.int64)
        lin = 0
        pows = [1] * len(self.terms)
        for x in range(1, N + 1):
            lin += a
            if lin >= p:
                lin -= p
            ph = lin
            for i, (b, g) in enumerate(self.terms):
                pows[i] = pows[i] * g % p
                ph += b * pows[i] % p
            out[x] = ph % p
        return out


def eval_sum(spec: SumSpec, table: RootTable) -> complex:
    """S_N for the given spec: compensated summation over x = 1..N."""
    if table.p != spec.p:
        raise ValueError(f"modulus mismatch: spec p={spec.p}, table p={table.p}")
    val = kernels.sum_roots(table.roots, spec.phase_vector()[1:])
    assert abs(val) <= spec.N * (1 + 1e-12) + 1e-9  # triangle inequality
    return val


def eval_prefix_sums(spec: SumSpec, table: RootTable) -> np.ndarray:
    """All partial sums at once: entry N-1 is S_N, for N in [1, p-1].

    Requires spec.N = p-1 (a full-period spec).
    """
    if table.p != spec.p:
        raise ValueError(f"modulus mismatch: spec p={spec.p}, table p={table.p}")
    if spec.N != spec.p - 1:
        raise ValueError(f"prefix sums need N = p-1, got N={spec.N}")
    return kernels.prefix_sums(table.roots, spec.phase_vector()[1:])


def eval_mordell_sum(p: int, a: int, b: int, g: int, N: int, table: RootTable) -> complex:
    """The r = 1 sum S_N(a, b, g) under the explicit-bound hypothesis p∤ab."""
    if a % p == 0:
        raise ValueError(f"a = {a} is divisible by p = {p}")
    if b % p == 0:
        raise ValueError(f"b = {b} is divisible by p = {p}")
    return eval_sum(SumSpec(p, N, a, ((b, g),)), table)
