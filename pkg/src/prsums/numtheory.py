"""Integer substrate: factorization, multiplicative functions, primitive roots.

Everything here is exact integer arithmetic.  Primality is decided by a
Miller-Rabin test with a witness set that is deterministic for the whole
64-bit range, so a PrimeContext can be trusted, not merely probable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10^24
# (covers the full 64-bit range this module accepts).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# rho takes over above this; large enough that rho only ever sees hard
# cofactors, small enough that prime inputs don't stall in trial division
_TRIAL_LIMIT = 10**4


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^63."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of composite n (Brent's cycle variant,
    gcds batched 128 steps at a time).

    Deterministic: starts at y = 2 and walks the polynomial increment
    c = 1, 2, 3, ... until a factor shows up, which always happens for
    composite n.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q = 2, 1, 1
        g, x, ys = 1, 0, 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            # the batch overshot; replay one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard rho failed on {n}")  # unreachable for composite n


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer with its full prime factorization.

    factors is ordered by prime, exponents >= 1; the empty tuple factors 1.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError(f"malformed factorization of {self.n}")
            prod *= q**e
            last = q
        if prod != self.n:
            raise ValueError(f"factorization product {prod} != {self.n}")

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for q, e in self.factors:
            divs = [d * q**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    @property
    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)


def factorize(n: int) -> FactoredInteger:
    """Factor 1 <= n < 2^63: trial division for small primes, then a
    deterministic Pollard-rho stage with primality short-circuits.

    Deterministic output; n = 0 (and negatives) rejected.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n >= 2**63:
        raise ValueError(f"factorize requires n < 2^63, got {n}")
    m = n
    factors: dict[int, int] = {}
    for q in (2, 3, 5):
        while m % q == 0:
            factors[q] = factors.get(q, 0) + 1
            m //= q
    d = 7
    while d <= _TRIAL_LIMIT and d * d <= m:
        if m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        else:
            d += 2
    # whatever survived trial division is either prime or a product of
    # primes above the trial limit: split it with rho
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return FactoredInteger(n, tuple(sorted(factors.items())))


def pow_mod(base: int, exp: int, m: int) -> int:
    """base^exp mod m for m >= 2, exp >= 0; result in [0, m-1]."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise ValueError(f"exponent must be >= 0, got {exp}")
    return pow(base, exp, m)


def mobius(n: int) -> int:
    """Mobius function: 0 on non-squarefree n, else (-1)^(#prime factors)."""
    if n < 1:
        raise ValueError(f"mobius requires n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def euler_phi(n: int) -> int:
    """Euler totient, exact."""
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    out = n
    for q, _ in factorize(n).factors:
        out //= q
        out *= q - 1
    return out


def sigma_r(n: int, r: float) -> float:
    """Sum of r-th powers of the divisors of n, as a float.

    Always floating, even for integer r; use sigma_int for the exact
    r in {0, 1} values.
    """
    if n < 1:
        raise ValueError(f"sigma_r requires n >= 1, got {n}")
    return float(sum(float(d) ** r for d in factorize(n).divisors()))


def sigma_int(n: int, r: int) -> int:
    """Exact divisor count (r = 0) or divisor sum (r = 1)."""
    if r not in (0, 1):
        raise ValueError(f"sigma_int supports r in {{0, 1}}, got {r}")
    if n < 1:
        raise ValueError(f"sigma_int requires n >= 1, got {n}")
    fac = factorize(n)
    out = 1
    for q, e in fac.factors:
        out *= (e + 1) if r == 0 else (q ** (e + 1) - 1) // (q - 1)
    return out


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime p with the factored p-1, phi(p-1) and the least
    primitive root; the precomputation hub every sum evaluation hangs off.
    """

    p: int
    pm1: FactoredInteger
    phi_pm1: int
    g0: int

    def units(self) -> list[int]:
        """Exponents u in [1, p-1] coprime to p-1, ascending (phi(p-1) of them)."""
        m = self.p - 1
        return [u for u in range(1, m + 1) if gcd(u, m) == 1]


@lru_cache(maxsize=None)
def prime_context(p: int) -> PrimeContext:
    """Build (and cache) the PrimeContext for an odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"odd prime required, got {p}")
    if not is_prime(p):
        f = _smallest_factor(p)
        raise ValueError(f"{p} is not prime (divisible by {f})")
    pm1 = factorize(p - 1)
    phi = 1
    for q, e in pm1.factors:
        phi *= (q - 1) * q ** (e - 1)
    g0 = _least_primitive_root(p, pm1)
    return PrimeContext(p, pm1, phi, g0)


def _smallest_factor(n: int) -> int:
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return d
    return n


def _least_primitive_root(p: int, pm1: FactoredInteger) -> int:
    checks = [(p - 1) // q for q in pm1.prime_divisors]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in checks):
            return g
    raise ArithmeticError(f"no primitive root found mod {p}")  # impossible for prime p


def is_primitive_root(g: int, ctx: PrimeContext) -> bool:
    """True iff g has multiplicative order exactly p-1, decided by the
    prime-divisor exponent criterion g^((p-1)/q) != 1 for every q | p-1.
    """
    g %= ctx.p
    if g == 0:
        raise ValueError("g must not be divisible by p")
    return all(pow(g, (ctx.p - 1) // q, ctx.p) != 1 for q in ctx.pm1.prime_divisors)


def enumerate_primitive_roots(ctx: PrimeContext) -> list[int]:
    """All primitive roots mod p, ascending: the set {g0^u : gcd(u, p-1) = 1}."""
    p, m = ctx.p, ctx.p - 1
    roots = []
    v = 1
    for u in range(1, m + 1):
        v = v * ctx.g0 % p
        if gcd(u, m) == 1:
            roots.append(v)
    roots.sort()
    return roots


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi], ascending (simple sieve; enough for desk scans)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = b"\x00" * len(range(q * q, hi + 1, q))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]
