import random
from math import gcd

import pytest

from prsums.numtheory import (
    FactoredInteger,
    enumerate_primitive_roots,
    euler_phi,
    factorize,
    is_prime,
    is_primitive_root,
    mobius,
    pow_mod,
    prime_context,
    primes_in_range,
    sigma_int,
    sigma_r,
)


def trial_division_oracle(n):
    """Independent factorization: nothing but trial division."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def order_oracle(g, p):
    t, v = 1, g % p
    while v != 1:
        v = v * g % p
        t += 1
    return t


class TestFactorize:
    def test_one(self):
        assert factorize(1).factors == ()

    def test_twelve(self):
        assert factorize(12).factors == ((2, 2), (3, 1))

    def test_two_billion_eleven(self):
        n = 2 * 10**9 + 11
        f = factorize(n)
        assert f.factors == trial_division_oracle(n)
        prod = 1
        for q, e in f.factors:
            prod *= q**e
        assert prod == n

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factorize(0)

    def test_roundtrip_small_range(self):
        for n in range(1, 10**4 + 1):
            f = factorize(n)
            prod = 1
            for q, e in f.factors:
                prod *= q**e
            assert prod == n
            assert all(is_prime(q) for q, _ in f.factors)

    def test_roundtrip_to_million_sampled(self):
        # dense lower range above, strided coverage of the rest of [1, 10^6]
        for n in range(10**4 + 1, 10**6, 997):
            f = factorize(n)
            prod = 1
            for q, e in f.factors:
                prod *= q**e
            assert prod == n

    def test_roundtrip_random_63bit(self):
        rng = random.Random(20260810)
        for _ in range(10_000):
            n = rng.getrandbits(63) | (1 << 62)
            f = factorize(n)
            prod = 1
            for q, e in f.factors:
                prod *= q**e
            assert prod == n

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            FactoredInteger(12, ((3, 1), (2, 2)))  # primes out of order
        with pytest.raises(ValueError):
            FactoredInteger(12, ((2, 1), (3, 1)))  # wrong product

    def test_divisors(self):
        assert factorize(12).divisors() == [1, 2, 3, 4, 6, 12]
        assert factorize(1).divisors() == [1]


class TestPowMod:
    @pytest.mark.parametrize("base,exp,m,expected", [(3, 6, 7, 1), (2, 10, 11, 1), (2, 5, 11, 10)])
    def test_examples(self, base, exp, m, expected):
        assert pow_mod(base, exp, m) == expected

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            pow_mod(2, 3, 1)


class TestMobius:
    @pytest.mark.parametrize("n,expected", [(1, 1), (6, 1), (12, 0), (30, -1), (2, -1)])
    def test_examples(self, n, expected):
        assert mobius(n) == expected

    def test_divisor_sum_identity(self):
        assert sum(mobius(d) for d in factorize(1).divisors()) == 1
        for n in range(2, 10**4 + 1):
            assert sum(mobius(d) for d in factorize(n).divisors()) == 0


class TestSigma:
    def test_divisor_count(self):
        assert sigma_r(12, 0) == 6.0
        for n in (1, 7, 36, 360, 1009):
            assert sigma_r(n, 0) == len(factorize(n).divisors())

    def test_single_divisor(self):
        assert sigma_r(1, -14 / 3) == 1.0

    def test_negative_exponent(self):
        # direct summation: 1 + 2^(-14/3) + 3^(-14/3) + 6^(-14/3)
        assert sigma_r(6, -14 / 3) == pytest.approx(1.0455413994299284, abs=1e-12)

    def test_returns_float(self):
        assert isinstance(sigma_r(10, 1), float)

    def test_exact_variants(self):
        assert sigma_int(12, 0) == 6
        assert sigma_int(12, 1) == 28
        with pytest.raises(ValueError):
            sigma_int(12, 2)


class TestEulerPhi:
    @pytest.mark.parametrize("n,expected", [(1, 1), (10, 4), (6, 2), (12, 4)])
    def test_examples(self, n, expected):
        assert euler_phi(n) == expected

    def test_against_gcd_count(self):
        for n in range(1, 500):
            assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


class TestPrimeContext:
    def test_context_7(self):
        ctx = prime_context(7)
        assert ctx.pm1.factors == ((2, 1), (3, 1))
        assert ctx.phi_pm1 == 2
        assert ctx.g0 == 3

    def test_rejects_composites_with_factor(self):
        with pytest.raises(ValueError, match="divisible by 3"):
            prime_context(9)
        with pytest.raises(ValueError):
            prime_context(2)

    def test_g0_has_full_order(self):
        for p in primes_in_range(3, 200):
            ctx = prime_context(p)
            assert order_oracle(ctx.g0, p) == p - 1


class TestPrimitiveRoots:
    def test_examples(self):
        ctx = prime_context(7)
        assert is_primitive_root(3, ctx) is True
        assert is_primitive_root(2, ctx) is False  # 2^3 = 8 = 1 mod 7
        assert is_primitive_root(2, prime_context(11)) is True

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            is_primitive_root(7, prime_context(7))

    @pytest.mark.parametrize("p,expected", [(5, [2, 3]), (7, [3, 5]), (11, [2, 6, 7, 8])])
    def test_enumeration_examples(self, p, expected):
        assert enumerate_primitive_roots(prime_context(p)) == expected

    def test_enumeration_against_order_oracle(self):
        for p in primes_in_range(3, 101):
            ctx = prime_context(p)
            roots = enumerate_primitive_roots(ctx)
            oracle = [g for g in range(1, p) if order_oracle(g, p) == p - 1]
            assert roots == oracle
            assert len(roots) == euler_phi(p - 1)
            for g in roots:
                for q in ctx.pm1.prime_divisors:
                    assert pow(g, (p - 1) // q, p) != 1

    def test_power_parameterization(self):
        for p in (11, 13, 101):
            ctx = prime_context(p)
            via_u = {pow(ctx.g0, u, p) for u in ctx.units()}
            assert via_u == set(enumerate_primitive_roots(ctx))


def test_is_prime_against_trial_division():
    for n in range(0, 2000):
        assert is_prime(n) == (n > 1 and trial_division_oracle(n) == ((n, 1),))


def test_primes_in_range():
    assert primes_in_range(3, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert primes_in_range(10, 9) == []
