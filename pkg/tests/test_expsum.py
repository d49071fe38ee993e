import cmath
import random

import numpy as np
import pytest

from prsums.expsum import (
    SumSpec,
    build_root_table,
    eval_mordell_sum,
    eval_prefix_sums,
    eval_sum,
    root_table,
)
from prsums.numtheory import prime_context, primes_in_range
from prsums.reports import mordell_rhs

# direct high-precision summation oracle (mpmath, 40 digits), frozen:
#   sum_{x=1}^{6} e_7(x + 3^x)
EVAL_7_6_1 = complex(-1.3019377358048382525, 1.3228756555322952953)


def eval_oracle(p, N, a, terms):
    """Independent path: cmath exponentials, fresh pow() per term."""
    s = 0j
    for x in range(1, N + 1):
        ph = a * x + sum(b * pow(g, x, p) for b, g in terms)
        s += cmath.exp(2j * cmath.pi * (ph % p) / p)
    return s


class TestRootTable:
    def test_entries_p5(self):
        t = build_root_table(5)
        assert t.roots[0] == 1.0 + 0.0j
        assert t.roots[1] == pytest.approx(0.309016994374947 + 0.951056516295154j, abs=1e-12)

    def test_invariants(self):
        for p in (3, 5, 101, 997):
            t = build_root_table(p)
            assert np.abs(np.abs(t.roots) - 1).max() <= 1e-12
            assert abs(t.roots.sum()) <= 1e-9 * p

    def test_rejects_even_and_composite(self):
        with pytest.raises(ValueError):
            build_root_table(8)
        with pytest.raises(ValueError):
            build_root_table(91)  # 7 * 13

    def test_immutable(self):
        t = root_table(7)
        with pytest.raises(ValueError):
            t.roots[0] = 0


class TestEvalSum:
    def test_full_period_identity(self):
        t = root_table(7)
        v = eval_sum(SumSpec(7, 6, 0, ((1, 3),)), t)
        assert v == pytest.approx(-1 + 0j, abs=1e-12)

    def test_zero_terms_gives_N(self):
        t = root_table(7)
        assert eval_sum(SumSpec(7, 6, 0, ()), t) == 6.0 + 0.0j
        assert eval_sum(SumSpec(7, 6, 0, ((0, 3),)), t) == 6.0 + 0.0j
        assert eval_sum(SumSpec(7, 6, 7, ((7, 3),)), t) == 6.0 + 0.0j

    def test_derived_value(self):
        v = eval_sum(SumSpec(7, 6, 1, ((1, 3),)), root_table(7))
        assert v == pytest.approx(EVAL_7_6_1, abs=1e-13)

    def test_matches_oracle_random(self):
        rng = random.Random(7)
        for _ in range(50):
            p = rng.choice(primes_in_range(3, 199))
            ctx = prime_context(p)
            N = rng.randrange(1, p)
            a = rng.randrange(p)
            terms = ((rng.randrange(p), ctx.g0),) if rng.random() < 0.8 else ()
            spec = SumSpec(p, N, a, terms)
            assert eval_sum(spec, root_table(p)) == pytest.approx(
                eval_oracle(p, N, a, terms), abs=1e-10
            )

    def test_translation_invariance_bit_identical(self):
        t = root_table(13)
        base = eval_sum(SumSpec(13, 12, 3, ((4, 2),)), t)
        assert eval_sum(SumSpec(13, 12, 3 + 13, ((4, 2),)), t) == base
        assert eval_sum(SumSpec(13, 12, 3, ((4 + 13, 2),)), t) == base
        assert eval_sum(SumSpec(13, 12, 3 - 13, ((4, 2 + 13),)), t) == base

    def test_triangle_inequality(self):
        rng = random.Random(3)
        t = root_table(101)
        ctx = prime_context(101)
        for _ in range(25):
            spec = SumSpec(101, rng.randrange(1, 101), rng.randrange(101), ((rng.randrange(1, 101), ctx.g0),))
            assert abs(eval_sum(spec, t)) <= spec.N + 1e-9

    def test_mismatched_moduli(self):
        with pytest.raises(ValueError, match="mismatch"):
            eval_sum(SumSpec(7, 6, 0, ()), root_table(11))

    def test_rejects_non_primitive_g(self):
        with pytest.raises(ValueError, match="primitive"):
            SumSpec(7, 6, 0, ((1, 2),))

    def test_rejects_bad_N(self):
        with pytest.raises(ValueError):
            SumSpec(7, 7, 0, ())
        with pytest.raises(ValueError):
            SumSpec(7, 0, 0, ())


class TestPrefixSums:
    def test_last_entry_is_full_sum(self):
        spec = SumSpec(13, 12, 5, ((3, 2),))
        t = root_table(13)
        pref = eval_prefix_sums(spec, t)
        assert len(pref) == 12
        assert pref[-1] == pytest.approx(eval_sum(spec, t), abs=1e-13)

    def test_first_entry_is_single_term(self):
        spec = SumSpec(13, 12, 5, ((3, 2),))
        pref = eval_prefix_sums(spec, root_table(13))
        assert pref[0] == pytest.approx(eval_sum(SumSpec(13, 1, 5, ((3, 2),)), root_table(13)), abs=1e-14)

    def test_random_entry_matches_fresh_eval(self):
        rng = random.Random(11)
        for _ in range(20):
            p = rng.choice([11, 13, 97])
            ctx = prime_context(p)
            a = rng.randrange(p)
            b = rng.randrange(1, p)
            spec = SumSpec(p, p - 1, a, ((b, ctx.g0),))
            pref = eval_prefix_sums(spec, root_table(p))
            N = rng.randrange(1, p)
            fresh = eval_sum(SumSpec(p, N, a, ((b, ctx.g0),)), root_table(p))
            assert pref[N - 1] == pytest.approx(fresh, abs=1e-10)

    def test_requires_full_period(self):
        with pytest.raises(ValueError, match="N = p-1"):
            eval_prefix_sums(SumSpec(13, 5, 0, ()), root_table(13))


class TestMordellSum:
    def test_matches_eval_sum(self):
        t = root_table(7)
        assert eval_mordell_sum(7, 1, 1, 3, 6, t) == eval_sum(SumSpec(7, 6, 1, ((1, 3),)), t)

    def test_hypothesis_violations(self):
        t = root_table(7)
        with pytest.raises(ValueError, match="divisible"):
            eval_mordell_sum(7, 7, 1, 3, 6, t)
        with pytest.raises(ValueError, match="divisible"):
            eval_mordell_sum(7, 1, 14, 3, 6, t)

    def test_below_explicit_bound(self):
        rng = random.Random(5)
        for _ in range(30):
            p = rng.choice([11, 13, 61])
            ctx = prime_context(p)
            v = eval_mordell_sum(p, rng.randrange(1, p), rng.randrange(1, p), ctx.g0, rng.randrange(1, p), root_table(p))
            assert abs(v) < mordell_rhs(p)
