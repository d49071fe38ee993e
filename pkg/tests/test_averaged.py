import random

import numpy as np
import pytest

from prsums.averaged import (
    AvgSpec,
    chain_majorants,
    check_chain,
    eval_avg_direct,
    eval_avg_u_param,
)
from prsums.expsum import SumSpec, eval_sum, root_table
from prsums.numtheory import enumerate_primitive_roots, prime_context, primes_in_range

# direct summation oracle over g in {3, 5}, x in [1, 6] (mpmath, 40 digits)
AVG_7 = 0.52445866976115265676

# frozen chain-report oracle at p=5, a=0, b=1, fixed=((1, 2),)  (mpmath):
# (label, lhs, rhs)
CHAIN_5_ORACLE = [
    ("cauchy_schwarz", 1.909830056250525759, 2.2917960675006309108),
    ("expansion_triangle", 13.303897657630117315, 7516594.20219964669),
    ("holder", 13.303897657630117315, 9904102.5587608359579),
    ("lambda_majorant", 13.303897657630117315, 1833087929.0283141513),
]


class TestAvgSpec:
    def test_b_must_be_coprime(self):
        with pytest.raises(ValueError, match="divisible"):
            AvgSpec(7, 6, 0, 7)

    def test_fixed_roots_checked(self):
        with pytest.raises(ValueError, match="primitive"):
            AvgSpec(7, 6, 0, 1, ((1, 2),))

    def test_only_averaged_flag(self):
        assert AvgSpec(7, 6, 0, 1).only_averaged_term
        assert AvgSpec(7, 6, 0, 1, ((7, 3),)).only_averaged_term
        assert not AvgSpec(7, 6, 1, 1).only_averaged_term
        assert not AvgSpec(7, 6, 0, 1, ((2, 3),)).only_averaged_term


class TestAvgEval:
    def test_full_period_r0_is_minus_one(self):
        ctx = prime_context(7)
        t = root_table(7)
        res = eval_avg_direct(AvgSpec(7, 6, 0, 1), ctx, t)
        assert res.value == pytest.approx(-1 + 0j, abs=1e-12)
        assert res.phi_pm1 == 2

    def test_avg_minus_one_all_small_primes(self):
        for p in primes_in_range(3, 101):
            ctx = prime_context(p)
            res = eval_avg_u_param(AvgSpec(p, p - 1, 0, 1), ctx, root_table(p))
            assert res.value == pytest.approx(-1 + 0j, abs=1e-9), p

    def test_derived_value_both_paths(self):
        ctx = prime_context(7)
        t = root_table(7)
        spec = AvgSpec(7, 6, 0, 1, ((1, 3),))
        assert eval_avg_direct(spec, ctx, t).value == pytest.approx(AVG_7, abs=1e-13)
        assert eval_avg_u_param(spec, ctx, t).value == pytest.approx(AVG_7, abs=1e-13)

    def test_path_equality_random(self):
        rng = random.Random(99)
        ps = primes_in_range(5, 499)
        for _ in range(40):
            p = rng.choice(ps)
            ctx = prime_context(p)
            proots = enumerate_primitive_roots(ctx)
            fixed = tuple(
                (rng.randrange(1, p), rng.choice(proots)) for _ in range(rng.randrange(3))
            )
            spec = AvgSpec(p, rng.randrange(1, p), rng.randrange(p), rng.randrange(1, p), fixed)
            da = eval_avg_direct(spec, ctx, root_table(p))
            ua = eval_avg_u_param(spec, ctx, root_table(p))
            assert abs(da.value - ua.value) <= 1e-10
            assert da.sigma_N == pytest.approx(ua.sigma_N, rel=1e-12)

    def test_result_invariants(self):
        rng = random.Random(1)
        ctx = prime_context(101)
        t = root_table(101)
        for _ in range(20):
            spec = AvgSpec(101, rng.randrange(1, 101), rng.randrange(101), rng.randrange(1, 101))
            res = eval_avg_u_param(spec, ctx, t)
            assert abs(res.value) <= res.sigma_N / res.phi_pm1 * (1 + 1e-12) + 1e-12
            assert abs(res.value) <= spec.N + 1e-9

    def test_restricted_u1_equals_single_g0_sum(self):
        ctx = prime_context(11)
        t = root_table(11)
        spec = AvgSpec(11, 10, 3, 2, ((1, 7),))
        res = eval_avg_u_param(spec, ctx, t, us=np.array([1], dtype=np.int64))
        single = eval_sum(SumSpec(11, 10, 3, ((2, ctx.g0), (1, 7))), t)
        assert res.value == pytest.approx(single, abs=1e-13)

    def test_threads_do_not_change_values(self):
        ctx = prime_context(499)
        t = root_table(499)
        spec = AvgSpec(499, 498, 7, 5, ((3, ctx.g0),))
        r1 = eval_avg_u_param(spec, ctx, t, threads=1)
        r2 = eval_avg_u_param(spec, ctx, t, threads=4)
        assert r1.value == r2.value
        assert r1.sigma_N == r2.sigma_N


class TestChain:
    def test_requires_full_period(self):
        ctx = prime_context(7)
        with pytest.raises(ValueError, match="N = p-1"):
            check_chain(AvgSpec(7, 3, 0, 1), ctx, root_table(7))

    def test_frozen_oracle_p5(self):
        ctx = prime_context(5)
        report = check_chain(AvgSpec(5, 4, 0, 1, ((1, 2),)), ctx, root_table(5))
        assert [row.label for row in report] == [lbl for lbl, _, _ in CHAIN_5_ORACLE]
        for row, (_, lhs, rhs) in zip(report, CHAIN_5_ORACLE):
            assert row.lhs == pytest.approx(lhs, rel=1e-12)
            assert row.rhs == pytest.approx(rhs, rel=1e-12)

    def test_stable_across_runs(self):
        ctx = prime_context(5)
        spec = AvgSpec(5, 4, 0, 1, ((1, 2),))
        r1 = check_chain(spec, ctx, root_table(5))
        r2 = check_chain(spec, ctx, root_table(5))
        assert [(a.lhs, a.rhs) for a in r1] == [(b.lhs, b.rhs) for b in r2]

    def test_all_slacks_nonnegative_small(self):
        for p in (5, 7):
            ctx = prime_context(p)
            t = root_table(p)
            for b in range(1, p):
                maj = chain_majorants(b, ctx, t)
                for a in range(p):
                    report = check_chain(AvgSpec(p, p - 1, a, b), ctx, t, majorants=maj)
                    assert min(r.rel_slack for r in report) >= -1e-8

    def test_majorants_cache_matches_fresh(self):
        ctx = prime_context(11)
        t = root_table(11)
        spec = AvgSpec(11, 10, 1, 3, ((2, 6),))
        fresh = check_chain(spec, ctx, t)
        cached = check_chain(spec, ctx, t, majorants=chain_majorants(3, ctx, t))
        assert [(a.lhs, a.rhs) for a in fresh] == [(b.lhs, b.rhs) for b in cached]
