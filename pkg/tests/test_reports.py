import io
import json
import math

import pytest

from prsums.averaged import ChainRow
from prsums.reports import (
    CSV_FIELDS,
    chain_to_records,
    emit,
    fit_exponent,
    make_record,
    mordell_rhs,
    phi_ratio,
    read_records,
    reference_power,
    stoneham_ratio,
)


class TestFormulas:
    def test_mordell_rhs(self):
        # 2*sqrt(p)*ln(p) + 2*sqrt(p) + 1, frozen from direct evaluation
        assert mordell_rhs(7) == pytest.approx(16.588291278283157, rel=1e-12)
        assert mordell_rhs(101) == pytest.approx(113.86252558371741, rel=1e-12)

    def test_mordell_rhs_monotone(self):
        vals = [mordell_rhs(p) for p in (3, 5, 7, 11, 101, 1009)]
        assert vals == sorted(vals)
        with pytest.raises(ValueError):
            mordell_rhs(2)

    def test_stoneham_ratio(self):
        assert stoneham_ratio(7, 1.0) == pytest.approx(0.19423531615409825, rel=1e-12)

    def test_stoneham_ratios_bounded_on_scans(self):
        # max_N |S_N(b, g0)| with p | a, over seeded b draws and all N via
        # prefix sums; the ratio to sqrt(p)*ln(p) stays small (asserted < 10)
        import random

        import numpy as np

        from prsums.expsum import SumSpec, eval_prefix_sums, root_table
        from prsums.numtheory import prime_context

        rng = random.Random(12)
        for p in (101, 1009, 9973):
            ctx = prime_context(p)
            t = root_table(p)
            max_abs = 0.0
            for _ in range(10):
                spec = SumSpec(p, p - 1, 0, ((rng.randrange(1, p), ctx.g0),))
                max_abs = max(max_abs, float(np.abs(eval_prefix_sums(spec, t)).max()))
            assert 0 < stoneham_ratio(p, max_abs) < 10

    def test_reference_power(self):
        assert reference_power(1009) == pytest.approx(756.3608379408408, rel=1e-12)
        assert reference_power(2) == pytest.approx(1.9430638823072117, rel=1e-12)
        for p in (2, 11, 10007):
            assert reference_power(p) < p

    def test_phi_ratio(self):
        assert phi_ratio(7) == pytest.approx(0.19020851730807897, rel=1e-12)
        assert phi_ratio(11) == pytest.approx(0.3180332301540687, rel=1e-12)
        for p in (5, 7, 11, 9973):
            assert phi_ratio(p) > 0
        with pytest.raises(ValueError):
            phi_ratio(3)


class TestFit:
    def test_exact_sqrt_power_law(self):
        pts = [(p, math.sqrt(p)) for p in (101, 1009, 10007)]
        fit = fit_exponent(pts)
        assert fit.slope == pytest.approx(0.5, abs=1e-9)
        assert fit.residual == pytest.approx(0.0, abs=1e-9)
        assert fit.n_points == 3

    def test_exact_linear_power_law(self):
        pts = [(p, 3.7 * p) for p in (101, 1009, 10007, 20011)]
        fit = fit_exponent(pts)
        assert fit.slope == pytest.approx(1.0, abs=1e-9)
        assert fit.intercept == pytest.approx(math.log(3.7), abs=1e-9)

    def test_too_few_points(self):
        with pytest.raises(ValueError, match="3 points"):
            fit_exponent([(3, 1.0), (5, 2.0)])

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            fit_exponent([(3, 1.0), (5, 0.0), (7, 2.0)])


def _roundtrip(records, fmt):
    buf = io.StringIO()
    emit(records, fmt, buf)
    return read_records(io.StringIO(buf.getvalue()), fmt), buf.getvalue()


class TestEmit:
    def test_empty_csv_is_header_only(self):
        buf = io.StringIO()
        emit([], "csv", buf)
        assert buf.getvalue() == ",".join(CSV_FIELDS) + "\n"

    def test_csv_round_trip(self):
        recs = [
            make_record(101, "avg_abs_max", 3.5228538163645, 50, 7),
            make_record(1009, "avg_abs_max", 12.123456789012345, 50, 7),
        ]
        back, text = _roundtrip(recs, "csv")
        assert text.endswith("\n") and "\r" not in text
        assert [r.p for r in back] == [101, 1009]
        for a, b in zip(recs, back):
            assert b.max_abs == pytest.approx(a.max_abs, rel=1e-11)
            assert b.ratio == pytest.approx(a.ratio, rel=1e-11)
            assert (a.quantity, a.samples, a.seed) == (b.quantity, b.samples, b.seed)

    def test_json_round_trip(self):
        recs = [make_record(13, "avg_abs_max", 2.25, 3, 0)]
        back, text = _roundtrip(recs, "json")
        assert back == recs
        parsed = json.loads(text)
        assert list(parsed[0].keys()) == list(CSV_FIELDS)

    def test_field_order_stable(self):
        recs = [make_record(13, "q", 1.0, 1, 0)]
        _, t1 = _roundtrip(recs, "csv")
        _, t2 = _roundtrip(recs, "csv")
        assert t1 == t2
        assert t1.splitlines()[0] == ",".join(CSV_FIELDS)

    def test_file_io_and_path_in_error(self, tmp_path):
        recs = [make_record(13, "q", 1.0, 1, 0)]
        path = tmp_path / "out.csv"
        emit(recs, "csv", path)
        assert read_records(path) == read_records(path, "csv")
        with pytest.raises(OSError, match="no/such"):
            emit(recs, "csv", tmp_path / "no/such/dir.csv")
        with pytest.raises(OSError, match="missing.json"):
            read_records(tmp_path / "missing.json")

    def test_bad_format(self):
        with pytest.raises(ValueError):
            emit([], "xml", io.StringIO())

    def test_quantity_with_commas_survives_csv(self):
        recs = [make_record(5, "td_ratio[lam=2,d=2,t_d=2,Td=12]", 2.3623519685528872, 1, 0)]
        back, _ = _roundtrip(recs, "csv")
        assert back[0].quantity == recs[0].quantity


class TestRecord:
    def test_ratio_invariant(self):
        r = make_record(101, "q", 3.5, 50, 1)
        assert r.ratio == pytest.approx(r.max_abs / reference_power(101), rel=1e-12)
        assert r.theorem1_ref == pytest.approx(reference_power(101), rel=1e-15)
        assert r.mordell_rhs == pytest.approx(mordell_rhs(101), rel=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            make_record(101, "q", -1.0, 50, 1)
        with pytest.raises(ValueError):
            make_record(101, "q", 1.0, 0, 1)

    def test_chain_to_records(self):
        rows = [ChainRow("cauchy_schwarz", 1.9098300562505258, 2.291796067500631)]
        recs = chain_to_records(5, rows, "chain")
        assert recs[0].quantity.startswith("chain:cauchy_schwarz:rhs=")
        assert recs[0].max_abs == rows[0].lhs
        back, _ = _roundtrip(recs, "csv")
        assert back[0].quantity == recs[0].quantity
