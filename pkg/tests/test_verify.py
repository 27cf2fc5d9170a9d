import csv
import io
import json
from fractions import Fraction

import pytest

from metriclat import verify as vf
from metriclat.errors import BudgetExceeded, UnknownCheck


class TestRegistry:
    def test_check_ids(self):
        ids = vf.check_ids()
        assert ids == [f"C{i}" for i in range(1, 26)]

    def test_unknown_check(self):
        with pytest.raises(UnknownCheck):
            vf.run_check("C99")

    def test_budget_exceeded_reported(self):
        with pytest.raises(BudgetExceeded) as err:
            vf.run_check("C5", {"n": "2..5", "max_instances": 1000})
        assert err.value.cap == 1000
        assert err.value.needed > 1000

    def test_sampled_mode_flagged(self):
        r = vf.run_check("C3", {"n": 5, "samples": 20, "seed": 3})
        assert r.status == "pass"
        assert r.params["sampled"] is True
        assert r.params["samples"] == 20


class TestWorkedExamples:
    def test_c19_exact_values(self):
        r = vf.run_check("C19")
        assert r.status == "pass"
        assert r.max_violation == 0
        assert "5/2 < 3" in r.witness

    def test_c18(self):
        r = vf.run_check("C18")
        assert r.status == "pass"

    def test_c17_default_family(self):
        r = vf.run_check("C17")
        assert r.status == "pass"
        assert "10/14" in r.witness or "5/7" in r.witness

    def test_c17_small_n_rejected(self):
        with pytest.raises(ValueError):
            vf.run_check("C17", {"n": 3, "K": 2})

    def test_c17_larger_family(self):
        r = vf.run_check("C17", {"n": 7, "K": 4})
        assert r.status == "pass"


class TestDeterminism:
    def test_same_seed_same_report(self):
        a = vf.run_check("C22", {"seed": 5, "trials": 10})
        b = vf.run_check("C22", {"seed": 5, "trials": 10})
        assert a.to_dict(include_elapsed=False) == b.to_dict(include_elapsed=False)

    def test_different_seed_changes_exploration(self):
        a = vf.run_check("C25", {"seed": 1, "n": 4})
        b = vf.run_check("C25", {"seed": 2, "n": 4})
        assert a.status == b.status == "info"

    def test_jobs_do_not_change_results(self):
        a = vf.run_check("C5", {"n": "2..5"}, jobs=1)
        b = vf.run_check("C5", {"n": "2..5"}, jobs=3)
        assert a.row(include_elapsed=False) == b.row(include_elapsed=False)
        a = vf.run_check("C1", {"n": "2..4"}, jobs=1)
        b = vf.run_check("C1", {"n": "2..4"}, jobs=3)
        assert a.row(include_elapsed=False) == b.row(include_elapsed=False)


class TestReports:
    def test_csv_columns_and_rationals(self):
        r = vf.run_check("C3", {"n": "2..4"})
        text = vf.reports_to_csv([r])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == vf.CSV_COLUMNS
        row = dict(zip(rows[0], rows[1]))
        assert row["check_id"] == "C3"
        assert row["max_violation"] == "0/1"
        assert row["status"] == "pass"
        assert row["seed"] == "0"
        int(row["elapsed_ms"])

    def test_json_mirror(self):
        r = vf.run_check("C19")
        doc = json.loads(vf.reports_to_json([r]))
        assert doc[0]["check_id"] == "C19"
        assert doc[0]["max_violation"] == "0/1"
        assert doc[0]["status"] == "pass"

    def test_stable_form_excludes_elapsed(self):
        r = vf.run_check("C19")
        text = vf.reports_to_csv([r], include_elapsed=False)
        assert "elapsed_ms" not in text


class TestEstimates:
    def test_c5_ratio_below_48(self):
        value, witness = vf.estimate_constant("C5", {"n": "2..4"})
        assert 0 < value <= 48
        assert witness

    def test_c16_ratio_below_4(self):
        value, witness = vf.estimate_constant("C16", {"n": "2..5"})
        assert 1 <= value <= 4
        # the Hausdorff remark pair realizes ratio 5/3 at n = 6
        v6, _ = vf.estimate_constant("C16", {"n": "5..5"})
        assert v6 >= Fraction(3, 2)

    def test_c15_ratio_below_1(self):
        value, _ = vf.estimate_constant("C15", {"n": "2..4"})
        assert value <= 1

    def test_c12_ratio_below_24(self):
        value, _ = vf.estimate_constant("C12", {"n": "2..4"})
        assert 0 < value <= 24

    def test_unknown_estimate(self):
        with pytest.raises(UnknownCheck):
            vf.estimate_constant("C19")


class TestRunAll:
    def test_run_all_passes(self):
        reports = vf.run_all()
        assert [r.check_id for r in reports] == [f"C{i}" for i in range(1, 25)]
        assert all(r.status == "pass" for r in reports)
        assert all(r.max_violation == 0 for r in reports)

    def test_exploratory_not_included(self):
        reports = vf.run_all()
        assert "C25" not in [r.check_id for r in reports]


class TestCrossModuleInvariants:
    def test_modular_equals_singular_through_n7(self):
        r = vf.run_check("C6", {"n": "2..7"})
        assert r.status == "pass" and r.max_violation == 0

    def test_singular_sublattice_density_through_n7(self):
        r = vf.run_check("C7", {"n": "2..7"})
        assert r.status == "pass"
