"""Tests for the check registry, reports and the acceptance suite."""
import pytest
from pydantic import ValidationError

from src.errors import InvalidParamsError, UnknownCheckError
from src.harness.checks import REGISTRY, Outcome, run_check, validate_params
from src.harness.models import CheckReport, CriterionEntry, SuiteSummary
from src.harness.suite import ACCEPTANCE, all_check_names, run_suite


def fake_report(name, verdict="pass"):
    return CheckReport(name=name, verdict=verdict, witness="x != y" if verdict == "fail" else None, seconds=0.5)


class TestRegistry:
    def test_every_criterion_has_a_check(self):
        assert [n for n, _ in ACCEPTANCE] == list(range(1, 15))
        assert all(name in REGISTRY for _, name in ACCEPTANCE)

    def test_extra_checks_registered(self):
        assert {"form-invariance", "weyl-topdims"} <= set(all_check_names())

    def test_unknown_check(self):
        with pytest.raises(UnknownCheckError):
            run_check("no-such-check")

    def test_extra_params_rejected(self):
        with pytest.raises(InvalidParamsError):
            validate_params("jacobi", {"bogus": 1})

    def test_bounds_enforced(self):
        with pytest.raises(InvalidParamsError):
            validate_params("jacobi", {"trials": 0})


class TestOutcome:
    def test_first_failure_is_the_witness(self):
        outcome = Outcome.tally(["first", "second"], 3)
        assert outcome.verdict == "fail"
        assert outcome.witness == "first"
        assert outcome.details == {"inconclusive": 3, "failures": 2}

    def test_inconclusive_without_failures(self):
        assert Outcome.tally([], 1).verdict == "inconclusive-window"
        assert Outcome.tally([], 0).verdict == "pass"


class TestCheckReport:
    def test_fail_needs_witness(self):
        with pytest.raises(ValidationError):
            CheckReport(name="jacobi", verdict="fail")

    def test_payload_drops_seconds(self):
        summary = SuiteSummary(entries=[CriterionEntry(criterion=1, check="jacobi", report=fake_report("jacobi"))])
        payload = summary.payload()
        assert payload["schema"] == 1
        assert "seconds" not in payload["entries"][0]["report"]
        assert summary.payload(timings=True)["entries"][0]["report"]["seconds"] == 0.5
        assert payload["passed"] == 1


class TestChecks:
    def test_lambda_newton(self):
        report = run_check("lambda-newton", {"order": 4})
        assert report.verdict == "pass"
        assert report.params == {"order": 4}
        assert report.details["coefficients"][0] == "1"

    def test_jacobi_small(self):
        report = run_check("jacobi", {"trials": 20, "types": ["A1"]})
        assert report.verdict == "pass"

    def test_form_invariance(self):
        assert run_check("form-invariance", {"trials": 30}).verdict == "pass"

    def test_c1_identity(self):
        assert run_check("c1-identity").verdict == "pass"

    def test_eigenvalue_series(self):
        report = run_check("eig-eigenvalue", {"order": 4})
        assert report.verdict == "pass"
        assert report.details["series"] == ["1", "-3", "2", "0", "0"]

    def test_garland_single_case(self):
        report = run_check("garland", {"type": "A1", "s": 2, "sign": "+", "module": "V_tor(ω₁,3)"})
        assert report.verdict == "pass"
        assert report.details["identities"] == 4
        assert report.params["points"] == ["3"]
        assert report.params["s_values"] == [2]
        assert report.params["signs"] == [1]

    @pytest.mark.parametrize(
        "params",
        [
            {"s": 2, "s_values": [1]},
            {"module": "V(omega_1)"},
            {"module": "V_tor(ω₀, 3)"},
            {"sign": "±"},
        ],
    )
    def test_garland_params_rejected(self, params):
        with pytest.raises(InvalidParamsError):
            validate_params("garland", params)

    def test_eigenvalue_single_case(self):
        report = run_check("eig-eigenvalue", {"k": 2, "λ": ["ω₀", "ω₀"], "a": [1, 2], "order": 4})
        assert report.verdict == "pass"
        assert report.details["series"] == ["1", "-3", "2", "0", "0"]
        assert report.params["cases"] == [{"nodes": [0, 0], "points": ["1", "2"]}]

    @pytest.mark.parametrize(
        "params",
        [
            {"k": 3, "lambda": ["omega_0", "omega_0"], "a": [1, 2]},
            {"lambda": ["omega_0"], "a": [1], "cases": []},
            {"lambda": ["omega_0"]},
        ],
    )
    def test_eigenvalue_params_rejected(self, params):
        with pytest.raises(InvalidParamsError):
            validate_params("eig-eigenvalue", params)

    def test_loop_verdict_matches_every_closure(self):
        report = run_check("loop-irred", {"weights": [[1]], "points": ["1", "-1"], "max_factors": 2})
        assert report.verdict == "pass"
        assert report.details["cases"] == 3
        assert list(report.details["period_two"].values()) == [[13, 15]]

    def test_fusion_oracle(self):
        report = run_check("fusion-oracle")
        assert report.verdict == "pass"
        assert report.details["pair"] == [3, 1]
        assert report.details["triple_total"] == 8

    def test_wrong_expectation_fails_with_witness(self):
        report = run_check("fusion-oracle", {"expected": [2, 2]})
        assert report.verdict == "fail"
        assert "graded dims" in report.witness


class TestSuite:
    def test_criterion_order_with_workers(self, mocker):
        mocker.patch("src.harness.suite.run_check", side_effect=lambda name: fake_report(name))
        summary = run_suite(workers=2, criteria=[13, 3])
        assert [e.criterion for e in summary.entries] == [3, 13]
        assert [e.check for e in summary.entries] == ["lambda-newton", "fusion-oracle"]
        assert summary.ok

    def test_failure_counted(self, mocker):
        mocker.patch(
            "src.harness.suite.run_check",
            side_effect=lambda name: fake_report(name, "fail" if name == "garland" else "pass"),
        )
        summary = run_suite(criteria=[1, 4])
        assert summary.failed == 1
        assert summary.passed == 1
        assert not summary.ok

    def test_real_subset(self):
        summary = run_suite(criteria=[3, 13])
        assert summary.ok
