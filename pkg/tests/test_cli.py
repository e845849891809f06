"""Tests for the run_checks command line."""
import importlib.util
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.harness.models import CheckReport, CriterionEntry, SuiteSummary

SCRIPT = Path(__file__).resolve().parent.parent / "scripts" / "run_checks.py"


@pytest.fixture(scope="module")
def run_checks():
    spec = importlib.util.spec_from_file_location("run_checks", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_check_json(runner, run_checks):
    result = runner.invoke(run_checks.cli, ["check", "--name", "lambda-newton", "--json"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["schema"] == 1
    assert document["reports"][0]["verdict"] == "pass"
    assert "seconds" not in document["reports"][0]


def test_check_requires_a_target(runner, run_checks):
    result = runner.invoke(run_checks.cli, ["check"])
    assert result.exit_code == 2


def test_check_bad_params(runner, run_checks):
    result = runner.invoke(run_checks.cli, ["check", "--name", "jacobi", "--params", '{"bogus": 1}'])
    assert result.exit_code == 1
    assert "Error" in result.stderr


def test_fusion_degrees(runner, run_checks):
    result = runner.invoke(run_checks.cli, ["fusion", "--weights", "1;1", "--points", "0,1"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["degrees"] == [3, 1]


def test_build_fin(runner, run_checks):
    result = runner.invoke(run_checks.cli, ["build", '{"kind": "fin", "type": "A1", "weight": [2]}'])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert sum(w["dim"] for w in document["weights"]) == 3


def test_build_rejects_missing_inputs(runner, run_checks):
    result = runner.invoke(run_checks.cli, ["build", '{"kind": "weyl"}'])
    assert result.exit_code == 1


def test_suite_json(runner, run_checks, mocker):
    summary = SuiteSummary(
        entries=[
            CriterionEntry(criterion=1, check="jacobi", report=CheckReport(name="jacobi", verdict="pass", seconds=1.0))
        ]
    )
    mocker.patch.object(run_checks, "run_suite", return_value=summary)
    result = runner.invoke(run_checks.cli, ["suite", "--json"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["passed"] == 1
    assert "seconds" not in document["entries"][0]["report"]


def test_suite_failure_exit_code(runner, run_checks, mocker):
    report = CheckReport(name="garland", verdict="fail", witness="lhs != rhs")
    summary = SuiteSummary(entries=[CriterionEntry(criterion=4, check="garland", report=report)])
    mocker.patch.object(run_checks, "run_suite", return_value=summary)
    result = runner.invoke(run_checks.cli, ["suite"])
    assert result.exit_code == 1
