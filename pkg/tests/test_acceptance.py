"""
Acceptance runner over every criterion
"""
import json

import jsonschema
import pytest

from acceptance_suite import CRITERIA, AcceptanceSuite, run_acceptance

ALL_IDS = [c["id"] for c in CRITERIA]


def test_criteria_ids_are_unique():
    assert ALL_IDS == sorted(set(ALL_IDS))
    assert ALL_IDS == list(range(1, 11))


def test_every_criterion_passes():
    report = run_acceptance(save=False)
    statuses = {r["id"]: r["status"] for r in report["results"]}
    assert statuses == {i: "PASS" for i in ALL_IDS}
    assert report["summary"]["all_passed"]
    assert "results_file" not in report


@pytest.mark.parametrize("criterion", [6, 7])
def test_pattern_criteria_pass_on_their_own(criterion):
    report = run_acceptance([criterion], save=False)
    assert [r["status"] for r in report["results"]] == ["PASS"]


def test_crashing_criterion_is_reported():
    def boom():
        raise RuntimeError("no")

    suite = AcceptanceSuite([])
    result = suite.run_criterion({"id": 99, "name": "boom", "check": boom, "budget": None})
    assert result["status"] == "ERROR"
    assert result["error"] == "RuntimeError: no"
    assert result["within_budget"]


def test_results_file_is_a_validated_envelope(tmp_path, schema):
    suite = AcceptanceSuite([10])
    report = suite.run_all()
    path = suite.save_results(report, tmp_path / "nested")
    saved = json.loads(path.read_text(encoding="utf-8"))
    jsonschema.validate(saved, schema)
    assert saved["command"] == "acceptance"
    assert saved["result"]["summary"]["passed"] == 1
    assert path.parent == tmp_path / "nested"
