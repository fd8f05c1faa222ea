#!/usr/bin/env python3
"""
Tests for the check registry, planning and the check runner.
"""

import pytest

from gsp4verify.components import FAIL, PASS, SKIPPED
from gsp4verify.config import DEFAULT_SETTINGS
from gsp4verify.errors import NonOrdinary, UnknownOperator
from gsp4verify.verify import (
    CHECKS,
    SUITES,
    Check,
    CheckOutcome,
    CheckRegistry,
    plan,
    run_check,
    run_checks,
    signed_factorial,
    weights,
)


def test_every_suite_has_checks():
    for suite in SUITES:
        assert CHECKS.suite(suite), suite
    assert len(CHECKS.suite("all")) == len(CHECKS) == 16


def test_check_names():
    assert "branching.ladder" in CHECKS
    assert "corr-identity.correspondence" in CHECKS
    item = CHECKS.get("trace.klingen_trace")
    assert item.check_id(2) == "trace.klingen_trace.p2"
    assert CHECKS.get("branching.ladder").check_id(None) == "branching.ladder"


def test_unknown_suite():
    with pytest.raises(UnknownOperator):
        CHECKS.suite("paramodular")
    registry = CheckRegistry()
    with pytest.raises(UnknownOperator):
        registry.register(Check("x.y", "x", "anchor", lambda ctx: CheckOutcome.of(True)))


def test_plan_is_sorted_and_deduplicated():
    tasks = plan(["constants", "constants"], [3, 2])
    assert tasks == [
        ("constants.assembly", 2),
        ("constants.assembly", 3),
        ("constants.frobenius", 2),
        ("constants.frobenius", 3),
    ]
    assert plan(["branching"], [2, 3]) == [
        ("branching.ladder", None),
        ("branching.projection_table", None),
    ]


def test_outcomes():
    assert CheckOutcome.of(True, cases=1).status == PASS
    assert CheckOutcome.of(False).status == FAIL
    assert CheckOutcome.skip("empty").witness == {"reason": "empty"}
    assert CheckOutcome.skip("empty").status == SKIPPED


def test_run_check_record():
    record = run_check("branching.ladder", None, DEFAULT_SETTINGS)
    assert record["id"] == "branching.ladder"
    assert record["status"] == PASS
    assert record["witness"]["depths"]["w''"] == 2


def test_run_check_unknown():
    with pytest.raises(UnknownOperator):
        run_check("trace.nothing", 2, DEFAULT_SETTINGS)


def test_library_errors_become_failures(monkeypatch):
    def broken(ctx):
        raise NonOrdinary("C is not multiplicative")

    monkeypatch.setattr(CHECKS.get("branching.ladder"), "function", broken)
    record = run_check("branching.ladder", None, DEFAULT_SETTINGS)
    assert record["status"] == FAIL
    assert record["witness"] == {"error": "NonOrdinary: C is not multiplicative"}


def test_run_checks_tracker():
    tracker = run_checks(["branching"], [2], {"branching_degree_budget": 2})
    assert tracker.get_check_count() == 2
    assert tracker.passed
    history = tracker.get_history()
    assert history[1]["witness"]["budget"] == 2


def test_weights():
    assert list(weights(2)) == [(0, 0), (1, 0), (2, 0), (1, 1)]


def test_signed_factorial():
    assert signed_factorial(1, 0) == 1
    assert signed_factorial(1, 1) == 2
    assert signed_factorial(3, 1) == -2 * -1 * 2
