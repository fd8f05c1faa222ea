#!/usr/bin/env python3
"""
Every verification suite passes at p = 2 and p = 3 with reduced settings.
"""

import pytest

from gsp4verify.components import ReportExporter
from gsp4verify.verify import SUITES, run_checks

SMALL = {
    "truncation": 60,
    "max_weight": 4,
    "recursion_bound": 2,
    "branching_degree_budget": 4,
    "random_specializations": 3,
    "moduli_samples": 2,
}


@pytest.mark.slow
@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("p", [2, 3])
def test_suite_passes(suite, p):
    tracker = run_checks([suite], [p], SMALL)
    assert tracker.get_check_count() > 0
    assert tracker.passed, ReportExporter(tracker.get_history()).to_json()


@pytest.mark.slow
def test_reports_do_not_depend_on_jobs():
    serial = run_checks(["branching", "constants"], [2], SMALL, jobs=1)
    pooled = run_checks(["branching", "constants"], [2], SMALL, jobs=2)
    assert (ReportExporter(serial.get_history()).to_json()
            == ReportExporter(pooled.get_history()).to_json())
