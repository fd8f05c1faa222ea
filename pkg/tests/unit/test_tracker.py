#!/usr/bin/env python3
"""
Tests for CheckTracker.
"""

import pytest

from gsp4verify.components import FAIL, PASS, SKIPPED, CheckTracker


@pytest.fixture
def tracker():
    t = CheckTracker()
    t.add("zeta.siegel.p3", "Siegel zeta", PASS, {"cases": 4}, 2.5)
    t.add("trace.klingen_trace.p2", "Tr(w_Kl)", FAIL, {"residual": "1/2"}, 1.0)
    t.add("corr-identity.correspondence.p5", "U2' identity", SKIPPED, {"reason": "empty"})
    return t


def test_history_sorted_by_id(tracker):
    ids = [r["id"] for r in tracker.get_history()]
    assert ids == sorted(ids)
    assert tracker.get_check_count() == 3


def test_counts(tracker):
    assert tracker.count(PASS) == 1
    assert tracker.count(FAIL) == 1
    assert tracker.count(SKIPPED) == 1
    assert tracker.failed() == ["trace.klingen_trace.p2"]
    assert not tracker.passed
    assert tracker.get_total_ms() == 3.5
    assert repr(tracker) == "CheckTracker(1 pass, 1 fail, 1 skipped)"


def test_unknown_status():
    with pytest.raises(ValueError):
        CheckTracker().add("x", "y", "maybe")


def test_missing_witness_is_empty():
    t = CheckTracker()
    t.add("branching.ladder", "ladder", PASS)
    assert t.get_history()[0]["witness"] == {}
    assert t.passed


def test_extend_and_reset(tracker):
    merged = CheckTracker()
    merged.extend(tracker)
    assert merged.get_check_count() == 3
    assert merged.failed() == tracker.failed()
    merged.reset()
    assert merged.get_check_count() == 0
    assert merged.get_total_ms() == 0.0
    assert merged.passed
