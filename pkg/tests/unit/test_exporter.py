#!/usr/bin/env python3
"""
Tests for ReportExporter.
"""

import csv
import io
import json

import pytest

from gsp4verify.components import FAIL, PASS, SCHEMA_VERSION, CheckTracker, ReportExporter


@pytest.fixture
def results():
    t = CheckTracker()
    t.add("trace.klingen_trace.p2", "Tr(w_Kl)", PASS, {"cases": 3, "verdict": "stated"}, 12.34567)
    t.add("branching.ladder", "ladder", FAIL, {"depths": {"w": 0}}, 0.5)
    return t.get_history()


def test_report_shape(results):
    report = ReportExporter(results, run={"primes": [2], "seed": 0}).to_dict()
    assert report["schema"] == SCHEMA_VERSION == 1
    assert report["run"] == {"primes": [2], "seed": 0}
    assert report["summary"] == {"total": 2, "pass": 1, "fail": 1, "skipped": 0}
    assert [c["id"] for c in report["checks"]] == ["branching.ladder", "trace.klingen_trace.p2"]
    assert "exported_at" not in report
    assert "duration_ms" not in report["checks"][0]


def test_json_is_deterministic(results):
    first = ReportExporter(results).to_json()
    second = ReportExporter(list(reversed(results))).to_json()
    assert first == second
    assert first.endswith("\n")
    assert json.loads(first)["checks"][1]["witness"]["verdict"] == "stated"


def test_timings_opt_in(results):
    report = ReportExporter(results, include_timings=True).to_dict()
    assert "exported_at" in report
    assert report["checks"][1]["duration_ms"] == 12.346


def test_csv(results):
    text = ReportExporter(results).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["id", "anchor", "status", "witness"]
    assert rows[1] == ["branching.ladder", "ladder", "fail", '{"depths":{"w":0}}']
    assert len(rows) == 3


def test_csv_with_timings(results):
    header = ReportExporter(results, include_timings=True).to_csv().splitlines()[0]
    assert header == "id,anchor,status,witness,duration_ms"


def test_markdown(results):
    text = ReportExporter(results).to_markdown()
    assert text.startswith("# gsp4verify report")
    assert "**Checks**: 2 (1 pass, 1 fail, 0 skipped)" in text
    assert "| `branching.ladder` | fail | ladder |" in text
    assert "**Date**" not in text


def test_render_dispatch(results):
    exporter = ReportExporter(results)
    assert exporter.render("csv") == exporter.to_csv()
    assert exporter.render("markdown") == exporter.to_markdown()
    assert exporter.render("json") == exporter.to_json()
