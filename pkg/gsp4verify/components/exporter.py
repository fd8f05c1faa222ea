"""
ReportExporter - Export verification results to machine-readable formats

Single responsibility: Transform check history into JSON, CSV and Markdown
"""

import csv
import io
import json
from datetime import datetime
from typing import Any, Dict, List, Optional

from .tracker import FAIL, PASS, SKIPPED

SCHEMA_VERSION = 1
CSV_FIELDS = ("id", "anchor", "status", "witness", "duration_ms")


class ReportExporter:
    """
    Exports a verification run as a report.

    The report body is deterministic: keys are sorted, checks are sorted by
    id, and wall times and the export date appear only with timings enabled.
    """

    def __init__(self, results: List[Dict[str, Any]],
                 run: Optional[Dict[str, Any]] = None, include_timings: bool = False):
        """
        Initialize exporter with check results.

        Args:
            results: Records as produced by CheckTracker.get_history()
            run: Run parameters echoed into the report (primes, seed, ...)
            include_timings: Keep wall times in the output
        """
        self.results = sorted(results, key=lambda r: r["id"])
        self.run = run or {}
        self.include_timings = include_timings
        self.timestamp = datetime.now()

    def summary(self) -> Dict[str, int]:
        statuses = [r["status"] for r in self.results]
        return {
            "total": len(statuses),
            PASS: statuses.count(PASS),
            FAIL: statuses.count(FAIL),
            SKIPPED: statuses.count(SKIPPED),
        }

    def _check_record(self, result: Dict[str, Any]) -> Dict[str, Any]:
        record = {
            "id": result["id"],
            "anchor": result["anchor"],
            "status": result["status"],
            "witness": result.get("witness", {}),
        }
        if self.include_timings:
            record["duration_ms"] = round(result.get("duration_ms", 0.0), 3)
        return record

    def to_dict(self) -> Dict[str, Any]:
        report: Dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "run": self.run,
            "summary": self.summary(),
            "checks": [self._check_record(r) for r in self.results],
        }
        if self.include_timings:
            report["exported_at"] = self.timestamp.strftime("%Y-%m-%d %H:%M:%S")
        return report

    def to_json(self) -> str:
        """
        Export the report as JSON.

        Returns:
            Indented JSON with sorted keys and a trailing newline
        """
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        """
        Export one row per check; the witness column holds compact JSON.

        Returns:
            CSV text with a header row
        """
        fields = CSV_FIELDS if self.include_timings else CSV_FIELDS[:-1]
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(fields)
        for result in self.results:
            record = self._check_record(result)
            record["witness"] = json.dumps(record["witness"], sort_keys=True,
                                           separators=(",", ":"))
            writer.writerow([record[f] for f in fields])
        return buffer.getvalue()

    def to_markdown(self) -> str:
        """
        Export a human-readable summary table.

        Returns:
            Markdown-formatted report string
        """
        summary = self.summary()
        lines = ["# gsp4verify report", ""]
        if self.include_timings:
            lines.append(f"**Date**: {self.timestamp.strftime('%Y-%m-%d %H:%M:%S')}")
        lines.append(
            f"**Checks**: {summary['total']} "
            f"({summary[PASS]} pass, {summary[FAIL]} fail, {summary[SKIPPED]} skipped)"
        )
        lines.append("")
        lines.append("| check | status | anchor |")
        lines.append("|---|---|---|")
        for result in self.results:
            lines.append(f"| `{result['id']}` | {result['status']} | {result['anchor']} |")
        return "\n".join(lines) + "\n"

    def render(self, output_format: str) -> str:
        if output_format == "csv":
            return self.to_csv()
        if output_format == "markdown":
            return self.to_markdown()
        return self.to_json()
