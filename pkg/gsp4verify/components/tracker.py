"""
CheckTracker - Tracks verification check outcomes

Single responsibility: Result accumulation and pass/fail accounting
"""

import time
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, SKIPPED)


class CheckTracker:
    """
    Tracks check results across a verification run.

    Maintains per-check history and the wall time spent.
    """

    def __init__(self):
        """Initialize with no results."""
        self._total_ms = 0.0
        self._results: List[Dict[str, Any]] = []

    def add(self, check_id: str, anchor: str, status: str,
            witness: Optional[Dict[str, Any]] = None, duration_ms: float = 0.0):
        """
        Record the outcome of one check.

        Args:
            check_id: Stable id, e.g. "trace.klingen_w.p2"
            anchor: The identity the check reproduces
            status: One of pass, fail, skipped
            witness: JSON-ready evidence (scalar strings, cycle dumps)
            duration_ms: Wall time of the check
        """
        if status not in STATUSES:
            raise ValueError(f"Unknown check status {status!r}")
        self._total_ms += duration_ms
        self._results.append({
            "id": check_id,
            "anchor": anchor,
            "status": status,
            "witness": witness or {},
            "duration_ms": duration_ms,
            "timestamp": time.time(),
        })

    def extend(self, other: "CheckTracker"):
        """Merge the results of another tracker (e.g. from a worker process)."""
        for result in other.get_history():
            self.add(result["id"], result["anchor"], result["status"],
                     result["witness"], result["duration_ms"])

    def get_total_ms(self) -> float:
        return self._total_ms

    def get_history(self) -> List[Dict[str, Any]]:
        """
        Get all results, sorted by check id.

        Returns:
            List of result records
        """
        return sorted(self._results, key=lambda r: r["id"])

    def get_check_count(self) -> int:
        return len(self._results)

    def count(self, status: str) -> int:
        return sum(1 for r in self._results if r["status"] == status)

    def failed(self) -> List[str]:
        """Ids of failed checks."""
        return [r["id"] for r in self.get_history() if r["status"] == FAIL]

    @property
    def passed(self) -> bool:
        return self.count(FAIL) == 0

    def reset(self):
        """Reset results and timing."""
        self._total_ms = 0.0
        self._results = []

    def __repr__(self) -> str:
        """String representation."""
        return (
            f"CheckTracker({self.count(PASS)} pass, {self.count(FAIL)} fail, "
            f"{self.count(SKIPPED)} skipped)"
        )
