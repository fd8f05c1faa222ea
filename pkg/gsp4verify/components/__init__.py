"""
Reporting components for gsp4verify

Each component has a single, focused responsibility.
"""

from .tracker import CheckTracker, PASS, FAIL, SKIPPED
from .exporter import ReportExporter, SCHEMA_VERSION

__all__ = [
    "CheckTracker",
    "ReportExporter",
    "SCHEMA_VERSION",
    "PASS",
    "FAIL",
    "SKIPPED",
]
