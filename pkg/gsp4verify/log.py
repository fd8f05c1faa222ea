"""
Logging for gsp4verify - colourised console plus JSONL file with rotation.

Usage:
    from gsp4verify.log import get_logger

    log = get_logger("parahoric")
    log.debug("Orbit enumerated", level="Kl", p=2, cosets=16)

Configuration (via environment variables):
    LOG_LEVEL=DEBUG              # DEBUG, INFO, WARNING (default), ERROR
    GSP4VERIFY_LOG_DIR=./logs    # Log directory (default: ./logs)

The default level is WARNING so that CLI output on stdout stays machine
readable; set LOG_LEVEL=INFO to follow check outcomes as they happen.

Searching logs:
    cat logs/gsp4verify.jsonl | jq -r 'select(.record.extra.component == "verify")'
    cat logs/gsp4verify.jsonl | jq -r 'select(.record.level.name == "ERROR")'
"""

from loguru import logger
import sys
from pathlib import Path
import os

# ============================================================================
# One-time setup (happens on import)
# ============================================================================

logger.remove()

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
LOG_DIR = Path(os.getenv("GSP4VERIFY_LOG_DIR", "./logs"))

LOG_DIR.mkdir(exist_ok=True, parents=True)

# ============================================================================
# Console output
# ============================================================================

def console_formatter(record):
    """Formatter that appends check/prime/duration extras when present."""
    base = (
        "<green>{time:HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{extra[component]}</cyan> | "
        "<level>{message}</level>"
    )

    if "check" in record["extra"]:
        base += " | <yellow>check={extra[check]}</yellow>"

    if "p" in record["extra"]:
        base += " | <blue>p={extra[p]}</blue>"

    if "duration_ms" in record["extra"]:
        base += " | <magenta>{extra[duration_ms]:.0f}ms</magenta>"

    return base + "\n"

logger.add(
    sys.stderr,
    level=LOG_LEVEL,
    format=console_formatter,
    colorize=True,
    filter=lambda record: "component" in record["extra"],
)

# ============================================================================
# File output (JSONL, rotated and compressed)
# ============================================================================

logger.add(
    LOG_DIR / "gsp4verify.jsonl",
    level=LOG_LEVEL,
    serialize=True,
    rotation="1 week",
    retention="3 weeks",
    compression="gz",
    enqueue=True,
    backtrace=True,
    diagnose=True,
)

# ============================================================================
# Exported loggers
# ============================================================================

log = logger.bind(component="gsp4verify")


def get_logger(component: str):
    """
    Get a logger with a specific component tag.

    Args:
        component: Component name (e.g. "algebra", "parahoric", "verify")

    Returns:
        Logger bound to component
    """
    return logger.bind(component=component)
