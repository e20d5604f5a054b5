"""Logging setup for holo runs: plain or single-line JSON on stderr, tagged with the active claim."""

from __future__ import annotations

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, TextIO

import numpy as np

from holo_verify.context import get_claim

# Attributes copied from ``extra={...}`` into JSON entries when present.
STRUCTURED_FIELDS = ("trial", "delta", "group", "residual", "iterations", "budget")

PLAIN_FORMAT = "%(asctime)s [%(levelname)s] %(name)s%(claim_tag)s: %(message)s"


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class ClaimFilter(logging.Filter):
    """Stamp every record with the claim active in the emitting thread."""

    def filter(self, record: logging.LogRecord) -> bool:
        claim = getattr(record, "claim", None) or get_claim()
        record.claim = claim
        record.claim_tag = f" [{claim}]" if claim else ""
        return True


class JSONFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        claim = getattr(record, "claim", None) or get_claim()
        if claim:
            entry["claim"] = claim
        for name in STRUCTURED_FIELDS:
            if hasattr(record, name):
                entry[name] = getattr(record, name)
        if record.exc_info and record.exc_info[1]:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=_json_default)


def configure_logging(verbose: bool = False, json_format: bool = False, stream: TextIO | None = None) -> None:
    """Route all logs to *stream* (stderr by default) so stdout stays free for reports.

    ``verbose`` selects DEBUG, which includes iteration counts and resamples.
    """
    level = logging.DEBUG if verbose else logging.INFO
    root = logging.getLogger()
    root.setLevel(level)
    for existing in root.handlers[:]:
        root.removeHandler(existing)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setLevel(level)
    handler.addFilter(ClaimFilter())
    handler.setFormatter(JSONFormatter() if json_format else logging.Formatter(PLAIN_FORMAT, datefmt="%H:%M:%S"))
    root.addHandler(handler)
