"""Status lines for the CLI. They go to stderr; stdout carries JSON only."""

from __future__ import annotations

import os

import click

from holo_verify.models import Report


def _color_enabled() -> bool:
    return not os.environ.get("NO_COLOR") and click.get_text_stream("stderr").isatty()


def _styled(text: str, **style: object) -> str:
    return click.style(text, **style) if _color_enabled() else text


def success(text: str) -> str:
    """Green check-marked line."""
    return _styled(f"✓ {text}", fg="green")


def error(text: str) -> str:
    """Bold red cross-marked line."""
    return _styled(f"✗ {text}", fg="red", bold=True)


def warning(text: str) -> str:
    """Yellow line prefixed with an exclamation mark."""
    return _styled(f"! {text}", fg="yellow")


def report_status(report: Report) -> str:
    """One line summarizing a verify run: all claims hold, or which claims failed."""
    failing = sorted({c.claim for c in report.claims if not c.ok})
    if failing:
        return error(f"{len(failing)} claim(s) failed: {', '.join(failing)}")
    return success(f"All {len(report.claims)} claim(s) hold")
