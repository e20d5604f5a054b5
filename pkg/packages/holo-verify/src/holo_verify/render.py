"""Rich summary tables for reports."""

from __future__ import annotations

from rich.console import Console
from rich.table import Table

from holo_verify.models import Outcome, Report

OUTCOME_STYLES = {
    Outcome.PASSED: "green",
    Outcome.WITNESS_FOUND: "green",
    Outcome.FAILED: "red",
    Outcome.BUDGET_EXHAUSTED: "yellow",
}


def _context(parameters: dict) -> str:
    keys = ("group", "delta", "n")
    return " ".join(f"{k}={parameters[k]}" for k in keys if k in parameters)


def print_report(report: Report, console: Console | None = None) -> None:
    """Render one row per claim: outcome, trials, failures and the largest measured constant."""
    console = console or Console(stderr=True)
    table = Table(title=f"holo {report.command} {report.suite}")
    table.add_column("Claim", style="bold")
    table.add_column("Context")
    table.add_column("Outcome")
    table.add_column("Trials", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Constants")

    for claim in report.claims:
        style = OUTCOME_STYLES[claim.outcome]
        constants = ", ".join(f"{k}={v:.4g}" for k, v in sorted(claim.constants.items())[:3])
        table.add_row(
            claim.claim,
            _context(claim.parameters),
            f"[{style}]{claim.outcome.value}[/{style}]",
            str(claim.trials),
            str(claim.failures),
            constants or "-",
        )

    console.print(table)
    console.print(f"wall time {report.wall_time:.2f}s")
