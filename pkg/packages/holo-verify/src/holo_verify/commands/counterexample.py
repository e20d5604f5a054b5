"""``holo counterexample``: search for a witness against a false statement."""

from __future__ import annotations

from pathlib import Path

import click
from pydantic import ValidationError

from holo_verify.cli_utils import success, warning
from holo_verify.commands._errors import usage_error
from holo_verify.counterexamples import find_counterexample
from holo_verify.models import CounterexampleClaim, CounterexampleConfig
from holo_verify.render import print_report
from holo_verify.suites import write_report


@click.command("counterexample")
@click.option("--claim", required=True, type=click.Choice([c.value for c in CounterexampleClaim]))
@click.option("--delta", "deltas", type=float, multiple=True, help="Delta grid point (repeatable).")
@click.option("--budget", type=int, default=100_000, show_default=True, help="Maximum candidates tried.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--group", default="gl+:3", show_default=True)
@click.option("--out", "output", type=click.Path(dir_okay=False, path_type=Path), default=None)
def counterexample_command(
    claim: str, deltas: tuple[float, ...], budget: int, seed: int, group: str, output: Path | None,
) -> None:
    """Exit 0 when a witness is found, 1 when the budget runs out."""
    data = {"claim": claim, "budget": budget, "seed": seed, "group": group, "output": output}
    if deltas:
        data["deltas"] = list(deltas)
    try:
        config = CounterexampleConfig.model_validate(data)
    except ValidationError as exc:
        raise usage_error(exc) from exc

    report = find_counterexample(config)
    print_report(report)
    if config.output is not None:
        write_report(report, config.output)
    else:
        click.echo(report.to_json())

    if not report.ok:
        click.echo(warning(f"No witness for {claim} within {budget} candidate(s)"), err=True)
        raise SystemExit(1)
    click.echo(success(f"Witness found for {claim}"), err=True)
