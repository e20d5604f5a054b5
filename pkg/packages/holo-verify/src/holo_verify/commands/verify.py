"""``holo verify``: run a verification suite and write its report."""

from __future__ import annotations

from pathlib import Path

import click
import yaml

from holo_verify.cli_utils import report_status
from holo_verify.commands._errors import usage_error
from holo_verify.config import load_run_config
from holo_verify.models import Suite
from holo_verify.render import print_report
from holo_verify.suites import run_suite


@click.command("verify")
@click.argument("suite", type=click.Choice([s.value for s in Suite]))
@click.option(
    "--config", "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="YAML run preset; options given on the command line override it.",
)
@click.option(
    "--group", "groups", multiple=True,
    help="Group such as sl:3, so:2,1 or sp:4 (repeatable); replaces the preset's groups.",
)
@click.option("--n", "n", type=int, default=None, help="Override the group's matrix size.")
@click.option("--delta", "deltas", type=float, multiple=True, help="Delta grid point (repeatable).")
@click.option("--trials", type=int, default=None, help="Trials per claim and grid point.")
@click.option("--seed", type=int, default=None, help="64-bit run seed.")
@click.option("--tol", type=float, default=None, help="Relative residual limit for residual claims.")
@click.option("--radius", type=float, default=None, help="Sampling radius in the Lie algebra.")
@click.option("--threads", type=int, default=None, help="Parallel trials (default: HOLO_THREADS).")
@click.option("--out", "output", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Report path.")
def verify_command(
    suite: str,
    config_path: Path | None,
    groups: tuple[str, ...],
    n: int | None,
    deltas: tuple[float, ...],
    trials: int | None,
    seed: int | None,
    tol: float | None,
    radius: float | None,
    threads: int | None,
    output: Path | None,
) -> None:
    """Run SUITE and exit 0 only if every claim holds."""
    try:
        config = load_run_config(
            config_path,
            suite=suite,
            groups=list(groups) or None,
            n=n,
            deltas=list(deltas) or None,
            trials=trials,
            seed=seed,
            tol=tol,
            radius=radius,
            threads=threads,
            output=output,
        )
    except (ValueError, FileNotFoundError, yaml.YAMLError) as exc:
        raise usage_error(exc) from exc

    report = run_suite(config)
    print_report(report)
    if config.output is None:
        click.echo(report.to_json())

    click.echo(report_status(report), err=True)
    if not report.ok:
        raise SystemExit(1)
