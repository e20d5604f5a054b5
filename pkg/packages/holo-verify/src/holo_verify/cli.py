"""CLI entry-point for the holo verification harness."""

from __future__ import annotations

import click

from holo_verify.commands.counterexample import counterexample_command
from holo_verify.commands.cover import cover_command
from holo_verify.commands.decompose import decompose_command
from holo_verify.commands.snf import snf_command
from holo_verify.commands.verify import verify_command
from holo_verify.config import load_env
from holo_verify.logging_config import configure_logging


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging.")
@click.option("--json-logs", is_flag=True, help="Output structured JSON logs.")
def cli(verbose: bool, json_logs: bool) -> None:
    """holo: verification suites for tube domains of real Lie groups."""
    load_env()
    configure_logging(verbose=verbose, json_format=json_logs)


cli.add_command(verify_command)
cli.add_command(counterexample_command)
cli.add_command(decompose_command)
cli.add_command(snf_command)
cli.add_command(cover_command)
