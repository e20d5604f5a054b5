"""``holo decompose``: factor a matrix file."""

from __future__ import annotations

import json
from pathlib import Path

import click
from pydantic import ValidationError

from holo_core.errors import HoloError
from holo_verify.commands._errors import numeric_error, usage_error
from holo_verify.decompose import decompose
from holo_verify.models import DecomposeMode


@click.command("decompose")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--mode", required=True, type=click.Choice([m.value for m in DecomposeMode]))
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
def decompose_command(input_path: Path, mode: str, out_dir: Path | None) -> None:
    """Write factor files next to INPUT (or into --out-dir) and print the residuals."""
    try:
        result = decompose(input_path, DecomposeMode(mode), out_dir)
    except (ValidationError, json.JSONDecodeError) as exc:
        raise usage_error(exc) from exc
    except HoloError as exc:
        raise numeric_error(exc) from exc

    summary = {
        "mode": mode,
        "residuals": result.residuals,
        "files": {k: str(v) for k, v in result.paths.items()},
    }
    click.echo(json.dumps(summary, indent=2))
