"""``holo snf``: Smith normal form of an integer matrix file."""

from __future__ import annotations

import json
from pathlib import Path

import click
from pydantic import ValidationError

from holo_core.covering import determinantal_divisors, smith_normal_form, split_abelian
from holo_core.errors import HoloError
from holo_verify.commands._errors import numeric_error, usage_error
from holo_verify.matrix_io import read_int_matrix


@click.command("snf")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
def snf_command(input_path: Path) -> None:
    """Print U, V, D with U M V = D and the abelian group Z^k / image(M)."""
    try:
        m = read_int_matrix(input_path)
    except (ValidationError, ValueError) as exc:
        raise usage_error(exc) from exc
    try:
        result = smith_normal_form(m)
        torsion, free_rank = split_abelian(m)
        divisors = determinantal_divisors(m)
    except HoloError as exc:
        raise numeric_error(exc) from exc

    click.echo(json.dumps(
        {
            "U": result.U,
            "V": result.V,
            "D": result.D,
            "invariants": result.invariants,
            "determinantal_divisors": divisors,
            "torsion": torsion,
            "free_rank": free_rank,
        },
        indent=2,
    ))
