"""``holo cover``: universal cover of SL(2, R) demonstrations."""

from __future__ import annotations

import json

import click
import numpy as np
from scipy import linalg

from holo_core.covering import CoverElement, cover_multiply, random_cover_element, rotation_loop, winding_number
from holo_core.errors import HoloError
from holo_core.rng import substream
from holo_verify.commands._errors import numeric_error


def _element(e: CoverElement) -> dict:
    return {"g": np.asarray(e.g).tolist(), "x": e.x}


def _winding_demo() -> dict:
    conjugator = np.diag([2.0, 0.5])
    inverse = linalg.inv(conjugator)
    windings = {str(k): winding_number(rotation_loop(k)) for k in (-2, -1, 0, 1, 2)}
    conjugated = [conjugator @ r @ inverse for r in rotation_loop(1)]
    return {"rotation_loops": windings, "conjugated_loop": winding_number(conjugated)}


def _multiply_demo(seed: int) -> dict:
    rng = substream(seed)
    a, b = random_cover_element(rng), random_cover_element(rng)
    product = cover_multiply(a, b)
    shifted = cover_multiply(a, b.deck_shift())
    return {
        "a": _element(a),
        "b": _element(b),
        "ab": _element(product),
        "a(b shifted)": _element(shifted),
        "deck_shift_of_product": shifted.x - product.x,
    }


@click.command("cover")
@click.option("--demo", required=True, type=click.Choice(["winding", "multiply"]))
@click.option("--seed", type=int, default=0, show_default=True)
def cover_command(demo: str, seed: int) -> None:
    """Print winding numbers or a lifted product as JSON."""
    try:
        payload = _winding_demo() if demo == "winding" else _multiply_demo(seed)
    except HoloError as exc:
        raise numeric_error(exc) from exc
    click.echo(json.dumps(payload, indent=2))
