"""Read and write matrices in the shared JSON matrix format."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import numpy.typing as npt

from holo_verify.models import MatrixFile


def read_matrix_file(path: Path) -> MatrixFile:
    return MatrixFile.model_validate_json(path.read_text(encoding="utf-8"))


def read_matrix(path: Path) -> npt.NDArray[np.complex128]:
    return read_matrix_file(path).to_array()


def read_int_matrix(path: Path) -> list[list[int]]:
    return read_matrix_file(path).to_integers()


def write_matrix(path: Path, a: npt.ArrayLike) -> Path:
    path.write_text(MatrixFile.from_array(a).model_dump_json(), encoding="utf-8")
    return path


def write_int_matrix(path: Path, m: list[list[int]]) -> Path:
    path.write_text(MatrixFile.from_integers(m).model_dump_json(), encoding="utf-8")
    return path


def write_json(path: Path, payload: dict) -> Path:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8")
    return path
