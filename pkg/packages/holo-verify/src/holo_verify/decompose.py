"""Factor a stored matrix and write the factors plus a residual summary."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import numpy.typing as npt
from scipy import linalg

from holo_core.matrices import as_real_square, norm, orthogonality_residual
from holo_core.polar import complex_polar, real_polar
from holo_core.sqrtm import principal_sqrt
from holo_verify.matrix_io import read_matrix, write_json, write_matrix
from holo_verify.models import DecomposeMode

logger = logging.getLogger(__name__)


@dataclass
class Decomposition:
    mode: DecomposeMode
    factors: dict[str, npt.NDArray[np.complex128]]
    residuals: dict[str, float]
    paths: dict[str, Path] = field(default_factory=dict)


def factorize(a: npt.ArrayLike, mode: DecomposeMode) -> Decomposition:
    """Compute the factors of *a* for *mode*; precondition failures raise HoloError subclasses."""
    m = np.asarray(a, dtype=np.complex128)
    scale = max(norm(m), np.finfo(float).tiny)

    if mode is DecomposeMode.SQRT:
        report = principal_sqrt(m)
        return Decomposition(
            mode=mode,
            factors={"S": report.S},
            residuals={"residual": report.residual, "iterations": float(report.iterations)},
        )

    if mode is DecomposeMode.REAL_POLAR:
        g = as_real_square(m)
        factors = real_polar(g)
        return Decomposition(
            mode=mode,
            factors={"P": factors.P, "U": factors.U},
            residuals={
                "reconstruction": norm(factors.P @ factors.U - g) / scale,
                "orthogonality": norm(factors.U.T @ factors.U - np.eye(g.shape[0])),
                "det_U": float(linalg.det(factors.U)),
            },
        )

    factors = complex_polar(m)
    return Decomposition(
        mode=mode,
        factors={"S": factors.S, "Q": factors.Q},
        residuals={
            "residual_sq": factors.residual_sq,
            "residual_orth": orthogonality_residual(factors.Q),
            "symmetry": norm(factors.S - factors.S.T) / max(norm(factors.S), np.finfo(float).tiny),
        },
    )


def decompose(input_path: Path, mode: DecomposeMode, out_dir: Path | None = None) -> Decomposition:
    """Read *input_path*, factor it, and write ``<stem>.<factor>.json`` plus ``<stem>.residuals.json``.

    Every written factor is read back and compared bit for bit.
    """
    a = read_matrix(input_path)
    result = factorize(a, mode)
    target = out_dir or input_path.parent
    target.mkdir(parents=True, exist_ok=True)

    round_trip = True
    for name, factor in result.factors.items():
        path = write_matrix(target / f"{input_path.stem}.{name}.json", factor)
        round_trip = round_trip and bool(np.array_equal(read_matrix(path), np.asarray(factor, dtype=np.complex128)))
        result.paths[name] = path

    summary = {"mode": mode.value, "input": str(input_path), "round_trip": round_trip, **result.residuals}
    result.paths["residuals"] = write_json(target / f"{input_path.stem}.residuals.json", summary)
    logger.info("Decomposed %s (%s): %s", input_path, mode.value, result.residuals)
    return result
