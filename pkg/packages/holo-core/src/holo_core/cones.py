"""Cones of complex scalars, vectors and matrices dominated by their real part.

    N+ = {x + iy in C      : |y| < delta x}
    V  = {x + iy in C^n    : |y| < delta |x|}
    M  = {x + iy in Mat(n) : |y| < delta |x|}
    M+ = {x + iy in Mat(n) : z^T = z, delta x +- y positive definite}

Every predicate has a ``*_margin`` companion returning the signed slack;
membership is exactly ``margin > 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy import linalg

from holo_core.errors import InvalidDataError
from holo_core.matrices import (
    MatrixNorm,
    RealArray,
    as_complex,
    as_square,
    min_sym_eigenvalue,
    norm,
    require_symmetric,
    symmetrize,
)
from holo_core.rng import SeedLike, as_generator

logger = logging.getLogger(__name__)


class ConeParams(BaseModel):
    """Cone aperture plus the matrix norm used for |x| and |y|."""

    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., gt=0.0, lt=1.0, description="Cone aperture (dimensionless)")
    matrix_norm: MatrixNorm = Field(
        MatrixNorm.OPERATOR_2, description="Norm for the matrix cone M",
    )


class ViolatedCone(str, Enum):
    PLUS = "delta*Re(B) + Im(B)"
    MINUS = "delta*Re(B) - Im(B)"
    SAMPLED = "sampled quadratic form"


@dataclass(frozen=True)
class ConeWitness:
    """A real vector x with <Bx, x> outside N+."""

    vector: RealArray
    value: complex
    violated_cone: ViolatedCone


def _split(params: ConeParams | float) -> tuple[float, MatrixNorm]:
    if isinstance(params, ConeParams):
        return params.delta, params.matrix_norm
    delta = float(params)
    if not np.isfinite(delta) or delta <= 0.0:
        raise InvalidDataError(f"Cone aperture must be positive, got {params!r}")
    return delta, MatrixNorm.OPERATOR_2


def bilinear(u: npt.ArrayLike, v: npt.ArrayLike) -> complex:
    """The bilinear (not Hermitian) product <u, v> = sum u_j v_j."""
    return complex(np.dot(as_complex(u), as_complex(v)))


# ---------------------------------------------------------------------------
# Margins
# ---------------------------------------------------------------------------


def right_cone_margin(z: complex, params: ConeParams | float) -> float:
    delta, _ = _split(params)
    w = complex(as_complex(z))
    return delta * w.real - abs(w.imag)


def vector_cone_margin(z: npt.ArrayLike, params: ConeParams | float) -> float:
    delta, _ = _split(params)
    w = as_complex(z).ravel()
    return delta * norm(w.real) - norm(w.imag)


def matrix_cone_margin(a: npt.ArrayLike, params: ConeParams | float) -> float:
    delta, kind = _split(params)
    m = as_square(a)
    return delta * norm(m.real, kind) - norm(m.imag, kind)


def symmetric_cone_margin(b: npt.ArrayLike, params: ConeParams | float) -> float:
    """min over both signs of the smallest eigenvalue of delta*Re(B) +- Im(B)."""
    delta, _ = _split(params)
    m = require_symmetric(b)
    x, y = symmetrize(m.real), symmetrize(m.imag)
    return min(min_sym_eigenvalue(delta * x + y), min_sym_eigenvalue(delta * x - y))


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def in_right_cone(z: complex, params: ConeParams | float) -> bool:
    """|Im z| < delta * Re z (strict, so Re z > 0)."""
    return right_cone_margin(z, params) > 0.0


def in_vector_cone(z: npt.ArrayLike, params: ConeParams | float) -> bool:
    """True when z lies strictly inside the vector cone."""
    return vector_cone_margin(z, params) > 0.0


def in_matrix_cone(a: npt.ArrayLike, params: ConeParams | float) -> bool:
    """True when the almost-real margin of a is positive."""
    return matrix_cone_margin(a, params) > 0.0


def in_symmetric_cone(b: npt.ArrayLike, params: ConeParams | float) -> bool:
    """True when b lies strictly inside the symmetric cone."""
    return symmetric_cone_margin(b, params) > 0.0


# ---------------------------------------------------------------------------
# Quadratic-form characterization of M+
# ---------------------------------------------------------------------------


def quadratic_form_witness(
    b: npt.ArrayLike,
    params: ConeParams | float,
    trials: int = 1000,
    seed: SeedLike = 0,
) -> ConeWitness | None:
    """Search for a real x with <Bx, x> outside N+.

    If delta*Re(B) - Im(B) or delta*Re(B) + Im(B) has a non-positive
    eigenvalue, the eigenvector of the most negative one is returned
    directly. Otherwise *trials* random directions are tried, and for
    B in M+ none of them can succeed.
    """
    delta, _ = _split(params)
    m = require_symmetric(b)
    x, y = symmetrize(m.real), symmetrize(m.imag)

    candidates: list[tuple[float, RealArray, ViolatedCone]] = []
    for sign, tag in ((1.0, ViolatedCone.PLUS), (-1.0, ViolatedCone.MINUS)):
        eigvals, eigvecs = linalg.eigh(delta * x + sign * y)
        if eigvals[0] <= 0.0:
            candidates.append((float(eigvals[0]), eigvecs[:, 0], tag))
    if candidates:
        _, vec, tag = min(candidates, key=lambda c: c[0])
        value = complex(vec @ m @ vec)
        logger.debug("Deterministic cone witness via %s: value=%s", tag.value, value)
        return ConeWitness(vector=vec, value=value, violated_cone=tag)

    rng = as_generator(seed)
    n = m.shape[0]
    for _ in range(trials):
        vec = rng.standard_normal(n)
        value = complex(vec @ m @ vec)
        if not in_right_cone(value, delta):
            return ConeWitness(vector=vec, value=value, violated_cone=ViolatedCone.SAMPLED)
    return None
