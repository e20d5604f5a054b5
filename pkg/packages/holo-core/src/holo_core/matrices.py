"""Shared dense-matrix helpers: validation, norms, symmetric eigenvalues."""

from __future__ import annotations

from enum import Enum

import numpy as np
import numpy.typing as npt
from scipy import linalg

from holo_core.errors import AsymmetricInputError, InvalidDataError, ShapeError

ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]

SYMMETRY_RTOL = 1e-12


class MatrixNorm(str, Enum):
    """Norm convention for |x| and |y| in the matrix cones."""

    OPERATOR_2 = "operator-2"
    FROBENIUS = "frobenius"


def as_complex(a: npt.ArrayLike) -> ComplexArray:
    """Return *a* as a complex array, rejecting NaN and infinities."""
    arr = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise InvalidDataError("Input contains non-finite entries")
    return arr


def as_square(a: npt.ArrayLike) -> ComplexArray:
    """Return *a* as a finite complex square matrix."""
    arr = as_complex(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {arr.shape}", shape=arr.shape)
    return arr


def as_real_square(a: npt.ArrayLike) -> RealArray:
    """Return *a* as a finite real square matrix; imaginary parts must vanish."""
    arr = as_square(a)
    if np.any(arr.imag != 0.0):
        raise InvalidDataError("Expected a real matrix")
    return np.ascontiguousarray(arr.real)


def norm(a: npt.ArrayLike, kind: MatrixNorm = MatrixNorm.OPERATOR_2) -> float:
    """Operator 2-norm (largest singular value) or Frobenius norm."""
    arr = np.asarray(a)
    if arr.ndim == 1:
        return float(np.linalg.norm(arr))
    if kind is MatrixNorm.FROBENIUS:
        return float(np.linalg.norm(arr, "fro"))
    return float(np.linalg.norm(arr, 2))


def is_symmetric(b: npt.ArrayLike, rtol: float = SYMMETRY_RTOL) -> bool:
    """|B - B^T| <= rtol |B| in the operator 2-norm."""
    arr = np.asarray(b)
    return norm(arr - arr.T) <= rtol * norm(arr)


def require_symmetric(b: npt.ArrayLike, rtol: float = SYMMETRY_RTOL) -> ComplexArray:
    """Return *b* as a square complex matrix, or raise if ``B != B^T``."""
    arr = as_square(b)
    if not is_symmetric(arr, rtol):
        raise AsymmetricInputError(
            f"Matrix is not symmetric: |B - B^T| = {norm(arr - arr.T):.3e}",
            asymmetry=norm(arr - arr.T),
        )
    return arr


def symmetrize(a: npt.NDArray) -> npt.NDArray:
    """Symmetric part (A + A^T) / 2."""
    return (a + a.T) / 2


def min_sym_eigenvalue(x: RealArray) -> float:
    """Smallest eigenvalue of a real symmetric matrix (symmetric eigensolver)."""
    return float(linalg.eigvalsh(symmetrize(np.asarray(x, dtype=np.float64)))[0])


def rotation(theta: float) -> RealArray:
    """Plane rotation R(theta)."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def orthogonality_residual(q: npt.ArrayLike) -> float:
    """|Q Q^T - I| in the operator norm (transpose, not conjugate transpose)."""
    arr = np.asarray(q)
    return norm(arr @ arr.T - np.eye(arr.shape[0]))
