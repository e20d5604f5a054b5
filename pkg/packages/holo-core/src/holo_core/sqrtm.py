"""Eigenvalues and principal square roots of small dense complex matrices.

The principal square root uses the branch of sqrt(lambda) that is positive
on the positive reals; it is defined here for spectra in the open right
half-plane, which contains the spectrum of every B in M+.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
import numpy.typing as npt
from scipy import linalg

from holo_core.cones import ConeParams, in_symmetric_cone, symmetric_cone_margin
from holo_core.errors import DomainError, NumericError, UnsupportedSizeError
from holo_core.matrices import (
    ComplexArray,
    RealArray,
    as_square,
    is_symmetric,
    norm,
    symmetrize,
)

logger = logging.getLogger(__name__)

MAX_DIMENSION = 16
MAX_ITERATIONS = 100
DEFAULT_TOL = 1e-12
# Acceptance limit for |S^2 - B| / |B| when tol is tighter than roundoff allows.
RESIDUAL_LIMIT = 1e-10
EIG_FALLBACK_DIMENSION = 4
STRUCTURE_RTOL = 1e-8
SYMMETRY_LIMIT = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, in no particular order."""

    eigenvalues: ComplexArray

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def min_real_part(self) -> float:
        return float(np.min(self.eigenvalues.real))

    def leftmost(self) -> complex:
        return complex(self.eigenvalues[np.argmin(self.eigenvalues.real)])


@dataclass(frozen=True)
class SqrtReport:
    """Principal square root S of B plus the S = U (I + iK) Lambda U^T split.

    ``U``, ``Lambda`` and ``K`` are filled in by :func:`verify_sqrt_structure`.
    """

    S: ComplexArray
    residual: float
    iterations: int
    method: str
    U: RealArray | None = None
    Lambda: RealArray | None = None
    K: ComplexArray | None = None
    k_max: float | None = None
    cone_margin: float | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def eigenvalues(a: npt.ArrayLike) -> Spectrum:
    """Eigenvalues of a square matrix of size at most 16."""
    m = as_square(a)
    if m.shape[0] > MAX_DIMENSION:
        raise UnsupportedSizeError(
            f"Matrix size {m.shape[0]} exceeds the supported maximum {MAX_DIMENSION}",
            n=m.shape[0],
        )
    return Spectrum(eigenvalues=linalg.eigvals(m).astype(np.complex128))


def eigenvalue_cone_aperture(n: int, delta: float) -> float | None:
    """Aperture of the sector holding the spectrum of any B in M+ (delta).

    With delta1 = 2 n delta the eigenvalues lie in the sector spanned by
    the disc |z - 1| < delta1, i.e. in N+ with aperture
    delta1 / sqrt(1 - delta1^2). Returns None when delta1 >= 1.
    """
    delta1 = 2 * n * delta
    if delta1 >= 1.0:
        return None
    return delta1 / math.sqrt(1.0 - delta1 * delta1)


def _relative_residual(s: ComplexArray, b: ComplexArray) -> float:
    return norm(s @ s - b) / norm(b)


def _denman_beavers(
    b: ComplexArray, tol: float, symmetric: bool,
) -> tuple[ComplexArray, int, bool]:
    """Determinant-scaled Denman–Beavers iteration.

    Y -> sqrt(B), Z -> sqrt(B)^-1. Scaling is switched off once the step
    is small, after which convergence is quadratic.
    """
    n = b.shape[0]
    y = b.copy()
    z = np.eye(n, dtype=np.complex128)
    scaling = True
    previous_step = math.inf

    for iteration in range(1, MAX_ITERATIONS + 1):
        y_inv = linalg.inv(y)
        z_inv = linalg.inv(z)
        mu = 1.0
        if scaling:
            det_yz = abs(linalg.det(y) * linalg.det(z))
            if det_yz > 0.0 and np.isfinite(det_yz):
                mu = det_yz ** (-1.0 / (2 * n))
        y_next = (mu * y + z_inv / mu) / 2
        z_next = (mu * z + y_inv / mu) / 2
        if symmetric:
            y_next = symmetrize(y_next)
            z_next = symmetrize(z_next)

        step = norm(y_next - y) / norm(y_next)
        y, z = y_next, z_next
        if step < 1e-2:
            scaling = False
        if step <= tol:
            return y, iteration, True
        # Roundoff floor: quadratic convergence has stopped making progress.
        if not scaling and step < 1e-8 and step >= previous_step:
            return y, iteration, True
        previous_step = step

    return y, MAX_ITERATIONS, False


def _eig_sqrt(b: ComplexArray) -> ComplexArray:
    w, v = linalg.eig(b)
    return v @ np.diag(np.sqrt(w)) @ linalg.inv(v)


def principal_sqrt(b: npt.ArrayLike, tol: float = DEFAULT_TOL) -> SqrtReport:
    """Principal square root of B, whose spectrum must lie in Re > 0.

    Raises:
        DomainError: if an eigenvalue of B has non-positive real part.
        NumericError: if neither the iteration nor the fallback reaches
            max(tol, RESIDUAL_LIMIT).
    """
    m = as_square(b)
    spectrum = eigenvalues(m)
    if spectrum.min_real_part <= 0.0:
        bad = spectrum.leftmost()
        raise DomainError(
            f"Spectrum touches the closed left half-plane: eigenvalue {bad:.6g}",
            eigenvalue=bad,
        )

    symmetric = is_symmetric(m)
    limit = max(tol, RESIDUAL_LIMIT)

    s, iterations, converged = _denman_beavers(m, tol, symmetric)
    method = "denman-beavers"
    residual = _relative_residual(s, m)
    logger.debug(
        "Denman-Beavers: %d iterations, converged=%s, residual=%.3e",
        iterations, converged, residual,
    )

    if residual > limit and m.shape[0] <= EIG_FALLBACK_DIMENSION:
        logger.warning(
            "Square-root iteration stalled (residual %.3e); using eigendecomposition",
            residual,
        )
        s = _eig_sqrt(m)
        if symmetric:
            s = symmetrize(s)
        method = "eigendecomposition"
        residual = _relative_residual(s, m)

    if residual > limit:
        raise NumericError(
            f"Square root did not converge: residual {residual:.3e} after {iterations} iterations",
            residual=residual,
            iterations=iterations,
        )

    root_spectrum = eigenvalues(s)
    if root_spectrum.min_real_part <= 0.0:
        raise NumericError(
            f"Computed root is not principal: eigenvalue {root_spectrum.leftmost():.6g}",
            residual=residual,
            iterations=iterations,
        )

    return SqrtReport(S=s, residual=residual, iterations=iterations, method=method)


def verify_sqrt_structure(b: npt.ArrayLike, params: ConeParams) -> SqrtReport:
    """Check the structure of sqrt(B) for B in M+ with aperture delta.

    Asserts (as violations, never raising) that Re S > 0,
    S = U (I + iK) Lambda U^T, S in M+ with aperture 2 n delta and
    max |K_ij| <= 2 delta.
    """
    m = as_square(b)
    n = m.shape[0]
    delta = params.delta
    violations: list[str] = []

    if not in_symmetric_cone(m, params):
        violations.append(f"B is not in M+ with delta={delta}")

    report = principal_sqrt(m)
    s = report.S

    asymmetry = norm(s - s.T) / norm(s)
    if asymmetry > SYMMETRY_LIMIT:
        violations.append(f"S is not symmetric: relative asymmetry {asymmetry:.3e}")

    lam, u = linalg.eigh(symmetrize(s.real))
    if linalg.det(u) < 0:
        u[:, 0] = -u[:, 0]
    if lam[0] <= 0.0:
        violations.append(f"Re S is not positive definite: smallest eigenvalue {lam[0]:.3e}")

    a = u.T @ symmetrize(s.imag) @ u
    k = (a / lam[np.newaxis, :]).astype(np.complex128)
    k_max = float(np.max(np.abs(k)))

    rebuilt = u @ (np.eye(n) + 1j * k) @ np.diag(lam) @ u.T
    mismatch = norm(rebuilt - s) / norm(s)
    if mismatch > STRUCTURE_RTOL:
        violations.append(f"S != U(I+iK)Lambda U^T: relative mismatch {mismatch:.3e}")

    aperture = 2 * n * delta
    cone_margin = symmetric_cone_margin(s, aperture)
    if cone_margin <= 0.0:
        violations.append(f"S is not in M+ with aperture 2n*delta={aperture:.4g}")
    if k_max > 2 * delta:
        violations.append(f"max |K_ij| = {k_max:.4g} exceeds 2*delta = {2 * delta:.4g}")

    return replace(
        report,
        U=u,
        Lambda=np.diag(lam),
        K=k,
        k_max=k_max,
        cone_margin=cone_margin,
        violations=violations,
    )


def square_not_psd_family(delta: float, m: float | None = None) -> ComplexArray:
    """B in M+ whose square has a real part that is not positive semidefinite.

    Re B = diag(1, M), Im B = antidiag(a, a), a = 0.9 delta sqrt(M).
    Then Re(B^2) = diag(1 - a^2, M^2 - a^2), which is indefinite once
    M > 1 / (0.81 delta^2). The default M = 1.5 / delta^2 gives M = 150
    at delta = 0.1.
    """
    if m is None:
        m = 1.5 / (delta * delta)
    a = 0.9 * delta * math.sqrt(m)
    return np.array([[1.0, 1j * a], [1j * a, m]], dtype=np.complex128)
