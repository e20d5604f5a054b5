"""Real and complex polar decompositions and proximity of psi(h) to SO(n, R).

For h in GL(n, C) with hh^T spectrum in Re > 0:

    phi(h) = S = sqrt(h h^T)   (principal root, complex symmetric)
    psi(h) = Q = S^-1 h = S h^{T-1}   (complex orthogonal)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
from scipy import linalg

from holo_core.errors import DegenerateInputError, DomainError, InvalidDataError
from holo_core.matrices import (
    ComplexArray,
    MatrixNorm,
    RealArray,
    as_real_square,
    as_square,
    norm,
    orthogonality_residual,
    symmetrize,
)
from holo_core.sqrtm import principal_sqrt

if TYPE_CHECKING:
    from holo_core.liegroups import GroupSpec

logger = logging.getLogger(__name__)

ORTHOGONALITY_PRECONDITION = 1e-8
HOLOMORPHY_STEP = 1e-5


@dataclass(frozen=True)
class RealPolarFactors:
    """g = P U with P symmetric positive definite and U in SO(n, R)."""

    P: RealArray
    U: RealArray


@dataclass(frozen=True)
class PolarFactors:
    """h = S Q with S complex symmetric (phi(h)) and Q complex orthogonal (psi(h))."""

    S: ComplexArray
    Q: ComplexArray
    residual_sq: float
    residual_orth: float


@dataclass(frozen=True)
class OrthogonalSplit:
    """Real/imaginary norms of a complex orthogonal Q = Q0 + i Q1."""

    q0_norm: float
    q1_norm: float
    identity_residual: float  # | |Q0|^2 - |Q1|^2 - 1 |

    @property
    def aperture(self) -> float:
        """Measured delta' = |Q1| / |Q0|, the smallest aperture with Q in M."""
        return self.q1_norm / self.q0_norm

    def within_norm_bounds(self, slack: float = 1e-9) -> bool:
        """|Q0| <= (1 - d^2)^-1/2 and |Q1| <= d (1 - d^2)^-1/2 for d = aperture."""
        d = self.aperture
        if d >= 1.0:
            return False
        bound = 1.0 / math.sqrt(1.0 - d * d)
        return self.q0_norm <= bound * (1 + slack) and self.q1_norm <= d * bound * (1 + slack)


@dataclass(frozen=True)
class OrthDistanceStats:
    max_dist: float
    mean_dist: float
    C_hat: float
    trials: int
    delta: float


def real_polar(g: npt.ArrayLike) -> RealPolarFactors:
    """Polar decomposition of a real matrix with positive determinant, via SVD.

    Raises:
        DomainError: if g is singular or reverses orientation.
    """
    m = as_real_square(g)
    det = float(linalg.det(m))
    if not det > 0.0:
        raise DomainError(f"Real polar decomposition needs det g > 0, got {det:.6g}", determinant=det)
    w, sigma, vh = linalg.svd(m)
    p = symmetrize(w @ np.diag(sigma) @ w.T)
    u = w @ vh
    return RealPolarFactors(P=p, U=u)


def complex_polar(h: npt.ArrayLike) -> PolarFactors:
    """Complex polar decomposition h = S Q.

    Q averages the two expressions S^-1 h and S h^{T-1}, which is one
    Newton step towards the orthogonal factor.

    Raises:
        DomainError: naming the offending eigenvalue of h h^T.
    """
    m = as_square(h)
    b = symmetrize(m @ m.T)
    s = principal_sqrt(b).S
    q_left = linalg.solve(s, m)
    q_right = s @ linalg.inv(m.T)
    q = (q_left + q_right) / 2

    residual_sq = norm(s @ q - m) / norm(m)
    residual_orth = orthogonality_residual(q)
    logger.debug("Complex polar: residual_sq=%.3e residual_orth=%.3e", residual_sq, residual_orth)
    return PolarFactors(S=s, Q=q, residual_sq=residual_sq, residual_orth=residual_orth)


def phi(h: npt.ArrayLike) -> ComplexArray:
    """Complex-symmetric polar factor S of h."""
    return complex_polar(h).S


def psi(h: npt.ArrayLike) -> ComplexArray:
    """Complex-orthogonal polar factor Q of h."""
    return complex_polar(h).Q


def orthogonal_split(q: npt.ArrayLike) -> OrthogonalSplit:
    """Operator norms of Re Q and Im Q and the residual of |Q0|^2 = |Q1|^2 + 1."""
    m = as_square(q)
    q0 = norm(m.real)
    q1 = norm(m.imag)
    return OrthogonalSplit(q0_norm=q0, q1_norm=q1, identity_residual=abs(q0 * q0 - q1 * q1 - 1.0))


def nearest_special_orthogonal(
    q: npt.ArrayLike, kind: MatrixNorm = MatrixNorm.OPERATOR_2,
) -> tuple[RealArray, float]:
    """U = S^-1 Q0 with S = sqrt(Q0 Q0^T), and dist = |Q - U|.

    Raises:
        InvalidDataError: if Q is not complex orthogonal within 1e-8.
        DegenerateInputError: if Re Q is singular or orientation-reversing.
    """
    m = as_square(q)
    residual = orthogonality_residual(m)
    if residual > ORTHOGONALITY_PRECONDITION:
        raise InvalidDataError(f"Q is not complex orthogonal: |QQ^T - I| = {residual:.3e}")
    q0 = np.ascontiguousarray(m.real)
    if not linalg.det(q0) > 0.0:
        raise DegenerateInputError("Re Q is singular or has negative determinant")
    u = real_polar(q0).U
    return u, norm(m - u, kind)


def image_orth_distance(
    spec: GroupSpec,
    delta: float,
    trials: int,
    seed: int,
    radius: float = 0.5,
) -> OrthDistanceStats:
    """Sample h in E_delta and measure the distance from psi(h) to SO(n, R)."""
    from holo_core.liegroups import sample_tube
    from holo_core.rng import substream

    if not 0.0 < delta <= 0.05:
        raise InvalidDataError(f"delta must lie in (0, 0.05], got {delta}")
    if trials < 1:
        raise InvalidDataError(f"trials must be at least 1, got {trials}")

    distances = np.empty(trials)
    for trial in range(trials):
        tube = sample_tube(spec, delta, radius, substream(seed, trial))
        _, distances[trial] = nearest_special_orthogonal(psi(tube.h))

    max_dist = float(distances.max())
    return OrthDistanceStats(
        max_dist=max_dist,
        mean_dist=float(distances.mean()),
        C_hat=max_dist / delta,
        trials=trials,
        delta=delta,
    )


def cauchy_riemann_residual(
    h: npt.ArrayLike, direction: npt.ArrayLike, eps: float = HOLOMORPHY_STEP,
) -> float:
    """Extrapolated Cauchy-Riemann defect of psi at h along a real direction E.

    With d(t) = (psi(h + i t E) - psi(h)) - i (psi(h + t E) - psi(h)), a
    holomorphic psi has d(t) = c t^2 + O(t^3). The combination
    4 d(eps / 2) - d(eps) cancels c and is O(eps^3); a non-holomorphic psi
    keeps its O(eps) term.
    """
    m = as_square(h)
    e = as_real_square(direction)
    base = psi(m)

    def defect(t: float) -> ComplexArray:
        return (psi(m + 1j * t * e) - base) - 1j * (psi(m + t * e) - base)

    return norm(4 * defect(eps / 2) - defect(eps))
