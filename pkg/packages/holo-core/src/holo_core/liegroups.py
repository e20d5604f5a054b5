"""Classical linear groups, tube samples, and the Siegel-product action.

Groups are given by a real Lie algebra basis and defining equations:

    gl+:n    det g > 0
    sl:n     det g = 1
    so:n     g^T g = I, det g = 1
    so:p,q   g^T J g = J, det g = 1, J = diag(I_p, -I_q)
    sp:2m    g^T J g = J, J = [[0, I_m], [-I_m, 0]]

All five are self-adjoint in these standard forms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt
from scipy import linalg

from holo_core.errors import DomainError, InvalidDataError
from holo_core.matrices import (
    ComplexArray,
    RealArray,
    as_real_square,
    as_square,
    is_symmetric,
    min_sym_eigenvalue,
    norm,
    symmetrize,
)
from holo_core.polar import real_polar
from holo_core.rng import SeedLike, as_generator

logger = logging.getLogger(__name__)

DEFINING_TOLERANCE = 1e-10
GROUP_POLAR_TOLERANCE = 1e-9
RANK_RTOL = 1e-8
MAX_RESAMPLES = 10
GENERIC_IMAGINARY_SCALE = 0.1


class GroupFamily(str, Enum):
    GL_PLUS = "gl+"
    SL = "sl"
    SO = "so"
    SO_PQ = "so-pq"
    SP = "sp"


@dataclass(frozen=True)
class GroupSpec:
    """A classical linear group G in GL(n, R) with its Lie algebra basis."""

    family: GroupFamily
    n: int
    algebra_basis: tuple[RealArray, ...] = field(repr=False)
    form: RealArray | None = field(default=None, repr=False)
    signature: tuple[int, int] | None = None

    @property
    def dim(self) -> int:
        return len(self.algebra_basis)

    @property
    def name(self) -> str:
        if self.family is GroupFamily.SO_PQ and self.signature is not None:
            return f"so:{self.signature[0]},{self.signature[1]}"
        return f"{self.family.value}:{self.n}"


@dataclass(frozen=True)
class TubeSample:
    """h = g p with g in G and p in G^c, |p - I| < delta."""

    h: ComplexArray
    g: RealArray
    p: ComplexArray
    delta: float


@dataclass(frozen=True)
class SiegelPoint:
    """A point (z1, z2) of Z+ = Sigma+ x Sigma+."""

    z1: ComplexArray
    z2: ComplexArray

    def __post_init__(self) -> None:
        for label, z in (("z1", self.z1), ("z2", self.z2)):
            if not in_siegel_domain(z):
                raise DomainError(f"{label} is not symmetric with positive definite real part")


@dataclass(frozen=True)
class TangentRank:
    rank: int
    kernel_dim: int


@dataclass(frozen=True)
class GenericPoint:
    point: SiegelPoint
    attempts: int
    kernel_dim: int


@dataclass(frozen=True)
class GroupPolarFactors:
    """g = P K with P = G cap Sym+ and K = G cap O(n) when G is self-adjoint."""

    P: RealArray
    K: RealArray
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


def _unit(n: int, i: int, j: int) -> RealArray:
    e = np.zeros((n, n))
    e[i, j] = 1.0
    return e


def _antisymmetric_basis(n: int) -> list[RealArray]:
    return [_unit(n, i, j) - _unit(n, j, i) for i in range(n) for j in range(i + 1, n)]


def _symmetric_basis(n: int) -> list[RealArray]:
    return [
        _unit(n, i, i) if i == j else _unit(n, i, j) + _unit(n, j, i)
        for i in range(n)
        for j in range(i, n)
    ]


def indefinite_form(p: int, q: int) -> RealArray:
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def symplectic_form(m: int) -> RealArray:
    eye, zero = np.eye(m), np.zeros((m, m))
    return np.block([[zero, eye], [-eye, zero]])


def group_spec(
    family: GroupFamily | str, n: int, signature: tuple[int, int] | None = None,
) -> GroupSpec:
    """Build the spec of a classical group.

    For ``so-pq`` pass *signature* = (p, q) with p + q = n; for ``sp`` n
    must be even.
    """
    family = GroupFamily(family)
    if n < 1:
        raise InvalidDataError(f"Matrix size must be positive, got {n}")

    form: RealArray | None = None
    if family is GroupFamily.GL_PLUS:
        basis = [_unit(n, i, j) for i in range(n) for j in range(n)]
    elif family is GroupFamily.SL:
        basis = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
        basis += [_unit(n, i, i) - _unit(n, i + 1, i + 1) for i in range(n - 1)]
    elif family is GroupFamily.SO:
        basis = _antisymmetric_basis(n)
    elif family is GroupFamily.SO_PQ:
        if signature is None or sum(signature) != n or min(signature) < 0:
            raise InvalidDataError(f"so-pq needs a signature (p, q) with p + q = {n}")
        form = indefinite_form(*signature)
        basis = [form @ a for a in _antisymmetric_basis(n)]
    else:
        if n % 2:
            raise InvalidDataError(f"sp needs an even matrix size, got {n}")
        form = symplectic_form(n // 2)
        basis = [form @ s for s in _symmetric_basis(n)]

    return GroupSpec(
        family=family,
        n=n,
        algebra_basis=tuple(basis),
        form=form,
        signature=tuple(signature) if family is GroupFamily.SO_PQ else None,
    )


def parse_group(name: str) -> GroupSpec:
    """Parse the CLI notation gl+:n, sl:n, so:n, so:p,q, sp:2m."""
    try:
        family, _, size = name.strip().lower().partition(":")
        parts = [int(s) for s in size.split(",")]
    except ValueError as exc:
        raise InvalidDataError(f"Cannot parse group name {name!r}") from exc
    if family == "so" and len(parts) == 2:
        return group_spec(GroupFamily.SO_PQ, sum(parts), (parts[0], parts[1]))
    if len(parts) != 1 or family not in {"gl+", "sl", "so", "sp"}:
        raise InvalidDataError(
            f"Unknown group {name!r}; expected gl+:n, sl:n, so:n, so:p,q or sp:2m"
        )
    return group_spec(family, parts[0])


# ---------------------------------------------------------------------------
# Defining equations
# ---------------------------------------------------------------------------


def defining_residuals(spec: GroupSpec, g: npt.ArrayLike) -> dict[str, float]:
    """Residuals of the defining equations at g (0 means satisfied).

    Form residuals are relative to |g|^2 so they stay meaningful for
    large group elements.
    """
    m = as_real_square(g)
    det = float(linalg.det(m))
    residuals = {"orientation": 0.0 if det > 0.0 else 1.0}
    if spec.family in (GroupFamily.SL, GroupFamily.SO, GroupFamily.SO_PQ):
        residuals["determinant"] = abs(det - 1.0)
    if spec.family is GroupFamily.SO:
        residuals["orthogonality"] = norm(m.T @ m - np.eye(spec.n))
    if spec.form is not None:
        scale = max(norm(m) ** 2, 1.0)
        residuals["form"] = norm(m.T @ spec.form @ m - spec.form) / scale
    return residuals


def algebra_residual(spec: GroupSpec, x: npt.ArrayLike) -> float:
    """Residual of the linearized defining equations at X."""
    m = np.asarray(x)
    if spec.family is GroupFamily.GL_PLUS:
        return 0.0
    if spec.family is GroupFamily.SL:
        return abs(complex(np.trace(m)))
    if spec.family is GroupFamily.SO:
        return norm(m + m.T)
    return norm(m.T @ spec.form + spec.form @ m)


def satisfies(spec: GroupSpec, g: npt.ArrayLike, tol: float = DEFINING_TOLERANCE) -> bool:
    return all(r <= tol for r in defining_residuals(spec, g).values())


def is_transpose_closed(spec: GroupSpec, g: npt.ArrayLike, tol: float = GROUP_POLAR_TOLERANCE) -> bool:
    """Self-adjointness witness: g in G implies g^T in G."""
    return satisfies(spec, np.asarray(g).T, tol)


def excludes_minus_identity(spec: GroupSpec) -> bool:
    """Whether -I lies outside the identity component.

    For odd n, det(-I) = -1 < 0, so -I is outside every connected G in
    GL(n, R). For even n the answer is read off the defining residuals
    and is only as good as those (the identity component is not tested).
    """
    if spec.n % 2:
        return True
    return not satisfies(spec, -np.eye(spec.n))


def ball_dimension(spec: GroupSpec) -> int:
    """Complex dimension k of the ball factor: dim Z - dim G^c = n(n+1) - dim G."""
    return spec.n * (spec.n + 1) - spec.dim


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _combine(spec: GroupSpec, coefficients: npt.ArrayLike) -> npt.NDArray:
    return np.tensordot(np.asarray(coefficients), np.stack(spec.algebra_basis), axes=1)


def sample_group(spec: GroupSpec, radius: float, seed: SeedLike) -> RealArray:
    """g = exp(sum c_i X_i) with c_i uniform in [-radius, radius]."""
    if not 0.0 <= radius <= 2.0:
        raise InvalidDataError(f"radius must lie in [0, 2], got {radius}")
    rng = as_generator(seed)
    coefficients = rng.uniform(-radius, radius, spec.dim)
    return linalg.expm(_combine(spec, coefficients))


def sample_tube(spec: GroupSpec, delta: float, radius: float, seed: SeedLike) -> TubeSample:
    """Sample h = g p in E_delta.

    p = exp(zeta) for a random zeta in the complexified algebra with
    |zeta| <= 0.9 log(1 + delta), so |p - I| <= e^|zeta| - 1 < delta.
    """
    if not 0.0 <= delta < 1.0:
        raise InvalidDataError(f"delta must lie in [0, 1), got {delta}")
    rng = as_generator(seed)
    g = sample_group(spec, radius, rng)

    zeta = _combine(spec, rng.uniform(-1.0, 1.0, spec.dim) + 1j * rng.uniform(-1.0, 1.0, spec.dim))
    size = norm(zeta)
    scale = (1.0 - rng.random()) * 0.9 * np.log1p(delta)
    if size == 0.0 or scale == 0.0:
        p = np.eye(spec.n, dtype=np.complex128)
    else:
        p = linalg.expm(zeta * (scale / size))
    return TubeSample(h=g @ p, g=g, p=p, delta=delta)


# ---------------------------------------------------------------------------
# Group polar decomposition
# ---------------------------------------------------------------------------


def group_polar(spec: GroupSpec, g: npt.ArrayLike) -> GroupPolarFactors:
    """Split g = P K and check that both factors stay in G."""
    factors = real_polar(g)
    violations: list[str] = []
    for label, factor in (("P", factors.P), ("K", factors.U)):
        for equation, residual in defining_residuals(spec, factor).items():
            if residual > GROUP_POLAR_TOLERANCE:
                violations.append(
                    f"{label} factor violates {equation} of {spec.name}: residual {residual:.3e}"
                )
    if violations:
        logger.warning("Group polar closure failed for %s: %s", spec.name, "; ".join(violations))
    return GroupPolarFactors(P=factors.P, K=factors.U, violations=violations)


# ---------------------------------------------------------------------------
# Siegel-product action
# ---------------------------------------------------------------------------


def in_siegel_domain(z: npt.ArrayLike) -> bool:
    """z symmetric with Re z positive definite."""
    m = as_square(z)
    return is_symmetric(m, 1e-10) and min_sym_eigenvalue(m.real) > 0.0


def siegel_act(g: npt.ArrayLike, pt: SiegelPoint) -> SiegelPoint:
    """g . (z1, z2) = (g z1 g^T, g z2 g^T)."""
    m = as_real_square(g)
    if linalg.det(m) == 0.0:
        raise DomainError("Siegel action needs an invertible g")
    return SiegelPoint(z1=symmetrize(m @ pt.z1 @ m.T), z2=symmetrize(m @ pt.z2 @ m.T))


def _tangent_images(spec: GroupSpec, pt: SiegelPoint) -> ComplexArray:
    """Columns: Phi_*(I) X_i = (X z1 + z1 X^T, X z2 + z2 X^T), flattened."""
    columns = [
        np.concatenate([(x @ pt.z1 + pt.z1 @ x.T).ravel(), (x @ pt.z2 + pt.z2 @ x.T).ravel()])
        for x in spec.algebra_basis
    ]
    return np.stack(columns, axis=1)


def _real_rank(a: RealArray) -> int:
    if a.size == 0:
        return 0
    sigma = linalg.svdvals(a)
    if sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > RANK_RTOL * sigma[0]))


def tangent_map_rank(spec: GroupSpec, pt: SiegelPoint) -> TangentRank:
    """Real rank of xi -> (xi z1 + z1 xi^T, xi z2 + z2 xi^T) on L(G^c).

    xi = sum (a_i + i b_i) X_i, written in the real coordinates (a, b).
    The map is complex linear, so kernel_dim = dim G - rank / 2.
    """
    v = _tangent_images(spec, pt)
    real_form = np.block([[v.real, -v.imag], [v.imag, v.real]])
    rank = _real_rank(real_form)
    return TangentRank(rank=rank, kernel_dim=spec.dim - rank // 2)


def totally_real_defect(spec: GroupSpec, pt: SiegelPoint, strict: bool = True) -> int:
    """2 dim G - rank_R [T, iT] where T is spanned by the orbit tangent vectors.

    Zero exactly when the orbit through pt is a totally real immersed
    submanifold of dimension dim G. With *strict*, a non-injective tangent
    map raises instead of reporting.
    """
    if strict:
        kernel = tangent_map_rank(spec, pt).kernel_dim
        if kernel:
            raise DomainError(f"Tangent map has a {kernel}-dimensional kernel at this point")
    v = _tangent_images(spec, pt)
    stacked = np.block([[v.real, -v.imag], [v.imag, v.real]])
    return 2 * spec.dim - _real_rank(stacked)


def random_siegel_point(n: int, seed: SeedLike) -> SiegelPoint:
    """z1 = Q Q^T + i Y1, z2 = Q D Q^T + i Y2 with D distinct positive and Y small."""
    rng = as_generator(seed)
    q = rng.standard_normal((n, n))
    d = np.diag(np.sort(rng.uniform(0.5, 3.0, n)))
    y1 = symmetrize(rng.standard_normal((n, n))) * GENERIC_IMAGINARY_SCALE
    y2 = symmetrize(rng.standard_normal((n, n))) * GENERIC_IMAGINARY_SCALE
    return SiegelPoint(z1=symmetrize(q @ q.T) + 1j * y1, z2=symmetrize(q @ d @ q.T) + 1j * y2)


def generic_point(spec: GroupSpec, seed: SeedLike, max_resamples: int = MAX_RESAMPLES) -> GenericPoint:
    """Sample z0 in Z+ until the tangent map is injective, resampling at most *max_resamples* times."""
    rng = as_generator(seed)
    for attempt in range(1, max_resamples + 2):
        pt = random_siegel_point(spec.n, rng)
        kernel = tangent_map_rank(spec, pt).kernel_dim
        if kernel == 0:
            return GenericPoint(point=pt, attempts=attempt, kernel_dim=0)
        logger.debug("Resampling z0 for %s: kernel_dim=%d (attempt %d)", spec.name, kernel, attempt)
    logger.warning("No generic point for %s after %d resamples", spec.name, max_resamples)
    return GenericPoint(point=pt, attempts=max_resamples + 1, kernel_dim=kernel)
