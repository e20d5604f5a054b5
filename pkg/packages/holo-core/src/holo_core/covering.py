"""Covering-space machinery: circle lifts, the universal cover of SL(2, R), and integer lattices.

The projection is chi: R -> T, chi(x) = e^{ix}, applied coordinatewise on
R^n -> T^n. Distinct chi-preimages of a point are 2 pi apart.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
import numpy.typing as npt
import sympy
from scipy import linalg

from holo_core.errors import InvalidDataError, InvalidElementError, ResolutionError, TorsionObstructionError
from holo_core.matrices import ComplexArray, RealArray, as_complex, as_real_square, rotation
from holo_core.polar import real_polar
from holo_core.rng import SeedLike, as_generator

logger = logging.getLogger(__name__)

PREIMAGE_SEPARATION = 2 * math.pi
MAX_STEP_ANGLE = math.pi / 2
COMPATIBILITY_TOL = 1e-9
ELEMENT_TOL = 1e-6
INITIAL_STEPS = 256
MAX_STEPS = 1 << 16
LIFT_AGREEMENT = 1e-9

IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# Circle paths and lifting
# ---------------------------------------------------------------------------


def chi(x: npt.ArrayLike) -> ComplexArray:
    """Covering map R -> S^1, x -> e^{ix}, applied elementwise."""
    return np.exp(1j * np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class CirclePath:
    """Samples on T^n, shape (K, n)."""

    samples: ComplexArray
    closed: bool = False

    @classmethod
    def from_points(cls, points: npt.ArrayLike, closed: bool = False) -> CirclePath:
        arr = as_complex(points)
        if arr.ndim == 1:
            arr = arr[:, np.newaxis]
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise InvalidDataError(f"Expected a (K, n) array of circle points, got shape {arr.shape}")
        if not np.allclose(np.abs(arr), 1.0, atol=COMPATIBILITY_TOL):
            raise InvalidDataError("Circle path samples must have unit modulus")
        return cls(samples=arr, closed=closed)

    @property
    def dimension(self) -> int:
        return self.samples.shape[1]


def _steps(samples: ComplexArray) -> RealArray:
    """Signed angular increments between consecutive samples, per coordinate."""
    return np.angle(samples[1:] / samples[:-1])


def _check_resolution(steps: RealArray) -> None:
    if steps.size == 0:
        return
    jumps = np.abs(steps).max(axis=1)
    worst = int(np.argmax(jumps))
    if jumps[worst] >= MAX_STEP_ANGLE:
        raise ResolutionError(
            f"Angular jump {jumps[worst]:.4f} >= pi/2 between samples {worst} and {worst + 1}",
            step=worst,
            jump=float(jumps[worst]),
        )


def lift_path(path: CirclePath, start: npt.ArrayLike) -> RealArray:
    """Continuous lift of *path* through chi^n starting at *start*.

    Raises:
        InvalidDataError: if chi^n(start) is not the first sample.
        ResolutionError: if two consecutive samples are pi/2 or more apart.
    """
    origin = np.atleast_1d(np.asarray(start, dtype=np.float64))
    if origin.shape != (path.dimension,):
        raise InvalidDataError(f"start must have {path.dimension} coordinates")
    if np.max(np.abs(chi(origin) - path.samples[0])) > COMPATIBILITY_TOL:
        raise InvalidDataError("chi(start) does not match the first sample of the path")

    steps = _steps(path.samples)
    _check_resolution(steps)
    lifted = np.unwrap(np.angle(path.samples), axis=0)
    return lifted - lifted[0] + origin


def pullback_member(z_image: npt.ArrayLike, w: npt.ArrayLike, tol: float = COMPATIBILITY_TOL) -> bool:
    """Whether (z, w) lies on the fiber product {chi^n(w) = z}."""
    z = np.atleast_1d(as_complex(z_image))
    x = np.atleast_1d(np.asarray(w, dtype=np.float64))
    return bool(np.all(np.abs(chi(x) - z) <= tol))


def preimages(z: complex, count: int = 3) -> RealArray:
    """The chi-preimages of z nearest zero: arg z + 2 pi k for |k| <= count."""
    base = float(np.angle(z))
    return base + PREIMAGE_SEPARATION * np.arange(-count, count + 1)


def fiber_lift(h: complex) -> float:
    """A point x with chi(x) = h, realizing (h, x) in T x_T R for psi = id."""
    return float(np.angle(h))


# ---------------------------------------------------------------------------
# Winding numbers through psi
# ---------------------------------------------------------------------------


def principal_angle(u: npt.ArrayLike) -> float:
    """theta in (-pi, pi] with u = R(theta) for u in SO(2)."""
    m = np.asarray(u, dtype=np.float64)
    theta = math.atan2(m[1, 0], m[0, 0])
    return math.pi if theta <= -math.pi else theta


def psi_phase(g: npt.ArrayLike) -> complex:
    """e^{i theta} where R(theta) is the orthogonal polar factor of g in SL(2, R)."""
    u = real_polar(g).U
    return complex(u[0, 0], u[1, 0])


def winding_number(loop: Sequence[npt.ArrayLike], closed: bool = True) -> int:
    """Degree of t -> phase(psi(g(t))) along a loop in SL(2, R).

    For a closed loop the first sample is appended at the end.
    """
    phases = np.array([psi_phase(g) for g in loop], dtype=np.complex128)
    if closed:
        phases = np.append(phases, phases[0])
    path = CirclePath.from_points(phases)
    lifted = lift_path(path, [float(np.angle(phases[0]))])
    total = float(lifted[-1, 0] - lifted[0, 0])
    return int(round(total / PREIMAGE_SEPARATION))


def rotation_loop(k: int, samples: int = 100) -> list[RealArray]:
    """t -> R(2 pi k t), t in [0, 1), as an open sample list of a closed loop."""
    return [rotation(2 * math.pi * k * t) for t in np.arange(samples) / samples]


def refine_loop(loop: Sequence[npt.ArrayLike], closed: bool = True) -> list[RealArray]:
    """Insert polar-interpolated midpoints between consecutive samples.

    The midpoint of g and g' is g exp(log(g^-1 g') / 2) using the principal
    logarithm, which stays in SL(2, R) for nearby samples.
    """
    points = [np.asarray(g, dtype=np.float64) for g in loop]
    pairs = list(zip(points, points[1:] + (points[:1] if closed else [])))
    refined: list[RealArray] = []
    for g, g_next in pairs:
        refined.append(g)
        step = np.real(linalg.logm(linalg.solve(g, g_next)))
        refined.append(g @ linalg.expm(step / 2))
    if not closed:
        refined.append(points[-1])
    return refined


# ---------------------------------------------------------------------------
# Universal cover of SL(2, R)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverElement:
    """(g, x) with g in SL(2, R) and e^{ix} = phase(psi(g))."""

    g: RealArray
    x: float

    def __post_init__(self) -> None:
        m = as_real_square(self.g)
        if m.shape != (2, 2) or abs(linalg.det(m) - 1.0) > 1e-9:
            raise InvalidElementError("Cover elements need g in SL(2, R)")
        mismatch = abs(complex(chi(self.x)) - psi_phase(m))
        if mismatch > COMPATIBILITY_TOL:
            raise InvalidElementError(
                f"e^(ix) does not match the phase of psi(g): mismatch {mismatch:.3e}",
                mismatch=mismatch,
            )
        object.__setattr__(self, "g", m)

    @classmethod
    def identity(cls) -> CoverElement:
        return cls(g=np.eye(2), x=0.0)

    @classmethod
    def canonical(cls, g: npt.ArrayLike, sheet: int = 0) -> CoverElement:
        """The element over g reached by the canonical path, shifted *sheet* times by 2 pi."""
        return cls(g=np.asarray(g, dtype=np.float64), x=canonical_angle(g) + sheet * PREIMAGE_SEPARATION)

    def deck_shift(self, k: int = 1) -> CoverElement:
        return CoverElement(g=self.g, x=self.x + k * PREIMAGE_SEPARATION)


def canonical_angle(g: npt.ArrayLike) -> float:
    """Principal angle of the orthogonal polar factor of g."""
    return principal_angle(real_polar(g).U)


def canonical_path(g: npt.ArrayLike, t: float) -> RealArray:
    """gamma_g(t) = exp(t log P) R(t theta), where g = P R(theta).

    psi(gamma_g(t)) = R(t theta), so the psi-lift of gamma_g from 0 ends at theta.
    """
    factors = real_polar(g)
    lam, v = linalg.eigh(factors.P)
    p_t = v @ np.diag(lam**t) @ v.T
    return p_t @ rotation(t * principal_angle(factors.U))


def _lifted_phase_change(a: RealArray, b: RealArray, steps: int) -> float:
    """Lifted change of phase(psi(a gamma_b(t))) over t in [0, 1]."""
    phases = np.array(
        [psi_phase(a @ canonical_path(b, t)) for t in np.linspace(0.0, 1.0, steps + 1)],
        dtype=np.complex128,
    )
    lifted = lift_path(CirclePath.from_points(phases), [float(np.angle(phases[0]))])
    return float(lifted[-1, 0] - lifted[0, 0])


def cover_multiply(a: CoverElement, b: CoverElement) -> CoverElement:
    """Product in the universal cover of SL(2, R).

    The path for b is gamma_b followed by the sheet loops b R(2 pi s);
    left-translating by a.g and lifting the psi-phase from a.x gives the
    product's lift coordinate.

    Raises:
        InvalidElementError: if b.x is not theta_b + 2 pi k within 1e-6.
    """
    theta_b = canonical_angle(b.g)
    sheets = (b.x - theta_b) / PREIMAGE_SEPARATION
    if abs(sheets - round(sheets)) > ELEMENT_TOL:
        raise InvalidElementError(
            f"Lift coordinate {b.x} is inconsistent with the canonical path of g",
            sheets=sheets,
        )

    steps = INITIAL_STEPS
    previous: float | None = None
    stable = False
    while steps <= MAX_STEPS:
        try:
            current = _lifted_phase_change(a.g, b.g, steps)
        except ResolutionError:
            steps *= 2
            continue
        stable = previous is not None and abs(current - previous) <= LIFT_AGREEMENT
        previous = current
        if stable:
            break
        steps *= 2

    if previous is None:
        raise InvalidElementError("Canonical path could not be lifted at the finest resolution")
    if not stable:
        logger.warning("Lift of cover product did not stabilize; using %d steps", steps // 2)

    x = a.x + previous + round(sheets) * PREIMAGE_SEPARATION
    return CoverElement(g=a.g @ b.g, x=x)


def random_cover_element(seed: SeedLike, scale: float = 1.0, max_sheet: int = 1) -> CoverElement:
    """exp of a random sl(2, R) element, placed on a random sheet in [-max_sheet, max_sheet]."""
    rng = as_generator(seed)
    a, b, c = scale * rng.standard_normal(3)
    g = linalg.expm(np.array([[a, b], [c, -a]]))
    g = g / math.sqrt(linalg.det(g))
    return CoverElement.canonical(g, sheet=int(rng.integers(-max_sheet, max_sheet + 1)))


def is_kernel_element(e: CoverElement, tol: float = COMPATIBILITY_TOL) -> bool:
    """Whether e = (I, 2 pi k) lies in the kernel of the projection to SL(2, R)."""
    sheets = e.x / PREIMAGE_SEPARATION
    return bool(np.allclose(e.g, np.eye(2), atol=tol)) and abs(sheets - round(sheets)) <= tol


# ---------------------------------------------------------------------------
# Integer lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """U M V = D with U, V unimodular and d1 | d2 | ... on the diagonal of D."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    U_inv: IntMatrix

    @property
    def invariants(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def as_int_matrix(m: Sequence[Sequence[int]] | npt.ArrayLike) -> IntMatrix:
    rows = [list(r) for r in (m.tolist() if isinstance(m, np.ndarray) else m)]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise InvalidDataError("Integer matrix rows have different lengths")
    out: IntMatrix = []
    for r in rows:
        row: list[int] = []
        for v in r:
            if isinstance(v, bool) or int(v) != v:
                raise InvalidDataError(f"Non-integer entry {v!r}")
            row.append(int(v))
        out.append(row)
    return out


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


class _Reducer:
    """Unimodular row/column operations on M, tracked in U, U^-1 and V."""

    def __init__(self, m: IntMatrix) -> None:
        self.m = [row[:] for row in m]
        self.rows = len(m)
        self.cols = len(m[0]) if m else 0
        self.u = _identity(self.rows)
        self.u_inv = _identity(self.rows)
        self.v = _identity(self.cols)

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.m, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for row in self.u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.m, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]."""
        if q == 0:
            return
        for mat in (self.m, self.u):
            mat[target] = [t + q * s for t, s in zip(mat[target], mat[source])]
        for row in self.u_inv:
            row[source] -= q * row[target]

    def add_col(self, target: int, source: int, q: int) -> None:
        """col[target] += q * col[source]."""
        if q == 0:
            return
        for mat in (self.m, self.v):
            for row in mat:
                row[target] += q * row[source]

    def negate_row(self, i: int) -> None:
        for mat in (self.m, self.u):
            mat[i] = [-v for v in mat[i]]
        for row in self.u_inv:
            row[i] = -row[i]

    def pivot(self, t: int) -> tuple[int, int] | None:
        """Position of the smallest nonzero |entry| in the trailing block."""
        best: tuple[int, int] | None = None
        for i in range(t, self.rows):
            for j in range(t, self.cols):
                v = self.m[i][j]
                if v and (best is None or abs(v) < abs(self.m[best[0]][best[1]])):
                    best = (i, j)
        return best

    def clear(self, t: int) -> None:
        """Make position (t, t) the only nonzero entry of row t and column t."""
        while True:
            found = self.pivot(t)
            if found is None:
                return
            self.swap_rows(t, found[0])
            self.swap_cols(t, found[1])
            p = self.m[t][t]
            done = True
            for i in range(t + 1, self.rows):
                q = self.m[i][t] // p
                self.add_row(i, t, -q)
                done = done and self.m[i][t] == 0
            for j in range(t + 1, self.cols):
                q = self.m[t][j] // p
                self.add_col(j, t, -q)
                done = done and self.m[t][j] == 0
            if not done:
                continue
            # The pivot must divide the whole trailing block.
            offender = next(
                (
                    i
                    for i in range(t + 1, self.rows)
                    for j in range(t + 1, self.cols)
                    if self.m[i][j] % p
                ),
                None,
            )
            if offender is None:
                if p < 0:
                    self.negate_row(t)
                return
            self.add_row(t, offender, 1)


def smith_normal_form(m: Sequence[Sequence[int]] | npt.ArrayLike) -> SNFResult:
    """Smith normal form in exact (arbitrary precision) integer arithmetic.

    Each round pivots on the entry of smallest absolute value.
    """
    matrix = as_int_matrix(m)
    reducer = _Reducer(matrix)
    for t in range(min(reducer.rows, reducer.cols)):
        reducer.clear(t)
    return SNFResult(U=reducer.u, V=reducer.v, D=reducer.m, U_inv=reducer.u_inv)


def determinantal_divisors(m: Sequence[Sequence[int]] | npt.ArrayLike) -> list[int]:
    """d_i = gcd(i x i minors) / gcd((i-1) x (i-1) minors), computed with exact determinants.

    Stops at the rank; intended for matrices of size at most 5 x 5.
    """
    matrix = sympy.Matrix(as_int_matrix(m))
    rows, cols = matrix.shape
    previous = 1
    divisors: list[int] = []
    for size in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), size):
            for c in combinations(range(cols), size):
                g = math.gcd(g, int(matrix.extract(list(r), list(c)).det()))
        if g == 0:
            break
        divisors.append(g // previous)
        previous = g
    return divisors


def split_abelian(relations: Sequence[Sequence[int]] | npt.ArrayLike, k: int | None = None) -> tuple[list[int], int]:
    """Invariants of A = Z^k / image(relations), relation vectors as columns.

    Returns (torsion invariants d_i > 1, free rank).
    """
    matrix = as_int_matrix(relations)
    rank_k = len(matrix) if k is None else k
    if not matrix or not matrix[0]:
        return [], rank_k
    if len(matrix) != rank_k:
        raise InvalidDataError(f"Relations must have {rank_k} rows")
    invariants = smith_normal_form(matrix).invariants
    nonzero = [d for d in invariants if d]
    return [d for d in nonzero if d > 1], rank_k - len(nonzero)


def extend_lattice_basis(generators: Sequence[Sequence[int]] | npt.ArrayLike) -> IntMatrix:
    """Extend generators of C in Z^k (columns) to a basis of Z^k.

    The first r columns of the result generate C, where r is the rank of C;
    when the generators are independent they are returned unchanged as
    those columns.

    Raises:
        TorsionObstructionError: if Z^k / C has torsion.
    """
    matrix = as_int_matrix(generators)
    k = len(matrix)
    snf = smith_normal_form(matrix) if matrix and matrix[0] else None
    invariants = [d for d in (snf.invariants if snf else []) if d]
    torsion = [d for d in invariants if d > 1]
    if torsion:
        raise TorsionObstructionError(
            f"Quotient has torsion with invariant factors {torsion}", invariants=torsion,
        )
    if snf is None:
        return _identity(k)

    r = len(invariants)
    u_inv = snf.U_inv
    columns = [[u_inv[i][j] for i in range(k)] for j in range(k)]
    if r == len(matrix[0]):
        columns[:r] = [[matrix[i][j] for i in range(k)] for j in range(r)]
    return [[columns[j][i] for j in range(k)] for i in range(k)]
