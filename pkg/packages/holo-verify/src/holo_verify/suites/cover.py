"""Covering spaces: winding numbers, the universal cover of SL(2, R), fiber lifts and integer lattices."""

from __future__ import annotations

import math

import numpy as np
import sympy
from scipy import linalg

from holo_core.covering import (
    PREIMAGE_SEPARATION,
    CirclePath,
    CoverElement,
    chi,
    cover_multiply,
    determinantal_divisors,
    extend_lattice_basis,
    fiber_lift,
    is_kernel_element,
    lift_path,
    preimages,
    pullback_member,
    random_cover_element,
    refine_loop,
    rotation_loop,
    smith_normal_form,
    split_abelian,
    winding_number,
)
from holo_core.errors import TorsionObstructionError
from holo_core.matrices import rotation
from holo_core.rng import substream
from holo_verify.models import ClaimResult, RunConfig
from holo_verify.sampling import integer_matrix, unimodular_matrix
from holo_verify.suites._common import TrialOutcome, check_claim, single_check

LIFT_TOL = 1e-9
WINDING_LEVELS = (-2, -1, 0, 1, 2)
LOOP_SAMPLES = 100
REFINEMENT_LEVELS = 3
CONJUGATOR = np.diag([2.0, 0.5])
MAX_SNF_SIZE = 5
SNF_TRIALS = 200


# ---------------------------------------------------------------------------
# Winding numbers
# ---------------------------------------------------------------------------


def _winding() -> ClaimResult:
    out = TrialOutcome()
    for k in WINDING_LEVELS:
        got = winding_number(rotation_loop(k, LOOP_SAMPLES))
        out.require(got == k, f"rotation loop of degree {k} has winding {got}")
    return single_check("cover.winding", out, parameters={"degrees": list(WINDING_LEVELS)})


def _refinement() -> ClaimResult:
    """Winding is stable under midpoint refinement and denser sampling of the same loop."""
    inverse = linalg.inv(CONJUGATOR)
    out = TrialOutcome()

    def conjugated(samples: int) -> list[np.ndarray]:
        return [CONJUGATOR @ r @ inverse for r in rotation_loop(1, samples)]

    loop = conjugated(LOOP_SAMPLES)
    windings = [winding_number(loop)]
    for _ in range(REFINEMENT_LEVELS):
        loop = refine_loop(loop)
        windings.append(winding_number(loop))
    windings.append(winding_number(conjugated(10 * LOOP_SAMPLES)))
    out.require(all(w == 1 for w in windings), f"conjugated loop windings {windings}")

    x = np.array([[1.0, 0.0], [0.0, -1.0]])
    contractible = [linalg.expm(t * (1 - t) * x) for t in np.linspace(0.0, 1.0, LOOP_SAMPLES, endpoint=False)]
    got = winding_number(contractible)
    out.require(got == 0, f"contractible loop has winding {got}")
    return single_check("cover.refinement", out, parameters={"levels": REFINEMENT_LEVELS})


def _torus_lift(config: RunConfig, n: int) -> ClaimResult:
    """A loop on T^n with winding vector w lifts to a path ending 2 pi w from its start."""

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        w = rng.integers(-3, 4, size=n)
        t = np.linspace(0.0, 1.0, 400)[:, np.newaxis]
        wobble = 0.3 * np.sin(2 * math.pi * t * rng.integers(1, 4, size=n))
        angles = 2 * math.pi * w * t + wobble + rng.uniform(-math.pi, math.pi, n)
        start = angles[0] + PREIMAGE_SEPARATION * rng.integers(-2, 3, size=n)
        lifted = lift_path(CirclePath.from_points(chi(angles)), start)
        out = TrialOutcome()
        out.require(np.allclose(chi(lifted), chi(angles), atol=LIFT_TOL), "lift does not project onto the path")
        out.require(bool(np.all(np.abs(np.diff(lifted, axis=0)) < math.pi)), "lift jumps by pi or more")
        gap = float(np.max(np.abs(lifted[-1] - lifted[0] - 2 * math.pi * w)))
        out.require(gap <= LIFT_TOL, f"lift endpoint misses 2 pi w by {gap:.3e}")
        return out

    return check_claim("cover.torus-lift", config, trial, parameters={"n": n})


# ---------------------------------------------------------------------------
# Universal cover of SL(2, R)
# ---------------------------------------------------------------------------


def _deck_element() -> ClaimResult:
    """(R(pi), pi)^2 = (I, 2 pi), and products of kernel elements stay in the kernel."""
    out = TrialOutcome()
    half = CoverElement(g=rotation(math.pi), x=math.pi)
    square = cover_multiply(half, half)
    out.require(
        np.allclose(square.g, np.eye(2), atol=LIFT_TOL) and abs(square.x - 2 * math.pi) <= LIFT_TOL,
        f"(R(pi), pi)^2 = (g, {square.x!r})",
    )
    identity = CoverElement.identity()
    trivial = cover_multiply(identity, identity)
    out.require(is_kernel_element(trivial) and abs(trivial.x) <= LIFT_TOL, "identity squared is not the identity")
    for k, m in ((1, 1), (2, -3), (-1, -1)):
        product = cover_multiply(identity.deck_shift(k), identity.deck_shift(m))
        out.require(is_kernel_element(product), f"(I, 2pi*{k})(I, 2pi*{m}) left the kernel")
        out.require(abs(product.x - PREIMAGE_SEPARATION * (k + m)) <= LIFT_TOL, "kernel is not additive")
    out.measures["x_of_square"] = square.x
    return single_check("cover.deck-element", out)


def _associativity(config: RunConfig) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        a, b, c = (random_cover_element(rng) for _ in range(3))
        left = cover_multiply(cover_multiply(a, b), c)
        right = cover_multiply(a, cover_multiply(b, c))
        gap = abs(left.x - right.x)
        out = TrialOutcome(matrices={"a": a.g, "b": b.g, "c": c.g})
        out.require(gap <= LIFT_TOL, f"((ab)c).x - (a(bc)).x = {gap:.3e}")
        out.require(np.allclose(left.g, right.g, atol=1e-10), "matrix parts differ")
        out.measures["gap"] = gap
        return out

    return check_claim("cover.associativity", config, trial)


def _deck_centrality(config: RunConfig) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        a, b = random_cover_element(rng), random_cover_element(rng)
        base = cover_multiply(a, b).x
        left = cover_multiply(a.deck_shift(), b).x - base
        right = cover_multiply(a, b.deck_shift()).x - base
        gap = max(abs(left - PREIMAGE_SEPARATION), abs(right - PREIMAGE_SEPARATION))
        out = TrialOutcome(matrices={"a": a.g, "b": b.g})
        out.require(gap <= LIFT_TOL, f"deck shift moved the product by {left:.12g} / {right:.12g}")
        out.measures["gap"] = gap
        return out

    return check_claim("cover.deck-centrality", config, trial)


def _fiber_lift(config: RunConfig) -> ClaimResult:
    """Every h on the circle has lifts x, x + 2 pi k; nothing in between lies over h."""

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        h = complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
        x = fiber_lift(h)
        out = TrialOutcome()
        out.require(pullback_member(h, x), "fiber_lift is not over h")
        out.require(pullback_member(h, x + PREIMAGE_SEPARATION), "deck-shifted lift is not over h")
        out.require(not pullback_member(h, x + math.pi), "x + pi lies over h")
        gaps = np.diff(preimages(h))
        out.require(np.allclose(gaps, PREIMAGE_SEPARATION), "preimages are not 2 pi apart")
        return out

    return check_claim("cover.fiber-lift", config, trial)


# ---------------------------------------------------------------------------
# Integer lattices
# ---------------------------------------------------------------------------


def _snf_oracle(config: RunConfig) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        rows, cols = (int(v) for v in rng.integers(1, MAX_SNF_SIZE + 1, size=2))
        m = integer_matrix(rng, rows, cols)
        snf = smith_normal_form(m)
        out = TrialOutcome()
        u, v, d = sympy.Matrix(snf.U), sympy.Matrix(snf.V), sympy.Matrix(snf.D)
        out.require(u * sympy.Matrix(m) * v == d, "U M V != D")
        out.require(abs(u.det()) == 1 and abs(v.det()) == 1, "U or V is not unimodular")
        out.require(u * sympy.Matrix(snf.U_inv) == sympy.eye(rows), "U_inv is not the inverse of U")
        off_diagonal = any(d[i, j] for i in range(rows) for j in range(cols) if i != j)
        out.require(not off_diagonal, "D is not diagonal")
        invariants = snf.invariants
        nonzero = [x for x in invariants if x]
        out.require(all(x >= 0 for x in invariants), "negative invariant factor")
        out.require(invariants[:len(nonzero)] == nonzero, "zero invariant before a nonzero one")
        out.require(all(b % a == 0 for a, b in zip(nonzero, nonzero[1:])), f"divisibility chain fails: {nonzero}")
        oracle = determinantal_divisors(m)
        out.require(nonzero == oracle, f"invariants {nonzero} differ from determinantal divisors {oracle}")
        if not out.ok:
            out.matrices["M"] = np.array(m, dtype=np.float64)
        return out

    return check_claim("snf.oracle", config, trial, trials=SNF_TRIALS, parameters={"max_size": MAX_SNF_SIZE})


def _lattice_extension(config: RunConfig) -> ClaimResult:
    """Torsion-free quotients extend to a basis spanning C first; torsion is reported."""

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        k = int(rng.integers(2, MAX_SNF_SIZE + 1))
        r = int(rng.integers(1, k + 1))
        w = sympy.Matrix(unimodular_matrix(rng, k))[:, :r]
        extra = sympy.Matrix(integer_matrix(rng, r, int(rng.integers(0, 3)), bound=3))
        generators = w.row_join(w * extra) if extra.cols else w
        out = TrialOutcome()

        basis = sympy.Matrix(extend_lattice_basis(generators.tolist()))
        out.require(abs(basis.det()) == 1, "extended basis is not unimodular")
        coords = basis.inv() * generators
        out.require(coords[r:, :].is_zero_matrix, "C leaves the span of the first r columns")
        head = smith_normal_form(coords[:r, :].tolist()).invariants
        out.require(sorted(x for x in head if x) == [1] * r, "first r columns do not generate C")

        torsion = (w * sympy.diag(2, *([1] * (r - 1)))).tolist()
        try:
            extend_lattice_basis(torsion)
            out.violations.append("quotient with torsion Z/2 was accepted")
        except TorsionObstructionError as exc:
            out.require(exc.invariants == [2], f"torsion reported as {exc.invariants}")

        relations = sympy.diag(2, 0).tolist()
        out.require(split_abelian(relations) == ([2], 1), "Z/2 + Z split incorrectly")
        return out

    return check_claim("snf.lattice-extension", config, trial)


def run(config: RunConfig) -> list[ClaimResult]:
    n = max(spec.n for spec in config.group_specs())
    return [
        _winding(),
        _refinement(),
        _torus_lift(config, n),
        _deck_element(),
        _associativity(config),
        _deck_centrality(config),
        _fiber_lift(config),
        _snf_oracle(config),
        _lattice_extension(config),
    ]
