"""Searches for witnesses to statements that fail in general.

Each claim is tried first on a targeted parametric family and then by
random search. A witness is accepted only after the membership
predicates confirm it, and :func:`replay_witness` re-derives the violated
margin from the stored matrices alone.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from holo_core.cones import matrix_cone_margin, symmetric_cone_margin, vector_cone_margin
from holo_core.errors import HoloError
from holo_core.liegroups import GroupFamily, GroupSpec, parse_group, sample_tube, satisfies
from holo_core.matrices import ComplexArray, min_sym_eigenvalue, norm
from holo_core.rng import substream
from holo_core.sqrtm import square_not_psd_family
from holo_verify.context import claim_context
from holo_verify.models import (
    ClaimResult,
    CounterexampleClaim,
    CounterexampleConfig,
    MatrixFile,
    Outcome,
    Report,
    Witness,
)
from holo_verify.sampling import matrix_in_cone, unit_vector

logger = logging.getLogger(__name__)

WIDENING = 10.0
STRETCH = 10.0
TILT = 0.9
SEARCH_RADIUS = 2.0
REPLAY_RTOL = 1e-12


@dataclass
class Candidate:
    delta: float
    strategy: str
    matrices: dict[str, ComplexArray] = field(default_factory=dict)
    vectors: dict[str, np.ndarray] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Violation oracles
# ---------------------------------------------------------------------------


def _tube_ok(delta: float, matrices: dict[str, ComplexArray], spec: GroupSpec | None) -> bool:
    g, p, h = matrices["g"], matrices["p"], matrices["h"]
    if np.any(np.asarray(g).imag != 0.0) or norm(p - np.eye(p.shape[0])) >= delta:
        return False
    if norm(g @ p - h) > REPLAY_RTOL * max(norm(h), 1.0):
        return False
    return spec is None or satisfies(spec, np.asarray(g).real, tol=1e-9)


def violation_margin(
    claim: CounterexampleClaim, delta: float, matrices: dict[str, ComplexArray],
    vectors: dict[str, np.ndarray], spec: GroupSpec | None = None,
) -> float | None:
    """The violated margin (<= 0) if the instance is a witness for *claim*, else None.

    Preconditions (h in E_delta, A and B in M_delta, B in M+) are part of
    the check; an instance violating them is not a witness.
    """
    wide = WIDENING * delta
    if claim in (CounterexampleClaim.HX_NOT_IN_V, CounterexampleClaim.HHTX_NOT_IN_V):
        if not _tube_ok(delta, matrices, spec):
            return None
        h, x = matrices["h"], vectors["x"]
        image = h @ x if claim is CounterexampleClaim.HX_NOT_IN_V else h @ h.T @ x
        margin = vector_cone_margin(image, wide)
    elif claim in (CounterexampleClaim.HTH_NOT_IN_MPLUS, CounterexampleClaim.HHT2_NOT_IN_MPLUS):
        if not _tube_ok(delta, matrices, spec):
            return None
        h = matrices["h"]
        b = h.T @ h if claim is CounterexampleClaim.HTH_NOT_IN_MPLUS else np.linalg.matrix_power(h @ h.T, 2)
        margin = symmetric_cone_margin((b + b.T) / 2, wide)
    elif claim is CounterexampleClaim.B2_NOT_PSD:
        b = matrices["B"]
        if symmetric_cone_margin(b, delta) <= 0.0:
            return None
        margin = min_sym_eigenvalue((b @ b).real)
        return margin if margin < 0.0 else None
    else:
        a, b = matrices["A"], matrices["B"]
        if matrix_cone_margin(a, delta) <= 0.0 or matrix_cone_margin(b, delta) <= 0.0:
            return None
        margin = matrix_cone_margin(a @ b, delta)
    return margin if margin <= 0.0 else None


# ---------------------------------------------------------------------------
# Targeted families
# ---------------------------------------------------------------------------


def _stretched_tube(n: int, delta: float) -> dict[str, ComplexArray]:
    """g = diag(L, 1, ..., 1, 1/L), p = exp(i theta (E_1n + E_n1)), |p - I| < delta.

    In the (e1, en) plane h en = (i L sin theta, cos theta / L), so the
    imaginary part of h en dominates once L^2 tan theta exceeds the aperture.
    """
    theta = TILT * delta
    g = np.eye(n)
    g[0, 0], g[-1, -1] = STRETCH, 1.0 / STRETCH
    s = np.zeros((n, n))
    s[0, -1] = s[-1, 0] = 1.0
    p = linalg.expm(1j * theta * s)
    return {"g": g.astype(np.complex128), "p": p, "h": g @ p}


def _targeted(claim: CounterexampleClaim, delta: float, spec: GroupSpec) -> Candidate | None:
    if claim is CounterexampleClaim.B2_NOT_PSD:
        return Candidate(delta, "family: Re B = diag(1, M), Im B = antidiag(a, a)", {"B": square_not_psd_family(delta)})
    if claim is CounterexampleClaim.PRODUCT_NOT_IN_M:
        d = TILT * delta
        a = np.array([[1.0, 1j * d], [0.0, 0.0]])
        b = np.array([[0.0, 0.0], [1j * d, 1.0]])
        return Candidate(delta, "family: rank-one factors with crossed imaginary parts", {"A": a, "B": b})
    if spec.family not in (GroupFamily.GL_PLUS, GroupFamily.SL) or spec.n < 2:
        return None
    matrices = _stretched_tube(spec.n, delta)
    x = np.zeros(spec.n)
    x[-1] = 1.0
    return Candidate(delta, "family: stretched diagonal g with tilted p", matrices, {"x": x})


# ---------------------------------------------------------------------------
# Random search
# ---------------------------------------------------------------------------


def _random(claim: CounterexampleClaim, delta: float, spec: GroupSpec, rng: np.random.Generator) -> Candidate:
    if claim is CounterexampleClaim.PRODUCT_NOT_IN_M:
        n = int(rng.integers(2, 5))
        return Candidate(delta, "random", {"A": matrix_in_cone(rng, n, delta), "B": matrix_in_cone(rng, n, delta)})
    if claim is CounterexampleClaim.B2_NOT_PSD:
        m = float(np.exp(rng.uniform(0.0, math.log(10.0 / (delta * delta)))))
        return Candidate(delta, "random", {"B": square_not_psd_family(delta, m)})
    tube = sample_tube(spec, delta, SEARCH_RADIUS, rng)
    matrices = {"g": tube.g.astype(np.complex128), "p": tube.p, "h": tube.h}
    return Candidate(delta, "random", matrices, {"x": unit_vector(rng, spec.n)})


def _candidates(
    claim: CounterexampleClaim, config: CounterexampleConfig, spec: GroupSpec,
) -> Iterator[Candidate]:
    for delta in config.deltas:
        targeted = _targeted(claim, delta, spec)
        if targeted is not None:
            yield targeted
    per_delta = max(1, config.budget // len(config.deltas))
    for attempt in range(per_delta):
        rng = substream(config.seed, attempt)
        for delta in config.deltas:
            yield _random(claim, delta, spec, rng)


def _to_witness(candidate: Candidate, margin: float, config: CounterexampleConfig, attempt: int) -> Witness:
    return Witness(
        seed=config.seed,
        trial=attempt,
        delta=candidate.delta,
        group=config.group,
        message=candidate.strategy,
        margin=margin,
        matrices={k: MatrixFile.from_array(v) for k, v in candidate.matrices.items()},
        vectors={k: [float(c) for c in v] for k, v in candidate.vectors.items()},
    )


def find_counterexample(config: CounterexampleConfig) -> Report:
    """Search for a witness within *budget* candidates; the report says which was found."""
    claim = config.claim
    spec = parse_group(config.group)
    start = time.perf_counter()
    witness: Witness | None = None
    attempts = 0

    with claim_context(claim.value):
        for candidate in _candidates(claim, config, spec):
            if attempts >= config.budget:
                break
            attempts += 1
            try:
                margin = violation_margin(claim, candidate.delta, candidate.matrices, candidate.vectors, spec)
            except HoloError as exc:
                logger.debug("Skipping candidate %d: %s", attempts, exc)
                continue
            if margin is not None:
                witness = _to_witness(candidate, margin, config, attempts - 1)
                logger.info(
                    "Witness for %s at delta=%g after %d candidate(s): margin %.4g (%s)",
                    claim.value, candidate.delta, attempts, margin, candidate.strategy,
                )
                break
        if witness is None:
            logger.warning("Budget of %d candidate(s) exhausted for %s", config.budget, claim.value)

    result = ClaimResult(
        claim=claim.value,
        outcome=Outcome.WITNESS_FOUND if witness else Outcome.BUDGET_EXHAUSTED,
        parameters={"deltas": config.deltas, "budget": config.budget, "group": config.group},
        trials=attempts,
        witnesses=[witness] if witness else [],
        constants={"margin": witness.margin} if witness and witness.margin is not None else {},
    )
    return Report(
        command="counterexample",
        suite=claim.value,
        config=config.model_dump(mode="json", exclude={"output"}),
        claims=[result],
        wall_time=round(time.perf_counter() - start, 3),
    )


def replay_witness(claim: CounterexampleClaim, witness: Witness, group: str | None = None) -> float | None:
    """Recompute the violated margin from the stored witness; None if it no longer violates."""
    if witness.delta is None:
        raise ValueError("Witness has no delta")
    matrices = {k: v.to_array() for k, v in witness.matrices.items()}
    vectors = {k: np.asarray(v, dtype=np.float64) for k, v in witness.vectors.items()}
    name = group or witness.group
    spec = parse_group(name) if name else None
    return violation_margin(claim, witness.delta, matrices, vectors, spec)

