"""Cone membership: the almost-real bilinear form, quadratic forms of M+, and product closure."""

from __future__ import annotations

import numpy as np

from holo_core.cones import (
    ConeParams,
    bilinear,
    in_matrix_cone,
    in_right_cone,
    in_symmetric_cone,
    in_vector_cone,
    matrix_cone_margin,
    quadratic_form_witness,
    right_cone_margin,
    symmetric_cone_margin,
)
from holo_core.liegroups import group_spec, sample_group
from holo_core.matrices import norm
from holo_core.rng import substream
from holo_verify.models import ClaimResult, RunConfig
from holo_verify.sampling import matrix_in_cone, near_identity, symmetric_in_cone, vector_in_cone
from holo_verify.suites._common import TrialOutcome, check_claim

WITNESS_BUDGET = 200
# |Im(AB)| / |Re(AB)| <= delta (2 + delta) / (1 - delta - delta^2) < 3 delta for delta <= 0.1
PERTURBED_PRODUCT_FACTOR = 3.0
NORM_EQUALITY_RTOL = 1e-12


def sizes(config: RunConfig) -> list[int]:
    return sorted({spec.n for spec in config.group_specs()})


def _almost_real(config: RunConfig, n: int, delta: float) -> ClaimResult:
    """z in V_delta, z != 0 implies <z, z> in N+ with aperture 2 delta / (1 - delta^2)."""
    eps = 2 * delta / (1 - delta * delta)

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        z = vector_in_cone(rng, n, delta)
        value = bilinear(z, z)
        out = TrialOutcome(margin=right_cone_margin(value, eps))
        out.require(in_vector_cone(z, delta), "sampled z is not in V_delta")
        out.require(in_right_cone(value, eps), f"<z,z> = {value:.6g} is not in N+ with aperture {eps:.4g}")
        out.measures["aperture_ratio"] = abs(value.imag) / (value.real * eps)
        return out

    return check_claim("cones.almost-real", config, trial, delta=delta, parameters={"n": n, "epsilon": eps})


def _quadratic_form(config: RunConfig, n: int, delta: float) -> ClaimResult:
    """B in M+ admits no real x with <Bx, x> outside N+; membership is monotone and scale free."""
    params = ConeParams(delta=delta, matrix_norm=config.matrix_norm)

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        b = symmetric_in_cone(rng, n, delta)
        out = TrialOutcome(margin=symmetric_cone_margin(b, params), matrices={"B": b})
        out.require(in_symmetric_cone(b, params), "sampled B is not in M+")
        witness = quadratic_form_witness(b, params, trials=WITNESS_BUDGET, seed=rng)
        out.require(witness is None, "quadratic form left N+ for B in M+")
        out.require(in_symmetric_cone(b, min(2 * delta, 0.99)), "membership is not monotone in delta")
        scale = float(np.exp(rng.uniform(-3.0, 3.0)))
        out.require(in_symmetric_cone(scale * b, params), f"membership not invariant under scaling by {scale:.4g}")
        return out

    return check_claim("cones.quadratic-form", config, trial, delta=delta, parameters={"n": n})


def _quadratic_form_converse(config: RunConfig, n: int, delta: float) -> ClaimResult:
    """B outside M+ yields a deterministic witness x with <Bx, x> outside N+."""

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        b = symmetric_in_cone(rng, n, delta, t=1.0 + rng.uniform(0.05, 1.0))
        out = TrialOutcome(matrices={"B": b})
        out.require(not in_symmetric_cone(b, delta), "sample expected outside M+ is inside")
        witness = quadratic_form_witness(b, delta, trials=0)
        if witness is None:
            out.violations.append("no witness for B outside M+")
        else:
            out.margin = right_cone_margin(witness.value, delta)
            out.require(not in_right_cone(witness.value, delta), "witness value lies in N+")
        return out

    return check_claim("cones.quadratic-form-converse", config, trial, delta=delta, parameters={"n": n})


def _product_closure(config: RunConfig, n: int, delta: float) -> ClaimResult:
    """A in M_delta, |B - I| < delta gives AB, BA in M_{3 delta}; real orthogonal B preserves |Im| and |Re|."""
    so = group_spec("so", n)
    wide = PERTURBED_PRODUCT_FACTOR * delta

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        a = matrix_in_cone(rng, n, delta)
        b = near_identity(rng, n, delta)
        out = TrialOutcome(margin=min(matrix_cone_margin(a @ b, wide), matrix_cone_margin(b @ a, wide)))
        out.require(in_matrix_cone(a, delta), "sampled A is not in M_delta")
        out.require(in_matrix_cone(a @ b, wide), "AB left M_{3 delta}")
        out.require(in_matrix_cone(b @ a, wide), "BA left M_{3 delta}")

        u = sample_group(so, 2.0, rng)
        for label, prod in (("AU", a @ u), ("UA", u @ a)):
            for part, ref in (("Re", (prod.real, a.real)), ("Im", (prod.imag, a.imag))):
                lhs, rhs = norm(ref[0]), norm(ref[1])
                out.require(
                    abs(lhs - rhs) <= NORM_EQUALITY_RTOL * max(rhs, 1.0),
                    f"|{part} {label}| = {lhs:.15g} differs from |{part} A| = {rhs:.15g}",
                )
            out.require(in_matrix_cone(prod, delta), f"{label} left M_delta")
        out.measures["product_ratio"] = max(
            norm((a @ b).imag) / norm((a @ b).real), norm((b @ a).imag) / norm((b @ a).real)
        ) / delta
        return out

    return check_claim("cones.product-closure", config, trial, delta=delta, parameters={"n": n})


def run(config: RunConfig) -> list[ClaimResult]:
    results: list[ClaimResult] = []
    for n in sizes(config):
        for delta in config.deltas:
            results.append(_almost_real(config, n, delta))
            results.append(_quadratic_form(config, n, delta))
            results.append(_quadratic_form_converse(config, n, delta))
            results.append(_product_closure(config, n, delta))
    return results
