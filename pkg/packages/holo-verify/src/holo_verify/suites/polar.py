"""Polar decompositions: reconstruction, distance of psi(E_delta) to SO(n), real-imaginary split bounds, G = PK."""

from __future__ import annotations

import logging

import numpy as np

from holo_core.errors import HoloError
from holo_core.liegroups import GroupSpec, group_polar, is_transpose_closed, sample_group, sample_tube
from holo_core.matrices import is_symmetric, norm
from holo_core.polar import (
    HOLOMORPHY_STEP,
    cauchy_riemann_residual,
    complex_polar,
    image_orth_distance,
    orthogonal_split,
    real_polar,
)
from holo_core.rng import substream
from holo_verify.models import ClaimResult, RunConfig
from holo_verify.suites._common import TrialOutcome, check_claim, single_check

logger = logging.getLogger(__name__)

REAL_AGREEMENT = 1e-9
MAX_ORTH_DELTA = 0.05
SLOPE_SPREAD = 2.0
# Between the O(eps^3) extrapolated defect of a holomorphic map and the O(eps) defect otherwise.
CR_LIMIT = 10 * HOLOMORPHY_STEP**2


def _reconstruction(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        h = sample_tube(spec, delta, config.radius, rng).h
        factors = complex_polar(h)
        out = TrialOutcome(matrices={"h": h})
        out.require(factors.residual_sq <= config.tol, f"|SQ - h| / |h| = {factors.residual_sq:.3e}")
        out.require(factors.residual_orth <= config.tol, f"|QQ^T - I| = {factors.residual_orth:.3e}")
        out.require(is_symmetric(factors.S, config.tol), "S is not symmetric")
        out.measures["residual_sq"] = factors.residual_sq
        out.measures["residual_orth"] = factors.residual_orth
        return out

    return check_claim(
        "polar.reconstruction", config, trial, delta=delta, group=spec.name, parameters={"tol": config.tol},
    )


def _split_bounds(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    """|Q0|^2 = |Q1|^2 + 1 and the bounds it implies at the measured aperture of Q."""

    def trial(index: int) -> TrialOutcome:
        h = sample_tube(spec, delta, config.radius, substream(config.seed, index)).h
        q = complex_polar(h).Q
        split = orthogonal_split(q)
        out = TrialOutcome(matrices={"Q": q})
        out.require(
            split.identity_residual <= config.tol,
            f"| |Q0|^2 - |Q1|^2 - 1 | = {split.identity_residual:.3e}",
        )
        out.require(split.within_norm_bounds(), f"norms exceed the bounds at aperture {split.aperture:.4g}")
        out.measures["aperture_over_delta"] = split.aperture / delta
        out.measures["identity_residual"] = split.identity_residual
        return out

    return check_claim(
        "polar.split-bounds", config, trial, delta=delta, group=spec.name, parameters={"tol": config.tol},
    )


def _orth_slope(config: RunConfig, spec: GroupSpec) -> ClaimResult | None:
    """max |psi(h) - U| <= C delta with C stable (within a factor 2) over the grid."""
    grid = [d for d in config.deltas if d <= MAX_ORTH_DELTA]
    if not grid:
        return None
    out = TrialOutcome()
    c_hats: list[float] = []
    for delta in grid:
        try:
            stats = image_orth_distance(spec, delta, config.trials, config.seed, config.radius)
        except HoloError as exc:
            out.violations.append(f"delta={delta}: {type(exc).__name__}: {exc}")
            continue
        c_hats.append(stats.C_hat)
        out.measures[f"C_hat@{delta:g}"] = stats.C_hat
        out.measures[f"max_dist@{delta:g}"] = stats.max_dist
        out.measures[f"mean_dist@{delta:g}"] = stats.mean_dist
    if c_hats and min(c_hats) > 0.0:
        spread = max(c_hats) / min(c_hats)
        out.measures["C_hat_spread"] = spread
        out.require(spread < SLOPE_SPREAD, f"C_hat varies by a factor {spread:.3g} across the delta grid")
    logger.info("C_hat for %s over %s: %s", spec.name, grid, [round(c, 4) for c in c_hats])
    return single_check(
        "polar.orth-distance", out,
        parameters={"group": spec.name, "deltas": grid, "trials": config.trials},
    )


def _real_functoriality(config: RunConfig, spec: GroupSpec) -> ClaimResult:
    """On real g, phi and psi are the factors of the real polar decomposition."""

    def trial(index: int) -> TrialOutcome:
        g = sample_group(spec, config.radius, substream(config.seed, index))
        complex_factors = complex_polar(g)
        real_factors = real_polar(g)
        gap = max(
            norm(complex_factors.Q - real_factors.U),
            norm(complex_factors.S - real_factors.P) / norm(real_factors.P),
        )
        out = TrialOutcome(matrices={"g": g})
        out.require(gap <= REAL_AGREEMENT, f"complex and real polar factors differ by {gap:.3e}")
        out.require(float(np.max(np.abs(complex_factors.Q.imag))) <= REAL_AGREEMENT, "psi(g) is not real")
        out.measures["gap"] = gap
        return out

    return check_claim("polar.real-functoriality", config, trial, group=spec.name)


def _holomorphy(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        h = sample_tube(spec, delta, config.radius, rng).h
        e = rng.standard_normal((spec.n, spec.n))
        e /= norm(e)
        residual = cauchy_riemann_residual(h, e)
        out = TrialOutcome(matrices={"h": h, "E": e})
        out.require(residual <= CR_LIMIT, f"Cauchy-Riemann defect {residual:.3e} exceeds {CR_LIMIT:.1e}")
        out.measures["cr_residual"] = residual
        return out

    return check_claim(
        "polar.holomorphy", config, trial, delta=delta, group=spec.name,
        parameters={"step": HOLOMORPHY_STEP},
    )


def _group_closure(config: RunConfig, spec: GroupSpec) -> ClaimResult:
    """Both polar factors of g in G stay in G, and so does g^T."""

    def trial(index: int) -> TrialOutcome:
        g = sample_group(spec, config.radius, substream(config.seed, index))
        factors = group_polar(spec, g)
        out = TrialOutcome(violations=list(factors.violations), matrices={"g": g})
        out.require(is_transpose_closed(spec, g), f"g^T is not in {spec.name}")
        return out

    return check_claim("polar.group-closure", config, trial, group=spec.name)


def run(config: RunConfig) -> list[ClaimResult]:
    results: list[ClaimResult] = []
    for spec in config.group_specs():
        for delta in config.deltas:
            results.append(_reconstruction(config, spec, delta))
            results.append(_split_bounds(config, spec, delta))
            results.append(_holomorphy(config, spec, delta))
        slope = _orth_slope(config, spec)
        if slope is not None:
            results.append(slope)
        results.append(_real_functoriality(config, spec))
        results.append(_group_closure(config, spec))
    return results
