"""Siegel-product action: injective tangent maps, totally real orbits, action law, tube transport bounds."""

from __future__ import annotations

import numpy as np

from holo_core.cones import in_symmetric_cone, in_vector_cone, symmetric_cone_margin, vector_cone_margin
from holo_core.liegroups import (
    GroupSpec,
    SiegelPoint,
    ball_dimension,
    excludes_minus_identity,
    generic_point,
    group_spec,
    in_siegel_domain,
    random_siegel_point,
    sample_group,
    sample_tube,
    siegel_act,
    tangent_map_rank,
    totally_real_defect,
)
from holo_core.matrices import norm
from holo_core.rng import substream
from holo_verify.models import ClaimResult, RunConfig
from holo_verify.sampling import unit_vector
from holo_verify.suites._common import TrialOutcome, check_claim, single_check

ACTION_RTOL = 1e-10
TRANSPOSE_FACTOR = 2.0
TUBE_PRODUCT_FACTOR = 3.0
VECTORS_PER_TRIAL = 100
COMPOSITION_CHECKS = 200


def _generic_orbit(config: RunConfig, spec: GroupSpec) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        found = generic_point(spec, substream(config.seed, index))
        out = TrialOutcome(matrices={"z1": found.point.z1, "z2": found.point.z2})
        out.require(found.kernel_dim == 0, f"tangent kernel of dimension {found.kernel_dim} after resampling")
        if found.kernel_dim == 0:
            defect = totally_real_defect(spec, found.point)
            out.require(defect == 0, f"orbit is not totally real: defect {defect}")
        out.measures["attempts"] = float(found.attempts)
        return out

    return check_claim(
        "action.generic-orbit", config, trial, group=spec.name,
        parameters={"dim_G": spec.dim, "ball_dimension": ball_dimension(spec)},
    )


def _degenerate_point() -> ClaimResult:
    """z1 = z2 = I for SO(3): the whole algebra is in the kernel."""
    spec = group_spec("so", 3)
    eye = np.eye(3, dtype=np.complex128)
    pt = SiegelPoint(z1=eye, z2=eye)
    rank = tangent_map_rank(spec, pt)
    defect = totally_real_defect(spec, pt, strict=False)
    out = TrialOutcome()
    out.require(rank.kernel_dim == 3, f"expected kernel_dim 3 at the degenerate point, got {rank.kernel_dim}")
    out.measures["kernel_dim"] = float(rank.kernel_dim)
    out.measures["totally_real_defect"] = float(defect)
    return single_check("action.degenerate-point", out, parameters={"group": spec.name, "point": "z1=z2=I"})


def _composition(config: RunConfig, spec: GroupSpec) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        pt = random_siegel_point(spec.n, rng)
        g1 = sample_group(spec, config.radius, rng)
        g2 = sample_group(spec, config.radius, rng)
        nested = siegel_act(g1, siegel_act(g2, pt))
        direct = siegel_act(g1 @ g2, pt)
        gap = max(
            norm(nested.z1 - direct.z1) / norm(direct.z1),
            norm(nested.z2 - direct.z2) / norm(direct.z2),
        )
        out = TrialOutcome(matrices={"g1": g1, "g2": g2, "z1": pt.z1, "z2": pt.z2})
        out.require(gap <= ACTION_RTOL, f"g1.(g2.z) differs from (g1 g2).z by {gap:.3e}")
        out.require(in_siegel_domain(direct.z1) and in_siegel_domain(direct.z2), "image left Z+")
        out.measures["gap"] = gap
        return out

    return check_claim("action.composition", config, trial, trials=COMPOSITION_CHECKS, group=spec.name)


def _transpose_image(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    """h^T x in V_{2 delta} for h in E_delta and real unit x."""
    aperture = TRANSPOSE_FACTOR * delta

    def trial(index: int) -> TrialOutcome:
        rng = substream(config.seed, index)
        h = sample_tube(spec, delta, config.radius, rng).h
        out = TrialOutcome(matrices={"h": h})
        margins = []
        for _ in range(VECTORS_PER_TRIAL):
            image = h.T @ unit_vector(rng, spec.n)
            margins.append(vector_cone_margin(image, aperture))
            if not in_vector_cone(image, aperture):
                out.violations.append(f"h^T x left V with aperture {aperture:.4g}")
                break
        out.margin = min(margins)
        return out

    return check_claim("action.transpose-image", config, trial, delta=delta, group=spec.name)


def _tube_product(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    """h h^T in M+ with aperture 3 delta."""
    aperture = TUBE_PRODUCT_FACTOR * delta

    def trial(index: int) -> TrialOutcome:
        h = sample_tube(spec, delta, config.radius, substream(config.seed, index)).h
        b = h @ h.T
        out = TrialOutcome(margin=symmetric_cone_margin(b, aperture), matrices={"h": h})
        out.require(in_symmetric_cone(b, aperture), f"h h^T left M+ with aperture {aperture:.4g}")
        return out

    return check_claim("action.tube-product", config, trial, delta=delta, group=spec.name)


def _odd_freeness(specs: list[GroupSpec]) -> ClaimResult:
    """-I is outside G for odd n; even n is reported only."""
    out = TrialOutcome()
    for spec in specs:
        excluded = excludes_minus_identity(spec)
        out.measures[f"excludes_minus_identity[{spec.name}]"] = float(excluded)
        if spec.n % 2:
            out.require(excluded, f"-I lies in {spec.name}")
    return single_check("action.odd-n-freeness", out, parameters={"groups": [s.name for s in specs]})


def run(config: RunConfig) -> list[ClaimResult]:
    specs = config.group_specs()
    results: list[ClaimResult] = []
    for spec in specs:
        results.append(_generic_orbit(config, spec))
        results.append(_composition(config, spec))
        for delta in config.deltas:
            results.append(_transpose_image(config, spec, delta))
            results.append(_tube_product(config, spec, delta))
    results.append(_degenerate_point())
    results.append(_odd_freeness(specs))
    return results
