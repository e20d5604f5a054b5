"""Square roots of B = h h^T: spectral sector, residual, positivity and the U(I+iK)Lambda U^T split."""

from __future__ import annotations

from holo_core.cones import ConeParams, in_right_cone, in_symmetric_cone, symmetric_cone_margin
from holo_core.liegroups import GroupSpec, sample_tube
from holo_core.matrices import min_sym_eigenvalue, norm
from holo_core.rng import substream
from holo_core.sqrtm import (
    DEFAULT_TOL,
    eigenvalue_cone_aperture,
    eigenvalues,
    principal_sqrt,
    square_not_psd_family,
    verify_sqrt_structure,
)
from holo_verify.models import ClaimResult, RunConfig
from holo_verify.sampling import symmetric_in_cone
from holo_verify.suites._common import TrialOutcome, check_claim, single_check

# h h^T for h in E_delta lies in M+ with aperture 3 delta.
TUBE_PRODUCT_FACTOR = 3.0
INVOLUTION_RTOL = 1e-7


def _tube_product(config: RunConfig, spec: GroupSpec, delta: float, index: int):
    tube = sample_tube(spec, delta, config.radius, substream(config.seed, index))
    return tube.h @ tube.h.T


def _eigenvalue_cone(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult | None:
    eps = eigenvalue_cone_aperture(spec.n, delta)
    if eps is None:
        return None

    def trial(index: int) -> TrialOutcome:
        b = _tube_product(config, spec, delta, index)
        spectrum = eigenvalues(b).eigenvalues
        out = TrialOutcome(matrices={"B": b})
        outside = [lam for lam in spectrum if not in_right_cone(lam, eps)]
        out.require(not outside, f"eigenvalues outside N+ with aperture {eps:.4g}: {outside}")
        out.measures["aperture_ratio"] = max(abs(lam.imag) / lam.real for lam in spectrum) / eps
        return out

    return check_claim(
        "sqrt.eigenvalue-cone", config, trial, delta=delta, group=spec.name,
        parameters={"epsilon": eps, "delta1": 2 * spec.n * delta},
    )


def _residual_positivity(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        b = _tube_product(config, spec, delta, index)
        report = principal_sqrt(b, tol=min(config.tol, DEFAULT_TOL))
        smallest = min_sym_eigenvalue(report.S.real)
        out = TrialOutcome(margin=smallest, matrices={"B": b})
        out.require(report.residual <= config.tol, f"|S^2 - B| / |B| = {report.residual:.3e}")
        out.require(smallest > 0.0, f"Re S has eigenvalue {smallest:.3e}")
        out.measures["residual"] = report.residual
        out.measures["iterations"] = float(report.iterations)
        return out

    return check_claim(
        "sqrt.residual-positivity", config, trial, delta=delta, group=spec.name, parameters={"tol": config.tol},
    )


def _structure(config: RunConfig, spec: GroupSpec, delta: float) -> ClaimResult:
    """S in M+ with aperture 2 n delta and max |K_ij| <= 2 delta."""
    params = ConeParams(delta=min(TUBE_PRODUCT_FACTOR * delta, 0.99), matrix_norm=config.matrix_norm)
    aperture = 2 * spec.n * delta

    def trial(index: int) -> TrialOutcome:
        b = _tube_product(config, spec, delta, index)
        report = verify_sqrt_structure(b, params)
        out = TrialOutcome(violations=list(report.violations), matrices={"B": b})
        out.margin = symmetric_cone_margin(report.S, aperture)
        out.require(out.margin > 0.0, f"S is not in M+ with aperture {aperture:.4g}")
        out.require(report.k_max <= 2 * delta, f"max |K_ij| = {report.k_max:.4g} exceeds {2 * delta:.4g}")
        out.measures["k_max_over_delta"] = report.k_max / delta
        return out

    return check_claim(
        "sqrt.structure", config, trial, delta=delta, group=spec.name,
        parameters={"aperture": aperture},
    )


def _involution(config: RunConfig, n: int, delta: float) -> ClaimResult:
    def trial(index: int) -> TrialOutcome:
        s = symmetric_in_cone(substream(config.seed, index), n, delta)
        root = principal_sqrt(s @ s).S
        error = norm(root - s) / norm(s)
        out = TrialOutcome(matrices={"S": s})
        out.require(error <= INVOLUTION_RTOL, f"sqrt(S^2) differs from S by {error:.3e}")
        out.measures["relative_error"] = error
        return out

    return check_claim("sqrt.involution", config, trial, delta=delta, parameters={"n": n})


def _square_not_psd(delta: float) -> ClaimResult:
    b = square_not_psd_family(delta)
    smallest = min_sym_eigenvalue((b @ b).real)
    out = TrialOutcome(margin=smallest, matrices={"B": b})
    out.require(in_symmetric_cone(b, delta), "family member is not in M+")
    out.require(smallest < 0.0, f"Re(B^2) is positive semidefinite (smallest eigenvalue {smallest:.4g})")
    out.measures["min_eig_re_b2"] = smallest
    return single_check("sqrt.square-not-psd", out, parameters={"delta": delta})


def run(config: RunConfig) -> list[ClaimResult]:
    results: list[ClaimResult] = []
    specs = config.group_specs()
    for spec in specs:
        for delta in config.deltas:
            eigen = _eigenvalue_cone(config, spec, delta)
            if eigen is not None:
                results.append(eigen)
            results.append(_residual_positivity(config, spec, delta))
            results.append(_structure(config, spec, delta))
    for n in sorted({s.n for s in specs}):
        for delta in config.deltas:
            results.append(_involution(config, n, delta))
    for delta in config.deltas:
        results.append(_square_not_psd(delta))
    return results
