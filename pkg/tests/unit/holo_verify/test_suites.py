"""Unit tests for holo_verify.suites: small, seeded runs of every suite."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from holo_core.errors import DomainError
from holo_verify.models import ClaimResult, Outcome, Report, RunConfig, Suite
from holo_verify.suites import SUITES, run_suite
from holo_verify.suites._common import TrialOutcome, check_claim, single_check


def _config(suite: Suite, **overrides) -> RunConfig:
    data = {"suite": suite, "group": "gl+:3", "deltas": [0.02], "trials": 3, "seed": 17}
    data.update(overrides)
    return RunConfig(**data)


def _claims(results: list[ClaimResult]) -> set[str]:
    return {r.claim for r in results}


def _dump(report: Report) -> list[dict]:
    return [c.model_dump(mode="json") for c in report.claims]


def _assert_all_pass(results: list[ClaimResult]) -> None:
    failing = {r.claim: [w.message for w in r.witnesses] for r in results if not r.ok}
    assert not failing, failing


# ---------------------------------------------------------------------------
# Shared reduction
# ---------------------------------------------------------------------------


@pytest.mark.unit
class TestCheckClaim:
    def test_failures_become_witnesses(self) -> None:
        def trial(index: int) -> TrialOutcome:
            out = TrialOutcome(matrices={"A": np.eye(2) * index}, margin=-float(index))
            out.require(index % 2 == 0, f"odd trial {index}")
            out.measures["index"] = float(index)
            return out

        result = check_claim("demo", _config(Suite.CONES), trial, trials=5, delta=0.02)
        assert result.outcome is Outcome.FAILED
        assert result.failures == 2
        assert [w.trial for w in result.witnesses] == [1, 3]
        assert result.witnesses[0].message == "odd trial 1"
        assert result.witnesses[0].matrices["A"].to_array()[0, 0] == 1.0
        assert result.constants["index"] == 4.0
        assert result.parameters["delta"] == 0.02

    def test_numeric_errors_count_as_failures(self) -> None:
        def trial(index: int) -> TrialOutcome:
            raise DomainError("no root", eigenvalue=-1.0)

        result = check_claim("demo", _config(Suite.CONES), trial, trials=2)
        assert result.failures == 2
        assert "DomainError" in result.witnesses[0].message

    def test_single_check(self) -> None:
        assert single_check("ok", TrialOutcome()).outcome is Outcome.PASSED
        failed = single_check("bad", TrialOutcome(violations=["x"]))
        assert failed.failures == 1 and failed.witnesses[0].message == "x"


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


@pytest.mark.unit
class TestSuites:
    def test_registry_covers_every_suite(self) -> None:
        assert set(SUITES) == {s for s in Suite if s is not Suite.ALL}

    def test_cones(self) -> None:
        results = SUITES[Suite.CONES](_config(Suite.CONES))
        assert _claims(results) == {
            "cones.almost-real",
            "cones.quadratic-form",
            "cones.quadratic-form-converse",
            "cones.product-closure",
        }
        _assert_all_pass(results)

    def test_sqrt(self) -> None:
        results = SUITES[Suite.SQRT](_config(Suite.SQRT))
        assert {
            "sqrt.eigenvalue-cone",
            "sqrt.residual-positivity",
            "sqrt.structure",
            "sqrt.involution",
            "sqrt.square-not-psd",
        } <= _claims(results)
        _assert_all_pass(results)

    def test_sqrt_skips_eigenvalue_cone_when_disc_is_too_wide(self) -> None:
        results = SUITES[Suite.SQRT](_config(Suite.SQRT, group="gl+:7", deltas=[0.1]))
        assert "sqrt.eigenvalue-cone" not in _claims(results)

    @pytest.mark.parametrize("group", ["sl:3", "so:2,1", "sp:4"])
    def test_polar(self, group: str) -> None:
        results = SUITES[Suite.POLAR](_config(Suite.POLAR, group=group, deltas=[0.01, 0.02]))
        assert {
            "polar.reconstruction",
            "polar.split-bounds",
            "polar.holomorphy",
            "polar.orth-distance",
            "polar.real-functoriality",
            "polar.group-closure",
        } == _claims(results)
        _assert_all_pass(results)

    def test_tight_tol_fails_residual_claims(self) -> None:
        by_claim = {r.claim: r for r in SUITES[Suite.SQRT](_config(Suite.SQRT, tol=1e-300))}
        residual = by_claim["sqrt.residual-positivity"]
        assert residual.outcome is Outcome.FAILED
        assert residual.parameters["tol"] == 1e-300
        assert "|S^2 - B|" in residual.witnesses[0].message
        assert by_claim["sqrt.structure"].ok

        by_claim = {r.claim: r for r in SUITES[Suite.POLAR](_config(Suite.POLAR, tol=1e-300))}
        assert by_claim["polar.reconstruction"].outcome is Outcome.FAILED
        assert by_claim["polar.real-functoriality"].ok

    def test_loose_tol_passes_residual_claims(self) -> None:
        results = SUITES[Suite.SQRT](_config(Suite.SQRT, tol=1e-6))
        assert {r.claim: r.ok for r in results}["sqrt.residual-positivity"]

    def test_action(self) -> None:
        results = SUITES[Suite.ACTION](_config(Suite.ACTION, group="so:3"))
        assert {
            "action.generic-orbit",
            "action.composition",
            "action.transpose-image",
            "action.tube-product",
            "action.degenerate-point",
            "action.odd-n-freeness",
        } == _claims(results)
        _assert_all_pass(results)

    @pytest.mark.slow
    @pytest.mark.timeout(180)
    def test_cover(self) -> None:
        results = SUITES[Suite.COVER](_config(Suite.COVER))
        assert {"cover.winding", "cover.deck-element", "snf.oracle", "snf.lattice-extension"} <= _claims(results)
        _assert_all_pass(results)


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


@pytest.mark.unit
class TestRunSuite:
    def test_report_is_written(self, tmp_path: Path) -> None:
        out = tmp_path / "reports" / "cones.json"
        report = run_suite(_config(Suite.CONES, output=out))
        payload = json.loads(out.read_text())
        assert payload["schema"] == 1
        assert payload["command"] == "verify"
        assert payload["suite"] == "cones"
        assert "output" not in payload["config"]
        assert "threads" not in payload["config"]
        assert len(payload["claims"]) == len(report.claims)

    def test_seeded_runs_are_reproducible(self) -> None:
        first = run_suite(_config(Suite.CONES, threads=1))
        second = run_suite(_config(Suite.CONES, threads=3))
        assert _dump(first) == _dump(second)
