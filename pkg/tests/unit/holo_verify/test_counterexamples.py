"""Unit tests for holo_verify.counterexamples: witness searches and replay."""

from __future__ import annotations

import json

import numpy as np
import pytest

from holo_core.cones import in_matrix_cone, in_symmetric_cone
from holo_verify.counterexamples import find_counterexample, replay_witness, violation_margin
from holo_verify.models import CounterexampleClaim, CounterexampleConfig, Outcome, Witness


@pytest.mark.unit
class TestFindCounterexample:
    @pytest.mark.parametrize("claim", list(CounterexampleClaim))
    def test_witness_found_and_replays(self, claim: CounterexampleClaim) -> None:
        report = find_counterexample(CounterexampleConfig(claim=claim, budget=1000, seed=1))
        result = report.claims[0]
        assert result.outcome is Outcome.WITNESS_FOUND
        witness = result.witnesses[0]
        assert witness.margin is not None and witness.margin <= 0.0

        # Replay from the serialized report, not the in-memory objects.
        stored = Witness.model_validate(json.loads(report.to_json())["claims"][0]["witnesses"][0])
        replayed = replay_witness(claim, stored)
        assert replayed is not None
        assert replayed == pytest.approx(witness.margin, rel=1e-12, abs=1e-15)

    def test_budget_exhausted_for_rotation_group(self) -> None:
        # For h = g p with g orthogonal, |Im hx| < delta |Re hx| / (1 - delta): never outside V_{10 delta}.
        config = CounterexampleConfig(claim="hx-not-in-V", group="so:3", budget=20, deltas=[0.05])
        report = find_counterexample(config)
        result = report.claims[0]
        assert result.outcome is Outcome.BUDGET_EXHAUSTED
        assert result.trials == 20
        assert not report.ok

    def test_report_shape(self) -> None:
        report = find_counterexample(CounterexampleConfig(claim="B2-not-psd", budget=10))
        payload = json.loads(report.to_json())
        assert payload["command"] == "counterexample"
        assert payload["suite"] == "B2-not-psd"
        assert payload["claims"][0]["outcome"] == "witness-found"


@pytest.mark.unit
class TestViolationMargin:
    def test_b2_needs_cone_member(self) -> None:
        b = np.array([[1.0, 0.9j], [0.9j, 1.0]])
        assert not in_symmetric_cone(b, 0.1)
        assert violation_margin(CounterexampleClaim.B2_NOT_PSD, 0.1, {"B": b}, {}) is None

    def test_product_needs_members(self) -> None:
        a = np.array([[1.0, 1j], [0.0, 0.0]])
        assert not in_matrix_cone(a, 0.1)
        margin = violation_margin(CounterexampleClaim.PRODUCT_NOT_IN_M, 0.1, {"A": a, "B": a}, {})
        assert margin is None

    def test_tube_precondition_rejects_far_p(self) -> None:
        g = np.eye(2, dtype=complex)
        p = np.eye(2) * (1 + 0.5j)
        matrices = {"g": g, "p": p, "h": g @ p}
        margin = violation_margin(CounterexampleClaim.HX_NOT_IN_V, 0.1, matrices, {"x": np.array([1.0, 0.0])})
        assert margin is None

    def test_tampered_witness_no_longer_replays(self) -> None:
        report = find_counterexample(CounterexampleConfig(claim="product-not-in-M", budget=10))
        witness = report.claims[0].witnesses[0]
        witness.matrices["B"] = witness.matrices["A"]
        assert replay_witness(CounterexampleClaim.PRODUCT_NOT_IN_M, witness) is None
