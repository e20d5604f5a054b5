"""Unit tests for holo_core.covering: circle lifts, winding numbers and the SL(2, R) cover."""

from __future__ import annotations

import logging
import math

import numpy as np
import pytest
from pytest_mock import MockerFixture
from scipy import linalg

from holo_core.covering import (
    MAX_STEPS,
    PREIMAGE_SEPARATION,
    CirclePath,
    CoverElement,
    canonical_angle,
    canonical_path,
    chi,
    cover_multiply,
    fiber_lift,
    is_kernel_element,
    lift_path,
    preimages,
    pullback_member,
    random_cover_element,
    refine_loop,
    rotation_loop,
    winding_number,
)
from holo_core.errors import InvalidDataError, InvalidElementError, ResolutionError
from holo_core.matrices import rotation


@pytest.mark.unit
class TestLiftPath:
    def test_full_turn(self) -> None:
        angles = np.linspace(0.0, 2 * math.pi, 50)
        lifted = lift_path(CirclePath.from_points(chi(angles)), [0.0])
        assert lifted[-1, 0] == pytest.approx(2 * math.pi)

    def test_start_selects_sheet(self) -> None:
        angles = np.linspace(0.0, 1.0, 20)
        lifted = lift_path(CirclePath.from_points(chi(angles)), [4 * math.pi])
        np.testing.assert_allclose(lifted[:, 0], angles + 4 * math.pi, atol=1e-12)

    def test_torus_path(self) -> None:
        t = np.linspace(0.0, 1.0, 200)[:, np.newaxis]
        angles = 2 * math.pi * t * np.array([1, -2])
        lifted = lift_path(CirclePath.from_points(chi(angles)), angles[0])
        np.testing.assert_allclose(lifted[-1] - lifted[0], [2 * math.pi, -4 * math.pi], atol=1e-9)

    def test_coarse_path_raises_resolution_error(self) -> None:
        path = CirclePath.from_points(chi([0.0, 0.1, 1.8]))
        with pytest.raises(ResolutionError) as exc_info:
            lift_path(path, [0.0])
        assert exc_info.value.step == 1
        assert exc_info.value.jump == pytest.approx(1.7)

    def test_start_must_match_first_sample(self) -> None:
        with pytest.raises(InvalidDataError):
            lift_path(CirclePath.from_points(chi([0.0, 0.1])), [1.0])

    def test_points_must_be_on_circle(self) -> None:
        with pytest.raises(InvalidDataError):
            CirclePath.from_points([1.0, 2.0])


@pytest.mark.unit
class TestFibers:
    def test_preimages_are_spaced(self) -> None:
        points = preimages(1j, count=2)
        assert len(points) == 5
        np.testing.assert_allclose(np.diff(points), PREIMAGE_SEPARATION)
        assert all(pullback_member(1j, x) for x in points)

    def test_fiber_lift(self) -> None:
        x = fiber_lift(complex(np.exp(0.3j)))
        assert x == pytest.approx(0.3)
        assert not pullback_member(np.exp(0.3j), x + math.pi)


@pytest.mark.unit
class TestWinding:
    @pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
    def test_rotation_loops(self, k: int) -> None:
        assert winding_number(rotation_loop(k)) == k

    def test_refinement_preserves_winding(self) -> None:
        c = np.diag([2.0, 0.5])
        loop = [c @ r @ linalg.inv(c) for r in rotation_loop(1, 60)]
        assert winding_number(loop) == 1
        refined = refine_loop(loop)
        assert len(refined) == 120
        assert winding_number(refined) == 1

    def test_contractible_loop(self) -> None:
        x = np.array([[0.0, 1.0], [1.0, 0.0]])
        loop = [linalg.expm(math.sin(2 * math.pi * t) * x) for t in np.arange(50) / 50]
        assert winding_number(loop) == 0


@pytest.mark.unit
class TestCoverElement:
    def test_rejects_mismatched_phase(self) -> None:
        with pytest.raises(InvalidElementError):
            CoverElement(g=np.eye(2), x=1.0)

    def test_rejects_non_unimodular(self) -> None:
        with pytest.raises(InvalidElementError):
            CoverElement(g=2 * np.eye(2), x=0.0)

    def test_canonical_path_endpoints(self, sl2_element: np.ndarray) -> None:
        np.testing.assert_allclose(canonical_path(sl2_element, 0.0), np.eye(2), atol=1e-12)
        np.testing.assert_allclose(canonical_path(sl2_element, 1.0), sl2_element, atol=1e-12)

    def test_canonical_sheet(self, sl2_element: np.ndarray) -> None:
        e = CoverElement.canonical(sl2_element, sheet=2)
        assert e.x == pytest.approx(canonical_angle(sl2_element) + 4 * math.pi)

    def test_deck_shift(self) -> None:
        e = CoverElement.identity().deck_shift(3)
        assert is_kernel_element(e)
        assert e.x == pytest.approx(6 * math.pi)


@pytest.mark.unit
class TestCoverMultiply:
    def test_half_turn_squares_to_deck_generator(self) -> None:
        half = CoverElement(g=rotation(math.pi), x=math.pi)
        square = cover_multiply(half, half)
        np.testing.assert_allclose(square.g, np.eye(2), atol=1e-12)
        assert square.x == pytest.approx(2 * math.pi, abs=1e-9)

    def test_identity_is_neutral(self, sl2_element: np.ndarray) -> None:
        a = CoverElement.canonical(sl2_element, sheet=1)
        left = cover_multiply(CoverElement.identity(), a)
        right = cover_multiply(a, CoverElement.identity())
        assert left.x == pytest.approx(a.x, abs=1e-9)
        assert right.x == pytest.approx(a.x, abs=1e-9)

    def test_associativity(self) -> None:
        rng = np.random.default_rng(9)
        a, b, c = (random_cover_element(rng) for _ in range(3))
        left = cover_multiply(cover_multiply(a, b), c)
        right = cover_multiply(a, cover_multiply(b, c))
        assert left.x == pytest.approx(right.x, abs=1e-9)

    def test_deck_shift_is_central(self) -> None:
        rng = np.random.default_rng(10)
        a, b = random_cover_element(rng), random_cover_element(rng)
        base = cover_multiply(a, b).x
        assert cover_multiply(a.deck_shift(), b).x - base == pytest.approx(PREIMAGE_SEPARATION, abs=1e-9)
        assert cover_multiply(a, b.deck_shift(-1)).x - base == pytest.approx(-PREIMAGE_SEPARATION, abs=1e-9)

    def test_unliftable_path_raises(self, mocker: MockerFixture) -> None:
        mocker.patch(
            "holo_core.covering._lifted_phase_change",
            side_effect=ResolutionError("coarse", step=1, jump=2.0),
        )
        with pytest.raises(InvalidElementError, match="finest resolution"):
            cover_multiply(CoverElement.identity(), CoverElement.identity())

    def test_unstable_lift_uses_finest_resolution(
        self, mocker: MockerFixture, caplog: pytest.LogCaptureFixture
    ) -> None:
        mocker.patch("holo_core.covering._lifted_phase_change", side_effect=lambda a, b, steps: float(steps))
        with caplog.at_level(logging.WARNING, logger="holo_core.covering"):
            product = cover_multiply(CoverElement.identity(), CoverElement.identity())
        assert product.x == float(MAX_STEPS)
        assert "did not stabilize" in caplog.text
