"""Unit tests for holo_core.polar: real and complex polar factors."""

from __future__ import annotations

import numpy as np
import pytest
from pytest_mock import MockerFixture
from scipy import linalg

from holo_core.errors import DegenerateInputError, DomainError, InvalidDataError
from holo_core.liegroups import parse_group, sample_tube
from holo_core.matrices import orthogonality_residual, rotation
from holo_core.polar import (
    cauchy_riemann_residual,
    complex_polar,
    image_orth_distance,
    nearest_special_orthogonal,
    orthogonal_split,
    phi,
    psi,
    real_polar,
)


@pytest.mark.unit
class TestRealPolar:
    def test_factors(self, sl2_element: np.ndarray) -> None:
        f = real_polar(sl2_element)
        np.testing.assert_allclose(f.P @ f.U, sl2_element, atol=1e-12)
        np.testing.assert_allclose(f.U.T @ f.U, np.eye(2), atol=1e-12)
        assert linalg.det(f.U) == pytest.approx(1.0)
        assert np.all(np.linalg.eigvalsh(f.P) > 0)

    def test_rotation_is_its_own_orthogonal_factor(self) -> None:
        f = real_polar(rotation(0.4))
        np.testing.assert_allclose(f.U, rotation(0.4), atol=1e-12)
        np.testing.assert_allclose(f.P, np.eye(2), atol=1e-12)

    def test_orientation_reversing_is_rejected(self) -> None:
        with pytest.raises(DomainError):
            real_polar(np.diag([1.0, -1.0]))

    def test_complex_input_is_rejected(self) -> None:
        with pytest.raises(InvalidDataError):
            real_polar(np.eye(2) * 1j)


@pytest.mark.unit
class TestComplexPolar:
    def test_tube_element(self, rng: np.random.Generator) -> None:
        tube = sample_tube(parse_group("sl:3"), 0.05, 0.5, rng)
        f = complex_polar(tube.h)
        assert f.residual_sq <= 1e-10
        assert f.residual_orth <= 1e-10
        np.testing.assert_allclose(f.S, f.S.T, atol=1e-10)

    def test_real_input_matches_real_polar(self, sl2_element: np.ndarray) -> None:
        real = real_polar(sl2_element)
        np.testing.assert_allclose(phi(sl2_element), real.P, atol=1e-10)
        np.testing.assert_allclose(psi(sl2_element), real.U, atol=1e-10)

    def test_domain_error_names_eigenvalue(self) -> None:
        # h h^T = -I
        h = 1j * np.eye(2)
        with pytest.raises(DomainError) as exc_info:
            complex_polar(h)
        assert exc_info.value.eigenvalue == pytest.approx(-1.0)


@pytest.mark.unit
class TestOrthogonalSplit:
    def test_identity_and_bounds(self) -> None:
        theta = 0.03
        q = linalg.expm(1j * theta * np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert orthogonality_residual(q) < 1e-12
        split = orthogonal_split(q)
        assert split.identity_residual < 1e-12
        assert split.within_norm_bounds()
        assert split.aperture == pytest.approx(np.tanh(theta), rel=1e-9)


@pytest.mark.unit
class TestNearestSpecialOrthogonal:
    def test_real_rotation_has_zero_distance(self) -> None:
        u, dist = nearest_special_orthogonal(rotation(1.1))
        np.testing.assert_allclose(u, rotation(1.1), atol=1e-12)
        assert dist == pytest.approx(0.0, abs=1e-12)

    def test_rejects_non_orthogonal(self) -> None:
        with pytest.raises(InvalidDataError):
            nearest_special_orthogonal(2 * np.eye(2))

    def test_rejects_orientation_reversing(self) -> None:
        with pytest.raises(DegenerateInputError):
            nearest_special_orthogonal(np.diag([1.0, -1.0]))


@pytest.mark.unit
class TestImageOrthDistance:
    def test_distance_scales_with_delta(self) -> None:
        stats = image_orth_distance(parse_group("sl:3"), 0.02, trials=20, seed=3)
        assert stats.trials == 20
        assert stats.max_dist >= stats.mean_dist >= 0.0
        assert stats.C_hat == pytest.approx(stats.max_dist / 0.02)
        assert stats.max_dist < 0.5

    def test_rejects_large_delta(self) -> None:
        with pytest.raises(InvalidDataError):
            image_orth_distance(parse_group("sl:3"), 0.2, trials=1, seed=0)

    def test_rejects_zero_trials(self) -> None:
        with pytest.raises(InvalidDataError, match="trials"):
            image_orth_distance(parse_group("sl:3"), 0.02, trials=0, seed=0)


@pytest.mark.unit
class TestCauchyRiemann:
    def test_residual_is_second_order(self, rng: np.random.Generator) -> None:
        h = sample_tube(parse_group("gl+:3"), 0.05, 0.5, rng).h
        e = rng.standard_normal((3, 3))
        e /= np.linalg.norm(e, 2)
        assert cauchy_riemann_residual(h, e, eps=1e-4) < 1e-6

    def test_extrapolated_residual_is_third_order(self, rng: np.random.Generator) -> None:
        h = sample_tube(parse_group("gl+:3"), 0.05, 0.5, rng).h
        e = rng.standard_normal((3, 3))
        e /= np.linalg.norm(e, 2)
        coarse = cauchy_riemann_residual(h, e, eps=2e-3)
        fine = cauchy_riemann_residual(h, e, eps=1e-3)
        assert fine < 1e-6
        assert coarse > 4 * fine

    def test_non_holomorphic_map_is_caught(self, rng: np.random.Generator, mocker: MockerFixture) -> None:
        mocker.patch("holo_core.polar.psi", side_effect=np.conj)
        h = sample_tube(parse_group("gl+:3"), 0.05, 0.5, rng).h
        e = np.eye(3)
        assert cauchy_riemann_residual(h, e, eps=1e-5) == pytest.approx(2e-5, rel=1e-6)


@pytest.mark.unit
class TestClosedForms:
    def test_scaled_rotation(self) -> None:
        p = np.diag([2.0, 3.0])
        f = real_polar(p @ rotation(0.3))
        np.testing.assert_allclose(f.P, p, atol=1e-12)
        np.testing.assert_allclose(f.U, rotation(0.3), atol=1e-12)

    def test_complex_polar_of_diagonal(self) -> None:
        f = complex_polar(np.diag([2.0, 3.0]))
        np.testing.assert_allclose(f.S, np.diag([2.0, 3.0]), atol=1e-12)
        np.testing.assert_allclose(f.Q, np.eye(2), atol=1e-12)

    def test_complex_polar_of_rotation(self) -> None:
        f = complex_polar(rotation(1.2))
        np.testing.assert_allclose(f.S, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(f.Q, rotation(1.2), atol=1e-12)
