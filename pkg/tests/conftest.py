"""Shared test fixtures for the holo test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from holo_verify.models import MatrixFile, RunConfig, Suite

# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

PROJECT_ROOT = Path(__file__).parent.parent
PRESETS_DIR = PROJECT_ROOT / "presets"


# ---------------------------------------------------------------------------
# Environment setup: deterministic, single-threaded by default
# ---------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def _mock_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Set safe default environment variables for all tests."""
    monkeypatch.setenv("HOLO_THREADS", "1")
    monkeypatch.setenv("NO_COLOR", "1")


# ---------------------------------------------------------------------------
# Random generators and sample matrices
# ---------------------------------------------------------------------------


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture()
def sl2_element() -> np.ndarray:
    """A hyperbolic-times-rotation element of SL(2, R)."""
    c, s = np.cos(0.7), np.sin(0.7)
    return np.diag([2.0, 0.5]) @ np.array([[c, -s], [s, c]])


@pytest.fixture()
def small_run_config() -> RunConfig:
    """A quick run: one small group, one delta, a handful of trials."""
    return RunConfig(suite=Suite.CONES, group="gl+:3", deltas=[0.05], trials=5, seed=7)


# ---------------------------------------------------------------------------
# Matrix files
# ---------------------------------------------------------------------------


def write_matrix_file(path: Path, a: np.ndarray) -> Path:
    path.write_text(MatrixFile.from_array(a).model_dump_json(), encoding="utf-8")
    return path


@pytest.fixture()
def spd_file(tmp_path: Path) -> Path:
    b = np.array([[4.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 2.0]]) + 0.01j * np.eye(3)
    return write_matrix_file(tmp_path / "b.json", b)


@pytest.fixture()
def int_matrix_file(tmp_path: Path) -> Path:
    path = tmp_path / "m.json"
    path.write_text(MatrixFile.from_integers([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).model_dump_json())
    return path
