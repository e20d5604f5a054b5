"""Unit tests for holo_verify.config: presets, env expansion and thread resolution."""

from __future__ import annotations

import os
from pathlib import Path

import pytest
import yaml
from pydantic import ValidationError
from pytest_mock import MockerFixture

from holo_verify.config import expand_env_vars, load_env, load_run_config, read_preset, resolve_threads
from holo_verify.models import Suite
from tests.conftest import PRESETS_DIR


@pytest.mark.unit
class TestExpandEnvVars:
    def test_nested(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("HOLO_GROUP", "sl:3")
        data = {"group": "${HOLO_GROUP}", "groups": ["${HOLO_GROUP}", "so:3"], "trials": 5}
        assert expand_env_vars(data) == {"group": "sl:3", "groups": ["sl:3", "so:3"], "trials": 5}

    def test_missing_variable_is_an_error(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("HOLO_MISSING", raising=False)
        with pytest.raises(ValueError, match="HOLO_MISSING"):
            expand_env_vars("x${HOLO_MISSING}y")

    def test_default_value(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("HOLO_MISSING", raising=False)
        assert expand_env_vars("${HOLO_MISSING:-so:3}") == "so:3"

    def test_whole_reference_becomes_number(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("HOLO_SEED", "42")
        monkeypatch.setenv("HOLO_DELTA", "0.05")
        assert expand_env_vars({"seed": "${HOLO_SEED}", "deltas": ["${HOLO_DELTA}"]}) == {"seed": 42, "deltas": [0.05]}

    def test_embedded_reference_stays_text(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("HOLO_N", "3")
        assert expand_env_vars("sl:${HOLO_N}") == "sl:3"

    def test_preset_with_unset_variable_is_rejected(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("HOLO_SEED", raising=False)
        path = tmp_path / "p.yaml"
        path.write_text("suite: cones\nseed: ${HOLO_SEED}\n")
        with pytest.raises(ValueError, match="HOLO_SEED"):
            load_run_config(path)


@pytest.mark.unit
class TestReadPreset:
    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            read_preset(tmp_path / "absent.yaml")

    def test_empty_file(self, tmp_path: Path) -> None:
        path = tmp_path / "empty.yaml"
        path.write_text("")
        with pytest.raises(ValueError, match="empty"):
            read_preset(path)

    def test_non_mapping(self, tmp_path: Path) -> None:
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="mapping"):
            read_preset(path)

    def test_invalid_yaml(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.yaml"
        path.write_text("not: valid: yaml: [")
        with pytest.raises(yaml.YAMLError):
            read_preset(path)


@pytest.mark.unit
class TestLoadRunConfig:
    @pytest.mark.parametrize("name", ["cones", "sqrt", "polar", "action", "cover"])
    def test_shipped_presets_validate(self, name: str) -> None:
        config = load_run_config(PRESETS_DIR / f"{name}.yaml")
        assert config.suite is Suite(name)

    def test_overrides_win_over_preset(self, tmp_path: Path) -> None:
        path = tmp_path / "run.yaml"
        path.write_text("suite: cones\ntrials: 50\nseed: 3\n")
        config = load_run_config(path, trials=4, seed=None)
        assert config.trials == 4
        assert config.seed == 3

    def test_group_override_replaces_preset_groups(self) -> None:
        config = load_run_config(PRESETS_DIR / "action.yaml", group="sl:3")
        assert [s.name for s in config.group_specs()] == ["sl:3"]

    def test_group_list_override(self) -> None:
        config = load_run_config(PRESETS_DIR / "action.yaml", groups=["so:3", "sp:4"])
        assert config.group == "so:3"
        assert [s.name for s in config.group_specs()] == ["so:3", "sp:4"]

    def test_preset_groups_kept_without_override(self) -> None:
        config = load_run_config(PRESETS_DIR / "action.yaml", trials=1)
        assert len(config.group_specs()) == 3

    def test_env_in_preset(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("HOLO_SUITE", "action")
        path = tmp_path / "run.yaml"
        path.write_text("suite: ${HOLO_SUITE}\n")
        assert load_run_config(path).suite is Suite.ACTION

    def test_validation_error_propagates(self) -> None:
        with pytest.raises(ValidationError):
            load_run_config(suite="cones", trials=0)


@pytest.mark.unit
class TestResolveThreads:
    def test_explicit_value(self) -> None:
        assert resolve_threads(3) == 3

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("HOLO_THREADS", "6")
        assert resolve_threads() == 6

    def test_garbage_falls_back_to_cpu_count(self, monkeypatch: pytest.MonkeyPatch, mocker: MockerFixture) -> None:
        monkeypatch.setenv("HOLO_THREADS", "many")
        mocker.patch("holo_verify.config.os.cpu_count", return_value=12)
        assert resolve_threads() == 12

    def test_unknown_cpu_count(self, monkeypatch: pytest.MonkeyPatch, mocker: MockerFixture) -> None:
        monkeypatch.delenv("HOLO_THREADS", raising=False)
        mocker.patch("holo_verify.config.os.cpu_count", return_value=None)
        assert resolve_threads() == 1


@pytest.mark.unit
class TestLoadEnv:
    def test_does_not_override(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        env_file = tmp_path / ".env"
        env_file.write_text("HOLO_THREADS=9\nHOLO_EXTRA=1\n")
        monkeypatch.delenv("HOLO_EXTRA", raising=False)
        assert load_env(env_file)
        assert resolve_threads() == 1
        assert os.environ.pop("HOLO_EXTRA") == "1"
