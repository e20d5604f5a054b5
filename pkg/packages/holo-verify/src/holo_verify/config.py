"""Load run presets from YAML with environment variable expansion."""

from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv

from holo_verify.models import RunConfig

logger = logging.getLogger(__name__)

_ENV_VAR_PATTERN = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-([^}]*))?\}")

THREADS_ENV = "HOLO_THREADS"

_PACKAGE_DIR = Path(__file__).resolve().parent
REPO_ROOT = _PACKAGE_DIR.parent.parent.parent.parent


def load_env(path: Path | None = None) -> bool:
    """Load ``.env`` from the repository root (or *path*) without overriding the environment."""
    return load_dotenv(path or REPO_ROOT / ".env", override=False)


def _substitute(text: str) -> str:
    def _replace(match: re.Match[str]) -> str:
        name, default = match.group(1), match.group(2)
        value = os.environ.get(name, default)
        if value is None:
            raise ValueError(f"Environment variable {name} is not set and has no default")
        return value

    return _ENV_VAR_PATTERN.sub(_replace, text)


def expand_env_vars(value: Any) -> Any:
    """Expand ``${VAR}`` and ``${VAR:-default}`` inside preset values.

    A string that is exactly one reference to a numeric value becomes a number, so
    ``seed: ${HOLO_SEED}`` yields an integer. Unset variables without a
    default are configuration errors.
    """
    if isinstance(value, dict):
        return {k: expand_env_vars(v) for k, v in value.items()}
    if isinstance(value, list):
        return [expand_env_vars(item) for item in value]
    if not isinstance(value, str) or "${" not in value:
        return value

    expanded = _substitute(value)
    if not _ENV_VAR_PATTERN.fullmatch(value):
        return expanded
    try:
        scalar = yaml.safe_load(expanded)
    except yaml.YAMLError:
        return expanded
    return scalar if isinstance(scalar, int | float) and not isinstance(scalar, bool) else expanded


def read_preset(path: Path) -> dict[str, Any]:
    """Read a YAML run preset and expand env vars.

    Raises:
        FileNotFoundError: If *path* does not exist.
        yaml.YAMLError: If the file is not valid YAML.
        ValueError: If the file is empty or not a mapping.
    """
    logger.info("Loading run preset from %s", path)
    if not path.exists():
        raise FileNotFoundError(f"Run preset not found: {path}")

    raw_data = yaml.safe_load(path.read_text(encoding="utf-8"))
    if raw_data is None:
        raise ValueError(f"Run preset is empty: {path}")
    if not isinstance(raw_data, dict):
        raise ValueError(f"Run preset must be a YAML mapping: {path}")
    return expand_env_vars(raw_data)


def load_run_config(path: Path | None = None, **overrides: Any) -> RunConfig:
    """Merge a preset (if any) with non-None *overrides* and validate.

    A group given as an override replaces the whole group list of the preset.

    Raises:
        pydantic.ValidationError: If the merged data does not conform to
            the schema.
    """
    data: dict[str, Any] = read_preset(path) if path is not None else {}
    given = {k: v for k, v in overrides.items() if v is not None}
    if given.get("groups"):
        given.setdefault("group", given["groups"][0])
    elif "group" in given:
        data.pop("groups", None)
    data.update(given)
    config = RunConfig.model_validate(data)
    logger.debug("Run config: %s", config.model_dump(mode="json"))
    return config


def resolve_threads(requested: int | None = None) -> int:
    """Parallel trial cap: explicit value, then ``HOLO_THREADS``, then the CPU count."""
    if requested is not None:
        return max(1, requested)
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
    return os.cpu_count() or 1
