"""Translate library and validation errors into click exceptions."""

from __future__ import annotations

import click
from pydantic import ValidationError

from holo_core.errors import HoloError


def usage_error(exc: Exception) -> click.UsageError:
    """Config problems exit with code 2."""
    if isinstance(exc, ValidationError):
        lines = [
            f"{' -> '.join(str(part) for part in err['loc']) or 'config'}: {err['msg']}"
            for err in exc.errors()
        ]
        return click.UsageError("Invalid configuration:\n  " + "\n  ".join(lines))
    return click.UsageError(str(exc))


def numeric_error(exc: HoloError) -> click.ClickException:
    """Precondition and numeric failures exit with code 1 and carry their payload."""
    details = ", ".join(f"{k}={v}" for k, v in exc.details.items() if v is not None)
    message = f"{type(exc).__name__}: {exc}"
    return click.ClickException(f"{message} ({details})" if details else message)
