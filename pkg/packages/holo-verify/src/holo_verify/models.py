"""Pydantic models for run configuration, reports and matrix files."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from holo_core.errors import HoloError
from holo_core.liegroups import GroupFamily, GroupSpec, group_spec, parse_group
from holo_core.matrices import MatrixNorm

REPORT_SCHEMA = 1
MAX_SEED = 2**64
MAX_DELTA = 0.1


class Suite(str, Enum):
    CONES = "cones"
    SQRT = "sqrt"
    POLAR = "polar"
    ACTION = "action"
    COVER = "cover"
    ALL = "all"


class CounterexampleClaim(str, Enum):
    """Statements that fail in general; a search tries to exhibit a witness."""

    HX_NOT_IN_V = "hx-not-in-V"
    HHTX_NOT_IN_V = "hhTx-not-in-V"
    HTH_NOT_IN_MPLUS = "hTh-not-in-Mplus"
    HHT2_NOT_IN_MPLUS = "hhT2-not-in-Mplus"
    B2_NOT_PSD = "B2-not-psd"
    PRODUCT_NOT_IN_M = "product-not-in-M"


class DecomposeMode(str, Enum):
    COMPLEX_POLAR = "complex-polar"
    REAL_POLAR = "real-polar"
    SQRT = "sqrt"


class Outcome(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    WITNESS_FOUND = "witness-found"
    BUDGET_EXHAUSTED = "budget-exhausted"


# ---------------------------------------------------------------------------
# Matrix files
# ---------------------------------------------------------------------------


class MatrixFile(BaseModel):
    """Row-major matrix; complex entries as [re, im] pairs, integer entries bare."""

    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: list[int] | list[tuple[float, float]]

    @model_validator(mode="after")
    def _check_count(self) -> MatrixFile:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries has {len(self.entries)} items, expected rows*cols = {self.rows * self.cols}"
            )
        return self

    @property
    def is_integer(self) -> bool:
        return all(isinstance(e, int) for e in self.entries)

    @classmethod
    def from_array(cls, a: npt.ArrayLike) -> MatrixFile:
        arr = np.atleast_2d(np.asarray(a, dtype=np.complex128))
        rows, cols = arr.shape
        entries = [(float(z.real), float(z.imag)) for z in arr.ravel()]
        return cls(rows=rows, cols=cols, entries=entries)

    @classmethod
    def from_integers(cls, m: list[list[int]]) -> MatrixFile:
        rows = len(m)
        cols = len(m[0]) if m else 0
        return cls(rows=rows, cols=cols, entries=[int(v) for row in m for v in row])

    def to_array(self) -> npt.NDArray[np.complex128]:
        if self.is_integer:
            values = np.array(self.entries, dtype=np.complex128)
        else:
            values = np.array([complex(re, im) for re, im in self.entries], dtype=np.complex128)
        return values.reshape(self.rows, self.cols)

    def to_integers(self) -> list[list[int]]:
        if not self.is_integer:
            raise ValueError("Matrix file does not hold bare integer entries")
        flat = [int(v) for v in self.entries]
        return [flat[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


class RunConfig(BaseModel):
    """One ``holo verify`` run: suite, groups, delta grid, budget and seed."""

    suite: Suite = Field(..., description="Suite to run")
    group: str = Field("gl+:3", description="Group in CLI notation (gl+:n, sl:n, so:n, so:p,q, sp:2m)")
    groups: list[str] = Field(default_factory=list, description="Extra groups; overrides group when set")
    n: int | None = Field(None, description="Override the matrix size of group")
    deltas: list[float] = Field(default_factory=lambda: [0.01, 0.02, 0.05], description="Delta grid")
    trials: int = Field(100, description="Trials per claim and grid point")
    seed: int = Field(0, description="64-bit run seed")
    tol: float = Field(1e-9, gt=0.0, description="Relative residual limit for the sqrt and polar residual claims")
    radius: float = Field(0.5, description="Sampling radius in the real Lie algebra")
    matrix_norm: MatrixNorm = Field(MatrixNorm.OPERATOR_2, description="Norm for matrix cones")
    threads: int | None = Field(None, ge=1, description="Parallel trials (defaults to HOLO_THREADS)")
    output: Path | None = Field(None, description="Report path")

    @field_validator("trials")
    @classmethod
    def _positive_trials(cls, v: int) -> int:
        if v < 1:
            raise ValueError("trials must be at least 1")
        return v

    @field_validator("deltas")
    @classmethod
    def _delta_range(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("delta grid must not be empty")
        bad = [d for d in v if not 0.0 < d <= MAX_DELTA]
        if bad:
            raise ValueError(f"every delta must lie in (0, {MAX_DELTA}], got {bad}")
        return v

    @field_validator("seed")
    @classmethod
    def _seed_range(cls, v: int) -> int:
        if not 0 <= v < MAX_SEED:
            raise ValueError("seed must be a 64-bit unsigned value")
        return v

    @field_validator("n")
    @classmethod
    def _size_range(cls, v: int | None) -> int | None:
        if v is not None and not 2 <= v <= 16:
            raise ValueError("n must lie between 2 and 16")
        return v

    @field_validator("radius")
    @classmethod
    def _radius_range(cls, v: float) -> float:
        if not 0.0 <= v <= 2.0:
            raise ValueError("radius must lie in [0, 2]")
        return v

    @field_validator("group")
    @classmethod
    def _parsable_group(cls, v: str) -> str:
        _parse(v)
        return v

    @field_validator("groups")
    @classmethod
    def _parsable_groups(cls, v: list[str]) -> list[str]:
        for name in v:
            _parse(name)
        return v

    def group_specs(self) -> list[GroupSpec]:
        specs = [_parse(name) for name in (self.groups or [self.group])]
        if self.n is None:
            return specs
        return [s if s.family is GroupFamily.SO_PQ else group_spec(s.family, self.n) for s in specs]


def _parse(name: str) -> GroupSpec:
    try:
        return parse_group(name)
    except HoloError as exc:
        raise ValueError(str(exc)) from exc


class CounterexampleConfig(BaseModel):
    claim: CounterexampleClaim
    deltas: list[float] = Field(default_factory=lambda: [0.02, 0.05, 0.1, 0.3])
    budget: int = Field(100_000, ge=1)
    seed: int = Field(0)
    group: str = Field("gl+:3")
    output: Path | None = None

    @field_validator("deltas")
    @classmethod
    def _delta_range(cls, v: list[float]) -> list[float]:
        if not v or any(not 0.0 < d < 1.0 for d in v):
            raise ValueError("every delta must lie in (0, 1)")
        return v

    @field_validator("seed")
    @classmethod
    def _seed_range(cls, v: int) -> int:
        if not 0 <= v < MAX_SEED:
            raise ValueError("seed must be a 64-bit unsigned value")
        return v

    @field_validator("group")
    @classmethod
    def _parsable_group(cls, v: str) -> str:
        _parse(v)
        return v


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class Witness(BaseModel):
    """A reproducible failing (or, for searches, succeeding) instance."""

    seed: int
    trial: int | None = None
    delta: float | None = None
    group: str | None = None
    message: str
    margin: float | None = None
    matrices: dict[str, MatrixFile] = Field(default_factory=dict)
    vectors: dict[str, list[float]] = Field(default_factory=dict)


class ClaimResult(BaseModel):
    claim: str
    outcome: Outcome
    parameters: dict[str, Any] = Field(default_factory=dict)
    trials: int = 0
    failures: int = 0
    witnesses: list[Witness] = Field(default_factory=list)
    constants: dict[str, float] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.outcome in (Outcome.PASSED, Outcome.WITNESS_FOUND)


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(REPORT_SCHEMA, alias="schema")
    command: str
    suite: str
    config: dict[str, Any] = Field(default_factory=dict)
    claims: list[ClaimResult] = Field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self) -> int:
        return sum(0 if c.ok else max(c.failures, 1) for c in self.claims)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
