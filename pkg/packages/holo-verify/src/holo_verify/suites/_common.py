"""Shared plumbing for suites: per-trial outcomes and their reduction to a ClaimResult."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from holo_core.errors import HoloError
from holo_verify.context import claim_context
from holo_verify.models import ClaimResult, MatrixFile, Outcome, RunConfig, Witness
from holo_verify.trials import run_trials

logger = logging.getLogger(__name__)

MAX_WITNESSES = 20


@dataclass
class TrialOutcome:
    """Result of one trial: the violated conditions plus measured quantities."""

    violations: list[str] = field(default_factory=list)
    measures: dict[str, float] = field(default_factory=dict)
    matrices: dict[str, Any] = field(default_factory=dict)
    margin: float | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def require(self, condition: bool, message: str) -> None:
        if not condition:
            self.violations.append(message)


def check_claim(
    claim: str,
    config: RunConfig,
    trial: Callable[[int], TrialOutcome],
    trials: int | None = None,
    parameters: dict[str, Any] | None = None,
    delta: float | None = None,
    group: str | None = None,
) -> ClaimResult:
    """Run *trial* for every trial index and reduce.

    Numeric errors inside a trial count as failures of that trial. The
    reported constants are the maxima of each measure over all trials.
    """
    count = config.trials if trials is None else trials

    def _guarded(index: int) -> TrialOutcome:
        try:
            return trial(index)
        except HoloError as exc:
            logger.warning(
                "Trial %d raised %s: %s", index, type(exc).__name__, exc, extra={"trial": index, "delta": delta}
            )
            return TrialOutcome(violations=[f"{type(exc).__name__}: {exc}"])

    with claim_context(claim):
        outcomes = run_trials(_guarded, count, config.threads)

    failures = [(i, o) for i, o in enumerate(outcomes) if not o.ok]
    witnesses = [
        Witness(
            seed=config.seed,
            trial=i,
            delta=delta,
            group=group,
            message="; ".join(o.violations),
            margin=o.margin,
            matrices={k: MatrixFile.from_array(v) for k, v in o.matrices.items()},
        )
        for i, o in failures[:MAX_WITNESSES]
    ]

    constants: dict[str, float] = {}
    for outcome in outcomes:
        for name, value in outcome.measures.items():
            constants[name] = max(constants.get(name, -np.inf), float(value))

    params = dict(parameters or {})
    if delta is not None:
        params.setdefault("delta", delta)
    if group is not None:
        params.setdefault("group", group)

    if failures:
        logger.warning("%s: %d of %d trial(s) failed", claim, len(failures), count)
    else:
        logger.info("%s: %d trial(s) passed", claim, count)

    return ClaimResult(
        claim=claim,
        outcome=Outcome.FAILED if failures else Outcome.PASSED,
        parameters=params,
        trials=count,
        failures=len(failures),
        witnesses=witnesses,
        constants=constants,
    )


def single_check(claim: str, outcome: TrialOutcome, parameters: dict[str, Any] | None = None) -> ClaimResult:
    """A deterministic one-shot claim (no sampling)."""
    return ClaimResult(
        claim=claim,
        outcome=Outcome.PASSED if outcome.ok else Outcome.FAILED,
        parameters=parameters or {},
        trials=1,
        failures=0 if outcome.ok else 1,
        witnesses=[] if outcome.ok else [
            Witness(
                seed=0,
                message="; ".join(outcome.violations),
                margin=outcome.margin,
                matrices={k: MatrixFile.from_array(v) for k, v in outcome.matrices.items()},
            )
        ],
        constants=dict(outcome.measures),
    )
