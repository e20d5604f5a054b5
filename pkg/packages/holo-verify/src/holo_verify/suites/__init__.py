"""Verification suites and the ``run_suite`` driver."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from pathlib import Path

from holo_verify.models import ClaimResult, Report, RunConfig, Suite
from holo_verify.suites import action, cones, cover, polar, sqrt

logger = logging.getLogger(__name__)

SuiteRunner = Callable[[RunConfig], list[ClaimResult]]

SUITES: dict[Suite, SuiteRunner] = {
    Suite.CONES: cones.run,
    Suite.SQRT: sqrt.run,
    Suite.POLAR: polar.run,
    Suite.ACTION: action.run,
    Suite.COVER: cover.run,
}


def run_suite(config: RunConfig) -> Report:
    """Run the configured suite (or all of them) and write the report if an output path is set."""
    selected = list(SUITES) if config.suite is Suite.ALL else [config.suite]
    start = time.perf_counter()
    claims: list[ClaimResult] = []
    for suite in selected:
        logger.info("Running suite %s", suite.value)
        claims.extend(SUITES[suite](config))

    report = Report(
        command="verify",
        suite=config.suite.value,
        config=config.model_dump(mode="json", exclude={"output", "threads"}),
        claims=claims,
        wall_time=round(time.perf_counter() - start, 3),
    )
    logger.info(
        "Suite %s finished: %d claim(s), %d failing, %.2fs",
        config.suite.value, len(claims), sum(not c.ok for c in claims), report.wall_time,
    )
    if config.output is not None:
        write_report(report, config.output)
    return report


def write_report(report: Report, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json(), encoding="utf-8")
    logger.info("Report written to %s", path)
    return path
