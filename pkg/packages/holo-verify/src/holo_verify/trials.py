"""Fan trials out over worker threads and collect results in trial order."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable
from typing import TypeVar

from holo_verify.config import resolve_threads

logger = logging.getLogger(__name__)

T = TypeVar("T")


async def _gather(fn: Callable[[int], T], count: int, limit: int) -> list[T]:
    semaphore = asyncio.Semaphore(limit)

    async def _one(trial: int) -> T:
        async with semaphore:
            return await asyncio.to_thread(fn, trial)

    return await asyncio.gather(*(_one(t) for t in range(count)))


def run_trials(fn: Callable[[int], T], count: int, threads: int | None = None) -> list[T]:
    """Run ``fn(0) ... fn(count - 1)`` concurrently, at most *threads* at a time.

    Each trial draws from its own (seed, trial) substream, so the result
    list does not depend on scheduling.
    """
    limit = resolve_threads(threads)
    logger.debug("Running %d trial(s) on %d thread(s)", count, limit)
    if limit == 1 or count == 1:
        return [fn(t) for t in range(count)]
    return asyncio.run(_gather(fn, count, limit))
