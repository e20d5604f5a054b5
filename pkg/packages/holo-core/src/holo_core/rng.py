"""Counter-based random substreams keyed by (seed, trial index)."""

from __future__ import annotations

import numpy as np

SeedLike = int | np.random.Generator


def substream(seed: int, index: int = 0) -> np.random.Generator:
    """Philox generator for trial *index* of run *seed*.

    Independent of call order, so parallel and serial runs draw identical
    numbers for the same trial.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(sequence))


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return substream(int(seed))
