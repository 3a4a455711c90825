"""Seeded random streams.

Every stream is a counter-based Philox generator. Streams are keyed by
``(tag, index)`` under a root seed, so the value computed for a given index
does not depend on the order in which indices are visited.
"""

from __future__ import annotations

import os

import numpy as np

DEFAULT_SEED_ENV = "SLC_SEED"


def default_seed() -> int | None:
    raw = os.environ.get(DEFAULT_SEED_ENV)
    return int(raw) if raw not in (None, "") else None


def make_rng(seed: int | np.random.SeedSequence | None = None) -> np.random.Generator:
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(seed))


class StreamFactory:
    """Derives independent generators from one root seed."""

    def __init__(self, seed: int | np.random.Generator | None = None):
        if isinstance(seed, np.random.Generator):
            seed = int(seed.integers(0, 2**63 - 1))
        elif seed is None:
            seed = default_seed()
        root = np.random.SeedSequence(seed)
        self.entropy = root.entropy

    def stream(self, *key: int) -> np.random.Generator:
        return make_rng(np.random.SeedSequence(self.entropy, spawn_key=tuple(int(k) for k in key)))
