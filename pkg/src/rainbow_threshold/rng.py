"""Seeded random streams.

All randomness goes through numpy's PCG64 bit generator, seeded via
``SeedSequence``. Sub-streams are derived by spawn keys so that a single
64-bit seed fans out into independent, reproducible streams.
"""
from __future__ import annotations

import numpy as np

GENERATOR_NAME = "numpy.random.PCG64 via SeedSequence"

STREAM_GRAPH = 0
STREAM_COLOUR = 1


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=tuple(stream))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(master_seed: int, *keys: int) -> int:
    """Pure function of ``(master_seed, *keys)`` returning a 64-bit seed."""
    ss = np.random.SeedSequence(entropy=int(master_seed) & (2**64 - 1), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
