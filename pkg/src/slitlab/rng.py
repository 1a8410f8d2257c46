"""Deterministic random substreams on the counter-based Philox generator.

A substream is keyed by a seed plus any mix of integers and short strings
(engine names, replicate indices).  Streams with distinct keys are
statistically independent, and a given key always yields the same stream, so
results never depend on execution order.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK63 = (1 << 63) - 1


def _key_parts(key) -> tuple[int, ...]:
    parts = []
    for part in key:
        if isinstance(part, str):
            parts.append(zlib.crc32(part.encode("utf-8")))
        else:
            parts.append(int(part) & _MASK63)
    return tuple(parts)


def substream(seed: int, *key) -> np.random.Generator:
    """Philox generator for the (seed, *key) substream."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK63, spawn_key=_key_parts(key))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *key) -> int:
    """Stable integer sub-seed for APIs that take a plain seed."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK63, spawn_key=_key_parts(key))
    return int(ss.generate_state(1, np.uint64)[0])
