"""Named, reproducible random sub-streams.

Every consumer of randomness derives its generator from the experiment seed
plus a stream name, so adding draws to one stage never shifts another.
"""
import zlib

import numpy as np


def _tag(name):
    return zlib.crc32(name.encode("utf-8"))


def substream(seed, name, *keys):
    """Return a ``numpy.random.Generator`` for ``(seed, name, *keys)``."""
    if seed is None:
        raise ValueError("an explicit integer seed is required")
    ss = np.random.SeedSequence(int(seed), spawn_key=(_tag(name), *map(int, keys)))
    return np.random.default_rng(ss)


def spawn_seeds(seed, name, count):
    """Derive ``count`` independent integer seeds for repeated runs."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(_tag(name),))
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in ss.spawn(count)]
