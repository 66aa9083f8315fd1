"""Seeded random streams.

Every stream is a numpy PCG64 generator seeded through SeedSequence, and
normals come from numpy's ziggurat sampler (Generator.standard_normal).
Both are platform independent, so a seed fully determines the sequence.

Stream splitting: child stream i of a stream with seed s is seeded with the
first 64-bit word of SeedSequence(entropy=s, spawn_key=(i,)).generate_state.
"""
import numpy as np

from formstab.errors import InvalidArgumentError

SEED_LIMIT = 2 ** 64


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise InvalidArgumentError(f"Seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise InvalidArgumentError(f"Seed must be a 64-bit unsigned integer, got {seed}")
    return seed


class RngStream:
    """A single-owner random stream. Not safe to share between threads; use child() instead."""

    def __init__(self, seed):
        self.seed = check_seed(seed)
        self._generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def __repr__(self):
        return f"RngStream(seed={self.seed})"

    def child(self, index):
        """Independent stream number `index` derived from this stream's seed."""
        if isinstance(index, bool) or not isinstance(index, (int, np.integer)) or index < 0:
            raise InvalidArgumentError(f"Child stream index must be a non-negative integer, got {index!r}")
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(int(index),))
        child_seed = int(sequence.generate_state(1, dtype=np.uint64)[0])
        return RngStream(child_seed)

    def standard_normal(self, shape):
        """Draw standard normals, filling `shape` in row-major order."""
        return self._generator.standard_normal(shape)
