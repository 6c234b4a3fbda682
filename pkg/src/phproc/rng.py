"""Reproducible uniform variate streams.

All randomness in the package flows through :class:`UniformStream`, which wraps
numpy's PCG64 generator and returns doubles strictly inside (0, 1).  The same
seed yields the same sequence on every platform because PCG64's bit stream is
part of numpy's stability guarantee.

Replicate seeds for multi-path runs are derived with :func:`derive_seed`, a
SplitMix64 mix of (master seed, index).  The derivation is pure integer
arithmetic, so a study can hand out seeds to workers in any order and still be
reproducible.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# 2**-53; uniforms are (k + 0.5) * 2**-53 for k in [0, 2**53), hence never 0 or 1.
_INV_2_53 = 1.0 / (1 << 53)


def splitmix64(z: int) -> int:
    """One SplitMix64 finalizer round on a 64-bit integer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master_seed: int, index: int) -> int:
    """Seed for the ``index``-th replicate of a run keyed by ``master_seed``.

    Defined as ``splitmix64(master_seed + (index + 1) * GOLDEN)`` where GOLDEN
    is the usual 64-bit golden-ratio increment.  Fixed for all time; results
    must not depend on scheduling, so never derive seeds any other way.
    """
    if index < 0:
        raise ValueError("replicate index must be >= 0")
    return splitmix64((master_seed + (index + 1) * _GOLDEN) & _MASK64)


class UniformStream:
    """Seeded stream of doubles strictly inside the open interval (0, 1)."""

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self._gen = np.random.Generator(np.random.PCG64(self.seed))
        self.count = 0

    def take(self, n: int) -> np.ndarray:
        """Next ``n`` open-interval uniforms as a float64 array."""
        raw = self._gen.integers(0, 1 << 53, size=n, dtype=np.uint64)
        self.count += n
        return (raw.astype(np.float64) + 0.5) * _INV_2_53

    def one(self) -> float:
        return float(self.take(1)[0])


def uniforms(seed: int, n: int) -> np.ndarray:
    """Convenience: the first ``n`` uniforms of a fresh stream."""
    return UniformStream(seed).take(n)
