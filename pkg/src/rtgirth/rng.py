"""Seeded, counter-based random streams.

Philox is counter based, so a ``(seed, path)`` pair pins down the exact sample
sequence on every platform, and independent sub-streams are just longer paths.
"""

from __future__ import annotations

import math

import numpy as np

# shifts and random radii live on this grid so that comparisons against
# integer path lengths are exact
QUANTUM_BITS = 20
QUANTUM = 1 << QUANTUM_BITS


def quantize(x: float) -> int:
    """Nearest grid point, in units of ``2**-20``."""
    return int(round(x * QUANTUM))


class RandomStream:
    def __init__(self, seed: int = 0, path: tuple[int, ...] = ()):
        if seed < 0 or seed >= 1 << 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        self.seed = int(seed)
        self.path = tuple(path)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        self._gen = np.random.Generator(np.random.Philox(ss))

    def child(self, index: int) -> "RandomStream":
        """Independent sub-stream; the parent's own sequence is unaffected."""
        return RandomStream(self.seed, self.path + (int(index),))

    def uniform01(self) -> float:
        """Uniform on (0, 1]."""
        return 1.0 - float(self._gen.random())

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * float(self._gen.random())

    def integers(self, high: int, size: int | None = None):
        return self._gen.integers(0, high, size=size)

    def choice(self, n: int, size: int, replace: bool = True) -> np.ndarray:
        return self._gen.choice(n, size=size, replace=replace)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def exponential(self, beta: float) -> float:
        return sample_exponential(self, beta)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, path={self.path})"


def as_stream(rng) -> RandomStream:
    """Accept a stream, an integer seed or ``None`` (seed 0)."""
    if rng is None:
        return RandomStream(0)
    if isinstance(rng, RandomStream):
        return rng
    if isinstance(rng, (int, np.integer)):
        return RandomStream(int(rng))
    raise TypeError(f"cannot build a RandomStream from {type(rng).__name__}")


def exponential_from_uniform(u: float, beta: float) -> float:
    """Inverse CDF of Exp(beta) at ``u`` in (0, 1]."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if not 0.0 < u <= 1.0:
        raise ValueError("u must lie in (0, 1]")
    x = -math.log(u) / beta
    return x if x > 0 else 0.0


def sample_exponential(rng: RandomStream, beta: float) -> float:
    return exponential_from_uniform(rng.uniform01(), beta)
