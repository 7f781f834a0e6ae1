"""Sampling estimates of in/out ball sizes at a fixed radius."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import IN, OUT, Graph, distance_rows
from .rng import as_stream


# graphs up to this size keep their thresholded distance matrices between calls
CACHE_LIMIT = 2048


@dataclass
class BallSizeEstimate:
    radius: float
    epsilon: float
    t: int
    s_out: np.ndarray
    s_in: np.ndarray
    samples: np.ndarray


def sample_count(n: int, epsilon: float, constant: float = 20.0) -> int:
    """``ceil(constant * ln(n) / epsilon**2)``, at least 1."""
    return max(1, math.ceil(constant * math.log(max(n, 1)) / epsilon**2))


def estimate_balls(
    g: Graph,
    r: float,
    epsilon: float,
    rng=None,
    n_log: int | None = None,
    constant: float = 20.0,
) -> BallSizeEstimate:
    """Estimate, for every vertex, the fraction of vertices within distance ``r``.

    ``s_out[u]`` estimates ``|outball(u, r)| / n`` and ``s_in[u]`` estimates
    ``|inball(u, r)| / n`` from ``t`` samples drawn with replacement.  A vertex
    sampled several times is searched once and weighted by its multiplicity,
    which gives the same fractions as searching every draw.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    rng = as_stream(rng)
    n = g.n
    t = sample_count(n_log if n_log is not None else n, epsilon, constant)
    if n == 0:
        empty = np.zeros(0)
        return BallSizeEstimate(r, epsilon, t, empty, empty, np.zeros(0, dtype=np.int64))
    samples = np.asarray(rng.integers(n, size=t), dtype=np.int64)
    counts = np.bincount(samples, minlength=n)
    distinct = np.flatnonzero(counts)
    weights = counts[distinct].astype(np.float64)
    # rows: d(v_i, .) and d(., v_i)
    if n <= CACHE_LIMIT:
        from_samples = g.within(OUT, r)[distinct]
        to_samples = g.within(IN, r)[distinct]
    else:
        from_samples = distance_rows(g, distinct, OUT, limit=r) <= r
        to_samples = distance_rows(g, distinct, IN, limit=r) <= r
    s_in = weights @ from_samples / t
    s_out = weights @ to_samples / t
    return BallSizeEstimate(r, epsilon, t, s_out, s_in, samples)

