"""Exponentially shifted clustering of directed graphs.

Two flavours: the simultaneous multi-source rule (every vertex joins the seed
minimising ``-x_v + d(v, u)``) and sequential ball growing with exponential
radii.  Shifts are drawn from Exp(ln(n) / r) and snapped to a dyadic grid so
that all comparisons with integer path lengths are exact.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import IN, OUT, DistanceTree, Graph, VertexPartition, sssp
from .rng import QUANTUM, RandomStream, as_stream, quantize, sample_exponential


@dataclass
class ClusterResult:
    """Clusters rooted at seeds, followed by the (possibly empty) residual."""

    direction: str
    partition: VertexPartition
    shifts: dict[int, float]
    residual: list[int] = field(default_factory=list)

    @property
    def clusters(self) -> list[list[int]]:
        return self.partition.clusters

    @property
    def rooted(self) -> list[tuple[int, list[int], DistanceTree]]:
        """``(root, members, tree)`` for every rooted cluster."""
        p = self.partition
        return [
            (root, members, tree)
            for root, members, tree in zip(p.roots, p.clusters, p.trees)
            if root is not None
        ]


def clustering_rate(n: int, r: float) -> float:
    """``beta = ln(n) / r``; graphs with fewer than two vertices use ``ln 2``."""
    if r <= 0:
        raise ValueError("radius must be positive")
    return math.log(max(n, 2)) / r


def _draw_shifts(seeds, beta, rng, forced):
    shifts = {}
    for v in seeds:
        if forced is not None and v in forced:
            x = float(forced[v])
            if x < 0:
                raise ValueError("forced shifts must be nonnegative")
        else:
            x = sample_exponential(rng, beta)
        shifts[v] = quantize(x) / QUANTUM
    return shifts


def _finish(g, direction, clusters, roots, trees, shifts):
    assigned = {v for c in clusters for v in c}
    residual = [v for v in range(g.n) if v not in assigned]
    if residual:
        clusters = clusters + [residual]
        roots = roots + [None]
        trees = trees + [None]
    partition = VertexPartition.from_clusters(g.n, clusters, roots=roots, trees=trees)
    return ClusterResult(direction, partition, shifts, residual)


def cluster(
    g: Graph,
    seeds: Iterable[int],
    r: float,
    rng=None,
    direction: str = OUT,
    n_log: int | None = None,
    shifts: Mapping[int, float] | None = None,
) -> ClusterResult:
    """Assign each vertex to the seed minimising ``-x_v + d(v, u)`` when that is <= 0.

    One multi-source Dijkstra: seed ``v`` starts at offset ``max(x) - x_v`` and
    the search stops at ``max(x)``.  Ties go to the lowest seed id.  ``n_log``
    overrides the vertex count used in the rate (recursive callers pass the
    size of the top-level graph).  ``shifts`` forces ``x_v`` for testing.
    """
    rng = as_stream(rng)
    seeds = sorted(set(seeds))
    for v in seeds:
        if not 0 <= v < g.n:
            raise ValueError(f"seed {v} outside [0, {g.n})")
    if not seeds:
        return _finish(g, direction, [], [], [], {})
    beta = clustering_rate(n_log if n_log is not None else g.n, r)
    x = _draw_shifts(seeds, beta, rng, shifts)
    xq = {v: quantize(x[v]) for v in seeds}
    top = max(xq.values())
    adj = g.adjacency(direction)

    owner: dict[int, int] = {}
    dist: dict[int, int] = {}
    parent: dict[int, int] = {}
    heap = [(top - xq[v], v, v, 0, -1) for v in seeds]
    heapq.heapify(heap)
    while heap:
        key, s, u, d, e = heapq.heappop(heap)
        if u in owner:
            continue
        owner[u] = s
        dist[u] = d
        if e >= 0:
            parent[u] = e
        for w, length, f in adj[u]:
            if w in owner:
                continue
            nk = key + length * QUANTUM
            if nk <= top:
                heapq.heappush(heap, (nk, s, w, d + length, f))

    members: dict[int, list[int]] = {}
    for u in range(g.n):
        if u in owner:
            members.setdefault(owner[u], []).append(u)
    clusters, roots, trees = [], [], []
    for s in seeds:
        if s not in members:
            continue
        mem = members[s]
        tree = DistanceTree(
            s,
            direction,
            {u: dist[u] for u in mem},
            {u: parent[u] for u in mem if u in parent},
        )
        clusters.append(mem)
        roots.append(s)
        trees.append(tree)
    return _finish(g, direction, clusters, roots, trees, x)


def cluster_out(g, seeds, r, rng=None, **kw) -> ClusterResult:
    return cluster(g, seeds, r, rng, direction=OUT, **kw)


def cluster_in(g, seeds, r, rng=None, **kw) -> ClusterResult:
    return cluster(g, seeds, r, rng, direction=IN, **kw)


def sequential_cluster(
    g: Graph,
    order: Sequence[int],
    r: float,
    rng=None,
    direction: str = OUT,
    n_log: int | None = None,
    shifts: Mapping[int, float] | None = None,
) -> ClusterResult:
    """Carve balls of radius ``x_i ~ Exp(beta)`` around each surviving seed in turn."""
    rng = as_stream(rng)
    beta = clustering_rate(n_log if n_log is not None else g.n, r)
    alive = [True] * g.n
    clusters, roots, trees = [], [], []
    drawn: dict[int, float] = {}
    for v in order:
        if not 0 <= v < g.n:
            raise ValueError(f"seed {v} outside [0, {g.n})")
        if not alive[v]:
            continue
        x = _draw_shifts([v], beta, rng, shifts)[v]
        drawn[v] = x
        tree = sssp(g, v, direction, cutoff=x, alive=alive)
        mem = sorted(tree.dist)
        for u in mem:
            alive[u] = False
        clusters.append(mem)
        roots.append(v)
        trees.append(tree)
    return _finish(g, direction, clusters, roots, trees, drawn)


def sequential_cluster_out(g, order, r, rng=None, **kw) -> ClusterResult:
    return sequential_cluster(g, order, r, rng, direction=OUT, **kw)


def sequential_cluster_in(g, order, r, rng=None, **kw) -> ClusterResult:
    return sequential_cluster(g, order, r, rng, direction=IN, **kw)
