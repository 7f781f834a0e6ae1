"""Roundtrip spanner and the girth estimators built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .collapse import LinfSpanner, ScaleGraph, build_scale_graphs, linf_spanner
from .cover import Cover, fast_roundtrip_cover
from .cycles import (
    CycleWitness,
    best_witness,
    shortest_cycle_in_walk,
    shortest_cycle_through,
    witness_value,
)
from .graph import IN, INF, OUT, Graph, edge_subgraph, scc_labels, sssp
from .rng import as_stream


@dataclass
class SpannerResult:
    edges: list[int]
    f0: list[int]
    linf: LinfSpanner
    scales: list[ScaleGraph]
    covers: list[Cover]
    k: float
    c: float
    seed: int

    @property
    def size(self) -> int:
        return len(self.edges)

    def subgraph(self, g: Graph) -> Graph:
        return edge_subgraph(g, self.edges)

    def size_bound(self, n: int) -> float:
        """``8 n^(1+1/k) ln^2 n``, the explicit-constant size target."""
        if n < 2:
            return 0.0
        return 8 * n ** (1 + 1 / self.k) * math.log(n) ** 2


@dataclass
class GirthEstimate:
    """An upper estimate of the girth and the cycle certifying it."""

    value: float
    witness: CycleWitness | None
    method: str
    details: dict = field(default_factory=dict)

    @property
    def is_acyclic(self) -> bool:
        return self.witness is None

    def to_dict(self) -> dict:
        return {
            "estimate": None if math.isinf(self.value) else self.value,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "method": self.method,
            "details": self.details,
        }


def _estimate(w: CycleWitness | None, method: str, **details) -> GirthEstimate:
    return GirthEstimate(witness_value(w), w, method, details)


# --------------------------------------------------------------------------- #
# spanner


def fast_roundtrip_spanner(g: Graph, k: float, c: float = 2.0, rng=None) -> SpannerResult:
    """``F0`` plus the ball trees of a roundtrip cover at every scale ``2^t``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = as_stream(rng)
    linf = linf_spanner(g)
    chosen = set(linf.edges)
    scales = build_scale_graphs(g, linf)
    covers = []
    for sg in scales:
        cover = fast_roundtrip_cover(sg.graph, k, 2**sg.t, c, rng.child(sg.t), scale=sg.t)
        covers.append(cover)
        for b in cover.good_balls():
            chosen.update(sg.graph.root_edge(e) for e in b.tree_edges())
    return SpannerResult(sorted(chosen), list(linf.edges), linf, scales, covers, k, c, rng.seed)


# --------------------------------------------------------------------------- #
# girth


def _self_loop_witness(g: Graph) -> CycleWitness | None:
    loops = [e for e in range(g.m) if g.src[e] == g.dst[e]]
    if not loops:
        return None
    e = min(loops, key=lambda e: (g.length[e], e))
    return CycleWitness.from_edges(g, [e], "self-loop")


def _zero_cycle_witness(g: Graph) -> CycleWitness | None:
    """A cycle made of zero-length edges, if one exists (``d_inf = 0`` there)."""
    zero = [e for e in range(g.m) if g.length[e] == 0 and g.src[e] != g.dst[e]]
    if not zero:
        return None
    comp = scc_labels(g.n, [g.src[e] for e in zero], [g.dst[e] for e in zero])
    for e in zero:
        if comp[g.src[e]] == comp[g.dst[e]]:
            h = edge_subgraph(g, zero)
            w = shortest_cycle_through(h, g.src[e], "zero-cycle")
            return CycleWitness.from_edges(g, [h.origin[x] for x in w.edges], "zero-cycle")
    return None


def _has_cycle(g: Graph) -> bool:
    if any(u == v for u, v in zip(g.src, g.dst)):
        return True
    comp = scc_labels(g.n, g.src, g.dst)
    return any(comp[u] == comp[v] for u, v in zip(g.src, g.dst))


def girth_multiplicative(g: Graph, k: float, c: float = 2.0, rng=None) -> GirthEstimate:
    """``g <= estimate <= O(k log n) g`` from the spanner's ball trees.

    Each ball with two or more vertices contributes the exact roundtrip, inside
    the spanner, between its root and its closest member; the closed walk is
    cut down to its shortest simple cycle.
    """
    rng = as_stream(rng)
    if not _has_cycle(g):
        return _estimate(None, "multiplicative", k=k, c=c, seed=rng.seed)
    sp = fast_roundtrip_spanner(g, k, c, rng)
    sub = sp.subgraph(g)
    out_trees: dict[int, object] = {}
    in_trees: dict[int, object] = {}

    def tree(cache, v, direction):
        t = cache.get(v)
        if t is None:
            t = cache[v] = sssp(sub, v, direction)
        return t

    best = best_witness(_self_loop_witness(g), _zero_cycle_witness(g))
    seen_pairs = set()
    balls = 0
    for sg, cover in zip(sp.scales, sp.covers):
        for b in cover.good_balls():
            if len(b.members) < 2:
                continue
            balls += 1
            v = min(
                (u for u in b.members if u != b.root),
                key=lambda u: (b.t_out.distance(u) + b.t_in.distance(u), u),
            )
            a, x = sg.representative(b.root), sg.representative(v)
            if (a, x) in seen_pairs:
                continue
            seen_pairs.add((a, x))
            t_out, t_in = tree(out_trees, a, OUT), tree(in_trees, a, IN)
            if not (t_out.reached(x) and t_in.reached(x)):
                raise AssertionError(f"spanner lost the roundtrip between {a} and {x}")
            if best is not None and t_out.dist[x] + t_in.dist[x] >= best.length:
                continue
            walk = [sub.origin[e] for e in t_out.path_edges(sub, x) + t_in.path_edges(sub, x)]
            best = best_witness(best, shortest_cycle_in_walk(g, walk, "ball"))
    return _estimate(
        best, "multiplicative", k=k, c=c, seed=rng.seed,
        spanner_size=sp.size, balls=balls, scales=[sg.t for sg in sp.scales],
    )


def _require_unweighted(g: Graph) -> None:
    if not g.is_unweighted():
        raise ValueError("additive girth estimates need all edge lengths equal to 1")


def sample_size(n: int, a: float, c: float) -> int:
    """``ceil(c n^(1-a) ln^2 n)``."""
    if n < 2:
        return n
    return math.ceil(c * n ** (1 - a) * math.log(n) ** 2)


def girth_additive_randomized(g: Graph, a: float, c: float = 2.0, rng=None) -> GirthEstimate:
    """``g <= estimate <= g + O(n^a)`` on unweighted graphs.

    Short cycles are caught by the multiplicative estimate; long ones by exact
    cycle searches from a random vertex sample.
    """
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    _require_unweighted(g)
    rng = as_stream(rng)
    n = g.n
    k = max(1, math.ceil(math.log(n))) if n > 1 else 1
    mult = girth_multiplicative(g, k, c, rng.child(0))
    want = sample_size(n, a, c)
    if want >= n:
        sample = list(range(n))
    else:
        sample = sorted(int(v) for v in rng.child(1).choice(n, want, replace=False))
    sampled = None
    for v in sample:
        sampled = best_witness(sampled, shortest_cycle_through(g, v))
    best = best_witness(mult.witness, sampled)
    return _estimate(
        best, "additive-randomized", a=a, c=c, seed=rng.seed, k=k,
        multiplicative=None if mult.witness is None else mult.value,
        sampled=len(sample), sampled_best=None if sampled is None else sampled.length,
    )
