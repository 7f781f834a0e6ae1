"""Roundtrip covers: single probabilistic passes, repeated passes, and SCCs from covers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clustering import cluster_in, cluster_out
from .estimation import estimate_balls
from .graph import INF, IN, OUT, Ball, DistanceTree, Graph, VertexPartition, in_ball, induced_subgraph, out_ball, roundtrip_ball, sssp
from .rng import QUANTUM, as_stream, quantize

ESTIMATE_EPSILON = 1 / 8
LARGE_FRACTION = 3 / 4
SEED_FRACTION = 1 / 2
CORE_FRACTION = 1 / 4
MAX_CLUSTER_FRACTION = 7 / 8


@dataclass
class PassStats:
    failures: int = 0
    max_depth: int = 0
    balls_carved: int = 0
    clusterings: int = 0


@dataclass
class Cover:
    """Union of probabilistic cover passes over one graph."""

    n: int
    balls: list[Ball]
    pass_index: list[int]
    k: float
    R: float
    c: float
    r: float
    passes: int
    seed: int | None = None
    failures: int = 0
    max_depth: int = 0
    membership: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.membership:
            counts = [0] * self.n
            for b in self.balls:
                for v in b.members:
                    counts[v] += 1
            self.membership = counts

    def __len__(self) -> int:
        return len(self.balls)

    def good_balls(self) -> list[Ball]:
        return [b for b in self.balls if not b.failure]

    def radius_bound(self) -> float:
        """Largest radius any non-failure ball may have: ``2(c+1) * r``."""
        return 2 * (self.c + 1) * self.r

    def shares_ball(self, u: int, v: int, include_failures: bool = False) -> bool:
        for b in self.balls:
            if b.failure and not include_failures:
                continue
            mem = b.members
            if u in mem and v in mem:
                return True
        return False

    def co_membership(self, include_failures: bool = False) -> np.ndarray:
        """Boolean ``n x n`` matrix: do ``u`` and ``v`` share a ball?"""
        out = np.zeros((self.n, self.n), dtype=bool)
        for b in self.balls:
            if b.failure and not include_failures:
                continue
            idx = np.asarray(b.members, dtype=np.int64)
            out[np.ix_(idx, idx)] = True
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "R": self.R,
            "c": self.c,
            "r": self.r,
            "passes": self.passes,
            "seed": self.seed,
            "failures": self.failures,
            "balls": [
                {
                    "root": b.root,
                    "members": list(b.members),
                    "radius": None if math.isinf(b.radius) else b.radius,
                    "scale": b.scale,
                    "pass": p,
                    "failure": b.failure,
                }
                for b, p in zip(self.balls, self.pass_index)
            ],
        }


def _lift_tree(tree: DistanceTree, vmap, emap) -> DistanceTree:
    return DistanceTree(
        vmap[tree.root],
        tree.direction,
        {vmap[v]: d for v, d in tree.dist.items()},
        {vmap[v]: emap[e] for v, e in tree.parent.items()},
    )


def _lift_ball(ball: Ball, vmap, emap) -> Ball:
    return Ball(
        vmap[ball.root],
        tuple(vmap[v] for v in ball.members),
        _lift_tree(ball.t_out, vmap, emap),
        _lift_tree(ball.t_in, vmap, emap),
        ball.radius,
        ball.scale,
        ball.failure,
    )


def _failure_ball(h: Graph, root: int) -> Ball:
    members = tuple(range(h.n))
    return Ball(root, members, sssp(h, root, OUT), sssp(h, root, IN), INF, failure=True)


def _ball_radius(rng, c: float, r: float) -> float:
    """Uniform in ``[2cr, 2(c+1)r]`` on the quantum grid, never above the top."""
    top = 2 * (c + 1) * r
    return min(quantize(rng.uniform(2 * c * r, top)), math.floor(top * QUANTUM)) / QUANTUM


def probabilistic_cover(
    g: Graph,
    r: float,
    c: float = 2.0,
    rng=None,
    n_log: int | None = None,
    stats: PassStats | None = None,
) -> list[Ball]:
    """One partition of ``V`` into roundtrip balls of radius ``O(r)``.

    Recursive: estimate ball sizes at radius ``c*r``; if some vertex has large
    in- and out-balls, carve a roundtrip ball of random radius in
    ``[2cr, 2(c+1)r]`` around the lowest such vertex and recurse on the rest;
    otherwise cluster out of (or into) the vertices with small balls and
    recurse on every cluster.  Failure branches return the current vertex set
    as a single flagged ball.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if c < 1:
        raise ValueError("c must be at least 1")
    rng = as_stream(rng)
    stats = stats if stats is not None else PassStats()
    n_log = n_log if n_log is not None else g.n
    out: list[Ball] = []
    stack: list[tuple[list[int], int]] = [(list(range(g.n)), 1)] if g.n else []
    while stack:
        verts, depth = stack.pop()
        stats.max_depth = max(stats.max_depth, depth)
        if len(verts) == g.n:
            h, vmap, emap = g, verts, list(range(g.m))
        else:
            h, vmap, emap = induced_subgraph(g, verts)
        size = h.n
        if size == 1:
            # a lone vertex always has both balls large and is carved whole
            r_ball = _ball_radius(rng, c, r)
            stats.balls_carved += 1
            out.append(_lift_ball(roundtrip_ball(h, 0, r_ball), vmap, emap))
            continue
        est = estimate_balls(h, c * r, ESTIMATE_EPSILON, rng, n_log=n_log)
        s_out = est.s_out >= LARGE_FRACTION
        s_in = est.s_in >= LARGE_FRACTION
        both = np.flatnonzero(s_out & s_in)
        if both.size:
            u = int(both[0])
            core = out_ball(h, u, c * r) & in_ball(h, u, c * r)
            if len(core) < CORE_FRACTION * size:
                stats.failures += 1
                out.append(_lift_ball(_failure_ball(h, u), vmap, emap))
                continue
            r_ball = _ball_radius(rng, c, r)
            ball = roundtrip_ball(h, u, r_ball)
            stats.balls_carved += 1
            out.append(_lift_ball(ball, vmap, emap))
            inside = set(ball.members)
            rest = [vmap[v] for v in range(size) if v not in inside]
            if rest:
                stack.append((rest, depth + 1))
            continue
        stats.clusterings += 1
        if int(s_out.sum()) <= SEED_FRACTION * size:
            seeds = np.flatnonzero(~s_out).tolist()
            parts = cluster_out(h, seeds, r, rng, n_log=n_log)
        else:
            seeds = np.flatnonzero(~s_in).tolist()
            parts = cluster_in(h, seeds, r, rng, n_log=n_log)
        if max(len(cl) for cl in parts.clusters) > MAX_CLUSTER_FRACTION * size:
            stats.failures += 1
            out.append(_lift_ball(_failure_ball(h, 0), vmap, emap))
            continue
        for cl in reversed(parts.clusters):
            stack.append(([vmap[v] for v in cl], depth + 1))
    return out


def cover_radius_parameter(n: int, k: float, R: float) -> float:
    """``r = 6 R k ln n`` (``ln`` taken as 1 for a single vertex)."""
    log_n = math.log(n) if n > 1 else 1.0
    return 6 * R * k * log_n


def cover_pass_count(n: int, k: float, c: float) -> int:
    """``c * ceil(n^(1/k)) * ceil(ln n)`` passes, at least one."""
    log_n = math.ceil(math.log(n)) if n > 1 else 1
    return max(1, math.ceil(c * math.ceil(n ** (1 / k)) * max(1, log_n)))


def fast_roundtrip_cover(
    g: Graph,
    k: float,
    R: float,
    c: float = 2.0,
    rng=None,
    scale: int | None = None,
) -> Cover:
    """Union of independent probabilistic passes at ``r = 6 R k ln n``.

    Pass ``i`` draws from ``rng.child(i)``, so passes can be recomputed or run
    in any order without changing the result.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if R <= 0:
        raise ValueError("R must be positive")
    rng = as_stream(rng)
    n = g.n
    r = cover_radius_parameter(n, k, R)
    passes = cover_pass_count(n, k, c) if n else 0
    balls: list[Ball] = []
    pass_index: list[int] = []
    stats = PassStats()
    for i in range(passes):
        for b in probabilistic_cover(g, r, c, rng.child(i), n_log=n, stats=stats):
            b.scale = scale
            balls.append(b)
            pass_index.append(i)
    return Cover(
        n, balls, pass_index, k, R, c, r, passes,
        seed=rng.seed, failures=stats.failures, max_depth=stats.max_depth,
    )


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                ra, rb = rb, ra
            self.parent[ra] = rb


def scc_via_cover(g: Graph, R: float, rng=None, c: float = 2.0) -> VertexPartition:
    """SCCs as connected classes of the shares-a-ball relation.

    ``R`` must bound the roundtrip diameter of every SCC; failure balls are
    ignored.
    """
    k = max(1.0, math.log(g.n)) if g.n > 1 else 1.0
    cover = fast_roundtrip_cover(g, k, R, c, rng)
    dsu = _DisjointSet(g.n)
    for b in cover.good_balls():
        first = b.members[0]
        for v in b.members[1:]:
            dsu.union(first, v)
    return VertexPartition.from_labels([dsu.find(v) for v in range(g.n)])
