"""Brute-force ground truth and instance generators for testing.

Nothing here reuses the algorithms under test; only the graph-core single
source search and Tarjan's SCCs are shared.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from .cycles import CycleWitness, shortest_cycle_through
from .graph import IN, INF, OUT, Graph, scc_labels, sssp
from .rng import as_stream

APSP_LIMIT = 512
GIRTH_LIMIT = 512
D_INFTY_LIMIT = 128
INCREMENTAL_LIMIT = 300
ENUMERATION_LIMIT = 22


class OracleLimitError(ValueError):
    """Instance is larger than the oracle's documented size cap."""


def _cap(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise OracleLimitError(f"{what} = {value} exceeds the oracle limit {limit}")


def exact_distances(g: Graph) -> np.ndarray:
    """``n x n`` one-way distance matrix from ``n`` searches."""
    _cap(g.n, APSP_LIMIT, "n")
    out = np.full((g.n, g.n), INF)
    for v in range(g.n):
        for u, d in sssp(g, v, OUT).dist.items():
            out[v, u] = d
    return out


def exact_roundtrip_apsp(g: Graph) -> np.ndarray:
    """Symmetric matrix of ``d(u, v) + d(v, u)``, infinite off mutual reachability."""
    _cap(g.n, APSP_LIMIT, "n")
    fwd = exact_distances(g)
    bwd = np.full((g.n, g.n), INF)
    for v in range(g.n):
        for u, d in sssp(g, v, IN).dist.items():
            bwd[v, u] = d
    return fwd + bwd


def max_finite(mat: np.ndarray) -> float:
    fin = mat[np.isfinite(mat)]
    return float(fin.max()) if fin.size else 0.0


def max_stretch(g: Graph, sub: Graph) -> float:
    """Largest ratio of roundtrip distances in ``sub`` over those in ``g``."""
    base = exact_roundtrip_apsp(g)
    kept = exact_roundtrip_apsp(sub)
    mask = np.isfinite(base) & (base > 0)
    if not mask.any():
        return 1.0
    if not np.isfinite(kept[mask]).all():
        return INF
    return float(max(1.0, (kept[mask] / base[mask]).max()))


def _bfs_return(succ, v, limit) -> float:
    """Hops of the shortest closed walk from ``v`` back to ``v``, if below ``limit``."""
    seen = {v}
    frontier = [v]
    depth = 1
    while frontier and depth < limit:
        nxt = []
        for u in frontier:
            for x in succ[u]:
                if x == v:
                    return depth
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
        depth += 1
    return INF


def exact_girth(g: Graph) -> tuple[float, CycleWitness | None]:
    """Shortest cycle (self-loops included) by a search from every vertex on a cycle.

    Searches stop at the best length found so far; only the winning vertex
    gets its witness built.
    """
    _cap(g.n, GIRTH_LIMIT, "n")
    labels = scc_labels(g.n, g.src, g.dst)
    size = np.bincount(labels, minlength=g.n) if g.n else []
    looped = {u for u, v, _ in g.edges() if u == v}
    unit = g.is_unweighted()
    succ = [sorted({x for x, _, _ in g.out_adj[v]}) for v in range(g.n)] if unit else None
    best, best_v = INF, -1
    for v in range(g.n):
        if size[labels[v]] < 2 and v not in looped:
            continue
        if unit:
            length = _bfs_return(succ, v, best)
            if length < best:
                best, best_v = length, v
            continue
        tree = sssp(g, v, OUT, cutoff=None if math.isinf(best) else best)
        for p, w, _ in g.in_adj[v]:
            d = tree.dist.get(p)
            if d is not None and d + w < best:
                best, best_v = d + w, v
    if best_v < 0:
        return INF, None
    w = shortest_cycle_through(g, best_v, "oracle")
    return w.length, w


def brute_d_infty(g: Graph, u: int, v: int) -> float:
    """Smallest ``l`` such that ``u`` and ``v`` share a cycle of edges ``<= l``.

    For ``u == v`` this is the smallest ``l`` at which ``u`` lies on a cycle
    with some other vertex.
    """
    _cap(g.n, D_INFTY_LIMIT, "n")
    levels = sorted(set(g.length))

    def joined(limit):
        keep = [e for e in range(g.m) if g.length[e] <= limit and g.src[e] != g.dst[e]]
        comp = scc_labels(g.n, [g.src[e] for e in keep], [g.dst[e] for e in keep])
        if u != v:
            return comp[u] == comp[v]
        return sum(1 for x in comp if x == comp[u]) > 1

    lo, hi = 0, len(levels)
    while lo < hi:
        mid = (lo + hi) // 2
        if joined(levels[mid]):
            hi = mid
        else:
            lo = mid + 1
    return levels[lo] if lo < len(levels) else INF


def brute_d_infty_matrix(g: Graph) -> np.ndarray:
    """All-pairs version of :func:`brute_d_infty`: one SCC pass per distinct length."""
    _cap(g.n, D_INFTY_LIMIT, "n")
    out = np.full((g.n, g.n), INF)
    for level in sorted(set(g.length), reverse=True):
        keep = [e for e in range(g.m) if g.length[e] <= level and g.src[e] != g.dst[e]]
        comp = np.asarray(scc_labels(g.n, [g.src[e] for e in keep], [g.dst[e] for e in keep]))
        same = comp[:, None] == comp[None, :]
        sizes = np.bincount(comp, minlength=g.n)
        np.fill_diagonal(same, sizes[comp] > 1)
        out[same] = level
    return out


def incremental_scc_times(n: int, sequence: Sequence[tuple[int, int]]) -> list[int]:
    """Per edge, the shortest prefix (1-based) after which its ends share an SCC."""
    _cap(len(sequence), INCREMENTAL_LIMIT, "m")
    times = [0] * len(sequence)
    pending = set(range(len(sequence)))
    for i in range(1, len(sequence) + 1):
        pre = sequence[:i]
        comp = scc_labels(n, [a for a, _ in pre], [b for _, b in pre])
        for j in sorted(pending):
            if j < i and comp[sequence[j][0]] == comp[sequence[j][1]]:
                times[j] = i
                pending.discard(j)
    if pending:
        raise ValueError(f"edge {min(pending)} never joins an SCC")
    return times


def enumerate_second_simple_path(g: Graph, s: int, t: int, shortest: Sequence[int]) -> float:
    """Shortest simple ``s -> t`` path whose edge list differs from ``shortest``."""
    _cap(g.n, ENUMERATION_LIMIT, "vertex count")
    shortest = list(shortest)
    best = INF
    on_path = [False] * g.n
    edges: list[int] = []

    def dfs(x, length):
        nonlocal best
        if length >= best:
            return
        if x == t:
            if edges != shortest:
                best = length
            return
        on_path[x] = True
        for y, w, e in g.out_adj[x]:
            if not on_path[y]:
                edges.append(e)
                dfs(y, length + w)
                edges.pop()
        on_path[x] = False

    dfs(s, 0)
    return best


# --------------------------------------------------------------------------- #
# generators


def hardness_instance(g: Graph) -> Graph:
    """``L = max(n, 3)`` copies per vertex so that the girth is ``L`` iff ``g`` has a triangle.

    Copy ``i`` of vertex ``v`` (1-based) is vertex ``v * L + i - 1``.  Each edge
    ``(u, v)`` becomes ``(u_L, v_1)``, ``(u_1, v_2)``, ``(u_2, v_3)``; each vertex
    gets the chain ``v_3 -> v_4 -> ... -> v_L``.  Below three vertices the
    layers would wrap onto each other (a 2-cycle would give girth 2), so small
    graphs get three layers anyway.
    """
    if not g.is_unweighted():
        raise ValueError("hardness instance needs an unweighted graph")
    n = g.n
    layers = max(n, 3)

    def copy(v, i):
        return v * layers + i - 1

    edges = []
    for u, v, _ in g.edges():
        edges.append((copy(u, layers), copy(v, 1), 1))
        edges.append((copy(u, 1), copy(v, 2), 1))
        edges.append((copy(u, 2), copy(v, 3), 1))
    for v in range(n):
        for i in range(3, layers):
            edges.append((copy(v, i), copy(v, i + 1), 1))
    return Graph(n * layers, edges)


def has_triangle(g: Graph) -> bool:
    succ = [set() for _ in range(g.n)]
    for u, v, _ in g.edges():
        if u != v:
            succ[u].add(v)
    return any(u in succ[w] for u in range(g.n) for v in succ[u] for w in succ[v] if len({u, v, w}) == 3)


def all_digraphs(n: int):
    """Every loop-free simple digraph on ``n`` labelled vertices."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield Graph(n, [(u, v, 1) for b, (u, v) in enumerate(pairs) if mask >> b & 1])


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def _canonical_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Smallest relabelled edge mask of each graph, over all vertex permutations."""
    pairs = _pairs(n)
    index = {p: b for b, p in enumerate(pairs)}
    nbits = len(pairs)
    chunks = [(lo, min(lo + 10, nbits)) for lo in range(0, nbits, 10)]
    best = None
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for lo, hi in chunks:
            table = np.zeros(1 << (hi - lo), dtype=np.int64)
            for b in range(lo, hi):
                u, v = pairs[b]
                bit = np.int64(1) << index[(perm[u], perm[v])]
                table[(np.arange(len(table)) >> (b - lo)) & 1 == 1] |= bit
            image |= table[(masks >> lo) & ((1 << (hi - lo)) - 1)]
        best = image if best is None else np.minimum(best, image)
    return best


def digraph_class_masks(n: int) -> np.ndarray:
    """Canonical edge masks, one per isomorphism class of simple digraphs on ``n`` vertices.

    Bit ``b`` stands for the ``b``-th ordered pair ``(u, v)``, ``u != v``, in
    lexicographic order; see :func:`graph_from_mask`.

    Classes on ``n`` vertices are found by attaching a new vertex, in every
    possible way, to each class on ``n - 1`` vertices and deduplicating by
    canonical form.
    """
    if n < 1:
        return np.zeros(1, dtype=np.int64)
    reps = np.zeros(1, dtype=np.int64)
    for size in range(2, n + 1):
        old, new = _pairs(size - 1), _pairs(size)
        where = {p: b for b, p in enumerate(new)}
        lift = np.zeros_like(reps)
        for b, p in enumerate(old):
            lift |= ((reps >> b) & 1) << where[p]
        fresh = [where[(size - 1, v)] for v in range(size - 1)] + [where[(v, size - 1)] for v in range(size - 1)]
        ext = np.zeros(1 << len(fresh), dtype=np.int64)
        for j, b in enumerate(fresh):
            ext |= ((np.arange(len(ext)) >> j) & 1) << b
        cand = (lift[:, None] | ext[None, :]).ravel()
        reps = np.unique(_canonical_masks(size, cand))
    return reps


def graph_from_mask(n: int, mask: int) -> Graph:
    return Graph(n, [(u, v, 1) for b, (u, v) in enumerate(_pairs(n)) if mask >> b & 1])


def digraph_classes(n: int) -> list[Graph]:
    """One loop-free simple digraph per isomorphism class on ``n`` vertices."""
    return [graph_from_mask(n, m) for m in digraph_class_masks(n).tolist()]


def random_digraph(n: int, m: int, max_len: int = 1, rng=None, simple: bool = True) -> Graph:
    """``m`` edges with uniform endpoints (no self-loops) and lengths in ``[1, max_len]``."""
    if n < 0 or m < 0 or max_len < 1:
        raise ValueError("need n >= 0, m >= 0 and max_len >= 1")
    if m and n < 2:
        raise ValueError("edges need at least two vertices")
    if simple and m > n * (n - 1):
        raise ValueError(f"{m} distinct edges do not fit on {n} vertices")
    rng = as_stream(rng)
    seen = set()
    edges = []
    while len(edges) < m:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u == v or (simple and (u, v) in seen):
            continue
        seen.add((u, v))
        edges.append((u, v, int(rng.integers(max_len)) + 1))
    return Graph(n, edges)


def random_strongly_connected(n: int, extra_m: int, max_len: int = 1, rng=None) -> Graph:
    """A random Hamiltonian cycle plus ``extra_m`` distinct extra edges."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if extra_m > n * (n - 1) - n:
        raise ValueError(f"{extra_m} extra edges do not fit on {n} vertices")
    rng = as_stream(rng)
    order = [int(x) for x in rng.permutation(n)]
    edges = [(order[i], order[(i + 1) % n], int(rng.integers(max_len)) + 1) for i in range(n)]
    seen = {(u, v) for u, v, _ in edges}
    while len(edges) < n + extra_m:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u == v or (u, v) in seen:
            continue
        seen.add((u, v))
        edges.append((u, v, int(rng.integers(max_len)) + 1))
    return Graph(n, edges)


def scc_roundtrip_diameter(g: Graph) -> float:
    """Largest finite roundtrip distance (0 when every SCC is a single vertex)."""
    return max_finite(exact_roundtrip_apsp(g))


def exact_ball_fractions(g: Graph, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact ``|outball(v, r)| / n`` and ``|inball(v, r)| / n`` for every ``v``."""
    n = max(g.n, 1)
    s_out = np.array([len(sssp(g, v, OUT, cutoff=r).dist) for v in range(g.n)]) / n
    s_in = np.array([len(sssp(g, v, IN, cutoff=r).dist) for v in range(g.n)]) / n
    return s_out, s_in


__all__ = [name for name in dir() if not name.startswith("_") and name not in {"annotations", "itertools", "math", "np", "Sequence"}]
