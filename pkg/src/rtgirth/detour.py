"""Detour-graph reduction and the deterministic additive girth estimate.

Given a shortest path ``P = <v_d, ..., v_0>``, the detour graph adds a spine
``u_0 -> u'_0 -> u_1 -> ... -> u'_d`` whose second shortest simple path
encodes the shortest cycle meeting ``P`` up to an additive ``O(d)``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

from .cycles import CycleWitness, best_witness, shortest_cycle_in_walk, shortest_cycle_through
from .girth import GirthEstimate, _estimate, _require_unweighted, _self_loop_witness
from .graph import IN, INF, OUT, Graph, induced_subgraph, scc_labels, sssp

ORIGINAL, SPINE, EXIT, ENTRY = "original", "spine", "exit", "entry"


class DetourError(RuntimeError):
    """The detour graph or a path through it violates its construction."""


@dataclass
class DetourGraph:
    graph: Graph
    base: Graph
    d: int
    path: list[int]  # path[i] = v_i
    path_edges: list[int]  # path_edges[i] = base edge v_i -> v_{i-1}, index 0 unused
    spine: list[int]  # the 2d+1 edge ids of P' in order
    kinds: list[tuple]  # per edge of ``graph``: (kind, index on P, base edge or None)

    def u(self, i: int) -> int:
        return self.base.n + 2 * i

    def u_prime(self, i: int) -> int:
        return self.base.n + 2 * i + 1

    @property
    def source(self) -> int:
        return self.u(0)

    @property
    def target(self) -> int:
        return self.u_prime(self.d)


@dataclass
class SecondPath:
    length: int
    edges: list[int]
    removed: int  # spine edge avoided


def build_detour_graph(g: Graph, path: Sequence[int]) -> DetourGraph:
    """Detour graph for ``path = [v_d, ..., v_0]`` (a path of ``d`` edges of ``g``).

    Original edges get weight 1; spine edges weight 1; exits from ``u_i`` to
    ``v_i`` and to each out-neighbour of ``v_i`` weigh ``4d - 3i``; entries from
    each in-neighbour of ``v_i`` into ``u'_i`` weigh ``3i``.
    """
    path = list(path)
    d = len(path) - 1
    if d < 1:
        raise DetourError("path needs at least one edge")
    if len(set(path)) != len(path):
        raise DetourError("path repeats a vertex")
    v = path[::-1]
    p_edges = [-1]
    for i in range(1, d + 1):
        hop = [e for w, _, e in g.out_adj[v[i]] if w == v[i - 1]]
        if not hop:
            raise DetourError(f"({v[i]}, {v[i - 1]}) is not an edge")
        p_edges.append(min(hop))
    n = g.n
    edges = [(a, b, 1) for a, b in zip(g.src, g.dst)]
    kinds: list[tuple] = [(ORIGINAL, None, e) for e in range(g.m)]
    spine = []

    def add(a, b, w, kind):
        edges.append((a, b, w))
        kinds.append(kind)
        return len(edges) - 1

    for i in range(d + 1):
        spine.append(add(n + 2 * i, n + 2 * i + 1, 1, (SPINE, i, None)))
        if i < d:
            spine.append(add(n + 2 * i + 1, n + 2 * i + 2, 1, (SPINE, i, None)))
    for i in range(d + 1):
        add(n + 2 * i, v[i], 4 * d - 3 * i, (EXIT, i, None))
        for x, _, e in g.out_adj[v[i]]:
            add(n + 2 * i, x, 4 * d - 3 * i, (EXIT, i, e))
        for y, _, e in g.in_adj[v[i]]:
            add(y, n + 2 * i + 1, 3 * i, (ENTRY, i, e))
    dg = DetourGraph(Graph(n + 2 * (d + 1), edges), g, d, v, p_edges, spine, kinds)
    got = sssp(dg.graph, dg.source, OUT).distance(dg.target)
    if got != 2 * d + 1:
        raise DetourError(f"spine is not the unique shortest path: distance {got} != {2 * d + 1}")
    return dg


def _dijkstra_without(g: Graph, s: int, t: int, banned: int):
    dist = {}
    via = {}
    best = {s: 0}
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in dist:
            continue
        dist[u] = d
        if u == t:
            break
        for w, ln, e in g.out_adj[u]:
            if e == banned or w in dist:
                continue
            nd = d + ln
            if nd < best.get(w, INF):
                best[w] = nd
                via[w] = e
                heapq.heappush(heap, (nd, w))
    if t not in dist:
        return None
    chain = []
    cur = t
    while cur != s:
        e = via[cur]
        chain.append(e)
        cur = g.src[e]
    chain.reverse()
    return dist[t], chain


def second_shortest_path(dg: DetourGraph) -> SecondPath | None:
    """Exact second shortest simple ``u_0 -> u'_d`` path.

    Every simple path other than the spine skips some spine edge, so the best
    path with one spine edge banned, minimised over all ``2d + 1`` bans, is it.
    """
    best = None
    for e in dg.spine:
        hit = _dijkstra_without(dg.graph, dg.source, dg.target, e)
        if hit is not None and (best is None or hit[0] < best.length):
            best = SecondPath(hit[0], hit[1], e)
    return best


def extract_cycle(dg: DetourGraph, sp: SecondPath) -> CycleWitness:
    """Cycle of the base graph through ``P(v_j, v_i)`` recovered from a detour."""
    kinds = [dg.kinds[e] for e in sp.edges]
    try:
        start = next(k for k, (kind, _, _) in enumerate(kinds) if kind == EXIT)
        stop = next(k for k in range(start, len(kinds)) if kinds[k][0] == ENTRY)
    except StopIteration:
        raise DetourError("second path never leaves the spine") from None
    _, i, exit_edge = kinds[start]
    _, j, entry_edge = kinds[stop]
    if j < i:
        raise DetourError(f"detour re-enters at {j} before leaving at {i}")
    middle = []
    for kind, _, e in kinds[start + 1:stop]:
        if kind != ORIGINAL:
            raise DetourError("detour touches the spine between exit and entry")
        middle.append(e)
    walk = ([exit_edge] if exit_edge is not None else []) + middle + [entry_edge]
    walk += [dg.path_edges[h] for h in range(j, i, -1)]
    w = shortest_cycle_in_walk(dg.base, walk, "detour")
    if w.length > dg.d + sp.length:
        raise DetourError(f"cycle of length {w.length} exceeds d + L = {dg.d + sp.length}")
    return w


# --------------------------------------------------------------------------- #


def detour_length(n: int, a: float, epsilon: float) -> int:
    return max(1, math.ceil(epsilon * n**a))


def iteration_budget(n: int, a: float, epsilon: float) -> int:
    return max(1, math.ceil(n ** (1 - a) / epsilon))


def _longest_tree_path(h: Graph, z: int) -> list[int]:
    """Edge ids of the longer of the deepest out- and in-tree paths from ``z``."""
    t_out, t_in = sssp(h, z, OUT), sssp(h, z, IN)
    far_out = min(t_out.dist, key=lambda v: (-t_out.dist[v], v))
    far_in = min(t_in.dist, key=lambda v: (-t_in.dist[v], v))
    if t_out.dist[far_out] >= t_in.dist[far_in]:
        return t_out.path_edges(h, far_out)
    return t_in.path_edges(h, far_in)


def girth_additive_deterministic(g: Graph, a: float, epsilon: float, early_stop: bool = False) -> GirthEstimate:
    """``g <= estimate <= g + O(n^a)`` for short girth, ``(1 + O(eps)) g`` otherwise.

    Deterministic: repeatedly take a long shortest path in each SCC, look for
    a short cycle through its last ``d`` edges with the detour graph, and delete
    those vertices.  The best cycle seen is returned.
    """
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    _require_unweighted(g)
    n = g.n
    d = detour_length(n, a, epsilon)
    budget = iteration_budget(n, a, epsilon)
    details = {"a": a, "epsilon": epsilon, "d": d, "budget": budget}
    loop = _self_loop_witness(g)
    if loop is not None:
        return _estimate(loop, "additive-deterministic", rounds=0, stop="self-loop", **details)
    alive = set(range(n))
    best = None
    stop = "exhausted"
    rounds = 0
    while rounds < budget:
        h, hv, he = induced_subgraph(g, alive)
        comp = scc_labels(h.n, h.src, h.dst)
        groups: dict[int, list[int]] = {}
        for v in range(h.n):
            groups.setdefault(comp[v], []).append(v)
        sccs = sorted((c for c in groups.values() if len(c) > 1), key=lambda c: c[0])
        if not sccs:
            stop = "acyclic"
            break
        rounds += 1
        removed = []
        for members in sccs:
            s, sv, se = induced_subgraph(h, members)
            to_g = [he[e] for e in se]
            q = _longest_tree_path(s, 0)
            if len(q) < d:
                w = shortest_cycle_through(s, 0, "base-case")
                best = best_witness(best, CycleWitness.from_edges(g, [to_g[e] for e in w.edges], "base-case"))
                stop = "short-diameter"
                break
            tail = q[-d:]
            pv = [s.src[e] for e in tail] + [s.dst[tail[-1]]]
            dg = build_detour_graph(s, pv)
            sp = second_shortest_path(dg)
            if sp is not None:
                w = extract_cycle(dg, sp)
                best = best_witness(best, CycleWitness.from_edges(g, [to_g[e] for e in w.edges], "detour"))
                if early_stop and sp.length <= 16 * d:
                    stop = "short-detour"
                    break
            removed.extend(hv[sv[x]] for x in pv)
        if stop != "exhausted":
            break
        alive.difference_update(removed)
    return _estimate(best, "additive-deterministic", rounds=rounds, stop=stop, **details)
