"""Collapse machinery for removing the dependence on edge-length range.

``d_inf(u, v)`` is the smallest ``d`` such that some cycle through ``u`` and
``v`` uses only edges of length ``<= d``.  It is computed for every edge by a
divide-and-conquer over the edges sorted by length, recorded in a collapse
forest (leaves are vertices, internal nodes are SCCs labelled by the length at
which they formed), and used to build the per-scale graphs ``G^(t)``: ``G``
collapsed to ``[2^t / n, 2^t]``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import INF, Graph, scc_edge_mask, scc_labels


class CollapseError(ValueError):
    """An edge never becomes part of a strongly connected component."""

    def __init__(self, index: int):
        super().__init__(f"edge at sequence position {index} is never inside a strongly connected component")
        self.index = index


@dataclass
class CollapseTimes:
    """``times[j]`` is the 1-based prefix length at which edge ``j`` joins an SCC."""

    times: list[int]

    def __getitem__(self, j: int) -> int:
        return self.times[j]

    def __len__(self) -> int:
        return len(self.times)


def _compact(edges):
    ids: dict[int, int] = {}
    for a, b, _, _ in edges:
        if a not in ids:
            ids[a] = len(ids)
        if b not in ids:
            ids[b] = len(ids)
    return ids


def _collapse_times(edges, lo, hi, out):
    """``edges`` are ``(a, b, rank, index)``; ranks of interest lie in ``[lo, hi]``."""
    if not edges:
        return
    ids = _compact(edges)
    if lo == hi:
        prefix = [(ids[a], ids[b]) for a, b, rank, _ in edges if rank <= lo]
        comp = scc_labels(len(ids), [p[0] for p in prefix], [p[1] for p in prefix])
        for a, b, _, idx in edges:
            if comp[ids[a]] != comp[ids[b]]:
                raise CollapseError(idx)
            out[idx] = lo
        return
    mid = (lo + hi) // 2
    prefix = [(ids[a], ids[b]) for a, b, rank, _ in edges if rank <= mid]
    comp = scc_labels(len(ids), [p[0] for p in prefix], [p[1] for p in prefix])
    inside, outside = [], []
    for a, b, rank, idx in edges:
        ca, cb = comp[ids[a]], comp[ids[b]]
        if ca == cb and rank <= mid:
            inside.append((a, b, rank, idx))
        else:
            outside.append((ca, cb, rank, idx))
    _collapse_times(inside, lo, mid, out)
    _collapse_times(outside, mid + 1, hi, out)


def find_collapse_times(n: int, sequence: Sequence[tuple[int, int]]) -> CollapseTimes:
    """Collapse time of every edge in ``sequence`` (positions are ranks ``1..len``).

    Halves the rank range at each level: edges already inside an SCC of the
    lower half recurse left on the original vertices, the rest recurse right
    on the vertex set with those SCCs contracted.
    """
    for a, b in sequence:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge ({a}, {b}) has an endpoint outside [0, {n})")
    out = [0] * len(sequence)
    edges = [(a, b, i + 1, i) for i, (a, b) in enumerate(sequence)]
    if edges:
        _collapse_times(edges, 1, len(edges), out)
    return CollapseTimes(out)


class CollapseForest:
    """Leaves ``0..n-1`` (label 0) and merged SCC nodes labelled by merge length.

    Labels never decrease towards a root, so the label of the lowest common
    ancestor of two leaves is their ``d_inf``.
    """

    def __init__(self, n_leaves: int, parent: Sequence[int], label: Sequence[int]):
        self.n_leaves = n_leaves
        self.parent = list(parent)
        self.label = list(label)
        size = len(self.parent)
        self.children: list[list[int]] = [[] for _ in range(size)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                self.children[p].append(v)
        # parents are always created after their children
        self.depth = [0] * size
        for v in range(size - 1, -1, -1):
            p = self.parent[v]
            if p >= 0:
                self.depth[v] = self.depth[p] + 1
        levels = max(1, size.bit_length())
        up = [[p if p >= 0 else v for v, p in enumerate(self.parent)]]
        for _ in range(1, levels):
            prev = up[-1]
            up.append([prev[prev[v]] for v in range(size)])
        self._up = up
        self._leaves: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self.parent)

    def root_of(self, v: int) -> int:
        while self.parent[v] >= 0:
            v = self.parent[v]
        return v

    def lca(self, u: int, v: int) -> int:
        """Lowest common ancestor, or -1 when ``u`` and ``v`` are in different trees."""
        up, depth = self._up, self.depth
        if depth[u] < depth[v]:
            u, v = v, u
        diff = depth[u] - depth[v]
        k = 0
        while diff:
            if diff & 1:
                u = up[k][u]
            diff >>= 1
            k += 1
        if u == v:
            return u
        for k in range(len(up) - 1, -1, -1):
            if up[k][u] != up[k][v]:
                u, v = up[k][u], up[k][v]
        pu, pv = self.parent[u], self.parent[v]
        if pu < 0 or pu != pv:
            return -1
        return pu

    def highest_within(self, v: int, threshold) -> int:
        """Highest ancestor of ``v`` (``v`` included) whose label is ``<= threshold``."""
        up, label = self._up, self.label
        for k in range(len(up) - 1, -1, -1):
            w = up[k][v]
            if w != v and label[w] <= threshold:
                v = w
        return v

    def leaves(self, node: int) -> list[int]:
        hit = self._leaves.get(node)
        if hit is None:
            if node < self.n_leaves:
                hit = [node]
            else:
                hit = sorted(x for ch in self.children[node] for x in self.leaves(ch))
            self._leaves[node] = hit
        return hit

    def to_dict(self) -> dict:
        return {
            "n_leaves": self.n_leaves,
            "nodes": [{"parent": p, "label": l} for p, l in zip(self.parent, self.label)],
        }


def d_infty_query(forest: CollapseForest, u: int, v: int) -> float:
    """``d_inf(u, v)``; for ``u == v`` the label of ``u``'s parent (its cheapest cycle)."""
    if u == v:
        p = forest.parent[u]
        return forest.label[p] if p >= 0 else INF
    a = forest.lca(u, v)
    return INF if a < 0 else forest.label[a]


@dataclass
class LinfSpanner:
    edges: list[int]
    forest: CollapseForest
    times: CollapseTimes
    ranked: list[int]


def linf_spanner(g: Graph) -> LinfSpanner:
    """``O(n)`` edges preserving every ``d_inf`` value, plus the collapse forest.

    Edges outside SCCs and self-loops are dropped; the rest are ranked by
    ``(length, id)``.  When a new SCC forms at rank ``i`` its out- and in-BFS
    trees over rank ``<= i`` edges (from its lowest node) go into the spanner.
    """
    mask = scc_edge_mask(g)
    ranked = sorted(
        (e for e in range(g.m) if mask[e] and g.src[e] != g.dst[e]),
        key=lambda e: (g.length[e], e),
    )
    times = find_collapse_times(g.n, [(g.src[e], g.dst[e]) for e in ranked])
    groups: dict[int, list[int]] = {}
    for pos, s in enumerate(times.times):
        groups.setdefault(s, []).append(pos)

    parent = [-1] * g.n
    label = [0] * g.n
    dsu = list(range(g.n))
    node_of = list(range(g.n))  # dsu root -> forest node

    def find(x):
        while dsu[x] != x:
            dsu[x] = dsu[dsu[x]]
            x = dsu[x]
        return x

    chosen: list[int] = []
    for i in range(1, len(ranked) + 1):
        group = groups.get(i)
        if not group:
            continue
        out_adj: dict[int, list[tuple[int, int]]] = {}
        in_adj: dict[int, list[tuple[int, int]]] = {}
        touched: set[int] = set()
        for pos in group:
            e = ranked[pos]
            a, b = node_of[find(g.src[e])], node_of[find(g.dst[e])]
            touched.add(a)
            touched.add(b)
            if pos < i:  # rank pos + 1 <= i
                out_adj.setdefault(a, []).append((b, e))
                in_adj.setdefault(b, []).append((a, e))
        if len(touched) < 2:
            continue  # edges landing inside an SCC that formed earlier
        start = min(touched)
        for adj in (out_adj, in_adj):
            seen = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y, e in adj.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        chosen.append(e)
                        queue.append(y)
            if seen != touched:
                raise AssertionError("new SCC is not spanned by its rank-bounded edges")
        new = len(parent)
        parent.append(-1)
        label.append(g.length[ranked[i - 1]])
        for x in touched:
            parent[x] = new
        reps = [find(g.src[ranked[pos]]) for pos in group] + [find(g.dst[ranked[pos]]) for pos in group]
        head = reps[0]
        for r in reps[1:]:
            r = find(r)
            if r != head:
                dsu[r] = head
        node_of[head] = new
    return LinfSpanner(sorted(set(chosen)), CollapseForest(g.n, parent, label), times, ranked)


# --------------------------------------------------------------------------- #
# scale graphs


@dataclass
class ScaleGraph:
    """``G`` collapsed to ``[x_lo, x_hi]``; vertex ``i`` stands for ``members[i]``."""

    graph: Graph
    members: list[list[int]]
    vertex_of: dict[int, int]
    x_lo: float
    x_hi: float
    t: int | None = None

    def representative(self, v: int) -> int:
        return self.members[v][0]

    def original_edges(self, edge_ids) -> list[int]:
        return sorted({self.graph.root_edge(e) for e in edge_ids})


def _assemble(g: Graph, kept: list[int], group_of, groups_members, x_lo, x_hi, t=None) -> ScaleGraph:
    order: list = []
    seen = set()
    for e in kept:
        for x in (group_of(g.src[e]), group_of(g.dst[e])):
            if x not in seen:
                seen.add(x)
                order.append(x)
    order.sort(key=lambda x: groups_members(x)[0])
    local = {x: i for i, x in enumerate(order)}
    members = [groups_members(x) for x in order]
    edges = [(local[group_of(g.src[e])], local[group_of(g.dst[e])], g.length[e]) for e in kept]
    origin = [g.root_edge(e) for e in kept]
    graph = Graph(len(order), edges, origin=origin, labels=[m[0] for m in members])
    vertex_of = {v: i for i, mem in enumerate(members) for v in mem}
    return ScaleGraph(graph, members, vertex_of, x_lo, x_hi, t)


def collapse_to_interval(g: Graph, x_lo: float, x_hi: float) -> ScaleGraph:
    """Apply the four collapse steps literally.

    Merge SCCs of edges ``<= x_lo``; drop edges ``> x_hi``; drop edges whose
    endpoints are not strongly connected by edges ``<= x_hi``; drop vertices
    left without edges.
    """
    if not 0 < x_lo < x_hi:
        raise ValueError("need 0 < x_lo < x_hi")
    low = [e for e in range(g.m) if g.length[e] <= x_lo]
    comp_lo = scc_labels(g.n, [g.src[e] for e in low], [g.dst[e] for e in low])
    high = [e for e in range(g.m) if g.length[e] <= x_hi]
    comp_hi = scc_labels(g.n, [g.src[e] for e in high], [g.dst[e] for e in high])
    kept = [
        e for e in high
        if comp_hi[g.src[e]] == comp_hi[g.dst[e]] and comp_lo[g.src[e]] != comp_lo[g.dst[e]]
    ]
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(comp_lo[v], []).append(v)
    return _assemble(g, kept, lambda v: comp_lo[v], lambda c: groups[c], x_lo, x_hi)


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def scale_range(d_inf: int, length: int, n: int) -> range:
    """Scales ``t`` with ``2^t / n < d_inf <= 2^t`` and ``length <= 2^t``."""
    if d_inf <= 0 or math.isinf(d_inf):
        return range(0)
    lo = _ceil_log2(d_inf)
    if length > 0:
        lo = max(lo, _ceil_log2(length))
    hi = (d_inf * n - 1).bit_length() - 1
    return range(lo, hi + 1)


def build_scale_graphs(g: Graph, linf: LinfSpanner | None = None) -> list[ScaleGraph]:
    """Every nonempty ``G^(t)``, in increasing ``t``, from one forest pass."""
    if linf is None:
        linf = linf_spanner(g)
    forest = linf.forest
    n = g.n
    per_scale: dict[int, list[int]] = {}
    cap = math.ceil(math.log2(n)) + 1 if n > 1 else 1
    for e in range(g.m):
        u, v = g.src[e], g.dst[e]
        if u == v:
            continue
        d = d_infty_query(forest, u, v)
        if math.isinf(d):
            continue
        span = scale_range(d, g.length[e], n)
        if len(span) > cap:
            raise AssertionError(f"edge {e} lands in {len(span)} scales, more than {cap}")
        for t in span:
            per_scale.setdefault(t, []).append(e)
    out = []
    for t in sorted(per_scale):
        x_lo = Fraction(2**t, n)
        memo: dict[int, int] = {}

        def group_of(v, x_lo=x_lo, memo=memo):
            hit = memo.get(v)
            if hit is None:
                hit = memo[v] = forest.highest_within(v, x_lo)
            return hit

        out.append(_assemble(g, per_scale[t], group_of, forest.leaves, float(x_lo), float(2**t), t))
    return out
