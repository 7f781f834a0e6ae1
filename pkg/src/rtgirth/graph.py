"""Directed graph substrate: representation, shortest paths, balls, SCCs and contraction.

Vertices are ``0..n-1``. Edges are identified by their position in the edge
list, never by their endpoints, so parallel edges stay distinguishable and
every derived graph can point back at the edge ids of the graph it came from.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

INF = math.inf

OUT = "out"
IN = "in"

# below this many vertices batch distances use the pure-Python search
SMALL_GRAPH = 48


class GraphParseError(ValueError):
    """Raised for malformed edge-list documents."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Graph:
    """Immutable directed multigraph with nonnegative integer edge lengths.

    ``origin`` optionally maps each edge id to an edge id of an ancestor graph
    (the graph this one was derived from by induction, contraction or
    filtering).  ``labels`` optionally maps each vertex to an ancestor vertex.
    """

    __slots__ = ("n", "src", "dst", "length", "origin", "labels", "out_adj", "in_adj", "_csr", "_csr_t", "_reach")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, int]] = (),
        origin: Sequence[int] | None = None,
        labels: Sequence[int] | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        src, dst, length = [], [], []
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if w < 0:
                raise ValueError(f"edge ({u}, {v}) has negative length {w}")
            src.append(int(u))
            dst.append(int(v))
            length.append(int(w))
        self.n = n
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.length = tuple(length)
        if origin is not None and len(origin) != len(src):
            raise ValueError("origin map must have one entry per edge")
        if labels is not None and len(labels) != n:
            raise ValueError("label map must have one entry per vertex")
        self.origin = tuple(origin) if origin is not None else None
        self.labels = tuple(labels) if labels is not None else None
        out_adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        in_adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for e, (u, v, w) in enumerate(zip(src, dst, length)):
            out_adj[u].append((v, w, e))
            in_adj[v].append((u, w, e))
        self.out_adj = tuple(tuple(a) for a in out_adj)
        self.in_adj = tuple(tuple(a) for a in in_adj)
        self._csr = None
        self._csr_t = None
        self._reach: dict = {}

    @property
    def m(self) -> int:
        return len(self.src)

    def edges(self):
        """Iterate ``(u, v, length)`` in edge-id order."""
        return zip(self.src, self.dst, self.length)

    def edge(self, e: int) -> tuple[int, int, int]:
        return self.src[e], self.dst[e], self.length[e]

    def adjacency(self, direction: str = OUT):
        if direction == OUT:
            return self.out_adj
        if direction == IN:
            return self.in_adj
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")

    def root_edge(self, e: int) -> int:
        """Ancestor edge id for ``e`` (``e`` itself when there is no ancestor)."""
        return self.origin[e] if self.origin is not None else e

    def root_vertex(self, v: int) -> int:
        return self.labels[v] if self.labels is not None else v

    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.length)

    def csr(self) -> csr_matrix:
        """Sparse adjacency holding the minimum length over parallel edges."""
        if self._csr is None:
            n = self.n
            if self.m == 0:
                mat = csr_matrix((n, n), dtype=np.float64)
            else:
                s = np.asarray(self.src, dtype=np.int64)
                d = np.asarray(self.dst, dtype=np.int64)
                w = np.asarray(self.length, dtype=np.float64)
                order = np.lexsort((w, d, s))
                s, d, w = s[order], d[order], w[order]
                keep = np.ones(len(s), dtype=bool)
                keep[1:] = (s[1:] != s[:-1]) | (d[1:] != d[:-1])
                mat = csr_matrix((w[keep], (s[keep], d[keep])), shape=(n, n))
            self._csr = mat
        return self._csr

    def csr_transpose(self) -> csr_matrix:
        if self._csr_t is None:
            self._csr_t = self.csr().T.tocsr()
        return self._csr_t

    def within(self, direction: str, r: float) -> np.ndarray:
        """Cached boolean ``n x n`` matrix; row ``v`` marks vertices within ``r`` of ``v``.

        ``direction='in'`` marks vertices that reach ``v`` within ``r``.
        """
        key = (direction, float(r))
        hit = self._reach.get(key)
        if hit is None:
            if self.n <= SMALL_GRAPH:
                # scipy's setup cost dominates on tiny graphs
                hit = np.zeros((self.n, self.n), dtype=bool)
                for v in range(self.n):
                    hit[v, list(sssp(self, v, direction, cutoff=r).dist)] = True
            else:
                hit = distance_rows(self, np.arange(self.n), direction, limit=r) <= r
            self._reach[key] = hit
        return hit

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.src, self.dst, self.length) == (other.n, other.src, other.dst, other.length)

    def __hash__(self) -> int:
        return hash((self.n, self.src, self.dst, self.length))


@dataclass
class DistanceTree:
    """Shortest-path tree rooted at ``root``.

    ``dist`` and ``parent`` only hold reached vertices.  For an out-tree the
    parent edge of ``v`` ends at ``v``; for an in-tree it starts at ``v``.
    """

    root: int
    direction: str
    dist: dict[int, int]
    parent: dict[int, int] = field(default_factory=dict)

    def distance(self, v: int) -> float:
        return self.dist.get(v, INF)

    def reached(self, v: int) -> bool:
        return v in self.dist

    def edge_ids(self) -> list[int]:
        return sorted(self.parent.values())

    def height(self) -> float:
        return max(self.dist.values(), default=0)

    def path_edges(self, g: Graph, v: int) -> list[int]:
        """Edge ids of the tree path between the root and ``v``, in walk order.

        Out-trees give root -> v; in-trees give v -> root.
        """
        if v not in self.dist:
            raise KeyError(f"vertex {v} not reached from {self.root}")
        chain = []
        cur = v
        while cur != self.root:
            e = self.parent[cur]
            chain.append(e)
            cur = g.src[e] if self.direction == OUT else g.dst[e]
        if self.direction == OUT:
            chain.reverse()
        return chain

    def restrict(self, members) -> "DistanceTree":
        keep = set(members)
        return DistanceTree(
            self.root,
            self.direction,
            {v: d for v, d in self.dist.items() if v in keep},
            {v: e for v, e in self.parent.items() if v in keep},
        )


@dataclass
class Ball:
    """A roundtrip-metric cluster with certifying out- and in-trees."""

    root: int
    members: tuple[int, ...]
    t_out: DistanceTree
    t_in: DistanceTree
    radius: float
    scale: int | None = None
    failure: bool = False

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v) -> bool:
        return v in self.members

    def roundtrip_bound(self) -> float:
        """Largest out-dist + in-dist over members, as certified by the trees."""
        return max(
            (self.t_out.distance(v) + self.t_in.distance(v) for v in self.members),
            default=0,
        )

    def tree_edges(self) -> set[int]:
        return set(self.t_out.parent.values()) | set(self.t_in.parent.values())


@dataclass
class VertexPartition:
    """Disjoint clusters covering ``0..n-1``."""

    labels: list[int]
    clusters: list[list[int]]
    roots: list[int | None] | None = None
    trees: list[DistanceTree | None] | None = None

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        """Renumber clusters by first appearance."""
        remap: dict[int, int] = {}
        clusters: list[list[int]] = []
        out = []
        for v, lab in enumerate(labels):
            if lab not in remap:
                remap[lab] = len(clusters)
                clusters.append([])
            cid = remap[lab]
            clusters[cid].append(v)
            out.append(cid)
        return cls(out, clusters)

    @classmethod
    def from_clusters(cls, n: int, clusters: Sequence[Sequence[int]], **kw) -> "VertexPartition":
        labels = [-1] * n
        for cid, members in enumerate(clusters):
            for v in members:
                if labels[v] != -1:
                    raise ValueError(f"vertex {v} appears in two clusters")
                labels[v] = cid
        if -1 in labels:
            raise ValueError(f"vertex {labels.index(-1)} is in no cluster")
        return cls(labels, [list(c) for c in clusters], **kw)

    def __len__(self) -> int:
        return len(self.clusters)

    def canonical(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.clusters)


# --------------------------------------------------------------------------- #
# parsing / serialization


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` / ``u v w`` edge-list format."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise GraphParseError(1, "empty document, expected header 'n m'")
    lineno, header = lines[0]
    if len(header) != 2:
        raise GraphParseError(lineno, "header must be 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError(lineno, "header values must be integers") from None
    if n < 0 or m < 0:
        raise GraphParseError(lineno, "header values must be nonnegative")
    body = lines[1:]
    if len(body) != m:
        at = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise GraphParseError(at, f"edge count mismatch: header declares {m}, found {len(body)}")
    edges = []
    for lineno, toks in body:
        if len(toks) != 3:
            raise GraphParseError(lineno, "edge line must be 'u v w'")
        try:
            u, v, w = (int(t) for t in toks)
        except ValueError:
            raise GraphParseError(lineno, "edge fields must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(lineno, f"vertex out of range [0, {n})")
        if w < 0:
            raise GraphParseError(lineno, "negative edge length")
        if u == v and w == 0:
            raise GraphParseError(lineno, "zero-length self-loop")
        edges.append((u, v, w))
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# --------------------------------------------------------------------------- #
# shortest paths


def sssp(
    g: Graph,
    source: int,
    direction: str = OUT,
    cutoff: float | None = None,
    alive: Sequence[bool] | None = None,
) -> DistanceTree:
    """Dijkstra from ``source``; ``direction='in'`` measures distances *to* it.

    Vertices farther than ``cutoff`` are left unreached.  ``alive`` restricts
    the search to an induced subgraph without copying.
    """
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} outside [0, {g.n})")
    if cutoff is not None and cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    adj = g.adjacency(direction)
    limit = INF if cutoff is None else cutoff
    dist: dict[int, int] = {}
    parent: dict[int, int] = {}
    best = {source: 0}
    via: dict[int, int] = {}
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in dist:
            continue
        dist[u] = d
        if u in via:
            parent[u] = via[u]
        for v, w, e in adj[u]:
            if v in dist or (alive is not None and not alive[v]):
                continue
            nd = d + w
            if nd <= limit and nd < best.get(v, INF):
                best[v] = nd
                via[v] = e
                heapq.heappush(heap, (nd, v))
    return DistanceTree(source, direction, dist, parent)


def distance_rows(g: Graph, sources: Sequence[int], direction: str = OUT, limit: float = INF) -> np.ndarray:
    """Distance rows from each source, as a ``len(sources) x n`` float array.

    Batch counterpart of :func:`sssp` for callers that only need lengths.
    """
    if len(sources) == 0:
        return np.zeros((0, g.n))
    mat = g.csr() if direction == OUT else g.csr_transpose()
    return _csgraph_dijkstra(mat, directed=True, indices=np.asarray(sources), limit=limit)


def out_ball(g: Graph, v: int, r: float) -> set[int]:
    return set(sssp(g, v, OUT, cutoff=r).dist)


def in_ball(g: Graph, v: int, r: float) -> set[int]:
    return set(sssp(g, v, IN, cutoff=r).dist)


def roundtrip_ball(g: Graph, v: int, r: float, alive: Sequence[bool] | None = None) -> Ball:
    """Vertices ``u`` with ``d(v,u) + d(u,v) <= r``, with certifying trees.

    Any vertex on a shortest path between ``v`` and a member is itself a
    member, so the restricted trees stay connected.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    t_out = sssp(g, v, OUT, cutoff=r, alive=alive)
    t_in = sssp(g, v, IN, cutoff=r, alive=alive)
    members = tuple(sorted(u for u, d in t_out.dist.items() if d + t_in.dist.get(u, INF) <= r))
    return Ball(v, members, t_out.restrict(members), t_in.restrict(members), r)


# --------------------------------------------------------------------------- #
# strongly connected components


def scc_labels(n: int, src: Sequence[int], dst: Sequence[int]) -> list[int]:
    """Iterative Tarjan.  Component ids are assigned in completion order."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(src, dst):
        adj[u].append(v)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, i = work[-1]
            nbrs = adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def tarjan_scc(g: Graph) -> VertexPartition:
    return VertexPartition.from_labels(scc_labels(g.n, g.src, g.dst))


def scc_edge_mask(g: Graph) -> list[bool]:
    """True for edges whose endpoints share a strongly connected component."""
    comp = scc_labels(g.n, g.src, g.dst)
    return [comp[u] == comp[v] for u, v in zip(g.src, g.dst)]


# --------------------------------------------------------------------------- #
# derived graphs


def contract(g: Graph, partition: VertexPartition | Sequence[int]) -> tuple[Graph, list[int]]:
    """One vertex per cluster; inter-cluster edges kept with ancestor ids."""
    labels = partition.labels if isinstance(partition, VertexPartition) else list(partition)
    if len(labels) != g.n:
        raise ValueError("partition must label every vertex")
    remap: dict[int, int] = {}
    vmap = []
    for lab in labels:
        if lab not in remap:
            remap[lab] = len(remap)
        vmap.append(remap[lab])
    edges, origin = [], []
    for e, (u, v, w) in enumerate(g.edges()):
        a, b = vmap[u], vmap[v]
        if a != b:
            edges.append((a, b, w))
            origin.append(g.root_edge(e))
    return Graph(len(remap), edges, origin=origin), vmap


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int], list[int]]:
    """Subgraph on ``vertices`` (relabelled in ascending order).

    Returns ``(sub, vmap, emap)`` where ``vmap``/``emap`` send local vertex
    and edge ids to ids of ``g``.  ``sub.origin``/``sub.labels`` are composed
    through to ``g``'s own ancestors.
    """
    keep = sorted(set(vertices))
    local = {v: i for i, v in enumerate(keep)}
    emap = []
    for v in keep:
        for w, _, e in g.out_adj[v]:
            if w in local:
                emap.append(e)
    emap.sort()
    edges = [(local[g.src[e]], local[g.dst[e]], g.length[e]) for e in emap]
    origin = [g.root_edge(e) for e in emap]
    labels = [g.root_vertex(v) for v in keep]
    return Graph(len(keep), edges, origin=origin, labels=labels), keep, emap


def edge_subgraph(g: Graph, edge_ids: Iterable[int]) -> Graph:
    """Same vertex set, only the listed edges (origins point at ``g``)."""
    ids = sorted(set(edge_ids))
    return Graph(g.n, [g.edge(e) for e in ids], origin=[g.root_edge(e) for e in ids], labels=g.labels)
