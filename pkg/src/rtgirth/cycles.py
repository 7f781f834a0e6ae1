"""Witness cycles and closed-walk reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .graph import INF, OUT, Graph, sssp


class WitnessError(ValueError):
    """A claimed witness is not a simple cycle of the graph."""


@dataclass(frozen=True)
class CycleWitness:
    """A simple cycle given by its edge ids in the input graph."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    length: int
    provenance: str

    @classmethod
    def from_edges(cls, g: Graph, edges: Sequence[int], provenance: str) -> "CycleWitness":
        edges = tuple(edges)
        return cls(edges, tuple(g.src[e] for e in edges), sum(g.length[e] for e in edges), provenance)

    def __len__(self) -> int:
        return len(self.edges)

    def verify(self, g: Graph) -> int:
        """Recompute the length over ``g``; raise :class:`WitnessError` if malformed."""
        if not self.edges:
            raise WitnessError("empty cycle")
        for e in self.edges:
            if not 0 <= e < g.m:
                raise WitnessError(f"edge id {e} not in graph")
        for a, b in zip(self.edges, self.edges[1:] + self.edges[:1]):
            if g.dst[a] != g.src[b]:
                raise WitnessError(f"edges {a} and {b} are not consecutive")
        verts = [g.src[e] for e in self.edges]
        if len(set(verts)) != len(verts):
            raise WitnessError("cycle repeats a vertex")
        if tuple(verts) != self.vertices:
            raise WitnessError("vertex sequence does not match edges")
        total = sum(g.length[e] for e in self.edges)
        if total != self.length:
            raise WitnessError(f"recorded length {self.length} != recomputed {total}")
        return total

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": list(self.edges),
            "length": self.length,
            "provenance": self.provenance,
        }


def simple_cycles_of_walk(g: Graph, walk: Sequence[int]) -> list[list[int]]:
    """Split a closed walk (edge ids) into simple cycles whose edges partition it."""
    if not walk:
        return []
    start = g.src[walk[0]]
    pos = {start: 0}
    stack: list[int] = []
    at: list[int] = [start]
    loops = []
    for e in walk:
        if g.src[e] != at[-1]:
            raise WitnessError(f"walk is broken before edge {e}")
        w = g.dst[e]
        stack.append(e)
        if w in pos:
            cut = pos[w]
            loops.append(stack[cut:])
            for x in at[cut + 1:]:
                del pos[x]
            del stack[cut:]
            del at[cut + 1:]
        else:
            pos[w] = len(stack)
            at.append(w)
    if stack:
        raise WitnessError("walk does not close")
    return loops


def shortest_cycle_in_walk(g: Graph, walk: Sequence[int], provenance: str) -> CycleWitness:
    """The shortest simple cycle among those the walk decomposes into."""
    loops = simple_cycles_of_walk(g, walk)
    best = min(loops, key=lambda c: sum(g.length[e] for e in c))
    return CycleWitness.from_edges(g, _rotate(g, best), provenance)


def _rotate(g: Graph, cycle: list[int]) -> list[int]:
    """Start the cycle at its smallest vertex so equal cycles compare equal."""
    i = min(range(len(cycle)), key=lambda j: g.src[cycle[j]])
    return cycle[i:] + cycle[:i]


def shortest_cycle_through(g: Graph, v: int, provenance: str = "sampled-BFS") -> CycleWitness | None:
    """Exact shortest cycle through ``v``: one search plus a scan of ``v``'s in-edges."""
    tree = sssp(g, v, OUT)
    best, best_edge = INF, -1
    for p, w, e in g.in_adj[v]:
        d = tree.dist.get(p)
        if d is not None and d + w < best:
            best, best_edge = d + w, e
    if best_edge < 0:
        return None
    edges = tree.path_edges(g, g.src[best_edge]) + [best_edge]
    return CycleWitness.from_edges(g, _rotate(g, edges), provenance)


def best_witness(*candidates: CycleWitness | None) -> CycleWitness | None:
    """Shortest candidate; earlier candidates win ties."""
    best = None
    for c in candidates:
        if c is not None and (best is None or c.length < best.length):
            best = c
    return best


def witness_value(w: CycleWitness | None) -> float:
    return w.length if w is not None else math.inf
