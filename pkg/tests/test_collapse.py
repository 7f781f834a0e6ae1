import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtgirth.collapse import (
    CollapseError,
    build_scale_graphs,
    collapse_to_interval,
    d_infty_query,
    find_collapse_times,
    linf_spanner,
    scale_range,
)
from rtgirth.graph import INF, Graph, edge_subgraph
from rtgirth.oracle import brute_d_infty, brute_d_infty_matrix, incremental_scc_times, random_strongly_connected

from test_graph import digraphs


def test_collapse_times_examples():
    assert find_collapse_times(2, [(0, 1), (1, 0)]).times == [2, 2]
    assert find_collapse_times(3, [(1, 2), (0, 1), (2, 0)]).times == [3, 3, 3]
    assert find_collapse_times(4, [(0, 1), (2, 3), (1, 0), (3, 2)]).times == [3, 4, 3, 4]


def test_collapse_times_precondition():
    with pytest.raises(CollapseError) as err:
        find_collapse_times(3, [(0, 1), (1, 0), (1, 2)])
    assert err.value.index == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**31), st.integers(0, 20))
def test_collapse_times_match_incremental(n, seed, extra):
    import random

    g = random_strongly_connected(n, min(extra, n * (n - 1) - n), 1, rng=seed)
    seq = [(u, v) for u, v, _ in g.edges()]
    random.Random(seed).shuffle(seq)
    assert find_collapse_times(n, seq).times == incremental_scc_times(n, seq)


def test_linf_examples(dag, triangle):
    sp = linf_spanner(dag)
    assert sp.edges == [] and len(sp.forest) == 3
    sp = linf_spanner(triangle)
    assert sp.edges == [0, 1, 2]
    assert sp.forest.parent[:3] == [3, 3, 3] and sp.forest.label[3] == 1
    two = Graph(2, [(0, 1, 2), (1, 0, 7)])
    sp = linf_spanner(two)
    assert sp.forest.label[sp.forest.lca(0, 1)] == 7
    assert d_infty_query(sp.forest, 0, 1) == 7 == brute_d_infty(two, 0, 1)


def test_d_infty_examples(dag, triangle):
    assert d_infty_query(linf_spanner(triangle).forest, 0, 1) == 1
    assert d_infty_query(linf_spanner(dag).forest, 0, 2) == INF
    nested = Graph(3, [(0, 1, 1), (1, 0, 1), (0, 2, 5), (2, 0, 5)])
    f = linf_spanner(nested).forest
    assert d_infty_query(f, 1, 2) == 5 == brute_d_infty(nested, 1, 2)
    assert d_infty_query(f, 0, 1) == 1 == brute_d_infty(nested, 0, 1)
    assert d_infty_query(f, 2, 2) == 5 == brute_d_infty(nested, 2, 2)


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=12, max_len=9, min_len=0))
def test_linf_matches_brute_force(g):
    sp = linf_spanner(g)
    assert len(sp.edges) <= 4 * g.n
    want = brute_d_infty_matrix(g)
    kept = brute_d_infty_matrix(edge_subgraph(g, sp.edges))
    for u in range(g.n):
        for v in range(g.n):
            assert d_infty_query(sp.forest, u, v) == want[u, v]
            assert kept[u, v] == want[u, v]
    f = sp.forest
    for v in range(len(f)):
        p = f.parent[v]
        if p >= 0:
            assert f.label[p] >= f.label[v]


def test_collapse_to_interval_examples(triangle):
    sg = collapse_to_interval(triangle, 0.5, 10)
    assert sg.graph.n == 3 and sg.graph.m == 3
    assert collapse_to_interval(triangle, 2, 10).graph.n == 0
    mixed = Graph(4, [(0, 1, 1), (1, 0, 1), (1, 2, 8), (2, 3, 8), (3, 0, 8)])
    sg = collapse_to_interval(mixed, 2, 5)
    assert sg.graph.n == 0 and sg.graph.m == 0
    with pytest.raises(ValueError):
        collapse_to_interval(triangle, 3, 2)


def test_scale_examples(dag, triangle):
    assert build_scale_graphs(dag) == []
    assert [sg.t for sg in build_scale_graphs(triangle)] == [0, 1]
    big = Graph(2, [(0, 1, 1), (1, 0, 1024)])
    assert [sg.t for sg in build_scale_graphs(big)] == [10]
    assert list(scale_range(1024, 1024, 2)) == [10]


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=9, max_len=40))
def test_scale_graphs_match_literal_collapse(g):
    scales = build_scale_graphs(g)
    cap = math.ceil(math.log2(g.n)) + 1 if g.n > 1 else 1
    per_edge = {}
    for sg in scales:
        lit = collapse_to_interval(g, float(Fraction(2**sg.t, g.n)), 2**sg.t)
        assert sorted(lit.graph.origin) == sorted(sg.graph.origin)
        assert sorted(map(tuple, lit.members)) == sorted(map(tuple, sg.members))
        for e in sg.graph.origin:
            per_edge[e] = per_edge.get(e, 0) + 1
        assert all(any(sg.graph.out_adj[v]) or any(sg.graph.in_adj[v]) for v in range(sg.graph.n))
    assert all(c <= cap for c in per_edge.values())
