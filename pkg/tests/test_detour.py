import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtgirth.detour import (
    DetourError,
    build_detour_graph,
    extract_cycle,
    girth_additive_deterministic,
    second_shortest_path,
)
from rtgirth.cycles import shortest_cycle_through
from rtgirth.graph import OUT, Graph, sssp
from rtgirth.oracle import enumerate_second_simple_path, exact_girth, hardness_instance, random_digraph


def test_two_cycle_construction():
    g = Graph(2, [(0, 1, 1), (1, 0, 1)])
    dg = build_detour_graph(g, [1, 0])
    assert dg.d == 1 and len(dg.spine) == 3
    w = {(dg.kinds[e][0], dg.kinds[e][1]): dg.graph.length[e] for e in range(dg.graph.m) if dg.kinds[e][0] != "original"}
    assert w[("exit", 0)] == 4 and w[("exit", 1)] == 1
    assert w[("entry", 0)] == 0 and w[("entry", 1)] == 3
    assert sssp(dg.graph, dg.source, OUT).distance(dg.target) == 3


def test_two_cycle_second_path_and_cycle():
    g = Graph(2, [(0, 1, 1), (1, 0, 1)])
    dg = build_detour_graph(g, [1, 0])
    sp = second_shortest_path(dg)
    # u0 -> v1 (4) -> u'0 (0) -> u1 -> u'1
    assert sp.length == 6
    assert sp.length == enumerate_second_simple_path(dg.graph, dg.source, dg.target, dg.spine)
    cyc = extract_cycle(dg, sp)
    assert cyc.length == 2 and sorted(cyc.vertices) == [0, 1]


def test_triangle_detour(triangle):
    dg = build_detour_graph(triangle, [0, 1])
    cyc = extract_cycle(dg, second_shortest_path(dg))
    assert cyc.length == 3 and cyc.verify(triangle) == 3


def test_detour_free_instance():
    g = Graph(3, [(0, 1, 1), (1, 2, 1)])
    dg = build_detour_graph(g, [0, 1, 2])
    assert second_shortest_path(dg) is None
    assert math.isinf(enumerate_second_simple_path(dg.graph, dg.source, dg.target, dg.spine))


def test_bad_paths(triangle):
    with pytest.raises(DetourError):
        build_detour_graph(triangle, [0, 2])
    with pytest.raises(DetourError):
        build_detour_graph(triangle, [0])
    with pytest.raises(DetourError):
        build_detour_graph(triangle, [0, 1, 2, 0])


@st.composite
def path_instances(draw):
    n = draw(st.integers(2, 9))
    seed = draw(st.integers(0, 2**31))
    m = draw(st.integers(n - 1, 3 * n))
    g = random_digraph(n, min(m, n * (n - 1)), 1, rng=seed)
    start = draw(st.integers(0, n - 1))
    tree = sssp(g, start, OUT)
    far = [v for v in tree.dist if v != start]
    if not far:
        g = Graph(n, list(g.edges()) + [(start, (start + 1) % n, 1)])
        tree = sssp(g, start, OUT)
        far = [v for v in tree.dist if v != start]
    end = draw(st.sampled_from(sorted(far)))
    edges = tree.path_edges(g, end)
    while n + 2 * (len(edges) + 1) > 22:
        edges = edges[1:]
    path = [g.src[e] for e in edges] + [g.dst[edges[-1]]]
    return g, path


@settings(max_examples=100, deadline=None)
@given(path_instances())
def test_second_path_matches_enumeration(inst):
    g, path = inst
    dg = build_detour_graph(g, path)
    sp = second_shortest_path(dg)
    want = enumerate_second_simple_path(dg.graph, dg.source, dg.target, dg.spine)
    assert (math.inf if sp is None else sp.length) == want
    if sp is not None:
        cyc = extract_cycle(dg, sp)
        assert cyc.verify(g) <= dg.d + sp.length
        # the detour length never exceeds 6d - 2 plus the best cycle meeting P
        best = min(
            (w.length for v in path if (w := shortest_cycle_through(g, v)) is not None),
            default=math.inf,
        )
        assert sp.length <= 6 * dg.d - 2 + best


def test_deterministic_examples(triangle):
    est = girth_additive_deterministic(triangle, 0.5, 0.5)
    assert 3 <= est.value <= 3 + 2 * math.ceil(0.5 * math.sqrt(3))
    ring = Graph(100, [(i, (i + 1) % 100, 1) for i in range(100)])
    est = girth_additive_deterministic(ring, 0.5, 0.25)
    assert est.value == 100 and est.witness.verify(ring) == 100


def test_deterministic_is_pure():
    g = random_digraph(64, 90, 1, rng=3)
    a = json.dumps(girth_additive_deterministic(g, 0.5, 0.25).to_dict(), sort_keys=True)
    b = json.dumps(girth_additive_deterministic(g, 0.5, 0.25).to_dict(), sort_keys=True)
    assert a == b


def test_deterministic_early_stop_bound():
    # with the early stop the estimate can exceed (1 + 2 eps) g but never g + 17 d
    for seed in range(20):
        g = random_digraph(64, 64 + 3 * seed, 1, rng=seed)
        true_g, _ = exact_girth(g)
        est = girth_additive_deterministic(g, 0.5, 0.25, early_stop=True)
        if math.isinf(true_g):
            assert math.isinf(est.value)
        else:
            assert true_g <= est.value <= true_g + 17 * 2


def test_deterministic_hardness_instance():
    k3 = Graph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert girth_additive_deterministic(hardness_instance(k3), 0.5, 0.25).value == 3
    two = Graph(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1)])
    assert girth_additive_deterministic(hardness_instance(two), 0.5, 0.25).value >= 6


def test_deterministic_validation(two_cycle_35):
    with pytest.raises(ValueError):
        girth_additive_deterministic(two_cycle_35, 0.5, 0.25)
    ring = Graph(2, [(0, 1, 1), (1, 0, 1)])
    with pytest.raises(ValueError):
        girth_additive_deterministic(ring, 0.5, 1.0)
    assert girth_additive_deterministic(Graph(2, [(0, 0, 1), (0, 1, 1)]), 0.5, 0.25).value == 1
