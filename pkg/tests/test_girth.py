import math

import pytest

from rtgirth.cycles import CycleWitness, WitnessError, shortest_cycle_in_walk, shortest_cycle_through, simple_cycles_of_walk
from rtgirth.girth import fast_roundtrip_spanner, girth_additive_randomized, girth_multiplicative
from rtgirth.graph import Graph
from rtgirth.oracle import exact_girth, max_stretch, random_digraph, random_strongly_connected


def two_cycles(short=3, long=100):
    edges = [(i, (i + 1) % short, 1) for i in range(short)]
    edges += [(short + i, short + (i + 1) % long, 1) for i in range(long)]
    return Graph(short + long, edges)


# --- witnesses -------------------------------------------------------------------


def test_walk_decomposition():
    # figure eight through 0: 0->1->0 then 0->2->3->0
    g = Graph(4, [(0, 1, 1), (1, 0, 1), (0, 2, 1), (2, 3, 1), (3, 0, 1)])
    loops = simple_cycles_of_walk(g, [0, 1, 2, 3, 4])
    assert sorted(map(sorted, loops)) == [[0, 1], [2, 3, 4]]
    w = shortest_cycle_in_walk(g, [2, 3, 4, 0, 1], "test")
    assert w.length == 2 and w.verify(g) == 2


def test_witness_verification(triangle):
    w = CycleWitness.from_edges(triangle, [0, 1, 2], "test")
    assert w.verify(triangle) == 3
    with pytest.raises(WitnessError):
        CycleWitness((0, 1), (0, 1), 2, "x").verify(triangle)
    with pytest.raises(WitnessError):
        CycleWitness((0, 1, 2), (0, 1, 2), 4, "x").verify(triangle)
    with pytest.raises(WitnessError):
        simple_cycles_of_walk(triangle, [0, 1])


def test_shortest_cycle_through(triangle, dag):
    assert shortest_cycle_through(triangle, 0).length == 3
    assert shortest_cycle_through(dag, 1) is None
    eight = Graph(5, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 2), (3, 4, 2), (4, 0, 2)])
    assert shortest_cycle_through(eight, 0).length == 3
    assert shortest_cycle_through(eight, 3).length == 6
    loop = Graph(2, [(0, 0, 4), (0, 1, 1), (1, 0, 1)])
    assert shortest_cycle_through(loop, 0).length == 2


# --- spanner ----------------------------------------------------------------------


def test_spanner_examples(triangle, dag):
    sp = fast_roundtrip_spanner(triangle, 1, rng=0)
    assert sp.edges == [0, 1, 2]
    assert fast_roundtrip_spanner(dag, 1, rng=0).edges == []


def test_spanner_contains_f0_and_stretch():
    n = 50
    g = random_strongly_connected(n, 200, 8, rng=3)
    sp = fast_roundtrip_spanner(g, 2, rng=4)
    assert set(sp.f0) <= set(sp.edges) <= set(range(g.m))
    assert max_stretch(g, sp.subgraph(g)) <= 24 * 3 * 2 * math.log(n)
    assert sp.size <= sp.size_bound(n)


def test_spanner_deterministic():
    g = random_strongly_connected(30, 60, 5, rng=5)
    assert fast_roundtrip_spanner(g, 2, rng=9).edges == fast_roundtrip_spanner(g, 2, rng=9).edges


# --- multiplicative ----------------------------------------------------------------


def test_multiplicative_triangle(triangle):
    est = girth_multiplicative(triangle, 1, rng=7)
    assert est.value == 3 and est.witness.vertices == (0, 1, 2)


def test_multiplicative_acyclic(dag):
    est = girth_multiplicative(dag, 2)
    assert math.isinf(est.value) and est.witness is None


def test_multiplicative_two_cycles():
    # k = 1 runs many passes; a few seeds keep the suite fast
    g = two_cycles()
    for seed in range(3):
        assert girth_multiplicative(g, 1, rng=seed).value == 3
    for seed in range(20):
        assert 3 <= girth_multiplicative(g, 2, rng=seed).value <= 100


def test_multiplicative_self_loop_and_zero_cycle():
    g = Graph(3, [(0, 1, 5), (1, 0, 5), (2, 2, 3)])
    assert girth_multiplicative(g, 2).value == 3
    z = Graph(4, [(0, 1, 1), (1, 0, 1), (2, 3, 0), (3, 2, 0)])
    est = girth_multiplicative(z, 2)
    assert est.value == 0 and est.witness.verify(z) == 0


def test_multiplicative_bound_random():
    n = 50
    for seed in range(6):
        g = random_strongly_connected(n, 150, 8, rng=100 + seed)
        true_g, _ = exact_girth(g)
        est = girth_multiplicative(g, 2, rng=seed)
        assert est.witness.verify(g) == est.value
        assert true_g <= est.value <= (12 * 3 * 2 * math.log(n) + 2) * true_g


# --- randomized additive -------------------------------------------------------------


def test_randomized_single_cycle():
    g = Graph(100, [(i, (i + 1) % 100, 1) for i in range(100)])
    assert girth_additive_randomized(g, 0.5, rng=1).value == 100


def test_randomized_triangle_plus_long():
    g = two_cycles(3, 60)
    est = girth_additive_randomized(g, 0.5, rng=2)
    assert est.value == 3


def test_randomized_bounds():
    for seed in range(8):
        g = random_digraph(64, 70 + 5 * seed, 1, rng=seed)
        true_g, _ = exact_girth(g)
        est = girth_additive_randomized(g, 0.5, rng=seed)
        assert true_g <= est.value <= true_g + 8 * 8


def test_randomized_requires_unit_lengths(two_cycle_35):
    with pytest.raises(ValueError):
        girth_additive_randomized(two_cycle_35, 0.5)
    with pytest.raises(ValueError):
        girth_additive_randomized(Graph(2, [(0, 1, 1), (1, 0, 1)]), 1.5)
