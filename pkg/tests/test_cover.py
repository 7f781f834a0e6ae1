import math

import numpy as np
import pytest

from rtgirth.cover import (
    cover_pass_count,
    cover_radius_parameter,
    fast_roundtrip_cover,
    probabilistic_cover,
    scc_via_cover,
)
from rtgirth.graph import Graph, tarjan_scc
from rtgirth.oracle import exact_roundtrip_apsp, random_digraph, random_strongly_connected
from rtgirth.rng import RandomStream


def _assert_partition(n, balls):
    seen = sorted(v for b in balls for v in b.members)
    assert seen == list(range(n))


def test_empty_and_single():
    assert probabilistic_cover(Graph(0), 1.0) == []
    balls = probabilistic_cover(Graph(1), 1.0, rng=3)
    assert len(balls) == 1 and balls[0].members == (0,) and not balls[0].failure


def test_triangle_is_one_ball(triangle):
    root = RandomStream(0)
    for i in range(300):
        balls = probabilistic_cover(triangle, 3.0, rng=root.child(i))
        assert len(balls) == 1 and balls[0].members == (0, 1, 2)
        assert not balls[0].failure


def test_each_pass_partitions():
    g = random_strongly_connected(40, 80, 6, rng=1)
    root = RandomStream(2)
    for i in range(20):
        balls = probabilistic_cover(g, 4.0, rng=root.child(i))
        _assert_partition(g.n, balls)
        for b in balls:
            if not b.failure:
                assert b.root in b.members
                assert b.roundtrip_bound() <= b.radius <= 2 * 3 * 4.0


def test_parameters():
    assert cover_radius_parameter(100, 2, 3) == pytest.approx(36 * math.log(100))
    assert cover_pass_count(100, 2, 2) == 2 * 10 * 5
    assert cover_pass_count(1, 1, 2) == 2


def test_single_vertex_cover():
    cover = fast_roundtrip_cover(Graph(1), 1, 1, rng=0)
    assert len(cover) == cover.passes
    assert all(b.members == (0,) for b in cover.balls)


def test_two_disjoint_two_cycles():
    g = Graph(4, [(0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, 1)])
    for seed in range(100):
        cover = fast_roundtrip_cover(g, 1, 2, rng=seed)
        assert cover.failures == 0
        assert cover.shares_ball(0, 1) and cover.shares_ball(2, 3)
        assert not cover.shares_ball(0, 2) and not cover.shares_ball(1, 3)


def test_cover_contract_on_random_graph():
    g = random_strongly_connected(60, 240, 8, rng=4)
    rt = exact_roundtrip_apsp(g)
    R = int(rt[np.isfinite(rt)].max())
    cover = fast_roundtrip_cover(g, 2, R, rng=5)
    need = np.isfinite(rt) & (rt <= R)
    assert (cover.co_membership() | ~need).all()
    assert cover.failures == 0
    bound = 12 * 3 * R * 2 * math.log(60)
    assert all(b.radius <= bound for b in cover.good_balls())
    assert max(cover.membership) <= cover.passes


def test_cover_serialization(triangle):
    d = fast_roundtrip_cover(triangle, 1, 3, rng=1, scale=2).to_dict()
    assert d["passes"] == len(d["balls"])
    assert {b["scale"] for b in d["balls"]} == {2}


def test_scc_via_cover_examples(dag, triangle):
    assert scc_via_cover(dag, 1, rng=0).canonical() == tarjan_scc(dag).canonical()
    assert scc_via_cover(triangle, 3, rng=0).canonical() == {frozenset({0, 1, 2})}


def test_scc_via_cover_random():
    g = random_digraph(40, 70, 5, rng=9)
    rt = exact_roundtrip_apsp(g)
    R = max(1, int(rt[np.isfinite(rt)].max()))
    assert scc_via_cover(g, R, rng=1).canonical() == tarjan_scc(g).canonical()


def test_bad_parameters(triangle):
    with pytest.raises(ValueError):
        probabilistic_cover(triangle, 0)
    with pytest.raises(ValueError):
        fast_roundtrip_cover(triangle, 0.5, 1)
    with pytest.raises(ValueError):
        fast_roundtrip_cover(triangle, 1, 0)
