import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtgirth.clustering import (
    cluster_in,
    cluster_out,
    clustering_rate,
    sequential_cluster_in,
    sequential_cluster_out,
)
from rtgirth.graph import IN, INF, OUT, Graph, sssp
from rtgirth.oracle import random_digraph, random_strongly_connected
from rtgirth.rng import RandomStream

from test_graph import digraphs


def test_forced_shift_claims_triangle(triangle):
    res = cluster_out(triangle, [0], 1.0, shifts={0: 10})
    assert res.clusters == [[0, 1, 2]]
    assert res.residual == []
    root, members, tree = res.rooted[0]
    assert root == 0 and tree.height() == 2 <= res.shifts[0]


def test_empty_seed_set_is_residual(triangle):
    res = cluster_out(triangle, [], 1.0, rng=1)
    assert res.clusters == [[0, 1, 2]] and res.residual == [0, 1, 2]


def test_huge_radius_assigns_everything():
    g = random_strongly_connected(12, 10, 3, rng=2)
    res = cluster_out(g, range(g.n), 1e9, rng=3)
    assert res.residual == []
    top = max(res.shifts, key=lambda v: (res.shifts[v], -v))
    assert top in next(c for c in res.clusters if top in c)


def test_zero_boundary_counts_as_assigned():
    g = Graph(2, [(0, 1, 2)])
    res = cluster_out(g, [0], 1.0, shifts={0: 2})
    assert res.clusters == [[0, 1]]


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=10, max_len=4), st.integers(0, 2**32), st.sampled_from([OUT, IN]))
def test_assignment_is_the_argmin(g, seed, direction):
    seeds = list(range(0, g.n, 2))
    run = cluster_out if direction == OUT else cluster_in
    res = run(g, seeds, 2.0, rng=seed)
    dist = {s: sssp(g, s, direction) for s in seeds}
    labels = res.partition.labels
    owner = {}
    for cid, root in enumerate(res.partition.roots):
        if root is not None:
            owner[cid] = root
    for u in range(g.n):
        scores = [(-res.shifts[s] + dist[s].distance(u), s) for s in seeds]
        best = min(scores)
        if best[0] <= 0:
            assert owner[labels[u]] == best[1]
        else:
            assert labels[u] not in owner
    for root, members, tree in res.rooted:
        assert tree.height() <= res.shifts[root]


def test_partition_property():
    g = random_digraph(30, 90, 4, rng=5)
    res = cluster_in(g, range(0, 30, 3), 3.0, rng=6)
    seen = sorted(v for c in res.clusters for v in c)
    assert seen == list(range(30))


def test_determinism():
    g = random_digraph(25, 60, 4, rng=7)
    a = cluster_out(g, range(25), 2.0, rng=8)
    b = cluster_out(g, range(25), 2.0, rng=8)
    assert a.clusters == b.clusters and a.shifts == b.shifts


def test_rate_uses_natural_log():
    assert clustering_rate(100, 2.0) == pytest.approx(math.log(100) / 2)
    with pytest.raises(ValueError):
        clustering_rate(10, 0)


def test_pair_kept_together_often_enough(triangle):
    # pair (1, 2) has roundtrip 3; the bound is exp(-ln(n) * 3 / r)
    r = 3 * math.log(3) * 4
    trials = 4000
    root = RandomStream(99)
    together = 0
    for i in range(trials):
        res = cluster_out(triangle, [0], r, rng=root.child(i))
        lab = res.partition.labels
        together += lab[1] == lab[2]
    p = math.exp(-math.log(3) * 3 / r)
    sigma = math.sqrt(p * (1 - p) / trials)
    assert together / trials >= p - 3 * sigma


def test_sequential_examples(triangle):
    single = Graph(1)
    assert sequential_cluster_out(single, [0], 1.0, rng=1).clusters == [[0]]
    res = sequential_cluster_out(triangle, [0], 1.0, shifts={0: 2})
    assert res.clusters == [[0, 1, 2]]
    res = sequential_cluster_in(triangle, [0, 0, 1], 1.0, shifts={0: 0, 1: 0})
    assert res.clusters == [[0], [1], [2]] and res.residual == [2]


def test_sequential_pair_separation(triangle):
    r = 3 * math.log(3) * 4
    trials = 3000
    root = RandomStream(5)
    together = sum(
        (lambda lab: lab[1] == lab[2])(sequential_cluster_out(triangle, [0, 1, 2], r, rng=root.child(i)).partition.labels)
        for i in range(trials)
    )
    p = math.exp(-math.log(3) * 3 / r)
    assert together / trials >= p - 3 * math.sqrt(p * (1 - p) / trials)
