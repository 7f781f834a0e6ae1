import numpy as np
import pytest
from sklearn.base import clone

from rtgirth.estimators import (
    ExponentialClustering,
    GirthEstimator,
    RoundtripCover,
    RoundtripSpanner,
    StrongComponents,
    check_graph,
)
from rtgirth.graph import Graph

TRIANGLE = np.array([[0, 1], [1, 2], [2, 0]])


def test_check_graph_forms(triangle):
    assert check_graph(triangle) is triangle
    assert check_graph("3 3\n0 1 1\n1 2 1\n2 0 1") == triangle
    assert check_graph(TRIANGLE) == triangle
    assert check_graph(np.array([[0, 1, 5]]), n_vertices=4).n == 4
    assert check_graph([], n_vertices=2).n == 2


@pytest.mark.parametrize("bad", [np.zeros((2, 4)), np.array([[0, -1]]), np.array([[0.5, 1.0]])])
def test_check_graph_rejects(bad):
    with pytest.raises(ValueError):
        check_graph(bad)


def test_params_roundtrip():
    est = GirthEstimator(method="additive", a=0.3)
    assert est.get_params()["a"] == 0.3
    assert clone(est).get_params() == est.get_params()
    assert RoundtripCover(k=3).set_params(R=5).R == 5


def test_cover_estimator():
    cov = RoundtripCover(k=1, R=3, random_state=2).fit(TRIANGLE)
    assert cov.transform().all()
    assert cov.predict().shape == (3,)


def test_spanner_estimator(triangle):
    sp = RoundtripSpanner(k=1).fit(triangle)
    assert sp.edges_.tolist() == [0, 1, 2]
    assert sp.transform().m == 3


@pytest.mark.parametrize("method", ["multiplicative", "additive", "additive-deterministic"])
def test_girth_estimator(method):
    est = GirthEstimator(method=method, k=1).fit(TRIANGLE)
    assert est.girth_ == 3 and est.witness_.length == 3
    assert est.score() == -3


def test_girth_estimator_errors():
    with pytest.raises(ValueError):
        GirthEstimator(method="nope").fit(TRIANGLE)
    with pytest.raises(ValueError):
        GirthEstimator(method="additive", a=2).fit(TRIANGLE)


def test_components():
    g = Graph(4, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 3, 1)])
    labels = StrongComponents().fit_predict(g)
    assert labels[0] == labels[1] and len(set(labels.tolist())) == 3
    cov = StrongComponents(method="cover", R=2, random_state=1).fit_predict(g)
    assert cov.tolist() == labels.tolist()
    with pytest.raises(ValueError):
        StrongComponents(method="cover").fit(g)


def test_exponential_clustering():
    labels = ExponentialClustering(r=1e6, random_state=3).fit_predict(TRIANGLE)
    assert labels.shape == (3,)
    with pytest.raises(ValueError):
        ExponentialClustering(direction="sideways").fit(TRIANGLE)
