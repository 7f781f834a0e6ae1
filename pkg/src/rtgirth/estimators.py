"""scikit-learn style wrappers.

The "data" is a graph: a :class:`Graph`, edge-list text, or an ``(m, 2)`` /
``(m, 3)`` integer array of ``(u, v[, length])`` rows.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .clustering import cluster_in, cluster_out
from .cover import fast_roundtrip_cover, scc_via_cover
from .detour import girth_additive_deterministic
from .girth import fast_roundtrip_spanner, girth_additive_randomized, girth_multiplicative
from .graph import IN, OUT, Graph, parse_graph, tarjan_scc


def check_graph(X, n_vertices: int | None = None) -> Graph:
    """Coerce ``X`` into a :class:`Graph`."""
    if isinstance(X, Graph):
        if n_vertices is not None and n_vertices != X.n:
            raise ValueError(f"graph has {X.n} vertices, expected {n_vertices}")
        return X
    if isinstance(X, str):
        return parse_graph(X)
    arr = np.asarray(X)
    if arr.size == 0:
        return Graph(n_vertices or 0)
    if arr.ndim != 2 or arr.shape[1] not in (2, 3):
        raise ValueError(f"edge array must have shape (m, 2) or (m, 3), got {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.isfinite(arr)) or not np.all(arr == np.round(arr)):
            raise ValueError("edge array must hold integers")
        arr = arr.astype(np.int64)
    if (arr < 0).any():
        raise ValueError("vertex ids and lengths must be nonnegative")
    n = int(arr[:, :2].max()) + 1 if n_vertices is None else n_vertices
    lengths = arr[:, 2] if arr.shape[1] == 3 else np.ones(len(arr), dtype=np.int64)
    return Graph(n, zip(arr[:, 0].tolist(), arr[:, 1].tolist(), lengths.tolist()))


def check_probability(name: str, value: float, open_right: bool = True) -> float:
    value = float(value)
    if not (0 < value < 1 if open_right else 0 < value <= 1):
        raise ValueError(f"{name} must lie in (0, 1), got {value}")
    return value


class RoundtripCover(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Fit a ``(k, R)`` roundtrip cover; transform gives the shares-a-ball matrix."""

    def __init__(self, k=2.0, R=1, c=2.0, random_state=0):
        self.k = k
        self.R = R
        self.c = c
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        self.cover_ = fast_roundtrip_cover(g, self.k, self.R, self.c, self.random_state)
        self.n_vertices_ = g.n
        self.n_balls_ = len(self.cover_)
        return self

    def transform(self, X=None):
        check_is_fitted(self, "cover_")
        return self.cover_.co_membership()

    def predict(self, X=None):
        """Number of balls containing each vertex."""
        check_is_fitted(self, "cover_")
        return np.asarray(self.cover_.membership)


class RoundtripSpanner(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Sparse subgraph approximately preserving roundtrip distances."""

    def __init__(self, k=2.0, c=2.0, random_state=0):
        self.k = k
        self.c = c
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        self.result_ = fast_roundtrip_spanner(g, self.k, self.c, self.random_state)
        self.edges_ = np.asarray(self.result_.edges, dtype=np.int64)
        self.graph_ = g
        return self

    def transform(self, X=None) -> Graph:
        check_is_fitted(self, "result_")
        g = self.graph_ if X is None else check_graph(X)
        return self.result_.subgraph(g)


class GirthEstimator(BaseEstimator):
    """Upper estimate of the girth with a certifying cycle.

    ``method`` is ``"multiplicative"``, ``"additive"`` (randomized) or
    ``"additive-deterministic"``.
    """

    def __init__(self, method="multiplicative", k=None, a=0.5, epsilon=0.25, c=2.0, random_state=0):
        self.method = method
        self.k = k
        self.a = a
        self.epsilon = epsilon
        self.c = c
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        if self.method == "multiplicative":
            k = self.k if self.k is not None else max(1.0, math.ceil(math.log(max(g.n, 2))))
            est = girth_multiplicative(g, k, self.c, self.random_state)
        elif self.method == "additive":
            est = girth_additive_randomized(g, check_probability("a", self.a), self.c, self.random_state)
        elif self.method == "additive-deterministic":
            est = girth_additive_deterministic(
                g, check_probability("a", self.a), check_probability("epsilon", self.epsilon)
            )
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.estimate_ = est
        self.girth_ = est.value
        self.witness_ = est.witness
        return self

    def score(self, X=None, y=None):
        """Negative estimate, so that larger is better."""
        check_is_fitted(self, "estimate_")
        return -self.girth_


class StrongComponents(ClusterMixin, BaseEstimator):
    """SCC labels, either exactly or from a roundtrip cover with diameter bound ``R``."""

    def __init__(self, method="tarjan", R=None, c=2.0, random_state=0):
        self.method = method
        self.R = R
        self.c = c
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        if self.method == "tarjan":
            part = tarjan_scc(g)
        elif self.method == "cover":
            if self.R is None or self.R <= 0:
                raise ValueError("method='cover' needs a positive diameter bound R")
            part = scc_via_cover(g, self.R, self.random_state, self.c)
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.partition_ = part
        self.labels_ = np.asarray(part.labels)
        return self


class ExponentialClustering(ClusterMixin, BaseEstimator):
    """Shifted out- (or in-) clustering from every vertex at radius ``r``."""

    def __init__(self, r=1.0, direction=OUT, random_state=0):
        self.r = r
        self.direction = direction
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        if self.direction not in (OUT, IN):
            raise ValueError(f"direction must be {OUT!r} or {IN!r}")
        run = cluster_out if self.direction == OUT else cluster_in
        self.result_ = run(g, list(range(g.n)), self.r, self.random_state)
        self.labels_ = np.asarray(self.result_.partition.labels)
        return self
