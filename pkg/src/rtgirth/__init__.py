"""Roundtrip covers, roundtrip spanners and girth approximation for directed graphs."""

from .clustering import ClusterResult, cluster, cluster_in, cluster_out, sequential_cluster
from .collapse import (
    CollapseError,
    CollapseForest,
    ScaleGraph,
    build_scale_graphs,
    collapse_to_interval,
    d_infty_query,
    find_collapse_times,
    linf_spanner,
)
from .cover import Cover, fast_roundtrip_cover, probabilistic_cover, scc_via_cover
from .cycles import CycleWitness, WitnessError, shortest_cycle_through
from .detour import (
    DetourGraph,
    build_detour_graph,
    extract_cycle,
    girth_additive_deterministic,
    second_shortest_path,
)
from .estimation import BallSizeEstimate, estimate_balls
from .estimators import (
    ExponentialClustering,
    GirthEstimator,
    RoundtripCover,
    RoundtripSpanner,
    StrongComponents,
    check_graph,
)
from .girth import (
    GirthEstimate,
    SpannerResult,
    fast_roundtrip_spanner,
    girth_additive_randomized,
    girth_multiplicative,
)
from .graph import (
    IN,
    INF,
    OUT,
    Ball,
    DistanceTree,
    Graph,
    GraphParseError,
    VertexPartition,
    format_graph,
    parse_graph,
    read_graph,
    roundtrip_ball,
    sssp,
    tarjan_scc,
)
from .rng import RandomStream

__version__ = "0.1.0"
