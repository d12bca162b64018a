"""Approximate single-source vertex-fault distance sensitivity oracle."""
from .graphcore import INF, Digraph, build_spt, centroid_bipartition, dijkstra, restricted_dijkstra
from .oracle import VSDO, BuildConfig, build, dso_query
from .serialize import deserialize, load, save, serialize

__all__ = [
    "INF",
    "Digraph",
    "VSDO",
    "BuildConfig",
    "build",
    "build_spt",
    "centroid_bipartition",
    "deserialize",
    "dijkstra",
    "dso_query",
    "load",
    "restricted_dijkstra",
    "save",
    "serialize",
]
