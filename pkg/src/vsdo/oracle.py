"""Recursive (1+eps)-approximate single-source vertex-fault distance oracle.

Each recursion node holds a shortest-path tree split at its centroid ``z``
into T1 (holding the source) and T2 (rooted at ``z``).  Faults on the
source-to-``z`` path with targets below ``z`` are answered by the node's
path-faulty oracle; everything else descends into

* child ``2k``: T1 plus shortcut edges for detours through T2, and
* child ``2k+1``: T2 minus ``z`` plus the source with shortcut edges for
  prefixes inside T1.

Vertices keep their global ids; every node stores its member ids sorted and
works on a locally relabelled graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graphcore import (
    INF,
    LEAF_SIZE,
    Digraph,
    build_spt,
    centroid_bipartition,
    dijkstra,
    restricted_dijkstra,
    to_distance,
)
from .pathfault import SZ_PROVIDERS, DPOracle, PFOracle, build_sz_table, dp_query, pf_query
from .progdijk import run_progressive


def ceil_log2(n):
    return max(1, (max(1, int(n)) - 1).bit_length())


@dataclass(frozen=True)
class BuildConfig:
    eps: float
    eps1: float
    eps2: float
    leaf_size: int = LEAF_SIZE
    sz_provider: str = "exact"

    @classmethod
    def for_graph(cls, n, eps, sz_provider="exact"):
        if not 0 < eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {eps}")
        if sz_provider not in SZ_PROVIDERS:
            raise ValueError(f"unknown sz provider {sz_provider!r}")
        lg = ceil_log2(n)
        eps1 = eps / (3 * lg)
        return cls(float(eps), eps1, eps1 / (2 * lg), LEAF_SIZE, sz_provider)


@dataclass(eq=False)
class OracleNode:
    id: int
    vertices: np.ndarray  # sorted global ids; local id = index
    source: int  # local id of the source
    spt: object
    graph: Digraph | None = None  # dropped on load for inner nodes
    split: object = None
    pf: PFOracle | None = None
    f2_edges: int = 0
    m: int = 0

    @property
    def leaf(self):
        return self.split is None

    @property
    def size(self):
        return int(self.vertices.size)

    @property
    def depth(self):
        return self.id.bit_length() - 1

    def local(self, v):
        k = int(np.searchsorted(self.vertices, v))
        if k < self.vertices.size and self.vertices[k] == v:
            return k
        return -1

    def in_child1(self, lv):
        return bool(self.split.in_t1[lv])

    def in_child2(self, lv):
        return lv == self.source or (bool(self.split.in_t2[lv]) and lv != self.split.z)


@dataclass(eq=False)
class VSDO:
    config: BuildConfig
    nodes: dict = field(default_factory=dict)
    n: int = 0
    m: int = 0
    max_weight: int = 0
    source: int = 0

    @property
    def root(self):
        return self.nodes[1]

    @property
    def depth(self):
        return max(k.bit_length() - 1 for k in self.nodes)

    def query(self, x, t):
        return dso_query(self, x, t)


def _check_input(g, s, eps):
    if not 0 <= s < g.n:
        raise IndexError(f"source {s} out of range [0, {g.n})")
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if g.m and g.w.min() < 1:
        raise ValueError("input edge weights must be >= 1")
    if g.n * max(1, g.max_weight) * g.n >= 2**63:
        raise OverflowError("n * W * n does not fit in 64 bits")


def build_node(nid, graph, vertices, source, cfg):
    ls = int(np.searchsorted(vertices, source))
    spt = build_spt(graph, ls)
    node = OracleNode(nid, vertices, ls, spt, graph, m=graph.m)
    if graph.n <= cfg.leaf_size:
        return node
    split = centroid_bipartition(spt)
    tab = run_progressive(graph, spt, split, cfg.eps2)
    dp = DPOracle(tab, split.pos, split.root_path)
    sz = build_sz_table(graph, split, cfg.eps1, cfg.sz_provider, dp=dp, dist_s=spt.dist)
    node.split = split
    node.pf = PFOracle(dp, sz, spt.dist, int(spt.dist[split.z]))
    return node


def _assemble(g, keep, src, dst, w):
    """Induced subgraph on ``keep`` plus extra edges (node-local ids), lightest parallel edge kept."""
    old = np.flatnonzero(keep)
    new = np.full(g.n, -1, dtype=np.int64)
    new[old] = np.arange(old.size)
    e = keep[g.src] & keep[g.dst]
    child = Digraph(
        old.size,
        np.concatenate([new[g.src[e]], new[np.asarray(src, dtype=np.int64)]]),
        np.concatenate([new[g.dst[e]], new[np.asarray(dst, dtype=np.int64)]]),
        np.concatenate([g.w[e], np.asarray(w, dtype=np.int64)]),
    )
    return child.dedup(), old


def construct_g2(node):
    """Child for faults and targets in T2 minus ``z``.

    Returns the child graph and the node-local ids of its vertices.
    """
    g, split, s = node.graph, node.split, node.source
    body = split.in_t2.copy()
    body[split.z] = False
    reach = restricted_dijkstra(g, s, split.in_t1)
    targets = np.flatnonzero(body & (reach != INF))
    keep = body.copy()
    keep[s] = True
    # only the synthetic edges touch s
    inner = body[g.src] & body[g.dst]
    sub = Digraph(g.n, g.src[inner], g.dst[inner], g.w[inner])
    return _assemble(sub, keep, np.full(targets.size, s), targets, reach[targets])


def f2_edges(node, tab=None):
    """Branch-to-coalesce shortcuts harvested from the update lists (node-local ids)."""
    split = node.split
    tab = node.pf.dp.tab if tab is None else tab
    owners = np.concatenate([np.repeat(np.arange(tab.n), np.diff(tab.ptr[i])) for i in range(tab.levels)])
    if owners.size == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z
    keep = (split.pos[owners] >= 0) & (tab.branches != owners)
    vb = tab.branches[keep]
    vc = owners[keep]
    w = tab.lengths[keep] - node.spt.dist[vb]
    return vb, vc, w


def construct_g1(node, tab=None):
    """Child for faults and targets in T1."""
    g, split = node.graph, node.split
    z = split.z
    t1 = split.in_t1
    body2 = split.in_t2.copy()
    body2[z] = False
    back = restricted_dijkstra(g, z, body2)
    f1 = np.flatnonzero(t1 & (back != INF))
    f1 = f1[f1 != z]
    vb, vc, w2 = f2_edges(node, tab)
    return _assemble(
        g,
        t1,
        np.concatenate([np.full(f1.size, z), vb]),
        np.concatenate([f1, vc]),
        np.concatenate([back[f1], w2]),
    )


def build(g, s, eps, sz_provider="exact", keep_graphs=False):
    """Build the oracle for source ``s``; vertices unreachable from ``s`` stay out of every node."""
    s = int(s)
    _check_input(g, s, eps)
    cfg = BuildConfig.for_graph(g.n, eps, sz_provider)
    dist, _ = dijkstra(g, s)
    root_graph, root_vertices = g.subgraph(dist != INF)
    oracle = VSDO(cfg, {}, g.n, g.m, g.max_weight, s)
    stack = [(1, root_graph, root_vertices)]
    while stack:
        nid, graph, vertices = stack.pop()
        node = build_node(nid, graph, vertices, s, cfg)
        oracle.nodes[nid] = node
        if node.leaf:
            continue
        g1, loc1 = construct_g1(node)
        g2, loc2 = construct_g2(node)
        node.f2_edges = int(f2_edges(node)[0].size)
        stack.append((2 * nid + 1, g2, vertices[loc2]))
        stack.append((2 * nid, g1, vertices[loc1]))
        if not keep_graphs:
            node.graph = None
    return oracle


def _leaf_answer(node, lx, lt):
    dist, _ = dijkstra(node.graph, node.source, lx)
    return int(dist[lt])


def route(o, x, t):
    """Answer ``(x, t)`` and report the visited node ids and sub-oracle calls.

    Returns ``(int64 distance, [node ids], sub-oracle call count)``.
    """
    x, t = int(x), int(t)
    for v, what in ((x, "fault"), (t, "target")):
        if not 0 <= v < o.n:
            raise IndexError(f"{what} {v} out of range [0, {o.n})")
    if x == o.source:
        raise ValueError("source cannot fail")
    if t == o.source:
        return 0, [], 0
    if x == t:
        return INF, [], 0
    best = INF
    visits = []
    calls = 0
    nid = 1
    while True:
        node = o.nodes[nid]
        visits.append(nid)
        lt = node.local(t)
        if lt < 0 or node.spt.dist[lt] == INF:
            return best, visits, calls
        lx = node.local(x)
        if lx < 0 or not node.spt.is_ancestor(lx, lt):
            return min(best, int(node.spt.dist[lt])), visits, calls
        if node.leaf:
            return min(best, _leaf_answer(node, lx, lt)), visits, calls
        on_path = node.split.pos[lx] >= 0
        if on_path and node.in_child2(lt):
            calls += 1
            return min(best, pf_query(node.pf, lx, lt)), visits, calls
        if node.in_child1(lx) and node.in_child1(lt):
            if on_path:
                calls += 1
                best = min(best, dp_query(node.pf.dp, lx, lt))
            nid = 2 * nid
            continue
        assert node.in_child2(lx) and node.in_child2(lt), "fault off the root path cannot separate"
        nid = 2 * nid + 1


def dso_query(o, x, t):
    """Approximate ``dist_{G-x}(s, t)``: an int, or ``math.inf`` when unreachable."""
    return to_distance(route(o, x, t)[0])


def depth_profile(o):
    """Per recursion depth: (nodes, total vertices, total stored edges)."""
    out = {}
    for node in o.nodes.values():
        d = out.setdefault(node.depth, [0, 0, 0])
        d[0] += 1
        d[1] += node.size
        d[2] += node.m
    return {k: tuple(v) for k, v in sorted(out.items())}


def depth_bound(n):
    return math.ceil(math.log(max(2, n)) / math.log(1.5)) + 3
