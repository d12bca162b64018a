"""Directed graphs, shortest-path trees and the centroid bipartition."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kernels import INF

__all__ = [
    "INF",
    "Digraph",
    "SPTree",
    "CentroidSplit",
    "dijkstra",
    "restricted_dijkstra",
    "build_spt",
    "centroid_bipartition",
    "to_distance",
    "LEAF_SIZE",
]

LEAF_SIZE = 6


def to_distance(value):
    """int64 array value -> Python int, or ``math.inf`` for the sentinel."""
    value = int(value)
    return math.inf if value == INF else value


class Digraph:
    """Dense-indexed directed multigraph stored as sorted edge arrays plus CSR.

    Self-loops are dropped on ingest.  Edges are kept sorted by
    ``(src, dst, w)`` so two graphs with the same edge multiset compare equal
    array for array.
    """

    __slots__ = ("n", "src", "dst", "w", "indptr")

    def __init__(self, n, src=(), dst=(), w=(), *, min_weight=0):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        w = np.asarray(w, dtype=np.int64).ravel()
        if not (src.shape == dst.shape == w.shape):
            raise ValueError("edge arrays differ in length")
        if src.size:
            lo = min(src.min(), dst.min())
            hi = max(src.max(), dst.max())
            if lo < 0 or hi >= n:
                raise ValueError(f"edge endpoint out of range [0, {n})")
            if w.min() < min_weight:
                raise ValueError(f"edge weight below {min_weight}")
        keep = src != dst
        src, dst, w = src[keep], dst[keep], w[keep]
        order = np.lexsort((w, dst, src))
        self.n = n
        self.src = src[order]
        self.dst = dst[order]
        self.w = w[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.src, minlength=n), out=self.indptr[1:])

    @classmethod
    def from_edges(cls, n, edges, **kw):
        edges = list(edges)
        if not edges:
            return cls(n, **kw)
        s, d, w = zip(*edges)
        return cls(n, s, d, w, **kw)

    @property
    def m(self):
        return int(self.src.size)

    @property
    def max_weight(self):
        return int(self.w.max()) if self.w.size else 0

    def edges(self):
        return list(zip(self.src.tolist(), self.dst.tolist(), self.w.tolist()))

    def out_edges(self, u):
        a, b = self.indptr[u], self.indptr[u + 1]
        return list(zip(self.dst[a:b].tolist(), self.w[a:b].tolist()))

    def csr(self):
        return self.indptr, self.dst, self.w

    def dedup(self):
        """Keep only the lightest edge between every ordered pair."""
        if self.m == 0:
            return self
        first = np.ones(self.m, dtype=bool)
        first[1:] = (self.src[1:] != self.src[:-1]) | (self.dst[1:] != self.dst[:-1])
        return Digraph(self.n, self.src[first], self.dst[first], self.w[first])

    def subgraph(self, keep):
        """Induced subgraph on the vertices where ``keep`` is true.

        Returns the graph relabelled to ``0..k-1`` in increasing old-id order,
        and the array of old ids.
        """
        keep = np.asarray(keep, dtype=bool)
        old = np.flatnonzero(keep)
        new = np.full(self.n, -1, dtype=np.int64)
        new[old] = np.arange(old.size)
        e = keep[self.src] & keep[self.dst]
        return Digraph(old.size, new[self.src[e]], new[self.dst[e]], self.w[e]), old

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.w, other.w)
        )

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


def _check_vertex(g, v, what="vertex"):
    if not 0 <= int(v) < g.n:
        raise IndexError(f"{what} {v} out of range [0, {g.n})")


def dijkstra(g, src, banned=-1):
    """Exact distances and canonical parents from ``src``.

    ``banned`` removes one vertex from the graph for the duration of the
    search.  Unreachable vertices get ``INF`` and parent ``-1``.
    """
    _check_vertex(g, src, "source")
    return kernels.sssp(g.indptr, g.dst, g.w, int(src), int(banned))


def restricted_dijkstra(g, src, interior):
    """Distances over paths whose intermediate vertices satisfy ``interior``.

    ``interior`` is a boolean mask; ``src`` and each destination are exempt.
    """
    _check_vertex(g, src, "source")
    interior = np.asarray(interior, dtype=np.bool_)
    if interior.shape != (g.n,):
        raise ValueError("interior mask must have one entry per vertex")
    return kernels.restricted_sssp(g.indptr, g.dst, g.w, int(src), interior)


@dataclass(frozen=True, eq=False)
class SPTree:
    root: int
    parent: np.ndarray
    dist: np.ndarray
    tin: np.ndarray
    tout: np.ndarray

    @property
    def n(self):
        return self.dist.shape[0]

    @property
    def covered(self):
        return self.dist != INF

    def is_ancestor(self, a, b):
        """True when ``a`` lies on the tree path from the root to ``b`` (inclusive)."""
        if self.tin[a] < 0 or self.tin[b] < 0:
            return False
        return self.tin[a] <= self.tin[b] and self.tout[b] <= self.tout[a]

    def path_to(self, v):
        """Root-to-``v`` vertex list."""
        if self.dist[v] == INF:
            raise ValueError(f"vertex {v} is not reachable from the root")
        out = [int(v)]
        while out[-1] != self.root:
            out.append(int(self.parent[out[-1]]))
        return out[::-1]

    def children_csr(self):
        n = self.n
        has = self.parent >= 0
        kids = np.flatnonzero(has)
        owners = self.parent[kids]
        order = np.lexsort((kids, owners))
        ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(owners, minlength=n), out=ptr[1:])
        return ptr, kids[order]


def build_spt(g, s):
    dist, parent = dijkstra(g, s)
    shell = SPTree(int(s), parent, dist, parent, parent)
    ptr, kids = shell.children_csr()
    tin, tout = kernels.euler_tour(ptr, kids, int(s))
    return SPTree(int(s), parent, dist, tin, tout)


@dataclass(frozen=True, eq=False)
class CentroidSplit:
    z: int
    in_t1: np.ndarray
    in_t2: np.ndarray
    root_path: np.ndarray
    pos: np.ndarray  # position on root_path, -1 elsewhere

    @property
    def p(self):
        return int(self.root_path.size)


def centroid_bipartition(tree):
    """Split ``tree`` at a centroid into two edge-disjoint subtrees.

    The components of ``tree - z`` are dealt largest first to whichever side
    is currently lighter; the side holding the root's component is T1.
    """
    covered = tree.covered
    size_total = int(covered.sum())
    if size_total <= LEAF_SIZE:
        raise ValueError(f"tree of {size_total} vertices is too small to split")
    n = tree.n
    ptr, kids = tree.children_csr()
    # subtree sizes, children before parents
    order = kids[np.argsort(-tree.tin[kids], kind="stable")]
    sub = covered.astype(np.int64)
    for v in order:
        sub[tree.parent[v]] += sub[v]
    heaviest_child = np.zeros(n, dtype=np.int64)
    np.maximum.at(heaviest_child, tree.parent[kids], sub[kids])
    heaviest = np.maximum(size_total - sub, heaviest_child)
    heaviest[~covered] = size_total + 1
    z = int(np.argmin(heaviest))
    # components of T - z: (size, tiebreak id, is_root_side, top vertex)
    comps = [(int(sub[c]), int(c), False, int(c)) for c in kids[ptr[z]:ptr[z + 1]]]
    if z != tree.root:
        comps.append((size_total - int(sub[z]), int(tree.root), True, int(tree.root)))
    comps.sort(key=lambda c: (-c[0], c[1]))
    load = [0, 0]
    side_of = {}
    for size, _, _, top in comps:
        k = 0 if load[0] <= load[1] else 1
        load[k] += size
        side_of[top] = k
    t1_side = 0
    for size, _, rootward, top in comps:
        if rootward:
            t1_side = side_of[top]
    in_t1 = np.zeros(n, dtype=bool)
    in_t2 = np.zeros(n, dtype=bool)
    in_t1[z] = in_t2[z] = True
    for size, _, rootward, top in comps:
        target = in_t1 if side_of[top] == t1_side else in_t2
        if rootward:
            # everything outside z's subtree
            mask = covered & ~((tree.tin >= tree.tin[z]) & (tree.tout <= tree.tout[z]))
        else:
            mask = covered & (tree.tin >= tree.tin[top]) & (tree.tout <= tree.tout[top])
        target |= mask
    root_path = np.asarray(tree.path_to(z), dtype=np.int64)
    pos = np.full(n, -1, dtype=np.int64)
    pos[root_path] = np.arange(root_path.size)
    return CentroidSplit(z, in_t1, in_t2, root_path, pos)
