"""Progressive Dijkstra over the dyadic intervals of the root path.

For every level ``i`` the root path is cut into ``2**i`` aligned blocks and
the blocks are processed left to right.  Round ``j`` runs a Dijkstra on the
graph in which

* root-path edges are gone,
* nothing may enter a path vertex of block ``j`` or any earlier block,
* nothing may leave a path vertex of a later block,
* the vertices of block ``j`` are seeded at their tree distance.

Distances carry over between rounds and a vertex only re-enters the heap when
its distance drops by more than a ``1 + eps2`` factor.  Each such entry is
logged in ``upd(i, v)`` as ``(round, length, branch)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kernels import INF


@dataclass(frozen=True)
class DyadicIndex:
    i: int
    j: int
    lo: int
    hi: int

    def __len__(self):
        return self.hi - self.lo + 1


def padded_length(p):
    """Smallest power of two >= p."""
    return 1 << max(0, (int(p) - 1).bit_length())


def num_levels(p):
    return padded_length(p).bit_length()


def dyadic_interval(i, j, p):
    """Block ``j`` of level ``i``, clipped to ``[0, p-1]``; None when empty."""
    p2 = padded_length(p)
    width = p2 >> i
    lo = j * width
    if lo > p - 1:
        return None
    return DyadicIndex(i, j, lo, min(lo + width - 1, p - 1))


def intervals(i, p):
    out = []
    for j in range(1 << i):
        iv = dyadic_interval(i, j, p)
        if iv is None:
            break
        out.append(iv)
    return out


def round_of(i, position, p):
    """Round whose block at level ``i`` contains ``position``."""
    return position // (padded_length(p) >> i)


def dyadic_prefix_cover(b, p):
    """Greedy cover of positions ``[0, b-1]`` by aligned blocks, largest first."""
    if not 1 <= b <= p:
        raise ValueError(f"need 1 <= b <= p, got b={b}, p={p}")
    levels = num_levels(p)
    out = []
    lo = 0
    while lo < b:
        for i in range(levels):
            width = padded_length(p) >> i
            if lo % width == 0 and lo + width <= b:
                out.append(DyadicIndex(i, lo // width, lo, lo + width - 1))
                lo += width
                break
    return out


@dataclass(eq=False)
class UpdTable:
    """Per-level, per-vertex update lists in CSR form.

    ``ptr[i, v] : ptr[i, v + 1]`` indexes the records of ``upd(i, v)`` in
    ``rounds``/``lengths``/``branches``, ascending by round.
    """

    p: int
    p2: int
    eps2: float
    ptr: np.ndarray  # (levels, n + 1)
    rounds: np.ndarray
    lengths: np.ndarray
    branches: np.ndarray

    @property
    def levels(self):
        return self.ptr.shape[0]

    @property
    def n(self):
        return self.ptr.shape[1] - 1

    @property
    def size(self):
        return int(self.rounds.size)

    def upd(self, i, v):
        a, b = self.ptr[i, v], self.ptr[i, v + 1]
        return list(
            zip(self.rounds[a:b].tolist(), self.lengths[a:b].tolist(), self.branches[a:b].tolist())
        )

    def counts(self, i):
        """Records (= heap insertions) per vertex at level ``i``."""
        return np.diff(self.ptr[i])

    def level_slice(self, i):
        a, b = self.ptr[i, 0], self.ptr[i, -1]
        return slice(int(a), int(b))


def empty_table(n, eps2):
    return UpdTable(
        p=0,
        p2=0,
        eps2=eps2,
        ptr=np.zeros((0, n + 1), dtype=np.int64),
        rounds=np.zeros(0, dtype=np.int64),
        lengths=np.zeros(0, dtype=np.int64),
        branches=np.zeros(0, dtype=np.int64),
    )


def run_progressive(g, tree, split, eps2):
    if not eps2 > 0:
        raise ValueError("eps2 must be positive")
    n = g.n
    p = split.p
    if p == 0:
        return empty_table(n, eps2)
    p2 = padded_length(p)
    levels = num_levels(p)
    ptr = np.zeros((levels, n + 1), dtype=np.int64)
    parts = []
    base = 0
    for i in range(levels):
        ev, er, el, eb = kernels.progressive_level(
            g.indptr, g.dst, g.w, split.pos, split.root_path, tree.dist, p, p2, i, float(eps2)
        )
        order = np.argsort(ev, kind="stable")
        counts = np.bincount(ev, minlength=n)
        ptr[i, 0] = base
        np.cumsum(counts, out=ptr[i, 1:])
        ptr[i, 1:] += base
        base += ev.size
        parts.append((er[order], el[order], eb[order]))
    return UpdTable(
        p=p,
        p2=p2,
        eps2=float(eps2),
        ptr=ptr,
        rounds=np.concatenate([x[0] for x in parts]),
        lengths=np.concatenate([x[1] for x in parts]),
        branches=np.concatenate([x[2] for x in parts]),
    )


def r_lookup(tab, i, j, v):
    """Length of the last record in ``upd(i, v)`` with round <= j (int64; INF if none)."""
    if j < 0:
        return INF
    a, b = tab.ptr[i, v], tab.ptr[i, v + 1]
    if a == b:
        return INF
    k = np.searchsorted(tab.rounds[a:b], j, side="right")
    if k == 0:
        return INF
    return int(tab.lengths[a + k - 1])


def entry_bound(n, max_weight, eps2):
    """Cap on records per list: ceil(log_{1+eps2}(n W)) + 2."""
    nw = max(2, int(n) * max(1, int(max_weight)))
    return math.ceil(math.log(nw) / math.log1p(eps2)) + 2
