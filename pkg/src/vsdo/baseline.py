"""Brute-force reference answers.

Nothing here calls into the oracle's own search code: graph searches go
through ``scipy.sparse.csgraph`` and the small-instance checks enumerate
simple paths outright.  Distances use the same int64 ``INF`` sentinel.
"""
from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from .kernels import INF

MAX_ENUM_N = 12


def _lightest(src, dst, w):
    order = np.lexsort((w, dst, src))
    src, dst, w = src[order], dst[order], w[order]
    first = np.ones(src.size, dtype=bool)
    first[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
    return src[first], dst[first], w[first]


def _distances(n, src, dst, w, origin):
    """Exact distances from ``origin`` over positive-weight edges (as int64)."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    keep = src != dst
    src, dst, w = _lightest(src[keep], dst[keep], w[keep])
    if w.size and w.min() <= 0:
        raise ValueError("reference search needs positive weights")
    mat = csr_matrix((w.astype(np.float64), (src, dst)), shape=(n, n))
    d = _sp_dijkstra(mat, directed=True, indices=origin)
    out = np.full(n, INF, dtype=np.int64)
    fin = np.isfinite(d)
    out[fin] = np.rint(d[fin]).astype(np.int64)
    return out


def distances(g, s, banned=None):
    keep = np.ones(g.m, dtype=bool)
    if banned is not None:
        keep = (g.src != banned) & (g.dst != banned)
    d = _distances(g.n, g.src[keep], g.dst[keep], g.w[keep], s)
    if banned is not None and banned != s:
        d[banned] = INF
    return d


def exact_ssrp(g, s):
    """``d[x, t] = dist_{G-x}(s, t)`` for every ``x != s``; row ``s`` holds plain distances."""
    out = np.empty((g.n, g.n), dtype=np.int64)
    out[s] = distances(g, s)
    for x in range(g.n):
        if x != s:
            out[x] = distances(g, s, banned=x)
    return out


def bellman_ford(n, edges, s):
    dist = [None] * n
    dist[s] = 0
    for _ in range(max(0, n - 1)):
        changed = False
        for u, v, w in edges:
            if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    return np.array([INF if d is None else d for d in dist], dtype=np.int64)


def _super_source(g, keep_edge, seeds, seed_w):
    """Search from an extra vertex ``n`` joined to ``seeds``.

    Seed weights may be zero, so every seed edge is shifted by one and the
    shift removed afterwards (each path uses exactly one seed edge).
    """
    n = g.n
    src = np.concatenate([g.src[keep_edge], np.full(len(seeds), n)])
    dst = np.concatenate([g.dst[keep_edge], np.asarray(seeds, dtype=np.int64)])
    w = np.concatenate([g.w[keep_edge], np.asarray(seed_w, dtype=np.int64) + 1])
    d = _distances(n + 1, src, dst, w, n)[:n]
    fin = d != INF
    d[fin] -= 1
    return d


def _path_edge_mask(g, pos):
    ps, pd = pos[g.src], pos[g.dst]
    return (ps >= 0) & (pd == ps + 1)


def exact_departing(g, tree, split, v_f):
    """Exact shortest departing-path length to every target for fault ``v_f``."""
    pos = split.pos
    f = int(pos[v_f])
    if f <= 0:
        raise ValueError("fault must be a non-source vertex of the root path")
    ps, pd = pos[g.src], pos[g.dst]
    keep = ~_path_edge_mask(g, pos)
    keep &= ~((pd >= 0) & (pd < f))
    keep &= ~(ps > f)
    keep &= (g.src != v_f) & (g.dst != v_f)
    seeds = split.root_path[:f]
    d = _super_source(g, keep, seeds, tree.dist[seeds])
    d[v_f] = INF
    return d


def exact_departing_by_interval(g, tree, split, i, j):
    """Exact ``minL(Gamma(I^i_j, t))`` for every ``t``, on the explicit round graph."""
    p = split.p
    p2 = 1 << max(0, (p - 1).bit_length())
    width = p2 >> i
    lo = j * width
    if lo > p - 1:
        return np.full(g.n, INF, dtype=np.int64)
    hi = min(lo + width - 1, p - 1)
    pos = split.pos
    ps, pd = pos[g.src], pos[g.dst]
    keep = ~_path_edge_mask(g, pos)
    keep &= ~((pd >= 0) & (pd <= hi))
    keep &= ~(ps > hi)
    seeds = split.root_path[lo:hi + 1]
    return _super_source(g, keep, seeds, tree.dist[seeds])


# ---------------------------------------------------------------- enumeration


def _adjacency(g):
    best = {}
    for u, v, w in g.edges():
        if (u, v) not in best or w < best[(u, v)]:
            best[(u, v)] = w
    adj = [[] for _ in range(g.n)]
    for (u, v), w in sorted(best.items()):
        adj[u].append((v, w))
    return adj


def simple_paths(g, s, extend=None):
    """Yield ``(vertex tuple, length)`` for every simple path starting at ``s``.

    ``extend(v)`` decides whether a path may continue out of its last vertex
    ``v`` (the start is always extendable).
    """
    if g.n > MAX_ENUM_N:
        raise ValueError(f"path enumeration capped at n <= {MAX_ENUM_N}")
    adj = _adjacency(g)
    stack = [((s,), 0)]
    while stack:
        path, length = stack.pop()
        yield path, length
        u = path[-1]
        if len(path) > 1 and extend is not None and not extend(u):
            continue
        for v, w in adj[u]:
            if v not in path:
                stack.append((path + (v,), length + w))


def brute_ssrp(g, s):
    out = np.full((g.n, g.n), INF, dtype=np.int64)
    for path, length in simple_paths(g, s):
        t = path[-1]
        for x in range(g.n):
            if x != s and x not in path and length < out[x, t]:
                out[x, t] = length
            elif x == s and length < out[s, t]:
                out[s, t] = length
    return out


def brute_restricted(g, src, interior):
    out = np.full(g.n, INF, dtype=np.int64)
    for path, length in simple_paths(g, src, extend=lambda v: bool(interior[v])):
        t = path[-1]
        out[t] = min(out[t], length)
    return out


def is_departing(path, pos, f):
    """Conditions C1 and C2 for a simple path from the source avoiding position ``f``."""
    on_prefix = [0 <= pos[v] < f for v in path]
    k = 0
    while k < len(path) and on_prefix[k]:
        k += 1
    if any(on_prefix[k:]):
        return False
    return not any(pos[v] > f for v in path[:-1])


def brute_departing(g, split, v_f):
    pos = split.pos
    f = int(pos[v_f])
    out = np.full(g.n, INF, dtype=np.int64)
    s = int(split.root_path[0])
    for path, length in simple_paths(g, s):
        if v_f in path or not is_departing(path, pos, f):
            continue
        t = path[-1]
        out[t] = min(out[t], length)
    return out
