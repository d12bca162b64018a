"""Inner loops over CSR arrays.

Every function here is written in the numba-compatible subset of Python so
that the same body runs compiled or interpreted (see ``_jit``).  Distances are
int64 with ``INF`` as the unreachable sentinel.
"""
from heapq import heappop, heappush

import numpy as np

from ._jit import njit

INF = np.iinfo(np.int64).max


@njit
def sssp(indptr, heads, wts, src, banned):
    """Dijkstra from ``src`` skipping vertex ``banned`` (-1 for none).

    Ties on distance keep the smallest predecessor id.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, INF, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    if src == banned:
        return dist, parent
    dist[src] = 0
    heap = [(np.int64(0), np.int64(src))]
    while len(heap) > 0:
        du, u = heappop(heap)
        if done[u] or du != dist[u]:
            continue
        done[u] = True
        for e in range(indptr[u], indptr[u + 1]):
            v = heads[e]
            if v == banned or done[v]:
                continue
            nd = du + wts[e]
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heappush(heap, (nd, v))
            elif nd == dist[v] and u < parent[v]:
                parent[v] = u
    return dist, parent


@njit
def restricted_sssp(indptr, heads, wts, src, interior):
    """Shortest paths whose intermediate vertices all satisfy ``interior``."""
    n = indptr.shape[0] - 1
    dist = np.full(n, INF, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    dist[src] = 0
    heap = [(np.int64(0), np.int64(src))]
    while len(heap) > 0:
        du, u = heappop(heap)
        if done[u] or du != dist[u]:
            continue
        done[u] = True
        if u != src and not interior[u]:
            continue
        for e in range(indptr[u], indptr[u + 1]):
            v = heads[e]
            nd = du + wts[e]
            if nd < dist[v]:
                dist[v] = nd
                heappush(heap, (nd, v))
    return dist


@njit
def euler_tour(child_ptr, children, root):
    """Preorder entry/exit stamps on one shared clock."""
    n = child_ptr.shape[0] - 1
    tin = np.full(n, -1, dtype=np.int64)
    tout = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    nxt = np.zeros(n, dtype=np.int64)
    clock = 0
    top = 0
    stack[0] = root
    tin[root] = clock
    clock += 1
    nxt[root] = child_ptr[root]
    while top >= 0:
        u = stack[top]
        k = nxt[u]
        if k < child_ptr[u + 1]:
            nxt[u] = k + 1
            c = children[k]
            tin[c] = clock
            clock += 1
            nxt[c] = child_ptr[c]
            top += 1
            stack[top] = c
        else:
            tout[u] = clock
            clock += 1
            top -= 1
    return tin, tout


@njit
def progressive_level(indptr, heads, wts, pos, path, dist_s, p, p2, level, eps2):
    """All rounds of one dyadic level of the progressive Dijkstra.

    Returns the upd records of this level in creation order as four arrays
    (target, round, length, branch).  A record is appended whenever a vertex
    enters the heap and rewritten in place while the vertex stays there.
    """
    n = indptr.shape[0] - 1
    d = np.full(n, INF, dtype=np.int64)
    b = np.full(n, -1, dtype=np.int64)
    in_heap = np.zeros(n, dtype=np.bool_)
    last = np.full(n, -1, dtype=np.int64)
    cap = 64
    e_v = np.empty(cap, dtype=np.int64)
    e_r = np.empty(cap, dtype=np.int64)
    e_l = np.empty(cap, dtype=np.int64)
    e_b = np.empty(cap, dtype=np.int64)
    cnt = 0
    width = p2 >> level
    factor = 1.0 + eps2
    for j in range(1 << level):
        lo = j * width
        if lo > p - 1:
            break
        hi = min(lo + width - 1, p - 1)
        heap = [(np.int64(0), np.int64(0))]
        heap.pop()
        for q in range(lo, hi + 1):
            u = path[q]
            d[u] = dist_s[u]
            b[u] = u
            in_heap[u] = True
            heappush(heap, (d[u], u))
            if cnt == cap:
                cap *= 2
                e_v = np.concatenate((e_v, np.empty(cap - cnt, dtype=np.int64)))
                e_r = np.concatenate((e_r, np.empty(cap - cnt, dtype=np.int64)))
                e_l = np.concatenate((e_l, np.empty(cap - cnt, dtype=np.int64)))
                e_b = np.concatenate((e_b, np.empty(cap - cnt, dtype=np.int64)))
            e_v[cnt] = u
            e_r[cnt] = j
            e_l[cnt] = d[u]
            e_b[cnt] = u
            last[u] = cnt
            cnt += 1
        while len(heap) > 0:
            du, u = heappop(heap)
            if not in_heap[u] or du != d[u]:
                continue
            in_heap[u] = False
            pu = pos[u]
            if pu > hi:
                continue
            for e in range(indptr[u], indptr[u + 1]):
                v = heads[e]
                pv = pos[v]
                if pv >= 0:
                    if pv <= hi:
                        continue
                    if pu >= 0 and pv == pu + 1:
                        continue
                nd = du + wts[e]
                if in_heap[v]:
                    if nd < d[v]:
                        d[v] = nd
                        b[v] = b[u]
                        heappush(heap, (nd, v))
                        k = last[v]
                        e_l[k] = nd
                        e_b[k] = b[v]
                elif d[v] == INF or nd * factor < d[v]:
                    d[v] = nd
                    b[v] = b[u]
                    in_heap[v] = True
                    heappush(heap, (nd, v))
                    if cnt == cap:
                        cap *= 2
                        e_v = np.concatenate((e_v, np.empty(cap - cnt, dtype=np.int64)))
                        e_r = np.concatenate((e_r, np.empty(cap - cnt, dtype=np.int64)))
                        e_l = np.concatenate((e_l, np.empty(cap - cnt, dtype=np.int64)))
                        e_b = np.concatenate((e_b, np.empty(cap - cnt, dtype=np.int64)))
                    e_v[cnt] = v
                    e_r[cnt] = j
                    e_l[cnt] = nd
                    e_b[cnt] = b[v]
                    last[v] = cnt
                    cnt += 1
    return e_v[:cnt].copy(), e_r[:cnt].copy(), e_l[:cnt].copy(), e_b[:cnt].copy()


@njit
def suffix_jump_level(out, ent_round, ent_pos, ent_len, dist_pos, p, p2, level):
    """Fold one level into ``out[f] = min_c r(level, j(f)-1, c) + dist(c, z)``.

    ``c`` ranges over path positions after ``f``.  The records must be the
    path-vertex records of this level sorted by round.  A min segment tree
    over path positions holds the current value for every position.
    """
    size = 1
    while size < p:
        size *= 2
    tree = np.full(2 * size, INF, dtype=np.int64)
    dz = dist_pos[p - 1]
    width = p2 >> level
    k = 0
    m = ent_round.shape[0]
    for j in range(1 << level):
        lo = j * width
        if lo > p - 1:
            break
        hi = min(lo + width - 1, p - 1)
        for f in range(max(lo, 1), hi + 1):
            a = f + 1 + size
            c = p - 1 + size + 1
            best = INF
            while a < c:
                if a & 1:
                    if tree[a] < best:
                        best = tree[a]
                    a += 1
                if c & 1:
                    c -= 1
                    if tree[c] < best:
                        best = tree[c]
                a >>= 1
                c >>= 1
            if best < out[f]:
                out[f] = best
        while k < m and ent_round[k] == j:
            q = ent_pos[k]
            val = ent_len[k] + dz - dist_pos[q]
            node = q + size
            tree[node] = val
            node >>= 1
            while node >= 1:
                lv = tree[2 * node]
                rv = tree[2 * node + 1]
                tree[node] = lv if lv < rv else rv
                node >>= 1
            k += 1
    return out
