import numpy as np

from vsdo.graphcore import INF, CentroidSplit, Digraph, build_spt


def random_graph(rng, n, m, maxw=10):
    if n < 2 or m == 0:
        return Digraph(n)
    src = rng.integers(0, n, m)
    dst = (src + rng.integers(1, n, m)) % n
    return Digraph(n, src, dst, rng.integers(1, maxw + 1, m))


def rooted_graph(rng, n, extra, maxw=10):
    """Random arborescence from vertex 0 plus ``extra`` random arcs."""
    parent = [int(rng.integers(0, v)) for v in range(1, n)]
    src = np.concatenate([np.array(parent, dtype=np.int64), rng.integers(0, n, extra)])
    dst = np.concatenate([np.arange(1, n), rng.integers(0, n, extra)])
    return Digraph(n, src, dst, rng.integers(1, maxw + 1, src.size))


def tree_graph(parents, weights=None):
    """Graph whose only arcs are ``parents[v] -> v`` for v >= 1."""
    n = len(parents) + 1
    w = np.ones(n - 1, dtype=np.int64) if weights is None else weights
    return Digraph(n, parents, np.arange(1, n), w)


def random_tree(rng, n):
    return tree_graph([int(rng.integers(0, v)) for v in range(1, n)])


def split_at(tree, z):
    """CentroidSplit with a chosen ``z`` (sides left empty) for hand-built fixtures."""
    path = np.asarray(tree.path_to(z), dtype=np.int64)
    pos = np.full(tree.n, -1, dtype=np.int64)
    pos[path] = np.arange(path.size)
    empty = np.zeros(tree.n, dtype=bool)
    return CentroidSplit(int(z), empty, empty, path, pos)


def component_sizes(tree, z):
    """Sizes of the components of the covered tree minus z (by walking parents)."""
    covered = np.flatnonzero(tree.covered)
    top = {}
    for v in covered:
        if v == z:
            continue
        u = int(v)
        hops = [u]
        while tree.parent[u] >= 0 and tree.parent[u] != z:
            u = int(tree.parent[u])
            hops.append(u)
        key = u if tree.parent[u] == z else "root-side"
        top.setdefault(key, 0)
        top[key] += 1
    return list(top.values())


def valid_centroids(tree):
    size = int(tree.covered.sum())
    return {
        int(v)
        for v in np.flatnonzero(tree.covered)
        if max(component_sizes(tree, v), default=0) <= size / 2
    }


def fin(a):
    return a != INF


def spt(g, s=0):
    return build_spt(g, s)


def condition_violations(g, tree, split, tab):
    """Check both correctness conditions of the progressive search for every (i, j, v).

    Exact interval minima come from ``exact_departing_by_interval`` on the
    explicitly materialised round graphs.
    """
    from vsdo.baseline import exact_departing_by_interval
    from vsdo.progdijk import intervals, r_lookup

    bad = []
    s = tree.root
    for i in range(tab.levels):
        prev_min = np.full(g.n, INF, dtype=np.int64)
        prev_r = None
        for iv in intervals(i, split.p):
            exact = exact_departing_by_interval(g, tree, split, i, iv.j)
            upto = np.minimum(prev_min, exact)
            for v in range(g.n):
                if v == s:
                    continue
                r = r_lookup(tab, i, iv.j, v)
                if r < upto[v]:
                    bad.append(("cond1-low", i, iv.j, v, r, int(upto[v])))
                if prev_r is not None and r > prev_r[v]:
                    bad.append(("cond1-mono", i, iv.j, v, r, int(prev_r[v])))
                phi = iv.j == 0 or (
                    exact[v] != INF and (prev_min[v] == INF or exact[v] * (1.0 + tab.eps2) < prev_min[v])
                )
                if phi and r != exact[v]:
                    bad.append(("cond2", i, iv.j, v, r, int(exact[v])))
            prev_r = [r_lookup(tab, i, iv.j, v) for v in range(g.n)]
            prev_min = upto
    return bad


def upd_violations(tab, split, n_input, max_weight):
    """Length monotonicity, (1 + eps2) gaps off the path, list-size cap, branch order."""
    from vsdo.progdijk import entry_bound

    cap = entry_bound(n_input, max_weight, tab.eps2)
    bad = []
    for i in range(tab.levels):
        for v in range(tab.n):
            lst = tab.upd(i, v)
            if len(lst) > cap:
                bad.append(("size", i, v, len(lst), cap))
            rounds = [r for r, _, _ in lst]
            if rounds != sorted(set(rounds)):
                bad.append(("rounds", i, v, rounds))
            for (r0, l0, _), (r1, l1, _) in zip(lst, lst[1:]):
                if l1 > l0:
                    bad.append(("increase", i, v, l0, l1))
                if split.pos[v] < 0 and not l0 > (1.0 + tab.eps2) * l1:
                    bad.append(("gap", i, v, l0, l1))
            for _, _, b in lst:
                if split.pos[v] >= 0 and b != v and not split.pos[b] < split.pos[v]:
                    bad.append(("branch-order", i, v, b))
                if split.pos[b] < 0:
                    bad.append(("branch-off-path", i, v, b))
    return bad


def child_graph_violations(node, eps1):
    """Check the G2 equality, the three G1 bounds and the F2 weight bound at ``node``.

    Needs the node graph, so build with ``keep_graphs=True``.
    """
    from vsdo.baseline import distances, exact_departing
    from vsdo.oracle import construct_g1, construct_g2, f2_edges

    g, sp, s, tree = node.graph, node.split, node.source, node.spt
    bad = []

    g2, loc2 = construct_g2(node)
    s2 = int(np.searchsorted(loc2, s))
    body2 = np.flatnonzero(sp.in_t2 & (np.arange(g.n) != sp.z))
    idx2 = np.searchsorted(loc2, body2)
    for x, x2 in zip(body2, idx2):
        want = distances(g, s, banned=int(x))[body2]
        got = distances(g2, s2, banned=int(x2))[idx2]
        for t, a, b in zip(body2, got, want):
            if a != b:
                bad.append(("g2", int(x), int(t), int(a), int(b)))

    g1, loc1 = construct_g1(node)
    s1 = int(np.searchsorted(loc1, s))
    idx1 = np.arange(loc1.size)
    for x, x1 in zip(loc1, idx1):
        if x == s:
            continue
        want = distances(g, s, banned=int(x))[loc1]
        got = distances(g1, s1, banned=int(x1))
        on_path = sp.pos[x] >= 0
        ddist = exact_departing(g, tree, sp, int(x))[loc1] if on_path else None
        for k, t in enumerate(loc1):
            a, b = int(got[k]), int(want[k])
            if a < b:
                bad.append(("g1-under", int(x), int(t), a, b))
            if not on_path and a != b:
                bad.append(("g1-off-path", int(x), int(t), a, b))
            if on_path and b < ddist[k] and not a <= (1 + eps1) * b:
                bad.append(("g1-jump", int(x), int(t), a, b))

    vb, vc, w = f2_edges(node)
    for b, c, wt in zip(vb, vc, w):
        if wt < tree.dist[c] - tree.dist[b]:
            bad.append(("f2", int(b), int(c), int(wt)))
    return bad
