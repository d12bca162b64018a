import math

import numpy as np
import pytest

from vsdo import Digraph, build, dso_query
from vsdo.baseline import exact_ssrp
from vsdo.graphcore import INF, CentroidSplit, build_spt
from vsdo.oracle import BuildConfig, OracleNode, ceil_log2, construct_g1, construct_g2, depth_bound, depth_profile, route

from helpers import child_graph_violations, random_graph, rooted_graph, tree_graph


def test_config_epsilons():
    cfg = BuildConfig.for_graph(1000, 0.3)
    assert cfg.eps1 == pytest.approx(0.3 / 30)
    assert cfg.eps2 == pytest.approx(0.3 / 30 / 20)
    assert BuildConfig.for_graph(1, 1.0).eps1 == pytest.approx(1 / 3)
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5)] == [1, 1, 2, 2, 3]  # clamped to >= 1


def test_three_vertex_leaf():
    g = Digraph(3, [0, 1], [1, 2], [1, 1])
    o = build(g, 0, 0.5)
    assert list(o.nodes) == [1]
    assert o.root.leaf
    assert dso_query(o, 1, 2) == math.inf
    assert dso_query(o, 2, 1) == 1


def test_seven_path_has_depth_one():
    o = build(tree_graph(list(range(6))), 0, 0.5)
    assert sorted(o.nodes) == [1, 2, 3]
    assert o.depth == 1
    assert o.nodes[2].leaf and o.nodes[3].leaf


def test_query_example_detour():
    g = Digraph(3, [0, 1, 0], [1, 2, 2], [1, 1, 5])
    o = build(g, 0, 0.1)
    assert dso_query(o, 1, 2) == 5
    assert dso_query(o, 2, 1) == 1


def test_trivial_routes():
    g = random_graph(np.random.default_rng(0), 20, 60)
    o = build(g, 0, 0.5)
    assert route(o, 3, 0) == (0, [], 0)
    assert route(o, 3, 3)[0] == INF
    with pytest.raises(ValueError):
        route(o, 0, 5)
    with pytest.raises(IndexError):
        route(o, 20, 5)


def test_input_validation():
    g = Digraph(3, [0, 1], [1, 2], [1, 1])
    with pytest.raises(IndexError):
        build(g, 3, 0.5)
    for eps in (0.0, -1.0, 1.5):
        with pytest.raises(ValueError):
            build(g, 0, eps)
    with pytest.raises(ValueError):
        build(Digraph(2, [0], [1], [0]), 0, 0.5)
    with pytest.raises(OverflowError):
        build(Digraph(2, [0], [1], [2**62]), 0, 0.5)


def test_unreachable_vertices_stay_out():
    g = Digraph(10, [0, 1, 5], [1, 2, 6], [1, 1, 1])
    o = build(g, 0, 0.5)
    assert o.root.size == 3
    assert dso_query(o, 1, 6) == math.inf
    assert dso_query(o, 5, 2) == 2


def test_empty_and_single():
    assert dso_query(build(Digraph(2), 0, 0.5), 1, 1) == math.inf
    o = build(Digraph(1), 0, 0.5)
    assert o.root.size == 1


def hand_node(g, t1, t2, z):
    t1 = np.isin(np.arange(g.n), t1)
    t2 = np.isin(np.arange(g.n), t2)
    tree = build_spt(g, 0)
    sp = CentroidSplit(z, t1, t2, np.asarray(tree.path_to(z)), np.full(g.n, -1))
    return OracleNode(1, np.arange(g.n), 0, tree, g, sp)


def test_g2_isolated_source_without_crossings():
    # vertex 3 sits in T2 but nothing in T1 points at it
    g = Digraph(4, [0, 1, 3], [1, 2, 2], [1, 1, 1])
    g2, loc = construct_g2(hand_node(g, [0, 1, 2], [1, 3], 1))
    s2 = int(np.searchsorted(loc, 0))
    assert g2.out_edges(s2) == []


def test_g2_single_crossing_edge():
    # only 1 -> 2 enters T2 minus z, so weight(s, 2) = dist_T(s, 1) + 3
    g = Digraph(4, [0, 0, 1], [1, 3, 2], [2, 1, 3])
    g2, loc = construct_g2(hand_node(g, [0, 1, 3], [3, 2], 3))
    s2, u = int(np.searchsorted(loc, 0)), int(np.searchsorted(loc, 2))
    assert g2.out_edges(s2) == [(u, 5)]


def test_g1_f1_edge_example():
    # path 0->1->2->3->4->5->6, back arc 5 -> 1 gives an F1 edge z -> 1
    g = Digraph(7, [0, 1, 2, 3, 4, 5, 5], [1, 2, 3, 4, 5, 6, 1], [1] * 6 + [4])
    o = build(g, 0, 0.5, keep_graphs=True)
    node = o.root
    z = node.split.z
    assert z == 3
    g1, loc = construct_g1(node)
    lz, l1 = int(np.searchsorted(loc, z)), int(np.searchsorted(loc, 1))
    assert (l1, 6) in g1.out_edges(lz)  # 3 -> 4 -> 5 -> 1


def test_child_graph_properties_random():
    rng = np.random.default_rng(12)
    nodes = 0
    for _ in range(12):
        n = int(rng.integers(10, 90))
        g = rooted_graph(rng, n, int(rng.integers(0, 4 * n)), maxw=int(rng.choice([1, 10, 1000])))
        o = build(g, 0, 0.5, keep_graphs=True)
        for node in o.nodes.values():
            if not node.leaf:
                assert child_graph_violations(node, o.config.eps1) == []
                nodes += 1
    assert nodes > 12


def check_structure(o):
    n_root = o.root.size
    for d, (count, verts, edges) in depth_profile(o).items():
        assert verts <= 2 * n_root
    assert o.depth <= depth_bound(max(2, n_root))
    for nid, node in o.nodes.items():
        if node.leaf:
            assert node.size <= 6
        else:
            assert 2 * nid in o.nodes and 2 * nid + 1 in o.nodes
            assert node.size > 6


def test_invariants_fifty_graphs():
    rng = np.random.default_rng(50)
    for _ in range(50):
        n = int(rng.integers(2, 200))
        g = random_graph(rng, n, int(rng.integers(0, 6 * n + 1)))
        o = build(g, 0, float(rng.choice([1.0, 0.25])))
        check_structure(o)


def test_sandwich_and_visits():
    rng = np.random.default_rng(9)
    for _ in range(15):
        n = int(rng.integers(2, 60))
        g = rooted_graph(rng, n, int(rng.integers(0, 4 * n)))
        eps = float(rng.choice([1.0, 0.1]))
        for provider in ("exact", "fast"):
            o = build(g, 0, eps, provider)
            exact = exact_ssrp(g, 0)
            for x in range(1, n):
                for t in range(n):
                    got, visits, calls = route(o, x, t)
                    want = exact[x, t]
                    if want == INF:
                        assert got == INF
                    else:
                        assert want <= got <= (1 + eps) * want
                    assert len(visits) <= o.depth + 1
                    assert calls <= len(visits)


def test_query_method_matches_function():
    g = random_graph(np.random.default_rng(4), 30, 100)
    o = build(g, 0, 0.5)
    for x in range(1, 30):
        for t in range(0, 30, 3):
            assert o.query(x, t) == dso_query(o, x, t)
