import pytest

from onepack.model import (
    CaterpillarDecomposition, Fail, GuestGraph, MixedVertexCounts, NotTree,
    OtherTree, Pass, Star, classify_tree, crossing_lower_bound,
    cycle_graph, feasibility_screen, is_h_legged, path_graph,
)


def cat(n, spine_len, leaf_spec):
    """Build a caterpillar: spine 0..spine_len-1, leaf_spec maps spine idx -> #leaves."""
    edges = [(i, i + 1) for i in range(spine_len - 1)]
    nxt = spine_len
    for s, cnt in leaf_spec.items():
        for _ in range(cnt):
            edges.append((s, nxt))
            nxt += 1
    assert nxt == n
    return GuestGraph.from_edges(n, edges, "general")


def test_guestgraph_invariants():
    with pytest.raises(ValueError):
        GuestGraph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        GuestGraph.from_edges(2, [(0, 3)])
    with pytest.raises(ValueError):
        GuestGraph(3, ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        GuestGraph.from_edges(4, [(0, 1), (1, 2)], "path")  # not spanning


def test_classify_path():
    r = classify_tree(path_graph(5))
    assert isinstance(r, CaterpillarDecomposition)
    assert len(r.spine) == 3
    assert all(c == 0 for _, c in [(s, len(dict(r.leaves)[s])) for s in r.spine])
    assert r.backbone == (0, 1, 2, 3, 4)
    r2 = classify_tree(path_graph(2))
    assert isinstance(r2, CaterpillarDecomposition)


def test_classify_star_and_other():
    star = GuestGraph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert isinstance(classify_tree(star), Star)
    # spider with three legs of length 2 is not a caterpillar
    spider = GuestGraph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert isinstance(classify_tree(spider), OtherTree)
    assert isinstance(classify_tree(cycle_graph(5)), NotTree)
    disc = GuestGraph.from_edges(4, [(0, 1), (2, 3)])
    assert isinstance(classify_tree(disc), NotTree)


def test_classify_center_caterpillar():
    # backbone length 5, all remaining leaves on the middle spine vertex
    n = 12
    g = cat(n, 3, {0: 1, 1: n - 5, 2: 1})
    r = classify_tree(g)
    assert isinstance(r, CaterpillarDecomposition)
    assert r.n_prime == 5
    assert max(r.degrees()) if hasattr(r, "degrees") else True
    assert g.degrees()[1] == n - 3


def test_is_h_legged():
    p = classify_tree(path_graph(8))
    assert is_h_legged(p, 5)
    # one spine vertex with 4 leaves -> degree 6 < 7
    g = cat(9, 3, {1: 4, 0: 1, 2: 1})
    d = classify_tree(g)
    assert isinstance(d, CaterpillarDecomposition)
    assert not is_h_legged(d, 5)
    # 5 leaves -> degree 7 passes
    g = cat(10, 3, {1: 5, 0: 1, 2: 1})
    assert is_h_legged(classify_tree(g), 5)


def test_backbone_extends_spine():
    g = cat(10, 4, {0: 2, 1: 1, 2: 2, 3: 1})
    d = classify_tree(g)
    assert isinstance(d, CaterpillarDecomposition)
    assert d.backbone[1:-1] == d.spine
    spine_set = set(d.spine)
    assert d.backbone[0] not in spine_set and d.backbone[-1] not in spine_set


def test_feasibility_screen():
    assert isinstance(feasibility_screen([path_graph(5)] * 3), Fail)
    assert isinstance(feasibility_screen([path_graph(6)] * 4), Fail)
    assert isinstance(feasibility_screen([path_graph(6)] * 3), Pass)
    with pytest.raises(MixedVertexCounts):
        feasibility_screen([path_graph(6), path_graph(7)])
    # quadruple parity / small-n refusals
    m10 = GuestGraph.from_edges(10, [(2 * i, 2 * i + 1) for i in range(5)], "matching")
    r = feasibility_screen([path_graph(10)] * 3 + [m10])
    assert isinstance(r, Fail) and r.code == "quad-small-n"
    m11 = None
    r = feasibility_screen(
        [path_graph(14)] * 3
        + [GuestGraph.from_edges(14, [(2 * i, 2 * i + 1) for i in range(7)], "matching")])
    assert isinstance(r, Pass)


def test_crossing_lower_bound():
    n = 20
    assert crossing_lower_bound(3 * n - 3, n) == 3
    assert crossing_lower_bound(3 * n, n) == 6
    assert crossing_lower_bound(3 * n - 6, n) == 0
    assert crossing_lower_bound(0, 5) == 0
