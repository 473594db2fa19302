"""Dart-level graph structure, surgery, and serialization."""
from __future__ import annotations

import pytest

from emm.multigraph import GraphError, Multigraph

F = Multigraph.from_pairs


def theta():
    return F([("u", "v")] * 3, names=["u", "v"])


def test_darts_and_endpoints():
    g = F([("a", "b"), ("b", "c"), ("c", "c")], names=["a", "b", "c"])
    assert g.n == 3 and g.m == 3
    # edge i owns darts 2i and 2i+1; dart 2i sits at beg, 2i+1 at end
    assert g.dart_vertex(0) == 0 and g.dart_vertex(1) == 1
    assert g.dart_vertex(4) == 2 and g.dart_vertex(5) == 2
    assert g.is_loop(2) and not g.is_loop(0)
    assert g.degree(2) == 3  # loop counts twice, plus edge from b
    assert g.degree(0) == 1


def test_vertex_free_loop():
    g = F([(None, None), ("a", "a")], names=["a"])
    assert g.n == 1 and g.m == 2
    assert g.is_vertex_free(0) and not g.is_vertex_free(1)
    assert g.is_loop(0) and g.is_loop(1)
    # a vertex-free loop forms its own component, listed after vertexed ones
    assert g.components == (((0,), (1,)), ((), (0,)))


def test_from_pairs_registers_names_in_order():
    g = F([("x", "y"), ("y", "z")])
    assert g.vertex_names == ("x", "y", "z")
    assert g.ends == ((0, 1), (1, 2))


def test_edge_list_round_trip():
    text = "u v left\nu v middle\nu v right\nLOOP free\nw w tight\n"
    g = Multigraph.from_edge_list(text)
    assert g.n == 3 and g.m == 5
    assert g.edge_labels == ("left", "middle", "right", "free", "tight")
    again = Multigraph.from_edge_list(g.to_edge_list())
    assert again.ends == g.ends
    assert again.vertex_names == g.vertex_names


def test_edge_list_comments_and_blank_lines():
    g = Multigraph.from_edge_list("# a triangle\na b\n\nb c\nc a\n")
    assert g.n == 3 and g.m == 3


def test_json_round_trip():
    g = theta()
    assert Multigraph.from_json(g.to_json()) == g


def test_bridges():
    # two triangles joined by one edge: only the join is a bridge
    g = F([("a", "b"), ("b", "c"), ("c", "a"),
           ("x", "y"), ("y", "z"), ("z", "x"), ("a", "x")])
    assert g.bridges == frozenset({6})
    assert theta().bridges == frozenset()
    # a pendant edge is a bridge, a loop never is
    h = F([("a", "b"), ("b", "b")])
    assert h.bridges == frozenset({0})


def test_connectivity():
    assert theta().is_connected
    g = F([("a", "b"), ("c", "d")])
    assert not g.is_connected
    assert len(g.components) == 2


def test_delete_edges():
    g = theta()
    h, emap = g.delete_edges({1})
    assert h.m == 2 and h.n == 2
    assert emap == [0, -1, 1]
    assert h.edge_labels == (g.edge_labels[0], g.edge_labels[2])


def test_contract_edges_merges_and_maps():
    g = F([("a", "b"), ("b", "c"), ("c", "a")])
    h, vmap, emap = g.contract_edges({0})
    assert h.n == 2 and h.m == 2
    assert vmap[0] == vmap[1] != vmap[2]
    assert emap == [-1, 0, 1]
    # the two survivors became parallel edges between the merged pair
    assert set(h.ends[0]) == set(h.ends[1])
    assert not h.is_loop(0) and not h.is_loop(1)


def test_contract_edges_drops_loops_among_shrink():
    g = F([("a", "b"), ("a", "b")])
    # contracting one parallel edge turns the other into a loop; asking to
    # contract both deletes the would-be loop instead
    h, _vmap, emap = g.contract_edges({0, 1})
    assert h.n == 1 and h.m == 0
    assert emap == [-1, -1]


def test_contract_single_edge_keeps_parallel_as_loop():
    g = F([("a", "b"), ("a", "b")])
    h, _vmap, emap = g.contract_edges({0})
    assert h.n == 1 and h.m == 1
    assert h.is_loop(0) and emap == [-1, 0]


def test_validation_errors():
    with pytest.raises(GraphError):
        Multigraph(1, ((0, 2),))
    with pytest.raises(GraphError):
        Multigraph(-1, ())
    with pytest.raises(GraphError):
        Multigraph(2, ((0, 1),), vertex_names=("a",))


def test_degree_sums_to_twice_edges():
    g = F([("a", "b"), ("b", "c"), ("c", "c"), ("a", "c")])
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m
