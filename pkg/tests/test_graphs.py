import pytest
from hypothesis import given

from arities.graphs import (
    GraphBuilder,
    GraphError,
    InvGraph,
    InvGraphMorphism,
    are_isomorphic,
    enumerate_morphisms,
    find_isomorphism,
    from_symmetric_relation,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    is_connected_acyclic,
    loop_pair,
    make_sequence,
    pairing,
    product,
    projections,
    seq_edge,
    splice,
    terminal,
    y_graph,
)

from conftest import graphs


def test_sequence_shape():
    s = make_sequence(3)
    assert s.vertices == (0, 1, 2, 3)
    assert len(s.edges) == 6
    e = seq_edge(1)
    assert (s.src[e], s.tgt[e]) == (1, 2)
    assert s.dual[e] == seq_edge(1, False)
    assert is_connected_acyclic(s)


def test_dual_must_be_involution():
    with pytest.raises(GraphError):
        InvGraph([0, 1], [0, 1], {0: 0, 1: 1}, {0: 1, 1: 0}, {0: 1, 1: 1})


def test_dual_must_swap_endpoints():
    with pytest.raises(GraphError):
        InvGraph([0, 1], [0, 1], {0: 0, 1: 0}, {0: 1, 1: 1}, {0: 1, 1: 0})


def test_terminal_has_self_dual_edge():
    t = terminal()
    assert t.dual[0] == 0
    assert not t.is_relational()
    with pytest.raises(GraphError):
        is_connected_acyclic(t)


def test_symmetric_relation_loops_are_self_dual():
    g = from_symmetric_relation("ab", [("a", "a"), ("a", "b"), ("b", "a")])
    assert len(g.edges) == 3
    assert g.dual[("a", "a")] == ("a", "a")
    assert g.dual[("a", "b")] == ("b", "a")


def test_acyclicity():
    assert is_connected_acyclic(y_graph())
    cyc = from_symmetric_relation(range(3), [(0, 1), (1, 2), (2, 0)])
    assert not is_connected_acyclic(cyc)
    two = from_symmetric_relation(range(2), [])
    assert not is_connected_acyclic(two)


def test_morphism_must_commute_with_dual():
    E = loop_pair()
    with pytest.raises(GraphError):
        InvGraphMorphism(E, E, {0: 0}, {0: 0, 1: 0})


def test_morphisms_sequence_into_y():
    # maps out of a two-step sequence are walks of length 2
    count = sum(1 for _ in enumerate_morphisms(make_sequence(2), y_graph()))
    walks = 0
    Y = y_graph()
    for v in Y.vertices:
        for e in Y.out_edges(v):
            walks += len(Y.out_edges(Y.tgt[e]))
    assert count == walks


def test_morphisms_into_terminal_are_unique():
    for g in (make_sequence(3), y_graph(), loop_pair()):
        assert len(list(enumerate_morphisms(g, terminal()))) == 1


def test_product_universal_property():
    A, B = y_graph(), loop_pair()
    P = product(A, B)
    p1, p2 = projections(A, B, P)
    S = make_sequence(2)
    for f in enumerate_morphisms(S, A):
        for g in list(enumerate_morphisms(S, B))[:3]:
            m = pairing(f, g, P)
            assert m.then(p1) == f and m.then(p2) == g


def test_splice_replaces_edge():
    p = make_sequence(2)
    q = y_graph()
    r = splice(p, seq_edge(0), q, 0, 2)
    assert len(r.vertices) == 3 + 4 - 2
    assert len(r.edges) == 2 + 6
    assert is_connected_acyclic(r)


def test_splice_contracts_when_ends_equal():
    r = splice(make_sequence(1), 0, terminal(), 0, 0)
    assert len(r.vertices) == 1


def test_splice_rejects_disconnected_glue():
    q = from_symmetric_relation(range(2), [])
    with pytest.raises(GraphError):
        splice(make_sequence(1), 0, q, 0, 1)


def test_builder_identify():
    gb = GraphBuilder()
    for v in "abc":
        gb.add_vertex(v)
    gb.add_pair("ab", "ba", "a", "b")
    gb.identify("b", "c")
    g = gb.build()
    assert len(g.vertices) == 2


@given(graphs())
def test_json_round_trip(g):
    assert graph_from_json(graph_to_json(g)) == g


@given(graphs(max_vertices=4, max_pairs=4))
def test_relabelled_graph_is_isomorphic(g):
    h = g.relabel(lambda v: ("v", v), lambda e: ("e", e))
    iso = find_isomorphism(g, h)
    assert iso is not None and iso.is_bijective()


@given(graphs(max_vertices=4, max_pairs=4))
def test_identity_is_neutral(g):
    one = InvGraphMorphism.identity(g)
    for f in list(enumerate_morphisms(make_sequence(1), g))[:5]:
        assert f.then(one) == f


def test_non_isomorphic():
    assert not are_isomorphic(make_sequence(3), y_graph())


def test_dot_output_mentions_all_vertices():
    dot = graph_to_dot(y_graph())
    assert dot.startswith("graph") or dot.startswith("digraph")
    for v in range(4):
        assert f'"{v}"' in dot or f" {v}" in dot
