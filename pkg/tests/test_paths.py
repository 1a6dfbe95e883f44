import random

import pytest
from hypothesis import given, strategies as st

from arities.graphs import loop_pair, make_sequence, terminal, y_graph
from arities.paths import (
    Path,
    PathError,
    ReducedPath,
    basic_order,
    concat,
    decompose_redundancies,
    dual_path,
    find_redundancies,
    flatten,
    g_compose,
    g_hom,
    g_identity,
    g_inverse,
    g_map,
    is_general_redundancy,
    not_cartesian_demo,
    reduce,
    reduce_count,
    reduce_in_order,
    reduce_outer,
    unit_path,
    apply_morphism,
)
from arities.sampling import random_graph, random_morphism, random_walk

from conftest import graph_and_path


def loop_word(*steps):
    return Path(loop_pair(), 0, tuple(steps))


def test_reduce_hand_example():
    # a a a' a a' a' a  ->  a
    p = loop_word(0, 0, 1, 0, 1, 1, 0)
    r, k = reduce_count(p)
    assert r.steps == (0,)
    assert k == 3


def test_self_dual_edge_cancels_with_itself():
    p = Path(terminal(), 0, (0, 0, 0))
    assert reduce(p).steps == (0,)


def test_reduced_path_rejects_redundancy():
    with pytest.raises(PathError):
        ReducedPath(loop_pair(), 0, (0, 1))


def test_path_must_be_composable():
    with pytest.raises(ValueError):
        Path(make_sequence(2), 0, (0, 2, 2))


def test_concat_mismatch():
    s = make_sequence(2)
    with pytest.raises(PathError):
        concat(Path(s, 0, (0,)), Path(s, 0, (0,)))


@given(graph_and_path(), st.integers(0, 10**6))
def test_reduction_is_confluent(xp, seed):
    X, p = xp
    assert reduce_in_order(p, random.Random(seed)).steps == reduce(p).steps


@given(graph_and_path())
def test_reduction_is_idempotent_and_reduced(xp):
    _, p = xp
    r = reduce(p)
    assert not find_redundancies(r)
    assert reduce(r) == r
    assert r.start == p.start and r.end == p.end


@given(graph_and_path())
def test_reduction_commutes_with_dual(xp):
    _, p = xp
    assert reduce(dual_path(p)) == dual_path(reduce(p))


@given(graph_and_path(), st.integers(0, 10**6))
def test_reduction_natural_in_morphisms(xp, seed):
    X, p = xp
    f = random_morphism(random.Random(seed), X)
    assert reduce(apply_morphism(f, reduce(p))) == reduce(apply_morphism(f, p))


def random_pieces(rng, X, n):
    """Composable paths, some of them the dual of their predecessor."""
    v = rng.choice(X.vertices)
    pieces = []
    for _ in range(n):
        if pieces and rng.random() < 0.3:
            q = dual_path(pieces[-1])
        else:
            q = random_walk(rng, X, v, rng.randint(0, 4))
        pieces.append(q)
        v = q.end
    return pieces


@given(st.integers(0, 10**6))
def test_multiplication_law(seed):
    rng = random.Random(seed)
    X = random_graph(rng, 5, 6)
    pieces = random_pieces(rng, X, rng.randint(1, 5))
    base = Path(X, pieces[0].start, ())
    lhs = reduce(flatten(pieces))
    rhs = reduce(flatten([base] + reduce_outer([reduce(q) for q in pieces])))
    assert lhs == rhs


def test_unit_is_reduced():
    X = y_graph()
    for e in X.edges:
        assert reduce(unit_path(X, e)) == unit_path(X, e)


def test_reduce_outer_cancels_dual_pieces():
    X = make_sequence(2)
    p = Path(X, 0, (0, 2))
    assert reduce_outer([p, dual_path(p), p]) == [p]


def test_groupoid_on_terminal_is_z2():
    homs = g_hom(terminal(), 0, 0, 3)
    assert len(homs) == 2
    gen = ReducedPath(terminal(), 0, (0,))
    assert g_compose(gen, gen) == g_identity(terminal(), 0)


def test_groupoid_on_loop_pair_is_free_on_one_generator():
    # reduced words in a and a' of length <= 3: 1 + 2 + 2 + 2
    assert len(g_hom(loop_pair(), 0, 0, 3)) == 7


def test_groupoid_on_tree_is_chaotic():
    Y = y_graph()
    for a in Y.vertices:
        for b in Y.vertices:
            assert len(g_hom(Y, a, b, 6)) == 1


@given(graph_and_path(max_vertices=4, max_len=6))
def test_inverse_law(xp):
    _, p = xp
    r = reduce(p)
    assert g_compose(r, g_inverse(r)) == g_identity(r.graph, r.start)
    assert g_compose(g_inverse(r), r) == g_identity(r.graph, r.end)


@given(st.integers(0, 10**6))
def test_g_map_is_functorial(seed):
    rng = random.Random(seed)
    X = random_graph(rng, 4, 5)
    f = random_morphism(rng, X)
    p, q = (reduce(x) for x in random_pieces(rng, X, 2))
    assert g_map(f, g_compose(p, q)) == g_compose(g_map(f, p), g_map(f, q))
    assert g_map(f, g_inverse(p)) == g_inverse(g_map(f, p))


def test_general_redundancy_decomposition():
    Y = y_graph()
    # 1 -> 0 -> 1 -> 2 -> 1 -> 3 -> 1 : three spurs at the centre
    e = {(a, b): (a, b) for a in range(4) for b in range(4)}
    p = Path(Y, 1, (e[1, 0], e[0, 1], e[1, 2], e[2, 1], e[1, 3], e[3, 1]))
    assert is_general_redundancy(p)
    dec = decompose_redundancies(p)
    assert dec.orders == [1, 1, 1]
    assert dec.concatenated(Y) == p


def test_basic_and_branching_factors():
    S = make_sequence(2)
    spur = Path(S, 0, (0, 2, 3, 1))
    assert basic_order(spur) == 2
    Y = y_graph()
    branch = Path(Y, 0, ((0, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 0)))
    assert basic_order(branch) is None
    assert decompose_redundancies(branch).orders == [None]


def test_decomposition_rejects_non_redundancy():
    with pytest.raises(PathError):
        decompose_redundancies(Path(make_sequence(1), 0, (0,)))


def test_not_cartesian_witness():
    rep = not_cartesian_demo()
    assert rep["words_distinct"]
    assert rep["same_image"]
    assert not rep["comparison_injective"]
    assert rep["images"]["xy"]["exponents"] == [2, 0]
