import pytest

from arities.factcat import (
    F0,
    F1,
    S,
    check_arity_connectivity,
    count_morphisms,
    counterexample_graph,
    counterexample_map,
    decorated_trees,
    has_core_redundancy,
    has_inner_redundancy,
    seq_counterexample,
    seq_object_path,
    seq_objects,
    walks,
)
from arities.generic import FactMorphism, TMap
from arities.graphs import enumerate_morphisms, loop_pair, make_sequence, y_graph
from arities.paths import Path, PathError


def test_inner_redundancy_examples():
    X = counterexample_graph()
    h = Path(X, "x0", (F0, S, X.dual[S], F1))
    assert has_inner_redundancy(0, 4, h)
    assert has_inner_redundancy(4, 0, h)
    assert not has_inner_redundancy(0, 2, h)
    assert not has_inner_redundancy(2, 4, h)
    assert has_inner_redundancy(0, 4, h, edge=S)
    assert not has_inner_redundancy(0, 4, h, edge=F0)
    assert not has_inner_redundancy(0, 2, Path(X, "x0", (F0, F1)))


def test_inner_redundancy_index_check():
    X = counterexample_graph()
    with pytest.raises(PathError):
        has_inner_redundancy(0, 3, Path(X, "x0", (F0, F1)))


def test_core_redundancy_ignores_excursions_at_the_ends():
    X = counterexample_graph()
    # the spur sits before the last visit to the start vertex x1
    h = Path(X, "x1", (S, X.dual[S], F1))
    assert has_inner_redundancy(0, 3, h)
    assert not has_core_redundancy(0, 3, h)
    # strictly between the start and end vertex it counts
    h2 = Path(X, "x0", (F0, S, X.dual[S], F1))
    assert has_core_redundancy(0, 4, h2)
    assert has_core_redundancy(4, 0, h2)


def test_walk_enumeration_matches_morphism_search():
    for X in (y_graph(), loop_pair(), counterexample_graph()):
        for m in range(4):
            ws = list(walks(X, m))
            assert len(ws) == len(set(ws))
            assert len(ws) == sum(1 for _ in enumerate_morphisms(make_sequence(m), X))


def test_decorated_tree_counts():
    # two colourings of a point, one edge, two paths of length two, then a path and two stars
    assert [len(decorated_trees(make_sequence(1), b)) for b in (0, 1, 2, 3)] == [2, 3, 5, 8]


def test_t_mode_sequences_connected():
    rep = check_arity_connectivity(counterexample_map(), "seq", 4, mode="T")
    assert rep["components"] == 1
    assert rep["canonical_found"]


def test_g_mode_trees_connected():
    rep = check_arity_connectivity(counterexample_map(), "acyc", 4, mode="G")
    assert rep["method"] == "moves"
    assert rep["components"] == 1
    assert rep["zigzag_failures"] == 0


def test_brute_force_and_moves_agree_on_trees():
    f = counterexample_map()
    brute = check_arity_connectivity(f, "acyc", 3, mode="G", method="brute")
    moves = check_arity_connectivity(f, "acyc", 3, mode="G", method="moves")
    assert brute["components"] == moves["components"] == 1


def test_t_mode_trees_connected():
    rep = check_arity_connectivity(counterexample_map(), "acyc", 3, mode="T", method="brute")
    assert rep["components"] == 1


def test_bound_below_canonical_size():
    with pytest.raises(ValueError):
        check_arity_connectivity(counterexample_map(), "seq", 1, mode="G")


def test_unknown_class():
    with pytest.raises(ValueError):
        check_arity_connectivity(counterexample_map(), "cyc", 4)


def test_g_mode_needs_reduced_map():
    X = counterexample_graph()
    f = TMap.from_paths(make_sequence(1), X, {0: "x0", 1: "x0"}, {0: (F0, X.dual[F0])})
    with pytest.raises(ValueError):
        check_arity_connectivity(f, "seq", 4, mode="G")


@pytest.fixture(scope="module")
def counterexample():
    return seq_counterexample(bound=5)


def test_counterexample_configuration(counterexample):
    rep = counterexample
    o1, o2 = rep["objects"]
    assert rep["both_factor_f"]
    assert [len(seq_object_path(o)) for o in (o1, o2)] == [2, 4]
    assert rep["inner_redundancy"] == [False, True]
    assert rep["core_redundancy"] == [False, True]


def test_counterexample_components(counterexample):
    assert counterexample["components"] >= 2
    assert counterexample["separated"]


def test_core_invariant_constant_on_arrows(counterexample):
    assert counterexample["core_violations"] == 0
    assert sorted(map(tuple, counterexample["core_values"])) == [(False,), (True,)]


def test_literal_invariant_has_a_checkable_counterexample(counterexample):
    src, dst, k = counterexample["inner_witness"]
    assert FactMorphism(src, dst, k).is_valid()
    lit = [has_inner_redundancy(o.g.vmap[0], o.g.vmap[1], seq_object_path(o)) for o in (src, dst)]
    assert lit[0] != lit[1]


def test_counterexample_objects_are_not_directly_related(counterexample):
    o1, o2 = counterexample["objects"]
    assert count_morphisms(o1, o2) == 0 and count_morphisms(o2, o1) == 0


def test_every_enumerated_object_factors_f():
    f = counterexample_map()
    for mode in ("T", "G"):
        for o in seq_objects(f, mode, 4):
            assert o.factors(f)
