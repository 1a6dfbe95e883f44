import random

import pytest
from hypothesis import given, strategies as st

from arities.sampling import random_category, random_groupoid
from arities.theories.nerves import (
    CategoryError,
    FinCategory,
    FinGroupoid,
    category_round_trip,
    chaotic_groupoid,
    cyclic_group,
    discrete_category,
    monoid_category,
    nerve_cat,
    nerve_round_trip,
    poset_category,
    reconstruct_cat,
    reconstruct_groupoid,
    segal_check,
    segal_failures,
    sym_nerve,
    sym_segal_check,
    truncated_monoid_sym_presheaf,
)
from arities.theories.operators import SimplicialOperator
from arities.theories.presheaf import (
    PresheafError,
    drop_cell,
    duplicate_cell,
    presheaf_from_json,
    presheaf_to_json,
)


def test_nerve_sizes():
    chain = poset_category(range(3), lambda a, b: a <= b)
    assert nerve_cat(chain, 4).sizes() == [3, 6, 10, 15, 21]
    assert nerve_cat(discrete_category(3), 4).sizes() == [3] * 5
    assert sym_nerve(cyclic_group(2), 4).sizes() == [1, 2, 4, 8, 16]
    assert sym_nerve(chaotic_groupoid(range(3)), 4).sizes() == [3, 9, 27, 81, 243]


def test_nerve_is_a_presheaf():
    C = poset_category(range(3), lambda a, b: a <= b)
    assert nerve_cat(C, 3).is_functorial(3)
    assert sym_nerve(cyclic_group(3), 3).is_functorial(2)


def test_swap_acts_by_inverse():
    G = cyclic_group(3)
    X = sym_nerve(G, 2)
    swap = SimplicialOperator(1, 1, (1, 0), False)
    for x0, (f,) in X.cells[1]:
        assert X.act(swap, (x0, (f,))) == (x0, (G.inverse[f],))


def test_category_laws_are_checked():
    with pytest.raises(CategoryError):
        monoid_category(range(3), lambda a, b: (a - b) % 3, 0)
    C = discrete_category(2)
    with pytest.raises(CategoryError):
        FinGroupoid(C.objects, C.morphisms, C.identities, C.comp, {})


def test_category_json_round_trip():
    C = poset_category(range(3), lambda a, b: a <= b)
    D = FinCategory.from_json(C.to_json())
    assert D.morphisms == C.morphisms and D.comp == C.comp
    G = cyclic_group(4)
    assert FinGroupoid.from_json(G.to_json()).inverse == G.inverse


def test_presheaf_json_round_trip():
    X = nerve_cat(poset_category(range(2), lambda a, b: a <= b), 3)
    Y = presheaf_from_json(presheaf_to_json(X))
    assert Y.sizes() == X.sizes()
    assert all(Y.tables[k] == t for k, t in X.tables.items())


@given(st.integers(0, 10**6))
def test_random_category_round_trips(seed):
    C = random_category(random.Random(seed))
    X = nerve_cat(C, 3)
    assert segal_check(X)
    assert category_round_trip(C, 3)
    assert nerve_round_trip(X)


@given(st.integers(0, 10**6))
def test_random_groupoid_round_trips(seed):
    G = random_groupoid(random.Random(seed))
    X = sym_nerve(G, 3)
    assert sym_segal_check(X)
    assert category_round_trip(G, 3)
    assert nerve_round_trip(X)


@pytest.mark.parametrize("level", [1, 2, 3])
def test_dropped_cell_is_rejected(level):
    X = nerve_cat(poset_category(range(3), lambda a, b: a <= b), 3)
    Y = drop_cell(X, level, X.cells[level][-1])
    assert segal_failures(Y)


@pytest.mark.parametrize("level", [1, 2, 3])
def test_duplicated_cell_is_rejected(level):
    X = nerve_cat(monoid_category(range(2), lambda a, b: a * b, 1), 3)
    Y = duplicate_cell(X, level, X.cells[level][-1])
    assert segal_failures(Y)


def test_mutated_sym_nerve_is_rejected():
    X = sym_nerve(cyclic_group(2), 3)
    assert not sym_segal_check(duplicate_cell(X, 2, X.cells[2][0]))
    with pytest.raises(PresheafError):
        reconstruct_groupoid(drop_cell(X, 2, X.cells[2][0]))


def test_segal_without_inverses_is_not_a_groupoid():
    X = truncated_monoid_sym_presheaf(3)
    assert sym_segal_check(X)
    with pytest.raises(PresheafError):
        reconstruct_groupoid(X)


def test_reconstruction_needs_three_levels():
    with pytest.raises(PresheafError):
        reconstruct_cat(nerve_cat(discrete_category(1), 2))
