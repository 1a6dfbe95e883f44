"""Acceptance criteria 1-10, one recorded PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import time
from functools import lru_cache

from arities.factcat import check_arity_connectivity, count_morphisms, counterexample_map, seq_counterexample, seq_objects
from arities.generic import is_t_generic, t_generic_factor, zigzag_connect
from arities.graphs import is_connected_acyclic, make_sequence, terminal
from arities.paths import (
    Path,
    apply_morphism,
    dual_path,
    flatten,
    g_compose,
    g_hom,
    g_identity,
    g_inverse,
    not_cartesian_demo,
    reduce,
    reduce_outer,
    reduced_paths_from,
    unit_path,
)
from arities.sampling import (
    random_category,
    random_domain,
    random_g_object,
    random_graph,
    random_groupoid,
    random_morphism,
    random_path,
    random_tmap,
    random_walk,
)
from arities.theories.commutative import (
    NMatrix,
    all_comm_monoids,
    all_free,
    all_gamma,
    all_generic,
    all_matrices,
    com_factorisation_isomorphism,
    factor_theta_com,
    gamma_nerve,
    gamma_segal_check,
    is_free,
    is_gamma,
    is_generic_com,
    monoid_round_trip,
    theta_com_compose,
)
from arities.theories.nerves import (
    category_isomorphism,
    nerve_cat,
    reconstruct_cat,
    reconstruct_groupoid,
    segal_check,
    sym_nerve,
    sym_segal_check,
)
from arities.theories.operators import (
    all_operators,
    factor_delta,
    factor_delta_sym,
    is_delta0,
    is_sym_generic,
    is_unit_step,
    middle_isomorphisms,
    sym_factorisations,
)
from arities.theories.presheaf import drop_cell, duplicate_cell

SEED = 20240101


# --- 1. redundancy-removal laws ----------------------------------------------


def criterion_1():
    rng = random.Random(SEED + 1)
    n = 500
    fails = [0, 0, 0, 0]
    for _ in range(n):
        X = random_graph(rng, 6, 7)
        p = random_path(rng, X, 8)
        # idempotent
        if reduce(reduce(p)) != reduce(p):
            fails[0] += 1
        # reduction after a morphism ignores reduction before it
        f = random_morphism(rng, X)
        if reduce(apply_morphism(f, reduce(p))) != reduce(apply_morphism(f, p)):
            fails[1] += 1
        # multiplication: reduce pieces, cancel dual pieces, concatenate, reduce
        pieces, v = [], p.start
        for _ in range(rng.randint(1, 4)):
            q = dual_path(pieces[-1]) if pieces and rng.random() < 0.3 else random_walk(rng, X, v, rng.randint(0, 8))
            pieces.append(q)
            v = q.end
        base = Path(X, pieces[0].start, ())
        if reduce(flatten(pieces)) != reduce(flatten([base] + reduce_outer([reduce(q) for q in pieces]))):
            fails[2] += 1
        # unit
        e = rng.choice(X.edges)
        if reduce(unit_path(X, e)) != unit_path(X, e):
            fails[3] += 1
    ok = not any(fails)
    return ok, f"4 laws x {n} random instances (graphs <= 6 vertices, paths <= 8 edges); failures per law {fails}"


# --- 2. groupoid laws ----------------------------------------------------------


def criterion_2():
    rng = random.Random(SEED + 2)
    L = 4
    graphs, triples, fails = 0, 0, 0
    while graphs < 20:
        X = random_graph(rng, 3, 3)
        by_start = {v: list(reduced_paths_from(X, v, L)) for v in X.vertices}
        if sum(map(len, by_start.values())) > 30:
            continue  # keeps the exhaustive triple loop at desk scale
        graphs += 1
        for v in X.vertices:
            for p in by_start[v]:
                if g_compose(g_identity(X, v), p) != p or g_compose(p, g_identity(X, p.end)) != p:
                    fails += 1
                if g_compose(p, g_inverse(p)) != g_identity(X, v):
                    fails += 1
                for q in by_start[p.end]:
                    pq = g_compose(p, q)
                    for r in by_start[q.end]:
                        triples += 1
                        if g_compose(pq, r) != g_compose(p, g_compose(q, r)):
                            fails += 1
    z2 = len(g_hom(terminal(), 0, 0, 3))
    ok = fails == 0 and z2 == 2
    return ok, f"{graphs} random graphs, {triples} composable triples (max_len 4), {fails} law failures; |G1(*,*)| = {z2}"


# --- 3. generic factorisation ------------------------------------------------------


def criterion_3():
    rng = random.Random(SEED + 3)
    n, bad, objects = 200, 0, 0
    for _ in range(n):
        X = random_graph(rng, 3, 2)
        f = random_tmap(rng, random_domain(rng), X, 2)
        o = t_generic_factor(f)
        if not (is_t_generic(o.g) and o.factors(f)):
            bad += 1
            continue
        for o2 in seq_objects(f, "T", 5):
            objects += 1
            if count_morphisms(o, o2) != 1:
                bad += 1
    return bad == 0, f"{n} random f: generic, recomposes, exactly one arrow to each of {objects} bound-5 sequence objects; {bad} failures"


# --- 4. zig-zags -----------------------------------------------------------------


def criterion_4():
    rng = random.Random(SEED + 4)
    n, bad, nontrivial = 100, 0, 0
    for _ in range(n):
        X = random_graph(rng, 5, 6)
        B = random_domain(rng)
        assert is_connected_acyclic(B)
        f = random_tmap(rng, B, X, 3, reduced=True)
        o1, o2 = random_g_object(rng, f), random_g_object(rng, f)
        zz = zigzag_connect(f, o1, o2)
        nontrivial += len(zz) > 0
        if not zz.validate() or len(zz) > 4:
            bad += 1
    return bad == 0, f"{n} random G-mode pairs over tree arities ({nontrivial} distinct): all joined by validated zig-zags of length <= 4; {bad} failures"


# --- 5. and 6. sequence counterexample and arity verdicts ---------------------------


@lru_cache(maxsize=1)
def counterexample_report():
    return seq_counterexample(bound=6)


def criterion_5():
    rep = counterexample_report()
    sep = rep["both_factor_f"] and rep["inner_redundancy"] == [False, True] and rep["separated"] and rep["components"] >= 2
    core_ok = rep["core_violations"] == 0 and rep["core_redundancy"] == [False, True]
    literal_ok = rep["inner_violations"] == 0
    detail = (
        f"configuration reproduced, {rep['components']} components over {rep['n_objects']} objects / {rep['n_morphisms']} arrows (bound 6), "
        f"designated objects separated: {'PASS' if sep else 'FAIL'}; "
        f"core-redundancy invariant constant on every arrow and differs on the two objects: {'PASS' if core_ok else 'FAIL'}; "
        f"literal any-adjacent-pair invariant constant: {'PASS' if literal_ok else 'FAIL'} "
        f"({rep['inner_violations']} arrows change it, witness re-checked by tests)"
    )
    return sep and core_ok, detail


def criterion_6():
    f = counterexample_map()
    rng = random.Random(SEED + 6)
    t_seq = [check_arity_connectivity(f, "seq", 5, mode="T")["components"]]
    g_acyc = [check_arity_connectivity(f, "acyc", 6, mode="G")["components"]]
    for _ in range(5):
        X = random_graph(rng, 3, 3)
        fs = random_tmap(rng, make_sequence(rng.randint(1, 2)), X, 2)
        bound = max(4, sum(len(fs.pmap[e]) for e, _ in fs.domain.dual_pairs()))
        t_seq.append(check_arity_connectivity(fs, "seq", bound, mode="T")["components"])
        ft = random_tmap(rng, random_domain(rng), X, 2, reduced=True)
        bound = max(4, sum(len(ft.pmap[e]) for e, _ in ft.domain.dual_pairs()))
        g_acyc.append(check_arity_connectivity(ft, "acyc", bound, mode="G")["components"])
    g_seq = counterexample_report()["components"]
    ok = all(c == 1 for c in t_seq) and all(c == 1 for c in g_acyc) and g_seq >= 2
    return ok, f"T/Seq components {t_seq}; G/Acyc components {g_acyc}; G/Seq counterexample components {g_seq}"


# --- 7. non-cartesianness --------------------------------------------------------


def criterion_7():
    rep = not_cartesian_demo()
    ok = rep["words_distinct"] and rep["same_image"] and not rep["comparison_injective"]
    img = rep["images"]["xy"]
    return ok, f"xy != yx in G(ExE) but both map to exponents {img['exponents']} in the pullback; comparison not injective"


# --- 8. nerves ---------------------------------------------------------------------


def _mutants(rng, X):
    level = rng.randint(1, X.dim)
    cell = rng.choice(X.cells[level])
    return drop_cell(X, level, cell), duplicate_cell(X, level, cell)


def criterion_8():
    rng = random.Random(SEED + 8)
    N = 4
    cat_bad = grp_bad = mut_missed = 0
    for _ in range(50):
        C = random_category(rng, 5, 20)
        X = nerve_cat(C, N)
        D = reconstruct_cat(X) if segal_check(X) else None
        if D is None or not category_isomorphism(C, D, {f: (C.dom(f), (f,)) for f in C.morphisms}):
            cat_bad += 1
        mut_missed += sum(segal_check(Y) for Y in _mutants(rng, X))
    for _ in range(50):
        G = random_groupoid(rng, 5, 20)
        X = sym_nerve(G, N)
        H = reconstruct_groupoid(X) if sym_segal_check(X) else None
        fmap = {f: (G.dom(f), (f,)) for f in G.morphisms}
        if H is None or not category_isomorphism(G, H, fmap) or any(H.inverse[fmap[f]] != fmap[G.inverse[f]] for f in G.morphisms):
            grp_bad += 1
        mut_missed += sum(sym_segal_check(Y) for Y in _mutants(rng, X))
    ok = cat_bad == grp_bad == mut_missed == 0
    return ok, (
        f"50 categories and 50 groupoids (<= 5 objects, <= 20 morphisms, N = 4): round-trip failures {cat_bad} + {grp_bad}; "
        f"200 mutants, {mut_missed} accepted"
    )


# --- 9. factorisation systems --------------------------------------------------------


def criterion_9():
    fails = []
    checked = 0
    for m in range(5):
        for n in range(5):
            for f in all_operators(m, n):
                g, h = factor_delta(f)
                checked += 1
                if not (g.then(h).values == f.values and g.is_endpoint_preserving() and is_delta0(h)):
                    fails.append(("delta", f.values))
            for f in all_operators(m, n, monotone=False):
                g, h = factor_delta_sym(f)
                checked += 1
                if not (g.then(h).values == f.values and is_sym_generic(g) and is_unit_step(h)):
                    fails.append(("sym", f.values))
    mats = 0
    for m in range(5):
        for n in range(5):
            entry = 3 if m * n <= 6 else 1
            for A in all_matrices(m, n, entry):
                G, F = factor_theta_com(A)
                mats += 1
                if not (theta_com_compose(G, F) == A and is_generic_com(G) and is_free(F)):
                    fails.append(("com", A.entries))
    rng = random.Random(SEED + 9)
    for _ in range(2000):
        m, n = rng.randint(0, 4), rng.randint(0, 4)
        A = NMatrix(m, n, [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)])
        G, F = factor_theta_com(A)
        mats += 1
        if theta_com_compose(G, F) != A:
            fails.append(("com", A.entries))
    closure = 0
    for m in range(4):
        for k in range(4):
            for l in range(4):
                for A in all_generic(m, k):
                    for B in all_generic(k, l):
                        closure += 1
                        if not is_generic_com(theta_com_compose(A, B)):
                            fails.append(("generic-closure", A.entries, B.entries))
                for A in all_gamma(m, k):
                    for B in all_gamma(k, l):
                        closure += 1
                        if not is_gamma(theta_com_compose(A, B)):
                            fails.append(("gamma-closure", A.entries, B.entries))
    unique = 0
    for m in range(3):
        for n in range(3):
            for f in all_operators(m, n):
                ours = factor_delta(f)
                for k in range(n + 1):
                    for h in all_operators(k, n):
                        if is_delta0(h):
                            for g in all_operators(m, k):
                                if g.is_endpoint_preserving() and g.then(h).values == f.values:
                                    unique += 1
                                    if not middle_isomorphisms((g, h), ours):
                                        fails.append(("delta-unique", f.values))
            for f in all_operators(m, n, monotone=False):
                ours = factor_delta_sym(f)
                for other in sym_factorisations(f, ours[0].n):
                    unique += 1
                    if not middle_isomorphisms(other, ours, monotone=False):
                        fails.append(("sym-unique", f.values))
            for A in all_matrices(m, n, 2):
                k = A.total()
                if k > 4:
                    continue
                ours = factor_theta_com(A)
                for G in all_generic(m, k):
                    for F in all_free(k, n):
                        if theta_com_compose(G, F) == A:
                            unique += 1
                            if com_factorisation_isomorphism((G, F), ours) is None:
                                fails.append(("com-unique", A.entries))
    ok = not fails
    return ok, (
        f"{checked} operators (<= 5 points) and {mats} matrices recompose; {closure} composites closed; "
        f"{unique} alternative factorisations isomorphic to ours; failures {fails[:3]}"
    )


# --- 10. Γ-Segal ------------------------------------------------------------------


def criterion_10():
    monoids = [M for k in range(1, 5) for M in all_comm_monoids(k)]
    bad = [M for M in monoids if not (gamma_segal_check(gamma_nerve(M, 4)) and monoid_round_trip(M, 4))]
    return not bad, f"all {len(monoids)} commutative monoids of order <= 4: Segal at N = 4 and recovered from level 1; {len(bad)} failures"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _run(number, acceptance):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[number - 1]()
    acceptance(number, ok, f"{detail} [{time.perf_counter() - t0:.1f}s]")
    assert ok, detail


def test_criterion_1(acceptance):
    _run(1, acceptance)


def test_criterion_2(acceptance):
    _run(2, acceptance)


def test_criterion_3(acceptance):
    _run(3, acceptance)


def test_criterion_4(acceptance):
    _run(4, acceptance)


def test_criterion_5(acceptance):
    _run(5, acceptance)


def test_criterion_6(acceptance):
    _run(6, acceptance)


def test_criterion_7(acceptance):
    _run(7, acceptance)


def test_criterion_8(acceptance):
    _run(8, acceptance)


def test_criterion_9(acceptance):
    _run(9, acceptance)


def test_criterion_10(acceptance):
    _run(10, acceptance)


if __name__ == "__main__":
    for i, crit in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, detail = crit()
        print(f"criterion {i:>2}: {'PASS' if ok else 'FAIL'}  {detail} [{time.perf_counter() - t0:.1f}s]", flush=True)
