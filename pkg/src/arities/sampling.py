"""Seeded random instances: graphs, paths, maps into TX, and spurred factorisations."""

from __future__ import annotations

import itertools
import random

from .generic import FactObject, TMap, t_generic_factor
from .graphs import GraphBuilder, InvGraph, InvGraphMorphism, enumerate_morphisms, make_sequence, y_graph
from .paths import Path, reduce


def random_graph(rng: random.Random, max_vertices: int = 5, max_pairs: int = 6, self_dual: bool = True) -> InvGraph:
    """A random involutive graph; loops may be dual pairs or self-dual."""
    n = rng.randint(1, max_vertices)
    gb = GraphBuilder()
    for v in range(n):
        gb.add_vertex(v)
    for k in range(rng.randint(1, max_pairs)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b and self_dual and rng.random() < 0.3:
            gb.add_pair(("e", k), ("e", k), a, a)
        else:
            gb.add_pair(("e", k), ("d", k), a, b)
    return gb.build()


def random_morphism(rng: random.Random, X: InvGraph, max_vertices: int = 4, max_pairs: int = 5, pool: int = 200) -> InvGraphMorphism:
    """A morphism out of ``X`` into a random target that has a self-dual loop, so one always exists."""
    Y = random_graph(rng, max_vertices, max_pairs)
    gb = GraphBuilder()
    for v in Y.vertices:
        gb.add_vertex(v)
    for e, d in Y.dual_pairs():
        gb.add_pair(e, d, Y.src[e], Y.tgt[e])
    gb.add_pair("loop", "loop", Y.vertices[0], Y.vertices[0])
    Y = gb.build()
    fixed = {v: rng.choice(Y.vertices) for v in X.vertices if rng.random() < 0.3}
    found = list(itertools.islice(enumerate_morphisms(X, Y, fixed=fixed), pool))
    if not found:
        found = list(itertools.islice(enumerate_morphisms(X, Y), pool))
    return rng.choice(found)


def random_walk(rng: random.Random, X: InvGraph, start, length: int) -> Path:
    steps = []
    v = start
    for _ in range(length):
        out = X.out_edges(v)
        if not out:
            break
        e = rng.choice(out)
        steps.append(e)
        v = X.tgt[e]
    return Path(X, start, tuple(steps))


def random_path(rng: random.Random, X: InvGraph, max_len: int = 8, redundant: float = 0.4) -> Path:
    """A walk biased towards immediate backtracking, so that reduction has work to do."""
    v = rng.choice(X.vertices)
    start = v
    steps: list = []
    for _ in range(rng.randint(0, max_len)):
        out = X.out_edges(v)
        if not out:
            break
        if steps and rng.random() < redundant:
            e = X.dual[steps[-1]]
        else:
            e = rng.choice(out)
        steps.append(e)
        v = X.tgt[e]
    return Path(X, start, tuple(steps))


def random_domain(rng: random.Random) -> InvGraph:
    return rng.choice([make_sequence(1), make_sequence(1), make_sequence(2), y_graph()])


def random_tmap(rng: random.Random, B: InvGraph, X: InvGraph, max_len: int = 3, reduced: bool = False) -> TMap:
    """Random ``B -> TX`` built edge by edge along a spanning forest of ``B``.

    ``B`` must be a forest (each non-tree edge would need a closed walk).
    """
    vmap: dict = {}
    paths: dict = {}
    for root in B.vertices:
        if root in vmap:
            continue
        vmap[root] = rng.choice(X.vertices)
        stack = [root]
        while stack:
            u = stack.pop()
            for e in B.out_edges(u):
                w = B.tgt[e]
                if w in vmap:
                    continue
                p = random_walk(rng, X, vmap[u], rng.randint(0, max_len))
                if reduced:
                    p = reduce(p)
                vmap[w] = p.end
                paths[e] = p.steps
                stack.append(w)
    return TMap.from_paths(B, X, vmap, paths)


def _excursion(rng: random.Random, X: InvGraph, v, depth: int) -> list:
    """A closed walk at ``v`` that reduces to nothing, possibly branching."""
    out = X.out_edges(v)
    if not out or depth == 0:
        return []
    e = rng.choice(out)
    inner = []
    for _ in range(rng.randint(0, 2)):
        inner += _excursion(rng, X, X.tgt[e], depth - 1)
    return [e] + inner + [X.dual[e]]


def spurred(rng: random.Random, X: InvGraph, p: Path, spurs: int = 2, depth: int = 2) -> Path:
    """Insert random excursions into ``p``; the result reduces to ``reduce(p)``."""
    steps = list(p.steps)
    for _ in range(spurs):
        i = rng.randint(0, len(steps))
        v = Path(X, p.start, tuple(steps[:i])).end
        steps[i:i] = _excursion(rng, X, v, depth)
    return Path(X, p.start, tuple(steps))


def random_g_object(rng: random.Random, f: TMap, spurs: int = 2, depth: int = 2) -> FactObject:
    """A G-generic factorisation of ``f`` through a tree built from spurred image paths."""
    X = f.codomain
    paths = {}
    for e, _ in f.domain.dual_pairs():
        paths[e] = spurred(rng, X, f.path(e), rng.randint(0, spurs), depth).steps
    long_ = TMap.from_paths(f.domain, X, f.vmap, paths)
    o = t_generic_factor(long_)
    return FactObject(o.g, o.h, "G")


# --- finite categories and groupoids -----------------------------------------


def _random_poset(rng: random.Random, n: int):
    from .theories.nerves import poset_category

    below = {(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4}
    # transitive closure
    changed = True
    while changed:
        changed = False
        for a, b in list(below):
            for c, d in list(below):
                if b == c and (a, d) not in below:
                    below.add((a, d))
                    changed = True
    return poset_category(range(n), lambda a, b: a == b or (a, b) in below)


def _free_on_dag(rng: random.Random, n: int):
    """Path category of a random acyclic quiver, possibly with parallel arrows."""
    from .theories.nerves import FinCategory

    arrows = [(a, b, k) for a in range(n) for b in range(a + 1, n) for k in range(2) if rng.random() < 0.25]
    paths = {(v, ()): (v, v) for v in range(n)}
    frontier = list(paths)
    while frontier:
        nxt = []
        for v, word in frontier:
            end = paths[(v, word)][1]
            for a, b, k in arrows:
                if a == end:
                    p = (v, word + ((a, b, k),))
                    paths[p] = (v, b)
                    nxt.append(p)
        frontier = nxt
    comp = {}
    for (v, w1), (_, m) in paths.items():
        for (u, w2), (_, t) in paths.items():
            if u == m:
                comp[((v, w1), (u, w2))] = (v, w1 + w2)
    return FinCategory(range(n), paths, {v: (v, ()) for v in range(n)}, comp)


def _transformation_monoid(rng: random.Random, size: int = 3, cap: int = 20):
    """Monoid generated by one or two random self-maps of ``{0..size-1}``."""
    from .theories.nerves import monoid_category

    ident = tuple(range(size))
    gens = [tuple(rng.randrange(size) for _ in range(size)) for _ in range(rng.randint(1, 2))]
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(g[a[i]] for i in range(size))
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
        if len(elems) > cap:
            return None
    return monoid_category(sorted(elems), lambda a, b: tuple(b[a[i]] for i in range(size)), ident)


def _atomic_category(rng: random.Random, max_objects: int, max_morphisms: int):
    while True:
        kind = rng.choice(["poset", "free", "monoid", "groupoid"])
        if kind == "poset":
            C = _random_poset(rng, rng.randint(1, max_objects))
        elif kind == "free":
            C = _free_on_dag(rng, rng.randint(1, max_objects))
        elif kind == "monoid":
            C = _transformation_monoid(rng, rng.randint(2, 3), max_morphisms)
        else:
            C = _atomic_groupoid(rng, max_objects, max_morphisms)
        if C is not None and len(C.objects) <= max_objects and len(C.morphisms) <= max_morphisms:
            return C


def random_category(rng: random.Random, max_objects: int = 5, max_morphisms: int = 20):
    """A random finite category: a poset, free category, monoid or groupoid, or a sum or product of two."""
    from .theories.nerves import disjoint_union, product_category

    while True:
        kind = rng.choice(["atomic", "atomic", "sum", "product"])
        if kind == "atomic":
            C = _atomic_category(rng, max_objects, max_morphisms)
        elif kind == "sum":
            C = disjoint_union([_atomic_category(rng, 3, 8) for _ in range(2)])
        else:
            C = product_category(_atomic_category(rng, 2, 4), _atomic_category(rng, 2, 4))
        if len(C.objects) <= max_objects and len(C.morphisms) <= max_morphisms:
            return C


def _symmetric_group3():
    from .theories.nerves import group_groupoid

    perms = list(itertools.permutations(range(3)))
    comp = lambda a, b: tuple(b[a[i]] for i in range(3))  # noqa: E731
    inv = lambda a: tuple(sorted(range(3), key=lambda i: a[i]))  # noqa: E731
    return group_groupoid(perms, comp, tuple(range(3)), inv)


def _atomic_groupoid(rng: random.Random, max_objects: int, max_morphisms: int):
    from .theories.nerves import chaotic_groupoid, cyclic_group

    while True:
        kind = rng.choice(["cyclic", "s3", "chaotic"])
        if kind == "cyclic":
            G = cyclic_group(rng.randint(1, 6))
        elif kind == "s3":
            G = _symmetric_group3()
        else:
            G = chaotic_groupoid(range(rng.randint(1, 4)))
        if len(G.objects) <= max_objects and len(G.morphisms) <= max_morphisms:
            return G


def random_groupoid(rng: random.Random, max_objects: int = 5, max_morphisms: int = 20):
    """Groups, chaotic groupoids, and sums or products of two of them."""
    from .theories.nerves import disjoint_union, product_groupoid

    while True:
        kind = rng.choice(["atomic", "atomic", "sum", "product"])
        if kind == "atomic":
            G = _atomic_groupoid(rng, max_objects, max_morphisms)
        elif kind == "sum":
            G = disjoint_union([_atomic_groupoid(rng, 3, 9) for _ in range(2)])
        else:
            G = product_groupoid(_atomic_groupoid(rng, 2, 4), _atomic_groupoid(rng, 2, 4))
        if len(G.objects) <= max_objects and len(G.morphisms) <= max_morphisms:
            return G
