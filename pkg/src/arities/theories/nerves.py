"""Nerves of finite categories and groupoids, Segal checks and reconstruction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .operators import SimplicialOperator
from .presheaf import SHAPES, PresheafError, TruncPresheaf, from_action


class CategoryError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinCategory:
    """``comp[(f, g)]`` is ``f`` followed by ``g`` (defined when ``cod f == dom g``)."""

    objects: tuple
    morphisms: Mapping  # id -> (dom, cod)
    identities: Mapping
    comp: Mapping

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        problem = self.law_violation()
        if problem:
            raise CategoryError(problem)

    def dom(self, f):
        return self.morphisms[f][0]

    def cod(self, f):
        return self.morphisms[f][1]

    def hom(self, a, b) -> list:
        return [f for f, (x, y) in self.morphisms.items() if x == a and y == b]

    def compose(self, f, g):
        return self.comp[(f, g)]

    def composable_pairs(self):
        out_of = {}
        for f, (a, _) in self.morphisms.items():
            out_of.setdefault(a, []).append(f)
        for f, (_, b) in self.morphisms.items():
            for g in out_of.get(b, ()):
                yield f, g

    def law_violation(self) -> str | None:
        obs = set(self.objects)
        for f, (a, b) in self.morphisms.items():
            if a not in obs or b not in obs:
                return f"morphism {f!r} has an endpoint outside the objects"
        for x in self.objects:
            i = self.identities.get(x)
            if i not in self.morphisms or self.morphisms[i] != (x, x):
                return f"bad identity at {x!r}"
        for f, g in self.composable_pairs():
            h = self.comp.get((f, g))
            if h not in self.morphisms or self.morphisms[h] != (self.dom(f), self.cod(g)):
                return f"composite of {f!r} and {g!r} missing or misplaced"
        for f in self.morphisms:
            if self.comp[(self.identities[self.dom(f)], f)] != f or self.comp[(f, self.identities[self.cod(f)])] != f:
                return f"unit law fails at {f!r}"
        out_of: dict = {}
        for h, (a, _) in self.morphisms.items():
            out_of.setdefault(a, []).append(h)
        for f, g in self.composable_pairs():
            fg = self.comp[(f, g)]
            for h in out_of.get(self.cod(g), ()):
                if self.comp[(fg, h)] != self.comp[(f, self.comp[(g, h)])]:
                    return f"associativity fails at {f!r}, {g!r}, {h!r}"
        return None

    def to_json(self) -> dict:
        from .._util import thaw

        return {
            "objects": [thaw(x) for x in self.objects],
            "morphisms": [{"id": thaw(f), "dom": thaw(a), "cod": thaw(b)} for f, (a, b) in self.morphisms.items()],
            "identities": [[thaw(x), thaw(self.identities[x])] for x in self.objects],
            "compose": [[thaw(f), thaw(g), thaw(self.comp[(f, g)])] for f, g in self.composable_pairs()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinCategory":
        from .._util import freeze

        try:
            objects = [freeze(x) for x in data["objects"]]
            morphisms = {freeze(m["id"]): (freeze(m["dom"]), freeze(m["cod"])) for m in data["morphisms"]}
            identities = {freeze(x): freeze(i) for x, i in data["identities"]}
            comp = {(freeze(f), freeze(g)): freeze(h) for f, g, h in data["compose"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise CategoryError(f"malformed category JSON: {exc}") from exc
        return cls(objects, morphisms, identities, comp)


@dataclass(frozen=True, eq=False)
class FinGroupoid(FinCategory):
    inverse: Mapping = None

    def __post_init__(self):
        super().__post_init__()
        if self.inverse is None:
            raise CategoryError("a groupoid needs an inverse table")
        for f in self.morphisms:
            g = self.inverse.get(f)
            if g not in self.morphisms:
                raise CategoryError(f"no inverse for {f!r}")
            if self.comp.get((f, g)) != self.identities[self.dom(f)] or self.comp.get((g, f)) != self.identities[self.cod(f)]:
                raise CategoryError(f"inverse law fails at {f!r}")

    def to_json(self) -> dict:
        from .._util import thaw

        out = super().to_json()
        out["inverse"] = [[thaw(f), thaw(g)] for f, g in self.inverse.items()]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "FinGroupoid":
        from .._util import freeze

        c = FinCategory.from_json(data)
        try:
            inv = {freeze(f): freeze(g) for f, g in data["inverse"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise CategoryError(f"malformed groupoid JSON: {exc}") from exc
        return cls(c.objects, c.morphisms, c.identities, c.comp, inv)


# --- small constructions ----------------------------------------------------


def discrete_category(k: int) -> FinCategory:
    obs = list(range(k))
    return FinCategory(obs, {("id", x): (x, x) for x in obs}, {x: ("id", x) for x in obs}, {(("id", x), ("id", x)): ("id", x) for x in obs})


def monoid_category(elements, op, unit) -> FinCategory:
    elements = list(elements)
    return FinCategory(
        [0],
        {a: (0, 0) for a in elements},
        {0: unit},
        {(a, b): op(a, b) for a in elements for b in elements},
    )


def group_groupoid(elements, op, unit, inv) -> FinGroupoid:
    c = monoid_category(elements, op, unit)
    return FinGroupoid(c.objects, c.morphisms, c.identities, c.comp, {a: inv(a) for a in elements})


def cyclic_group(n: int) -> FinGroupoid:
    return group_groupoid(range(n), lambda a, b: (a + b) % n, 0, lambda a: (-a) % n)


def chaotic_groupoid(objects) -> FinGroupoid:
    obs = list(objects)
    mors = {(a, b): (a, b) for a in obs for b in obs}
    comp = {((a, b), (b, c)): (a, c) for a in obs for b in obs for c in obs}
    return FinGroupoid(obs, mors, {x: (x, x) for x in obs}, comp, {(a, b): (b, a) for a, b in mors})


def poset_category(objects, leq) -> FinCategory:
    obs = list(objects)
    mors = {(a, b): (a, b) for a in obs for b in obs if leq(a, b)}
    comp = {((a, b), (b, c)): (a, c) for (a, b) in mors for (b2, c) in mors if b2 == b}
    return FinCategory(obs, mors, {x: (x, x) for x in obs}, comp)


def product_category(c1: FinCategory, c2: FinCategory) -> FinCategory:
    obs = list(itertools.product(c1.objects, c2.objects))
    mors = {(f, g): ((c1.dom(f), c2.dom(g)), (c1.cod(f), c2.cod(g))) for f in c1.morphisms for g in c2.morphisms}
    ids = {(a, b): (c1.identities[a], c2.identities[b]) for a, b in obs}
    comp = {}
    for f1, g1 in c1.composable_pairs():
        for f2, g2 in c2.composable_pairs():
            comp[((f1, f2), (g1, g2))] = (c1.comp[(f1, g1)], c2.comp[(f2, g2)])
    return FinCategory(obs, mors, ids, comp)


def product_groupoid(g1: FinGroupoid, g2: FinGroupoid) -> FinGroupoid:
    c = product_category(g1, g2)
    inv = {(f, g): (g1.inverse[f], g2.inverse[g]) for f, g in c.morphisms}
    return FinGroupoid(c.objects, c.morphisms, c.identities, c.comp, inv)


def disjoint_union(cats) -> FinCategory:
    obs, mors, ids, comp = [], {}, {}, {}
    for t, c in enumerate(cats):
        obs += [(t, x) for x in c.objects]
        mors.update({(t, f): ((t, a), (t, b)) for f, (a, b) in c.morphisms.items()})
        ids.update({(t, x): (t, i) for x, i in c.identities.items()})
        comp.update({((t, f), (t, g)): (t, h) for (f, g), h in c.comp.items()})
    if all(isinstance(c, FinGroupoid) for c in cats):
        inv = {(t, f): (t, g) for t, c in enumerate(cats) for f, g in c.inverse.items()}
        return FinGroupoid(obs, mors, ids, comp, inv)
    return FinCategory(obs, mors, ids, comp)


# --- nerves -----------------------------------------------------------------


def chains(C: FinCategory, n: int) -> list:
    """Cells ``(x0, (f1, ..., fn))`` of composable strings."""
    out = [(x, ()) for x in C.objects]
    for _ in range(n):
        nxt = []
        for x0, fs in out:
            end = C.cod(fs[-1]) if fs else x0
            for f in C.morphisms:
                if C.dom(f) == end:
                    nxt.append((x0, fs + (f,)))
        out = nxt
    return out


def _vertices(C: FinCategory, cell) -> list:
    x0, fs = cell
    return [x0] + [C.cod(f) for f in fs]


def _between(C: FinCategory, cell, a: int, b: int):
    """The morphism from vertex ``a`` to vertex ``b`` (``a <= b``)."""
    x0, fs = cell
    vs = _vertices(C, cell)
    m = C.identities[vs[a]]
    for f in fs[a:b]:
        m = C.comp[(m, f)]
    return m


def _nerve_action(C: FinCategory, invert=None):
    def action(op: SimplicialOperator, cell):
        vs = _vertices(C, cell)
        v = op.values
        out = []
        for a, b in zip(v, v[1:]):
            if a <= b:
                out.append(_between(C, cell, a, b))
            else:
                out.append(invert(_between(C, cell, b, a)))
        return (vs[v[0]], tuple(out))

    return action


def nerve_cat(C: FinCategory, N: int = 4) -> TruncPresheaf:
    cells = {n: chains(C, n) for n in range(N + 1)}
    return from_action(SHAPES["delta"], N, cells, _nerve_action(C))


def sym_nerve(Gp: FinGroupoid, N: int = 4) -> TruncPresheaf:
    """Functors from the chaotic groupoid on ``{0..n}``; arbitrary maps act by reindexing."""
    if not isinstance(Gp, FinGroupoid):
        raise CategoryError("sym_nerve needs a groupoid")
    cells = {n: chains(Gp, n) for n in range(N + 1)}
    return from_action(SHAPES["sym"], N, cells, _nerve_action(Gp, invert=lambda f: Gp.inverse[f]))


# --- Segal condition ---------------------------------------------------------


def _edge_op(n: int, i: int) -> SimplicialOperator:
    return SimplicialOperator(1, n, (i, i + 1))


def _vertex_op(n: int, i: int) -> SimplicialOperator:
    return SimplicialOperator(0, n, (i,))


def spine(X: TruncPresheaf, n: int, x) -> tuple:
    return tuple(X.act(_edge_op(n, i), x) for i in range(n))


def segal_failures(X: TruncPresheaf) -> list[str]:
    """Reasons the spine maps fail to be bijections (empty when Segal)."""
    out = []
    try:
        src = {e: X.act(_vertex_op(1, 0), e) for e in X.cells.get(1, ())}
        tgt = {e: X.act(_vertex_op(1, 1), e) for e in X.cells.get(1, ())}
        from_vertex = {}
        for e in X.cells.get(1, ()):
            from_vertex.setdefault(src[e], []).append(e)
        for n in range(2, X.dim + 1):
            seen = {}
            for x in X.cells[n]:
                sp = spine(X, n, x)
                if any(tgt[a] != src[b] for a, b in zip(sp, sp[1:])):
                    out.append(f"level {n}: spine of {x!r} is not composable")
                if sp in seen:
                    out.append(f"level {n}: {seen[sp]!r} and {x!r} share a spine")
                seen[sp] = x
            # count composable strings of length n
            count = {e: 1 for e in X.cells.get(1, ())}
            for _ in range(n - 1):
                count = {e: sum(count[f] for f in from_vertex.get(tgt[e], ())) for e in count}
            total = sum(count.values())
            if total != len(seen):
                out.append(f"level {n}: {len(seen)} distinct spines for {total} composable strings")
    except PresheafError as exc:
        out.append(str(exc))
    return out


def segal_check(X: TruncPresheaf) -> bool:
    if X.dim < 2:
        raise PresheafError("the Segal check needs dimension at least 2")
    return not segal_failures(X)


def sym_segal_check(X: TruncPresheaf) -> bool:
    """Segal condition on the order-preserving part of a symmetric presheaf."""
    return segal_check(X.restrict(SHAPES["delta"]))


def reconstruct_cat(X: TruncPresheaf) -> FinCategory:
    """Objects are 0-cells, morphisms 1-cells, composition through the unique 2-cell on each spine."""
    if X.dim < 3:
        raise PresheafError("reconstruction needs dimension at least 3 (associativity)")
    problems = segal_failures(X)
    if problems:
        raise PresheafError("not a Segal presheaf: " + problems[0])
    objects = list(X.cells[0])
    morphisms = {e: (X.act(_vertex_op(1, 0), e), X.act(_vertex_op(1, 1), e)) for e in X.cells[1]}
    identities = {x: X.act(SimplicialOperator(1, 0, (0, 0)), x) for x in objects}
    by_spine = {spine(X, 2, t): t for t in X.cells[2]}
    outer = SimplicialOperator(1, 2, (0, 2))
    comp = {}
    for (f, g), t in by_spine.items():
        comp[(f, g)] = X.act(outer, t)
    try:
        return FinCategory(objects, morphisms, identities, comp)
    except CategoryError as exc:
        raise PresheafError(f"reconstructed composition is not a category: {exc}") from exc


def reconstruct_groupoid(X: TruncPresheaf) -> FinGroupoid:
    """As :func:`reconstruct_cat`, with inverses read off the swap of ``[1]``."""
    C = reconstruct_cat(X.restrict(SHAPES["delta"]))
    swap = SimplicialOperator(1, 1, (1, 0), False)
    inv = {e: X.act(swap, e) for e in C.morphisms}
    try:
        return FinGroupoid(C.objects, C.morphisms, C.identities, C.comp, inv)
    except CategoryError as exc:
        raise PresheafError(f"symmetric action does not provide inverses: {exc}") from exc


# --- isomorphism checks ------------------------------------------------------


def category_isomorphism(C: FinCategory, D: FinCategory, fmap: Mapping) -> bool:
    """Is ``fmap`` (on morphisms) an isomorphism of categories?"""
    if sorted(map(repr, fmap.values())) != sorted(map(repr, D.morphisms)) or len(fmap) != len(C.morphisms):
        return False
    omap = {x: D.dom(fmap[C.identities[x]]) for x in C.objects}
    if len(set(omap.values())) != len(D.objects):
        return False
    for f in C.morphisms:
        if D.morphisms[fmap[f]] != (omap[C.dom(f)], omap[C.cod(f)]):
            return False
    for x in C.objects:
        if fmap[C.identities[x]] != D.identities[omap[x]]:
            return False
    return all(fmap[h] == D.comp[(fmap[f], fmap[g])] for (f, g), h in C.comp.items())


def presheaf_isomorphism(X: TruncPresheaf, Y: TruncPresheaf, cellmap) -> bool:
    """Is ``cellmap(n, x)`` a level-wise bijection commuting with every generator?"""
    if X.dim != Y.dim:
        return False
    maps = {}
    for n in range(X.dim + 1):
        m = {x: cellmap(n, x) for x in X.cells[n]}
        if len(set(m.values())) != len(m) or set(m.values()) != set(Y.cells[n]):
            return False
        maps[n] = m
    sh = X.shape
    for key in sh.generators(X.dim):
        op = sh.gen_op(key)
        a, b = sh.dom(op), sh.cod(op)
        for x in X.cells[b]:
            if maps[a][X.act(op, x)] != Y.act(op, maps[b][x]):
                return False
    return True


def nerve_round_trip(X: TruncPresheaf) -> bool:
    """``nerve(reconstruct(X))`` is isomorphic to ``X`` via vertex-and-spine."""
    sym = X.shape.name == "sym"
    C = reconstruct_groupoid(X) if sym else reconstruct_cat(X)
    Y = sym_nerve(C, X.dim) if sym else nerve_cat(C, X.dim)

    def cellmap(n, x):
        return (X.act(_vertex_op(n, 0), x), spine(X, n, x) if n else ())

    return presheaf_isomorphism(X, Y, cellmap)


def category_round_trip(C: FinCategory, N: int = 4) -> bool:
    """``reconstruct(nerve(C))`` is isomorphic to ``C`` via ``f -> (dom f, (f,))``."""
    if isinstance(C, FinGroupoid):
        D = reconstruct_groupoid(sym_nerve(C, N))
    else:
        D = reconstruct_cat(nerve_cat(C, N))
    fmap = {f: (C.dom(f), (f,)) for f in C.morphisms}
    ok = category_isomorphism(C, D, fmap)
    if ok and isinstance(C, FinGroupoid):
        ok = all(D.inverse[fmap[f]] == fmap[C.inverse[f]] for f in C.morphisms)
    return ok


def truncated_monoid_sym_presheaf(N: int = 4, cap: int = 2) -> TruncPresheaf:
    """Nerve of ``({0..cap}, min(a + b, cap))`` with reversed strings standing in for inverses.

    Segal, but the swap of ``[1]`` gives no inverses.
    """
    M = monoid_category(range(cap + 1), lambda a, b: min(a + b, cap), 0)
    cells = {n: chains(M, n) for n in range(N + 1)}
    return from_action(SHAPES["sym"], N, cells, _nerve_action(M, invert=lambda f: f))
