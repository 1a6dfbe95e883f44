"""Generic factorisations for the path monad T and the free groupoid monad G.

A morphism ``B -> TA`` is stored as a :class:`TMap`: a vertex map plus a
path of ``A`` for every edge of ``B``, compatible with duals.  ``B -> GA``
is the same data with reduced paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from ._util import freeze, thaw
from .graphs import GraphBuilder, InvGraph, InvGraphMorphism
from .paths import Path, dual_path, reduce, reduction_matching


class FactorisationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TMap:
    domain: InvGraph
    codomain: InvGraph
    vmap: Mapping
    pmap: Mapping

    def __post_init__(self):
        B, A = self.domain, self.codomain
        for v in B.vertices:
            if v not in self.vmap or self.vmap[v] not in A._out:
                raise FactorisationError(f"vertex {v!r} unmapped or mapped outside the codomain")
        for e in B.edges:
            if e not in self.pmap:
                raise FactorisationError(f"edge {e!r} has no image path")
            try:
                p = Path(A, self.vmap[B.src[e]], self.pmap[e])
            except ValueError as exc:
                raise FactorisationError(f"image of {e!r} is not a path: {exc}") from exc
            if p.end != self.vmap[B.tgt[e]]:
                raise FactorisationError(f"image path of {e!r} ends at the wrong vertex")
            if tuple(self.pmap[B.dual[e]]) != dual_path(p).steps:
                raise FactorisationError(f"image of dual({e!r}) is not the dual path")

    @classmethod
    def from_paths(cls, domain: InvGraph, codomain: InvGraph, vmap: Mapping, paths: Mapping) -> "TMap":
        """Build from paths given on one edge of each dual pair."""
        pmap = {}
        for e, steps in paths.items():
            steps = tuple(steps)
            pmap[e] = steps
            pmap[domain.dual[e]] = tuple(codomain.dual[x] for x in reversed(steps))
        return cls(domain, codomain, dict(vmap), pmap)

    @classmethod
    def unit(cls, h: InvGraphMorphism) -> "TMap":
        """``eta . h``: every edge goes to a length-one path."""
        return cls(h.domain, h.codomain, dict(h.vmap), {e: (h.emap[e],) for e in h.domain.edges})

    def path(self, e) -> Path:
        return Path(self.codomain, self.vmap[self.domain.src[e]], self.pmap[e])

    def __eq__(self, other):
        if not isinstance(other, TMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and all(self.vmap[v] == other.vmap[v] for v in self.domain.vertices)
            and all(tuple(self.pmap[e]) == tuple(other.pmap[e]) for e in self.domain.edges)
        )

    def __hash__(self):
        return hash(tuple(tuple(self.pmap[e]) for e in self.domain.edges))

    def is_reduced(self) -> bool:
        return all(self.path(e).is_reduced() for e in self.domain.edges)

    def reduced(self) -> "TMap":
        """``tau . self``."""
        return TMap(self.domain, self.codomain, self.vmap, {e: reduce(self.path(e)).steps for e in self.domain.edges})

    def transport(self, k: InvGraphMorphism) -> "TMap":
        """``T(k) . self``."""
        if k.domain != self.codomain:
            raise FactorisationError("morphism does not start at the codomain")
        return TMap(
            self.domain,
            k.codomain,
            {v: k.vmap[w] for v, w in self.vmap.items()},
            {e: tuple(k.emap[x] for x in self.pmap[e]) for e in self.domain.edges},
        )

    def g_transport(self, k: InvGraphMorphism) -> "TMap":
        """``G(k) . self``."""
        return self.transport(k).reduced()

    def to_json(self) -> dict:
        from .graphs import graph_to_json

        return {
            "domain": graph_to_json(self.domain),
            "codomain": graph_to_json(self.codomain),
            "vmap": [[thaw(v), thaw(self.vmap[v])] for v in self.domain.vertices],
            "pmap": [[thaw(e), [thaw(x) for x in self.pmap[e]]] for e in self.domain.edges],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TMap":
        from .graphs import graph_from_json

        try:
            B = graph_from_json(data["domain"])
            A = graph_from_json(data["codomain"])
            vmap = {freeze(a): freeze(b) for a, b in data["vmap"]}
            pmap = {freeze(e): tuple(freeze(x) for x in ps) for e, ps in data["pmap"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise FactorisationError(f"malformed TMap JSON: {exc}") from exc
        if set(pmap) != set(B.edges):
            # allow one representative per dual pair
            return cls.from_paths(B, A, vmap, {e: p for e, p in pmap.items()})
        return cls(B, A, vmap, pmap)


def kleisli(g: TMap, k: TMap) -> TMap:
    """``mu . T(k) . g`` for ``g: B -> TA`` and ``k: A -> TX``."""
    if g.codomain != k.domain:
        raise FactorisationError("maps are not composable")
    return TMap(
        g.domain,
        k.codomain,
        {v: k.vmap[a] for v, a in g.vmap.items()},
        {e: tuple(x for a in g.pmap[e] for x in k.pmap[a]) for e in g.domain.edges},
    )


def morphism_to_json(h: InvGraphMorphism) -> dict:
    from .graphs import graph_to_json

    return {
        "domain": graph_to_json(h.domain),
        "codomain": graph_to_json(h.codomain),
        "vmap": [[thaw(v), thaw(h.vmap[v])] for v in h.domain.vertices],
        "emap": [[thaw(e), thaw(h.emap[e])] for e in h.domain.edges],
    }


def morphism_from_json(data: Mapping) -> InvGraphMorphism:
    from .graphs import graph_from_json

    return InvGraphMorphism(
        graph_from_json(data["domain"]),
        graph_from_json(data["codomain"]),
        {freeze(a): freeze(b) for a, b in data["vmap"]},
        {freeze(a): freeze(b) for a, b in data["emap"]},
    )


# --- factorisation categories -----------------------------------------------


@dataclass(frozen=True, eq=False)
class FactObject:
    """A factorisation ``B --g--> F(A) --F(h)--> F(X)``, ``F`` being T or G."""

    g: TMap
    h: InvGraphMorphism
    mode: str = "T"

    def __post_init__(self):
        if self.mode not in ("T", "G"):
            raise FactorisationError("mode must be 'T' or 'G'")
        if self.g.codomain != self.h.domain:
            raise FactorisationError("g and h do not meet at the arity")
        if self.mode == "G" and not self.g.is_reduced():
            raise FactorisationError("G-mode first leg must send edges to reduced paths")

    @property
    def arity(self) -> InvGraph:
        return self.h.domain

    A = arity

    def composite(self) -> TMap:
        c = self.g.transport(self.h)
        return c.reduced() if self.mode == "G" else c

    def factors(self, f: TMap) -> bool:
        return self.composite() == f

    def __eq__(self, other):
        if not isinstance(other, FactObject):
            return NotImplemented
        return self.mode == other.mode and self.g == other.g and self.h == other.h

    def __hash__(self):
        return hash((self.mode, self.g))

    def to_json(self) -> dict:
        return {"mode": self.mode, "g": self.g.to_json(), "h": morphism_to_json(self.h)}

    @classmethod
    def from_json(cls, data: Mapping) -> "FactObject":
        return cls(TMap.from_json(data["g"]), morphism_from_json(data["h"]), data.get("mode", "T"))


@dataclass(frozen=True, eq=False)
class FactMorphism:
    source: FactObject
    target: FactObject
    k: InvGraphMorphism

    def is_valid(self) -> bool:
        s, t, k = self.source, self.target, self.k
        if s.mode != t.mode or k.domain != s.arity or k.codomain != t.arity:
            return False
        moved = s.g.transport(k)
        if s.mode == "G":
            moved = moved.reduced()
        return moved == t.g and k.then(t.h) == s.h

    def check(self) -> "FactMorphism":
        if not self.is_valid():
            raise FactorisationError("arrow does not satisfy F(k) g1 = g2 and h2 k = h1")
        return self


@dataclass(frozen=True)
class ZigZag:
    """Objects ``o0 .. on`` joined by arrows; ``forward[i]`` says ``o_i -> o_{i+1}``."""

    objects: tuple
    arrows: tuple
    forward: tuple

    def __len__(self) -> int:
        return len(self.arrows)

    def validate(self) -> bool:
        if len(self.objects) != len(self.arrows) + 1 or len(self.forward) != len(self.arrows):
            return False
        for i, (k, fwd) in enumerate(zip(self.arrows, self.forward)):
            a, b = self.objects[i], self.objects[i + 1]
            m = FactMorphism(a, b, k) if fwd else FactMorphism(b, a, k)
            if not m.is_valid():
                return False
        return True

    def to_json(self) -> dict:
        return {
            "length": len(self),
            "directions": ["->" if f else "<-" for f in self.forward],
            "objects": [o.to_json() for o in self.objects],
            "arrows": [morphism_to_json(k) for k in self.arrows],
        }


# --- T-generic factorisation ------------------------------------------------


def _subdivide(f: TMap):
    """Replace each dual pair of ``f.domain`` by a sequence as long as its image path.

    Returns ``(g, h)`` with ``g: B -> TA`` and ``h: A -> X``.  Fresh
    vertices are ``(e, i)``; fresh edges ``(e, i, 1)`` / ``(e, i, -1)``, and
    ``(e, i, 0)`` for the middle edge of an odd self-dual subdivision.
    """
    B, X = f.domain, f.codomain
    gb = GraphBuilder()
    for b in B.vertices:
        gb.add_vertex(b)
    edge_plan = {}  # edge id of A -> image edge in X
    vert_plan = {b: f.vmap[b] for b in B.vertices}
    gpaths = {}
    for e, d in B.dual_pairs():
        steps = f.pmap[e]
        n = len(steps)
        xs = f.path(e).vertices()
        if e != d:
            if n == 0:
                gb.identify(B.src[e], B.tgt[e])
                gpaths[e] = ()
                continue
            ws = [B.src[e]] + [(e, i) for i in range(1, n)] + [B.tgt[e]]
            for i in range(1, n):
                vert_plan[(e, i)] = xs[i]
            for i in range(n):
                gb.add_pair((e, i, 1), (e, i, -1), ws[i], ws[i + 1])
                edge_plan[(e, i, 1)] = steps[i]
                edge_plan[(e, i, -1)] = X.dual[steps[i]]
            gpaths[e] = tuple((e, i, 1) for i in range(n))
        else:
            # self-dual edge: the subdivision is folded onto itself
            if dual_path(f.path(e)).steps != tuple(steps):
                raise FactorisationError(f"self-dual edge {e!r} must map to a self-dual path")
            b = B.src[e]

            def w(i, n=n, e=e, b=b):
                i = min(i, n - i)
                return b if i == 0 else (e, i)

            for i in range(1, n):
                vert_plan[w(i)] = xs[i]
            seq = []
            for j in range(n):
                o = n - 1 - j
                if j < o:
                    gb.add_pair((e, j, 1), (e, j, -1), w(j), w(j + 1))
                    edge_plan[(e, j, 1)] = steps[j]
                    edge_plan[(e, j, -1)] = X.dual[steps[j]]
                    seq.append((e, j, 1))
                elif j == o:
                    gb.add_pair((e, j, 0), (e, j, 0), w(j), w(j + 1))
                    edge_plan[(e, j, 0)] = steps[j]
                    seq.append((e, j, 0))
                else:
                    seq.append((e, o, -1))
            gpaths[e] = tuple(seq)
    A = gb.build()
    find = gb.find
    g = TMap(
        B,
        A,
        {b: find(b) for b in B.vertices},
        {**gpaths, **{d: tuple(A.dual[x] for x in reversed(gpaths[e])) for e, d in B.dual_pairs()}},
    )
    h = InvGraphMorphism(A, X, {find(v): x for v, x in vert_plan.items()}, edge_plan)
    return g, h


def t_generic_factor(f: TMap) -> FactObject:
    """The initial factorisation of ``f: B -> TX`` (A is a subdivision of B)."""
    g, h = _subdivide(f)
    return FactObject(g, h, "T")


def is_t_generic(g: TMap) -> bool:
    """True iff ``g`` is, up to isomorphism, the first leg of its own generic factorisation.

    The comparison from the subdivision of ``g`` onto ``g.codomain`` must be
    bijective: every dual pair of the codomain is reached by exactly one
    step of the subdivision (a self-dual domain edge reaches its pairs from
    both ends, which is why a plain usage count is not enough).
    """
    try:
        obj = t_generic_factor(g)
    except FactorisationError:
        return False
    return obj.h.is_bijective()


def is_g_generic(g: TMap) -> bool:
    return g.is_reduced() and is_t_generic(g)


def generic_lift(g: TMap, alpha: TMap, beta: InvGraphMorphism, gamma: InvGraphMorphism) -> InvGraphMorphism:
    """The unique ``delta: A -> A'`` with ``T(delta) g = alpha`` and ``gamma delta = beta``."""
    if g.transport(beta) != alpha.transport(gamma):
        raise FactorisationError("square does not commute")
    if not is_t_generic(g):
        raise FactorisationError("g is not T-generic")
    A, A2 = g.codomain, alpha.codomain
    vm: dict = {}
    em: dict = {}

    def put(m, k, v):
        if m.setdefault(k, v) != v:
            raise FactorisationError(f"no consistent lift at {k!r}")

    for b in g.domain.vertices:
        put(vm, g.vmap[b], alpha.vmap[b])
    for e in g.domain.edges:
        p, q = g.path(e), alpha.path(e)
        if len(p) != len(q):
            raise FactorisationError(f"image paths of {e!r} have different lengths")
        for x, y in zip(p.vertices(), q.vertices()):
            put(vm, x, y)
        for x, y in zip(p.steps, q.steps):
            put(em, x, y)
            put(em, A.dual[x], A2.dual[y])
    delta = InvGraphMorphism(A, A2, vm, em)
    if delta.then(gamma) != beta:
        raise FactorisationError("lift does not commute with beta and gamma")
    return delta


def g_generic_factor(f: TMap) -> FactObject:
    """Factor ``f: B -> GX`` (edgewise reduced) through a G-generic ``g``."""
    if not f.is_reduced():
        raise FactorisationError("f must send every edge to a reduced path; reduce it first")
    g, h = _subdivide(f)
    return FactObject(g, h, "G")


def as_g_object(o: FactObject) -> FactObject:
    return FactObject(o.g.reduced(), o.h, "G")


# --- compatibility of T-generics with redundancy removal ---------------------


class TauCompat(NamedTuple):
    t: InvGraph
    g3: TMap
    h3: InvGraphMorphism
    delta1: InvGraphMorphism
    delta2: InvGraphMorphism


def tau_compat(p: InvGraph, g1: TMap, h1: InvGraphMorphism, g2: TMap, h2: InvGraphMorphism) -> TauCompat:
    """Common refinement of two T-generic factorisations that agree after reduction.

    Needs ``reduce(h1 . g1) == h2 . g2`` edgewise.  For each edge of the
    shared domain ``p`` the long path ``h1 g1(e)`` is unfolded into a tree:
    its reduced backbone, with every cancelled excursion grown as a side
    branch at the vertex where it happens (a straight spur of length ``k``
    for a basic ``k``-redundancy).  The per-edge trees are glued along the
    vertices of ``p``.
    """
    if g1.domain != p or g2.domain != p:
        raise FactorisationError("g1 and g2 must both start at p")
    if not is_t_generic(g1) or not is_t_generic(g2):
        raise FactorisationError("g1 and g2 must be T-generic")
    X = h1.codomain
    if h2.codomain != X:
        raise FactorisationError("h1 and h2 must share a codomain")
    long_ = g1.transport(h1)
    short = g2.transport(h2)
    if long_.reduced() != short:
        raise FactorisationError("tau(h1 g1) != h2 g2")
    if any(e == d for e, d in p.dual_pairs()):
        raise FactorisationError("domain must not have self-dual edges")

    gb = GraphBuilder()
    for v in p.vertices:
        gb.add_vertex(("p", v))
    h3_v: dict = {("p", v): long_.vmap[v] for v in p.vertices}
    h3_e: dict = {}
    walk_vertices: dict = {}  # rep edge -> tree vertex after each step
    walk_edges: dict = {}  # rep edge -> tree edge used at each step
    backbone: dict = {}  # rep edge -> (vertices, edges) along the reduced part

    for e, de in p.dual_pairs():
        P1 = long_.path(e)
        xs = P1.vertices()
        match, kept = reduction_matching(P1)
        last_kept = kept[-1] if kept else None
        cur = ("p", p.src[e])
        stack = []
        wv, we = [cur], []
        bv, be = [cur], []
        for k, x in enumerate(P1.steps):
            if k not in match:
                new = ("p", p.tgt[e]) if k == last_kept else ("b", e, k)
                eid = ("b", e, k, 1)
                gb.add_pair(eid, ("b", e, k, -1), cur, new)
                h3_e[eid], h3_e[("b", e, k, -1)] = x, X.dual[x]
                cur = new
                bv.append(cur)
                be.append(eid)
                we.append(eid)
            elif match[k] > k:
                new = ("r", e, k)
                eid = ("r", e, k, 1)
                gb.add_pair(eid, ("r", e, k, -1), cur, new)
                h3_e[eid], h3_e[("r", e, k, -1)] = x, X.dual[x]
                stack.append(cur)
                cur = new
                we.append(eid)
            else:
                we.append(("r", e, match[k], -1))
                cur = stack.pop()
            h3_v.setdefault(cur, xs[k + 1])
            wv.append(cur)
        if not kept:
            gb.identify(("p", p.src[e]), ("p", p.tgt[e]))
        walk_vertices[e], walk_edges[e] = wv, we
        backbone[e] = (bv, be)

    t = gb.build()
    find = gb.find
    h3 = InvGraphMorphism(t, X, {find(v): x for v, x in h3_v.items()}, h3_e)

    def build_delta(g: TMap, vertex_lists, edge_lists):
        vm: dict = {}
        em: dict = {}
        for v in p.vertices:
            vm[g.vmap[v]] = find(("p", v))
        for e, _ in p.dual_pairs():
            path = g.path(e)
            for x, y in zip(path.vertices(), vertex_lists[e]):
                if vm.setdefault(x, find(y)) != find(y):
                    raise FactorisationError("inconsistent comparison map")
            for x, y in zip(path.steps, edge_lists[e]):
                em[x] = y
                em[g.codomain.dual[x]] = t.dual[y]
        return InvGraphMorphism(g.codomain, t, vm, em)

    delta1 = build_delta(g1, walk_vertices, walk_edges)
    delta2 = build_delta(g2, {e: bv for e, (bv, _) in backbone.items()}, {e: be for e, (_, be) in backbone.items()})
    g3 = TMap.from_paths(p, t, {v: find(("p", v)) for v in p.vertices}, {e: tuple(be) for e, (_, be) in backbone.items()})

    res = TauCompat(t, g3, h3, delta1, delta2)
    if not (
        g1.transport(delta1).reduced() == g3
        and g2.transport(delta2) == g3
        and delta1.then(h3) == h1
        and delta2.then(h3) == h2
    ):
        raise FactorisationError("internal error: refinement equations fail")
    return res


def zigzag_connect(f: TMap, o1: FactObject, o2: FactObject) -> ZigZag:
    """Join two G-generic factorisations of ``f`` by at most four arrows.

    Both are compared with the generic factorisation ``(g, q, h)`` of ``f``
    itself through the common refinements of :func:`tau_compat`:
    ``o1 -> (g3, t1, h3) <- (g, q, h) -> (g4, t2, h4) <- o2``.
    """
    for o in (o1, o2):
        if o.mode != "G" or not o.factors(f):
            raise FactorisationError("inputs must be G-mode factorisations of f")
        if not is_g_generic(o.g):
            raise FactorisationError("first legs must be G-generic")
    if o1 == o2:
        return ZigZag((o1,), (), ())
    mid = g_generic_factor(f)
    r1 = tau_compat(f.domain, o1.g, o1.h, mid.g, mid.h)
    r2 = tau_compat(f.domain, o2.g, o2.h, mid.g, mid.h)
    left = FactObject(r1.g3, r1.h3, "G")
    right = FactObject(r2.g3, r2.h3, "G")
    zz = ZigZag(
        (o1, left, mid, right, o2),
        (r1.delta1, r1.delta2, r2.delta2, r2.delta1),
        (True, False, True, False),
    )
    if not zz.validate():
        raise FactorisationError("internal error: zig-zag arrow failed validation")
    return zz
