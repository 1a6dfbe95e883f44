"""Finite directed and involutive graphs and their morphisms.

Vertices and edges are arbitrary hashable ids (small ints, or tuples of
them for constructed graphs).  An involutive graph carries an edge
involution ``dual`` with ``dual(dual(e)) == e`` and ``src(dual(e)) ==
tgt(e)``.  Self-dual edges are allowed; the terminal graph has one.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from ._util import UnionFind, freeze, order_key, sort_ids, thaw


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class DirGraph:
    vertices: tuple
    edges: tuple
    src: Mapping
    tgt: Mapping

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if e not in self.src or e not in self.tgt:
                raise GraphError(f"edge {e!r} lacks an endpoint")
            if self.src[e] not in vs or self.tgt[e] not in vs:
                raise GraphError(f"edge {e!r} has an endpoint outside the vertex set")


@dataclass(frozen=True, eq=False)
class InvGraph:
    vertices: tuple
    edges: tuple
    src: Mapping
    tgt: Mapping
    dual: Mapping
    _out: Mapping = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("duplicate edge ids")
        for e in self.edges:
            for m, name in ((self.src, "src"), (self.tgt, "tgt"), (self.dual, "dual")):
                if e not in m:
                    raise GraphError(f"{name} undefined on edge {e!r}")
            if self.src[e] not in vs or self.tgt[e] not in vs:
                raise GraphError(f"edge {e!r} has an endpoint outside the vertex set")
            d = self.dual[e]
            if d not in self.dual or self.dual[d] != e:
                raise GraphError(f"dual is not an involution at {e!r}")
            if self.src[d] != self.tgt[e] or self.tgt[d] != self.src[e]:
                raise GraphError(f"dual of {e!r} does not swap its endpoints")
        out: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            out[self.src[e]].append(e)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})

    def __eq__(self, other):
        if not isinstance(other, InvGraph):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and set(self.edges) == set(other.edges)
            and all(
                self.src[e] == other.src[e]
                and self.tgt[e] == other.tgt[e]
                and self.dual[e] == other.dual[e]
                for e in self.edges
            )
        )

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(self.edges)))

    def __repr__(self):
        return f"InvGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def underlying(self) -> DirGraph:
        return DirGraph(self.vertices, self.edges, dict(self.src), dict(self.tgt))

    def out_edges(self, v) -> tuple:
        return self._out[v]

    def edges_between(self, a, b) -> list:
        return [e for e in self._out[a] if self.tgt[e] == b]

    def dual_pairs(self) -> list[tuple]:
        """One ``(rep, dual(rep))`` per dual pair; self-dual edges give ``(e, e)``."""
        seen = set()
        pairs = []
        for e in sort_ids(self.edges):
            if e in seen:
                continue
            d = self.dual[e]
            seen.update((e, d))
            pairs.append((e, d))
        return pairs

    def representatives(self) -> list:
        return [e for e, _ in self.dual_pairs()]

    def is_relational(self) -> bool:
        """True when the graph comes from a loop-free symmetric relation."""
        seen = set()
        for e, d in self.dual_pairs():
            if e == d:
                return False
            key = frozenset((self.src[e], self.tgt[e]))
            if len(key) == 1 or key in seen:
                return False
            seen.add(key)
        return True

    def components(self) -> list[set]:
        uf = UnionFind(self.vertices)
        for e in self.edges:
            uf.union(self.src[e], self.tgt[e])
        return [set(c) for c in uf.classes().values()]

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1

    def relabel(self, vmap: Callable | Mapping, emap: Callable | Mapping) -> "InvGraph":
        """Rename vertices and edges through injective maps."""
        fv = vmap if callable(vmap) else vmap.__getitem__
        fe = emap if callable(emap) else emap.__getitem__
        return InvGraph(
            [fv(v) for v in self.vertices],
            [fe(e) for e in self.edges],
            {fe(e): fv(self.src[e]) for e in self.edges},
            {fe(e): fv(self.tgt[e]) for e in self.edges},
            {fe(e): fe(self.dual[e]) for e in self.edges},
        )


class GraphBuilder:
    """Accumulates vertices and dual pairs, with optional vertex identification."""

    def __init__(self):
        self._uf = UnionFind()
        self._vertices: list = []
        self._src: dict = {}
        self._tgt: dict = {}
        self._dual: dict = {}

    def add_vertex(self, v) -> None:
        if v not in self._uf._parent:
            self._uf.add(v)
            self._vertices.append(v)

    def add_pair(self, e, d, a, b) -> None:
        """Add edge ``e: a -> b`` with dual ``d: b -> a`` (``e == d`` needs ``a == b``)."""
        self.add_vertex(a)
        self.add_vertex(b)
        self._src[e], self._tgt[e], self._dual[e] = a, b, d
        self._src[d], self._tgt[d], self._dual[d] = b, a, e

    def identify(self, a, b) -> None:
        self.add_vertex(a)
        self.add_vertex(b)
        self._uf.union(a, b)

    def find(self, v):
        return self._uf.find(v)

    def build(self) -> InvGraph:
        f = self._uf.find
        verts = [v for v in self._vertices if f(v) == v]
        return InvGraph(
            verts,
            list(self._src),
            {e: f(v) for e, v in self._src.items()},
            {e: f(v) for e, v in self._tgt.items()},
            dict(self._dual),
        )


@dataclass(frozen=True, eq=False)
class InvGraphMorphism:
    domain: InvGraph
    codomain: InvGraph
    vmap: Mapping
    emap: Mapping

    def __post_init__(self):
        for v in self.domain.vertices:
            if v not in self.vmap:
                raise GraphError(f"vertex {v!r} unmapped")
        cod_v = set(self.codomain.vertices)
        cod_e = set(self.codomain.edges)
        for v in self.domain.vertices:
            if self.vmap[v] not in cod_v:
                raise GraphError(f"vertex {v!r} mapped outside the codomain")
        dom, cod = self.domain, self.codomain
        for e in dom.edges:
            if e not in self.emap or self.emap[e] not in cod_e:
                raise GraphError(f"edge {e!r} unmapped or mapped outside the codomain")
            fe = self.emap[e]
            if cod.src[fe] != self.vmap[dom.src[e]] or cod.tgt[fe] != self.vmap[dom.tgt[e]]:
                raise GraphError(f"morphism does not commute with src/tgt at {e!r}")
            if self.emap[dom.dual[e]] != cod.dual[fe]:
                raise GraphError(f"morphism does not commute with dual at {e!r}")

    def __eq__(self, other):
        if not isinstance(other, InvGraphMorphism):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and all(self.vmap[v] == other.vmap[v] for v in self.domain.vertices)
            and all(self.emap[e] == other.emap[e] for e in self.domain.edges)
        )

    def __hash__(self):
        return hash(tuple(sorted((order_key(v), order_key(self.vmap[v])) for v in self.domain.vertices)))

    def __call__(self, x):
        return self.vmap[x] if x in self.vmap else self.emap[x]

    def then(self, other: "InvGraphMorphism") -> "InvGraphMorphism":
        if other.domain != self.codomain:
            raise GraphError("morphisms are not composable")
        return InvGraphMorphism(
            self.domain,
            other.codomain,
            {v: other.vmap[self.vmap[v]] for v in self.domain.vertices},
            {e: other.emap[self.emap[e]] for e in self.domain.edges},
        )

    @staticmethod
    def identity(g: InvGraph) -> "InvGraphMorphism":
        return InvGraphMorphism(g, g, {v: v for v in g.vertices}, {e: e for e in g.edges})

    def is_bijective(self) -> bool:
        return (
            len(set(self.vmap[v] for v in self.domain.vertices)) == len(self.codomain.vertices)
            == len(self.domain.vertices)
            and len(set(self.emap[e] for e in self.domain.edges)) == len(self.codomain.edges)
            == len(self.domain.edges)
        )


# --- constructors -----------------------------------------------------------


def make_sequence(n: int) -> InvGraph:
    """The sequence graph on vertices ``0..n``: edge ``2i: i -> i+1``, dual ``2i+1``."""
    if n < 0:
        raise GraphError("sequence length must be non-negative")
    src, tgt, dual = {}, {}, {}
    for i in range(n):
        f, b = 2 * i, 2 * i + 1
        src[f], tgt[f], dual[f] = i, i + 1, b
        src[b], tgt[b], dual[b] = i + 1, i, f
    return InvGraph(range(n + 1), range(2 * n), src, tgt, dual)


def seq_edge(i: int, forward: bool = True) -> int:
    """Id of the edge ``i -> i+1`` (or its dual) in :func:`make_sequence`."""
    return 2 * i if forward else 2 * i + 1


def seq_vertex_walk(path_steps: Iterable[int], start: int) -> list[int]:
    out = [start]
    for e in path_steps:
        i = e // 2
        out.append(i + 1 if e % 2 == 0 else i)
    return out


def free_involutive(g: DirGraph) -> InvGraph:
    """Add a formal dual ``(e, -1)`` for every edge ``(e, 1)`` of a directed graph."""
    b = GraphBuilder()
    for v in g.vertices:
        b.add_vertex(v)
    for e in g.edges:
        b.add_pair((e, 1), (e, -1), g.src[e], g.tgt[e])
    return b.build()


def from_symmetric_relation(verts: Iterable[Hashable], rel: Iterable[tuple]) -> InvGraph:
    """Involutive graph of a combinatorial graph.

    ``rel`` is read up to symmetry: listing ``(a, b)`` also relates ``b`` to
    ``a``.  Each related pair ``a != b`` gives edge ``(a, b)`` with dual
    ``(b, a)``; a loop ``(a, a)`` gives one self-dual edge.
    """
    b = GraphBuilder()
    verts = list(verts)
    vs = set(verts)
    for v in verts:
        b.add_vertex(v)
    pairs = set()
    for x, y in rel:
        if x not in vs or y not in vs:
            raise GraphError(f"relation mentions unknown vertex in {(x, y)!r}")
        pairs.add((x, y) if order_key(x) <= order_key(y) else (y, x))
    for x, y in sort_ids(pairs):
        b.add_pair((x, y), (y, x), x, y)
    return b.build()


def terminal() -> InvGraph:
    """The terminal involutive graph: one vertex, one self-dual edge."""
    return InvGraph([0], [0], {0: 0}, {0: 0}, {0: 0})


def loop_pair() -> InvGraph:
    """One vertex with a dual pair of loops ``0`` and ``1``."""
    return InvGraph([0], [0, 1], {0: 0, 1: 0}, {0: 0, 1: 0}, {0: 1, 1: 0})


def y_graph() -> InvGraph:
    """The four-vertex tree with edges 0-1, 1-2, 1-3."""
    return from_symmetric_relation(range(4), [(0, 1), (1, 2), (1, 3)])


def is_connected_acyclic(g: InvGraph) -> bool:
    if not g.is_relational():
        raise GraphError("graph is not relational (self-dual edge, loop pair or parallel pairs)")
    return g.is_connected() and len(g.edges) // 2 == len(g.vertices) - 1


def product(g1: InvGraph, g2: InvGraph) -> InvGraph:
    verts = [(a, b) for a in g1.vertices for b in g2.vertices]
    edges = [(e, f) for e in g1.edges for f in g2.edges]
    return InvGraph(
        verts,
        edges,
        {(e, f): (g1.src[e], g2.src[f]) for e, f in edges},
        {(e, f): (g1.tgt[e], g2.tgt[f]) for e, f in edges},
        {(e, f): (g1.dual[e], g2.dual[f]) for e, f in edges},
    )


def projections(g1: InvGraph, g2: InvGraph, p: InvGraph | None = None):
    p = p if p is not None else product(g1, g2)
    pr1 = InvGraphMorphism(p, g1, {v: v[0] for v in p.vertices}, {e: e[0] for e in p.edges})
    pr2 = InvGraphMorphism(p, g2, {v: v[1] for v in p.vertices}, {e: e[1] for e in p.edges})
    return pr1, pr2


def pairing(f1: InvGraphMorphism, f2: InvGraphMorphism, p: InvGraph | None = None) -> InvGraphMorphism:
    """The mediating morphism into the product determined by two legs."""
    if f1.domain != f2.domain:
        raise GraphError("legs must share a domain")
    p = p if p is not None else product(f1.codomain, f2.codomain)
    d = f1.domain
    return InvGraphMorphism(
        d, p,
        {v: (f1.vmap[v], f2.vmap[v]) for v in d.vertices},
        {e: (f1.emap[e], f2.emap[e]) for e in d.edges},
    )


def splice(p: InvGraph, e, q: InvGraph, c, d) -> InvGraph:
    """Replace the dual pair ``e: a -> b`` of ``p`` by a copy of ``q``.

    ``a`` is glued to ``c`` and ``b`` to ``d``; the rest of ``p`` and ``q``
    is kept distinct.  Vertices and edges are tagged ``('p', x)`` or
    ``('q', x)``; glued vertices keep their ``p`` name.  ``c == d``
    contracts the edge.
    """
    if e not in p.dual or p.dual[e] == e:
        raise GraphError(f"{e!r} is not an edge of a dual pair in p")
    if c not in q.vertices or d not in q.vertices:
        raise GraphError("gluing vertices must belong to q")
    if not any(c in comp and d in comp for comp in q.components()):
        raise GraphError("q has no path between the gluing vertices; splice would disconnect")
    a, b = p.src[e], p.tgt[e]
    gb = GraphBuilder()
    for v in p.vertices:
        gb.add_vertex(("p", v))
    for w in q.vertices:
        gb.add_vertex(("q", w))
    gb.identify(("p", a), ("q", c))
    gb.identify(("p", b), ("q", d))
    skip = {e, p.dual[e]}
    for x, y in p.dual_pairs():
        if x in skip:
            continue
        gb.add_pair(("p", x), ("p", y), ("p", p.src[x]), ("p", p.tgt[x]))
    for x, y in q.dual_pairs():
        gb.add_pair(("q", x), ("q", y), ("q", q.src[x]), ("q", q.tgt[x]))
    return gb.build()


# --- morphism search --------------------------------------------------------


def enumerate_morphisms(
    g1: InvGraph,
    g2: InvGraph,
    over: tuple[InvGraphMorphism, InvGraphMorphism] | None = None,
    fixed: Mapping | None = None,
) -> Iterator[InvGraphMorphism]:
    """All morphisms ``g1 -> g2``, by backtracking.

    ``over=(h1, h2)`` restricts to morphisms ``k`` with ``h2 . k == h1``;
    ``fixed`` pins the images of some vertices.
    """
    fixed = dict(fixed or {})
    h1 = h2 = None
    if over is not None:
        h1, h2 = over

    def v_ok(v, w):
        if v in fixed and fixed[v] != w:
            return False
        return h1 is None or h2.vmap[w] == h1.vmap[v]

    def e_ok(e, f):
        return h1 is None or h2.emap[f] == h1.emap[e]

    order: list = []
    parent_edge: dict = {}
    seen = set()
    for root in sort_ids(g1.vertices):
        if root in seen:
            continue
        seen.add(root)
        order.append(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in g1.out_edges(u):
                w = g1.tgt[e]
                if w not in seen:
                    seen.add(w)
                    parent_edge[w] = e
                    order.append(w)
                    queue.append(w)

    vmap: dict = {}

    def assign_vertices(i):
        if i == len(order):
            yield dict(vmap)
            return
        v = order[i]
        if v in parent_edge:
            e = parent_edge[v]
            cands = [g2.tgt[f] for f in g2.out_edges(vmap[g1.src[e]]) if e_ok(e, f)]
            cands = list(dict.fromkeys(cands))
        else:
            cands = list(g2.vertices)
        for w in cands:
            if v_ok(v, w):
                vmap[v] = w
                yield from assign_vertices(i + 1)
                del vmap[v]

    pairs = g1.dual_pairs()
    for vm in assign_vertices(0):
        choices = []
        for e, d in pairs:
            opts = []
            for f in g2.edges_between(vm[g1.src[e]], vm[g1.tgt[e]]):
                if e == d and g2.dual[f] != f:
                    continue
                if e_ok(e, f) and e_ok(d, g2.dual[f]):
                    opts.append(f)
            if not opts:
                break
            choices.append(opts)
        else:
            for pick in itertools.product(*choices):
                em = {}
                for (e, d), f in zip(pairs, pick):
                    em[e] = f
                    em[d] = g2.dual[f]
                yield InvGraphMorphism(g1, g2, vm, em)


def find_isomorphism(g1: InvGraph, g2: InvGraph) -> InvGraphMorphism | None:
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    for k in enumerate_morphisms(g1, g2):
        if k.is_bijective():
            return k
    return None


def are_isomorphic(g1: InvGraph, g2: InvGraph) -> bool:
    return find_isomorphism(g1, g2) is not None


# --- I/O --------------------------------------------------------------------


def graph_to_json(g: InvGraph) -> dict:
    return {
        "vertices": [thaw(v) for v in g.vertices],
        "edges": [
            {"id": thaw(e), "src": thaw(g.src[e]), "tgt": thaw(g.tgt[e]), "dual": thaw(g.dual[e])}
            for e in g.edges
        ],
    }


def graph_from_json(data: Mapping) -> InvGraph:
    try:
        verts = [freeze(v) for v in data["vertices"]]
        edges = data["edges"]
        ids = [freeze(x["id"]) for x in edges]
        return InvGraph(
            verts,
            ids,
            {i: freeze(x["src"]) for i, x in zip(ids, edges)},
            {i: freeze(x["tgt"]) for i, x in zip(ids, edges)},
            {i: freeze(x["dual"]) for i, x in zip(ids, edges)},
        )
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def graph_to_dot(g: InvGraph, name: str = "G") -> str:
    def q(x):
        return '"' + str(x).replace('"', '\\"') + '"'

    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {q(v)};")
    for e, d in g.dual_pairs():
        label = f"{e}" if e == d else f"{e}/{d}"
        lines.append(f"  {q(g.src[e])} -- {q(g.tgt[e])} [label={q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
