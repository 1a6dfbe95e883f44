"""Bounded enumeration of factorisation categories and their connectivity.

Objects are factorisations ``(g, A, h)`` of a fixed ``f`` whose arity ``A``
is a sequence (``seq``) or a finite tree (``acyc``) with at most ``bound``
dual pairs.  Connectivity is computed either by brute force over all
pairs of objects, or, for trees in G-mode, through elementary moves:
every morphism of trees is a sequence of folds followed by an inclusion,
and every inclusion is a sequence of leaf additions.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._util import UnionFind
from .generic import (
    FactMorphism,
    FactObject,
    FactorisationError,
    TMap,
    g_generic_factor,
    t_generic_factor,
    zigzag_connect,
)
from .graphs import (
    InvGraph,
    InvGraphMorphism,
    enumerate_morphisms,
    find_isomorphism,
    from_symmetric_relation,
    make_sequence,
    seq_edge,
)
from .paths import Path, PathError, reduce


# --- inner redundancy --------------------------------------------------------


def has_inner_redundancy(i: int, j: int, h: Path, edge=None) -> bool:
    """Does ``h`` contain an adjacent pair ``(e, dual e)`` strictly between positions ``i`` and ``j``?

    With ``edge`` given only the pair ``(edge, dual edge)`` counts.
    """
    m = len(h)
    if not (0 <= i <= m and 0 <= j <= m):
        raise PathError(f"indices {i}, {j} out of range for a path of length {m}")
    lo, hi = min(i, j), max(i, j)
    d = h.graph.dual
    s = h.steps
    for k in range(lo, hi - 1):
        if s[k + 1] == d[s[k]] and (edge is None or s[k] == edge):
            return True
    return False


def has_core_redundancy(i: int, j: int, h: Path) -> bool:
    """An adjacent dual pair after the segment last leaves its start vertex and before it first reaches its end vertex.

    Unlike :func:`has_inner_redundancy` this is preserved and reflected
    by morphisms of sequence factorisations in the counterexample.
    """
    m = len(h)
    if not (0 <= i <= m and 0 <= j <= m):
        raise PathError(f"indices {i}, {j} out of range for a path of length {m}")
    vs = h.vertices()
    d = h.graph.dual
    if i <= j:
        seg_v, seg_s = vs[i : j + 1], h.steps[i:j]
    else:
        seg_v, seg_s = vs[j : i + 1][::-1], tuple(d[e] for e in reversed(h.steps[j:i]))
    a = max(t for t, v in enumerate(seg_v) if v == seg_v[0])
    b = min(t for t, v in enumerate(seg_v) if v == seg_v[-1])
    return any(seg_s[k + 1] == d[seg_s[k]] for k in range(a, b - 1))


def seq_object_path(o: FactObject) -> Path:
    """The walk ``h`` of an object whose arity is ``k_![m]``."""
    m = len(o.arity.vertices) - 1
    return Path(o.h.codomain, o.h.vmap[0], tuple(o.h.emap[seq_edge(t)] for t in range(m)))


# --- tree helpers ------------------------------------------------------------


def _tree_path(A: InvGraph, a, b) -> tuple:
    """The unique reduced path between two vertices of a tree."""
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for e in A.out_edges(u):
            w = A.tgt[e]
            if w not in prev:
                prev[w] = e
                queue.append(w)
    if b not in prev:
        raise FactorisationError("vertices are in different components")
    steps = []
    v = b
    while prev[v] is not None:
        e = prev[v]
        steps.append(e)
        v = A.src[e]
    return tuple(reversed(steps))


def _lifts(A: InvGraph, h: InvGraphMorphism, start, word: tuple, end=None) -> list:
    """Paths of ``A`` from ``start`` whose image under ``h`` is ``word``; ``end=None`` leaves the end free."""
    out = []

    def go(v, k, acc):
        if k == len(word):
            if end is None or v == end:
                out.append(tuple(acc))
            return
        for e in A.out_edges(v):
            if h.emap[e] == word[k]:
                acc.append(e)
                go(A.tgt[e], k + 1, acc)
                acc.pop()

    go(start, 0, [])
    return out


def objects_over(f: TMap, h: InvGraphMorphism, mode: str) -> list[FactObject]:
    """All first legs ``g`` completing ``h: A -> X`` to a factorisation of ``f``.

    G-mode needs ``A`` to be a forest (reduced paths are then unique).
    """
    B, A = f.domain, h.domain
    if mode == "T":
        return _t_objects_over(f, h)
    fibres = [[a for a in A.vertices if h.vmap[a] == f.vmap[b]] for b in B.vertices]
    pairs = B.dual_pairs()
    out = []
    for pick in itertools.product(*fibres):
        g0 = dict(zip(B.vertices, pick))
        paths = {}
        for e, _ in pairs:
            try:
                p = _tree_path(A, g0[B.src[e]], g0[B.tgt[e]])
            except FactorisationError:
                break
            img = reduce(Path(h.codomain, h.vmap[g0[B.src[e]]], tuple(h.emap[x] for x in p)))
            if img.steps != tuple(f.pmap[e]):
                break
            paths[e] = p
        else:
            out.append(FactObject(TMap.from_paths(B, A, g0, paths), h, "G"))
    return out


def _traversal(B: InvGraph) -> list[tuple]:
    """Roots and oriented edges of ``B`` such that each edge starts at an already reached vertex."""
    reps = set(B.representatives())
    seen, done, plan = set(), set(), []
    for r in B.vertices:
        if r in seen:
            continue
        seen.add(r)
        plan.append(("root", r))
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for x in B.out_edges(u):
                rep = x if x in reps else B.dual[x]
                if rep in done:
                    continue
                done.add(rep)
                plan.append(("edge", x, rep))
                if B.tgt[x] not in seen:
                    seen.add(B.tgt[x])
                    queue.append(B.tgt[x])
    return plan


def _t_objects_over(f: TMap, h: InvGraphMorphism) -> list[FactObject]:
    B, A = f.domain, h.domain
    plan = _traversal(B)
    out = []
    g0: dict = {}
    paths: dict = {}

    def go(k):
        if k == len(plan):
            out.append(FactObject(TMap.from_paths(B, A, dict(g0), dict(paths)), h, "T"))
            return
        item = plan[k]
        if item[0] == "root":
            b = item[1]
            for a in A.vertices:
                if h.vmap[a] == f.vmap[b]:
                    g0[b] = a
                    go(k + 1)
            g0.pop(b, None)
            return
        _, x, rep = item
        w = B.tgt[x]
        fixed = g0.get(w)
        for lift in _lifts(A, h, g0[B.src[x]], tuple(f.path(x).steps), fixed):
            if B.dual[x] == x and lift != tuple(A.dual[e] for e in reversed(lift)):
                continue
            paths[rep] = lift if x == rep else tuple(A.dual[e] for e in reversed(lift))
            end = Path(A, g0[B.src[x]], lift).end
            if fixed is None:
                g0[w] = end
            go(k + 1)
            if fixed is None:
                del g0[w]
        paths.pop(rep, None)

    go(0)
    return out


# --- sequence arities --------------------------------------------------------


def walks(X: InvGraph, length: int):
    """All walks of exactly ``length`` steps, as ``(start, steps)``."""

    for v in X.vertices:
        stack = [(v, ())]
        while stack:
            u, acc = stack.pop()
            if len(acc) == length:
                yield v, acc
                continue
            for e in reversed(X.out_edges(u)):
                stack.append((X.tgt[e], acc + (e,)))


def walk_morphism(X: InvGraph, start, steps: tuple) -> InvGraphMorphism:
    m = len(steps)
    A = make_sequence(m)
    path = Path(X, start, steps)
    vs = path.vertices()
    em = {}
    for t, x in enumerate(steps):
        em[seq_edge(t)] = x
        em[seq_edge(t, False)] = X.dual[x]
    return InvGraphMorphism(A, X, dict(enumerate(vs)), em)


def seq_objects(f: TMap, mode: str, bound: int) -> list[FactObject]:
    out = []
    for m in range(bound + 1):
        for start, steps in walks(f.codomain, m):
            out.extend(objects_over(f, walk_morphism(f.codomain, start, steps), mode))
    return out


# --- tree arities, up to isomorphism -----------------------------------------


@dataclass(frozen=True)
class DTree:
    """A finite tree on vertices ``0..n-1`` with a map to ``X``.

    ``he[(a, b)]`` is the image of the edge ``a -> b``; ``marks[b]`` is the
    vertex chosen for the ``b``-th vertex of the factorised domain.
    """

    hv: tuple
    he: dict
    marks: tuple = ()

    @property
    def n(self) -> int:
        return len(self.hv)

    def nbrs(self, v) -> list:
        return [b for (a, b) in self.he if a == v]

    def key(self):
        label = {}
        for i, v in enumerate(self.marks):
            label.setdefault(v, []).append(i)
        adj = {v: [] for v in range(self.n)}
        for a, b in self.he:
            adj[a].append(b)

        def enc(v, parent):
            kids = sorted((repr(self.he[(v, c)]), enc(c, v)) for c in adj[v] if c != parent)
            return (repr(self.hv[v]), tuple(label.get(v, ())), tuple(kids))

        return min(enc(r, None) for r in range(self.n))

    def add_leaf(self, v, x, X: InvGraph) -> "DTree":
        n = self.n
        he = dict(self.he)
        he[(v, n)] = x
        he[(n, v)] = X.dual[x]
        return DTree(self.hv + (X.tgt[x],), he, self.marks)

    def fold(self, v, a, b) -> "DTree":
        """Identify neighbours ``a`` and ``b`` of ``v`` (their edges from ``v`` agree)."""
        keep = [u for u in range(self.n) if u != b]
        ren = {u: i for i, u in enumerate(keep)}
        ren[b] = ren[a]
        he = {}
        for (p, q), x in self.he.items():
            rp, rq = ren[p], ren[q]
            if rp != rq:
                he[(rp, rq)] = x
        return DTree(tuple(self.hv[u] for u in keep), he, tuple(ren[m] for m in self.marks))

    def folds(self):
        for v in range(self.n):
            ns = self.nbrs(v)
            for a, b in itertools.combinations(ns, 2):
                if self.he[(v, a)] == self.he[(v, b)]:
                    yield self.fold(v, a, b)

    def graph(self) -> InvGraph:
        return from_symmetric_relation(range(self.n), list(self.he))

    def morphism(self, X: InvGraph) -> InvGraphMorphism:
        A = self.graph()
        return InvGraphMorphism(A, X, dict(enumerate(self.hv)), dict(self.he))

    def to_object(self, f: TMap) -> FactObject:
        A = self.graph()
        B = f.domain
        g0 = dict(zip(B.vertices, self.marks))
        paths = {e: _tree_path(A, g0[B.src[e]], g0[B.tgt[e]]) for e, _ in B.dual_pairs()}
        return FactObject(TMap.from_paths(B, A, g0, paths), self.morphism(f.codomain), "G")


def decorated_trees(X: InvGraph, bound: int) -> list[DTree]:
    """Trees with at most ``bound`` edge pairs mapped to ``X``, one per isomorphism class."""
    seen = {}
    frontier = []
    for x in X.vertices:
        t = DTree((x,), {})
        seen[t.key()] = t
        frontier.append(t)
    for _ in range(bound):
        nxt = []
        for t in frontier:
            for v in range(t.n):
                for x in X.out_edges(t.hv[v]):
                    u = t.add_leaf(v, x, X)
                    k = u.key()
                    if k not in seen:
                        seen[k] = u
                        nxt.append(u)
        frontier = nxt
    return list(seen.values())


def _marked_trees(f: TMap, bound: int) -> dict:
    """G-mode tree objects for ``f``, keyed by isomorphism class."""
    X, B = f.codomain, f.domain
    out = {}
    for t in decorated_trees(X, bound):
        h = t.morphism(X)
        for o in objects_over(f, h, "G"):
            m = DTree(t.hv, t.he, tuple(o.g.vmap[b] for b in B.vertices))
            out.setdefault(m.key(), m)
    return out


def _tree_objects_all(f: TMap, mode: str, bound: int) -> list[FactObject]:
    out = []
    for t in decorated_trees(f.codomain, bound):
        out.extend(objects_over(f, t.morphism(f.codomain), mode))
    return out


# --- connectivity ------------------------------------------------------------


def _morphisms_between(o1: FactObject, o2: FactObject) -> list[InvGraphMorphism]:
    fixed = {}
    for b in o1.g.domain.vertices:
        a1, a2 = o1.g.vmap[b], o2.g.vmap[b]
        if fixed.setdefault(a1, a2) != a2:
            return []
    out = []
    for k in enumerate_morphisms(o1.arity, o2.arity, over=(o1.h, o2.h), fixed=fixed):
        if FactMorphism(o1, o2, k).is_valid():
            out.append(k)
    return out


def _row(args):
    objs, i = args
    return [(i, j, len(_morphisms_between(objs[i], o2))) for j, o2 in enumerate(objs) if j != i]


def morphism_table(objs: list[FactObject], jobs: int = 1) -> list[tuple]:
    """``(i, j, count)`` for every ordered pair with at least one morphism."""
    rows = [(objs, i) for i in range(len(objs))]
    if jobs > 1 and len(objs) > 50:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_row, rows, chunksize=max(1, len(rows) // (4 * jobs))))
    else:
        results = [_row(r) for r in rows]
    return [t for r in results for t in r if t[2]]


def count_morphisms(o1: FactObject, o2: FactObject) -> int:
    return len(_morphisms_between(o1, o2))


def _components(n: int, edges) -> list[list[int]]:
    uf = UnionFind()
    for i in range(n):
        uf.add(i)
    for i, j, *_ in edges:
        uf.union(i, j)
    return sorted((sorted(c) for c in uf.classes().values()), key=lambda c: c[0])


def canonical_object(f: TMap, mode: str) -> FactObject:
    return t_generic_factor(f) if mode == "T" else g_generic_factor(f)


def _canonical_size(f: TMap, mode: str) -> int:
    return len(canonical_object(f, mode).arity.dual_pairs())


def check_arity_connectivity(
    f: TMap,
    arity_class: str,
    bound: int,
    mode: str = "G",
    method: str = "auto",
    jobs: int = 1,
    zigzag: bool = True,
) -> dict:
    """Connected components of the factorisation category of ``f``, truncated at ``bound``.

    ``method`` is ``brute`` (all pairs of objects) or ``moves`` (folds and
    leaf additions; trees in G-mode only).  ``auto`` picks ``moves`` for
    G-mode trees.
    """
    t0 = time.perf_counter()
    arity_class = arity_class.lower()
    if arity_class not in ("seq", "acyc"):
        raise ValueError("arity class must be 'seq' or 'acyc'")
    if mode not in ("T", "G"):
        raise ValueError("mode must be 'T' or 'G'")
    if mode == "G" and not f.is_reduced():
        raise FactorisationError("G-mode needs f with reduced image paths")
    if arity_class == "seq" and not _is_sequence_domain(f.domain):
        raise FactorisationError("Seq arities need f to start at a sequence k_![n]")
    need = _canonical_size(f, mode)
    if bound < need:
        raise ValueError(f"bound {bound} is below the canonical arity size {need}")
    if method == "auto":
        method = "moves" if (arity_class == "acyc" and mode == "G") else "brute"
    report = {
        "mode": mode,
        "arity_class": arity_class,
        "bound": bound,
        "method": method,
        "canonical_size": need,
    }

    if method == "moves":
        if arity_class != "acyc" or mode != "G":
            raise ValueError("the move method covers G-mode tree arities only")
        objs = _marked_trees(f, bound)
        keys = list(objs)
        index = {k: i for i, k in enumerate(keys)}
        edges = []
        for k, t in objs.items():
            i = index[k]
            for u in t.folds():
                edges.append((i, index[u.key()]))
            if t.n - 1 < bound:
                for v in range(t.n):
                    for x in f.codomain.out_edges(t.hv[v]):
                        edges.append((i, index[t.add_leaf(v, x, f.codomain).key()]))
        comps = _components(len(keys), edges)
        canon = g_generic_factor(f)
        canon_idx = index.get(_object_key(canon, f))
        report.update(n_objects=len(keys), n_moves=len(edges))
        if zigzag:
            bad = 0
            for t in objs.values():
                o = t.to_object(f)
                og = _generic_part(o)
                zz = zigzag_connect(f, og, canon)
                if len(zz) > 4 or not zz.validate():
                    bad += 1
            report["zigzag_checked"] = len(objs)
            report["zigzag_failures"] = bad
        objects = [objs[k].to_object(f) for k in keys]
    else:
        if arity_class == "seq":
            objects = seq_objects(f, mode, bound)
        else:
            objects = _tree_objects_all(f, mode, bound)
        edges = morphism_table(objects, jobs)
        comps = _components(len(objects), edges)
        canon_idx = _find_iso_object(objects, canonical_object(f, mode))
        report.update(n_objects=len(objects), n_morphisms=sum(c for *_, c in edges))
    report["components"] = len(comps)
    report["component_sizes"] = [len(c) for c in comps]
    report["canonical_found"] = canon_idx is not None
    report["seconds"] = round(time.perf_counter() - t0, 3)
    report["_objects"] = objects
    report["_components"] = comps
    report["_edges"] = edges
    return report


def _is_sequence_domain(B: InvGraph) -> bool:
    n = len(B.vertices) - 1
    return n >= 0 and find_isomorphism(B, make_sequence(n)) is not None


def _generic_part(o: FactObject) -> FactObject:
    """Replace ``o`` by its G-generic part; the comparison is a morphism into ``o``."""
    inner = g_generic_factor(o.g)
    return FactObject(inner.g, inner.h.then(o.h), "G")


def _object_key(o: FactObject, f: TMap):
    A = o.arity
    ids = {v: i for i, v in enumerate(A.vertices)}
    he = {(ids[A.src[e]], ids[A.tgt[e]]): o.h.emap[e] for e in A.edges}
    marks = tuple(ids[o.g.vmap[b]] for b in f.domain.vertices)
    return DTree(tuple(o.h.vmap[v] for v in A.vertices), he, marks).key()


def _find_iso_object(objects: list[FactObject], target: FactObject):
    for i, o in enumerate(objects):
        if len(o.arity.edges) != len(target.arity.edges) or len(o.arity.vertices) != len(target.arity.vertices):
            continue
        if count_morphisms(target, o) and count_morphisms(o, target):
            for k in _morphisms_between(target, o):
                if k.is_bijective():
                    return i
    return None


# --- the Seq counterexample --------------------------------------------------


def counterexample_graph() -> InvGraph:
    """``x1`` joined to ``x0``, ``x2`` and a leaf ``y``."""
    return from_symmetric_relation(["x0", "x1", "x2", "y"], [("x0", "x1"), ("x1", "x2"), ("x1", "y")])


F0, F1, S = ("x0", "x1"), ("x1", "x2"), ("x1", "y")


def counterexample_map() -> TMap:
    X = counterexample_graph()
    return TMap.from_paths(make_sequence(1), X, {0: "x0", 1: "x2"}, {0: (F0, F1)})


def _seq_fact_object(f: TMap, steps: tuple, i: int, j: int) -> FactObject:
    X = f.codomain
    h = walk_morphism(X, X.src[steps[0]], steps)
    A = h.domain
    g = TMap.from_paths(f.domain, A, {0: i, 1: j}, {0: _tree_path(A, i, j)})
    return FactObject(g, h, "G")


def seq_counterexample(bound: int = 6, jobs: int = 1) -> dict:
    """Two G-factorisations of ``(f0, f1)`` through sequences that no zig-zag of sequences joins."""
    f = counterexample_map()
    X = f.codomain
    o1 = _seq_fact_object(f, (F0, F1), 0, 2)
    o2 = _seq_fact_object(f, (F0, S, X.dual[S], F1), 0, 4)
    both_factor = o1.factors(f) and o2.factors(f)
    flags = [has_inner_redundancy(0, 2, seq_object_path(o1)), has_inner_redundancy(0, 4, seq_object_path(o2))]

    rep = check_arity_connectivity(f, "seq", bound, mode="G", method="brute", jobs=jobs)
    objects, comps, edges = rep["_objects"], rep["_components"], rep["_edges"]
    comp_of = {i: c for c, members in enumerate(comps) for i in members}
    i1 = _find_iso_object(objects, o1)
    i2 = _find_iso_object(objects, o2)

    def literal(o):
        return has_inner_redundancy(o.g.vmap[0], o.g.vmap[1], seq_object_path(o))

    def core(o):
        return has_core_redundancy(o.g.vmap[0], o.g.vmap[1], seq_object_path(o))

    lit = [literal(o) for o in objects]
    ref = [core(o) for o in objects]
    lit_bad = [(i, j) for i, j, _ in edges if lit[i] != lit[j]]
    ref_bad = [(i, j) for i, j, _ in edges if ref[i] != ref[j]]
    separated = i1 is not None and i2 is not None and comp_of[i1] != comp_of[i2]
    witness = None
    if lit_bad:
        i, j = min(lit_bad, key=lambda p: (len(objects[p[0]].arity.edges) + len(objects[p[1]].arity.edges), p))
        witness = (objects[i], objects[j], _morphisms_between(objects[i], objects[j])[0])
    return {
        "graph": X,
        "f": f,
        "objects": (o1, o2),
        "both_factor_f": both_factor,
        "inner_redundancy": flags,
        "core_redundancy": [core(o1), core(o2)],
        "bound": bound,
        "n_objects": len(objects),
        "n_morphisms": rep["n_morphisms"],
        "components": rep["components"],
        "separated": separated,
        "core_violations": len(ref_bad),
        "core_values": [sorted({ref[i] for i in c}) for c in comps],
        "inner_violations": len(lit_bad),
        "inner_witness": witness,
        "seconds": rep["seconds"],
    }
