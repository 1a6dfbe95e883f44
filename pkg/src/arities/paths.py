"""Paths in involutive graphs, redundancy removal and the free groupoid.

The edges of ``TX`` are paths of ``X``; concatenation is the monad
multiplication.  Removing adjacent pairs ``(f, dual f)`` is the idempotent
``tau``; reduced paths are its fixed points and are the edges of ``GX``.
``GX`` itself is never built: hom-sets are enumerated up to a length bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .graphs import (
    GraphError,
    InvGraph,
    InvGraphMorphism,
    loop_pair,
    pairing,
    product,
    projections,
    terminal,
)


class PathError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Path:
    graph: InvGraph = field(repr=False)
    start: object
    steps: tuple = ()

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self.start == other.start and self.steps == other.steps

    def __hash__(self):
        return hash((self.start, self.steps))

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        g = self.graph
        if self.start not in g._out:
            raise PathError(f"start vertex {self.start!r} not in graph")
        v = self.start
        for e in self.steps:
            if e not in g.src:
                raise PathError(f"unknown edge {e!r}")
            if g.src[e] != v:
                raise PathError(f"edge {e!r} does not start at {v!r}")
            v = g.tgt[e]

    @classmethod
    def empty(cls, graph: InvGraph, v) -> "Path":
        return cls(graph, v, ())

    @classmethod
    def of(cls, graph: InvGraph, steps: Sequence) -> "Path":
        steps = tuple(steps)
        if not steps:
            raise PathError("an empty path needs an explicit start; use Path.empty")
        return cls(graph, graph.src[steps[0]], steps)

    @property
    def end(self):
        return self.graph.tgt[self.steps[-1]] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def vertices(self) -> list:
        out = [self.start]
        for e in self.steps:
            out.append(self.graph.tgt[e])
        return out

    def is_reduced(self) -> bool:
        return not find_redundancies(self)

    def to_json(self) -> dict:
        from ._util import thaw

        return {"start": thaw(self.start), "steps": [thaw(e) for e in self.steps]}


class ReducedPath(Path):
    """A path with no adjacent ``(f, dual f)`` pair."""

    def __post_init__(self):
        super().__post_init__()
        if find_redundancies(self):
            raise PathError("path contains a redundancy")


def concat(p: Path, q: Path) -> Path:
    if p.end != q.start:
        raise PathError(f"cannot concatenate: path ends at {p.end!r}, next starts at {q.start!r}")
    return Path(p.graph, p.start, p.steps + q.steps)


def dual_path(p: Path) -> Path:
    d = p.graph.dual
    return Path(p.graph, p.end, tuple(d[e] for e in reversed(p.steps)))


def find_redundancies(p: Path) -> list[int]:
    d = p.graph.dual
    s = p.steps
    return [i for i in range(len(s) - 1) if s[i + 1] == d[s[i]]]


def reduction_matching(p: Path) -> tuple[dict, list[int]]:
    """Stack reduction of ``p``.

    Returns ``(match, kept)``: ``match`` pairs the index of each cancelled
    step with its partner (both directions), ``kept`` lists the indices of
    surviving steps.  Cancelling against the top of the stack is the same
    as always deleting the leftmost redundancy.
    """
    d = p.graph.dual
    stack: list[int] = []
    match: dict = {}
    for i, e in enumerate(p.steps):
        if stack and p.steps[stack[-1]] == d[e]:
            j = stack.pop()
            match[j], match[i] = i, j
        else:
            stack.append(i)
    return match, stack


def reduce(p: Path) -> ReducedPath:
    _, kept = reduction_matching(p)
    return ReducedPath(p.graph, p.start, tuple(p.steps[i] for i in kept))


def reduce_count(p: Path) -> tuple[ReducedPath, int]:
    r = reduce(p)
    return r, (len(p) - len(r)) // 2


def reduce_in_order(p: Path, rng: random.Random) -> Path:
    """Delete a randomly chosen redundancy until none remain (confluence oracle)."""
    steps = list(p.steps)
    d = p.graph.dual
    while True:
        spots = [i for i in range(len(steps) - 1) if steps[i + 1] == d[steps[i]]]
        if not spots:
            return Path(p.graph, p.start, tuple(steps))
        i = rng.choice(spots)
        del steps[i : i + 2]


def apply_morphism(f: InvGraphMorphism, p: Path) -> Path:
    """``T(f)`` on a single path."""
    return Path(f.codomain, f.vmap[p.start], tuple(f.emap[e] for e in p.steps))


def unit_path(graph: InvGraph, e) -> Path:
    return Path(graph, graph.src[e], (e,))


def flatten(paths: Sequence[Path]) -> Path:
    """``mu`` on a composable sequence of paths."""
    if not paths:
        raise PathError("need at least one path to know the base vertex")
    out = paths[0]
    for q in paths[1:]:
        out = concat(out, q)
    return out


def reduce_outer(paths: Sequence[Path]) -> list[Path]:
    """``tau`` one level up: cancel adjacent ``(p, dual p)`` in a sequence of paths.

    A sequence of composable paths is a path of ``TX`` whose edges are
    paths; the dual of an edge ``p`` there is :func:`dual_path` of ``p``.
    """
    out: list[Path] = []
    for q in paths:
        if out and out[-1] == dual_path(q):
            out.pop()
        else:
            out.append(q)
    return out


# --- general redundancies ---------------------------------------------------


@dataclass(frozen=True)
class RedundancyDecomposition:
    base: object
    factors: tuple

    @property
    def orders(self) -> list:
        """``k`` for each basic ``k``-redundancy factor, ``None`` for a branching one."""
        return [basic_order(f) for f in self.factors]

    def concatenated(self, graph: InvGraph) -> Path:
        out = Path.empty(graph, self.base)
        for f in self.factors:
            out = concat(out, f)
        return out


def basic_order(p: Path):
    """``k`` when ``p == (e1..ek, de_k..de_1)`` fully nested, else ``None``."""
    n = len(p)
    if n == 0 or n % 2:
        return None
    match, kept = reduction_matching(p)
    if kept or any(match[i] != n - 1 - i for i in range(n)):
        return None
    return n // 2


def is_general_redundancy(p: Path) -> bool:
    return p.start == p.end and len(reduce(p)) == 0


def decompose_redundancies(p: Path) -> RedundancyDecomposition:
    """Split a general redundancy into its irreducible factors.

    A factor is a maximal sub-walk whose first step cancels against its
    last under stack reduction, so it cannot be cut into shorter closed
    redundancies at the base vertex.  When a factor
    is a straight spur it is a basic ``k``-redundancy with ``k`` = half its
    length; a factor that branches is still irreducible but not basic.
    """
    if not is_general_redundancy(p):
        raise PathError("path is not a general redundancy (it does not reduce to the empty path)")
    match, _ = reduction_matching(p)
    factors = []
    i = 0
    vs = p.vertices()
    while i < len(p):
        j = match[i]
        factors.append(Path(p.graph, vs[i], p.steps[i : j + 1]))
        i = j + 1
    return RedundancyDecomposition(p.start, tuple(factors))


# --- the free groupoid, by bounded enumeration -------------------------------


def reduced_paths_from(graph: InvGraph, a, max_len: int) -> Iterator[ReducedPath]:
    d = graph.dual

    def walk(v, steps):
        yield ReducedPath(graph, a, tuple(steps))
        if len(steps) == max_len:
            return
        for e in graph.out_edges(v):
            if steps and e == d[steps[-1]]:
                continue
            steps.append(e)
            yield from walk(graph.tgt[e], steps)
            steps.pop()

    yield from walk(a, [])


def g_hom(graph: InvGraph, a, b, max_len: int) -> set[ReducedPath]:
    """Reduced paths ``a -> b`` of length at most ``max_len``."""
    return {p for p in reduced_paths_from(graph, a, max_len) if p.end == b}


def g_compose(p: Path, q: Path) -> ReducedPath:
    return reduce(concat(p, q))


def g_inverse(p: Path) -> ReducedPath:
    return reduce(dual_path(p))


def g_identity(graph: InvGraph, a) -> ReducedPath:
    return ReducedPath(graph, a, ())


def g_map(f: InvGraphMorphism, p: Path) -> ReducedPath:
    """``G(f)`` on an edge of ``GX``."""
    return reduce(apply_morphism(f, p))


def not_cartesian_demo() -> dict:
    """Witness that ``G`` does not preserve the pullback ``E x E`` over ``1``.

    ``P = E x E`` has one vertex and two dual pairs; ``x`` and ``y`` are
    generators from different pairs.  The reduced words ``xy`` and ``yx``
    differ in ``GP`` but have the same image in ``GE x_{G1} GE``.
    """
    E, one = loop_pair(), terminal()
    P = product(E, E)
    pr1, pr2 = projections(E, E, P)
    u = 0
    x, y = (u, u), (u, E.dual[u])
    to_one = InvGraphMorphism(E, one, {0: 0}, {0: 0, 1: 0})
    # P is the kernel pair of E -> 1, so the product projections form the square.
    assert pr1.then(to_one) == pr2.then(to_one)
    mediator = pairing(pr1, pr2, P)
    assert mediator == InvGraphMorphism.identity(P)

    v = P.vertices[0]
    w1 = ReducedPath(P, v, (x, y))
    w2 = ReducedPath(P, v, (y, x))

    def exponent(path):
        # GE is Z: count generator u as +1 and its dual as -1
        return sum(1 if e == u else -1 for e in path.steps)

    images = {}
    for name, w in (("xy", w1), ("yx", w2)):
        a, b = g_map(pr1, w), g_map(pr2, w)
        images[name] = {
            "first": list(a.steps),
            "second": list(b.steps),
            "exponents": [exponent(a), exponent(b)],
            "parity": [len(g_map(to_one, a)), len(g_map(to_one, b))],
        }
    same_image = images["xy"]["first"] == images["yx"]["first"] and images["xy"]["second"] == images["yx"]["second"]
    # Every pair in Z x_{Z2} Z commutes, so the pullback group is abelian.
    pullback_abelian = all(
        (a1 + a2, b1 + b2) == (a2 + a1, b2 + b1)
        for a1, b1 in ((1, 1), (2, 0), (0, 2))
        for a2, b2 in ((1, 1), (2, 0), (0, 2))
    )
    return {
        "P": {"vertices": len(P.vertices), "edges": len(P.edges)},
        "x": list(x),
        "y": list(y),
        "words_distinct": w1 != w2,
        "images": images,
        "same_image": same_image,
        "comparison_injective": not (w1 != w2 and same_image),
        "pullback_abelian": pullback_abelian,
        "preserves_pullback": False if (w1 != w2 and same_image) else None,
    }


__all__ = [
    "GraphError",
    "Path",
    "PathError",
    "ReducedPath",
    "RedundancyDecomposition",
    "apply_morphism",
    "basic_order",
    "concat",
    "decompose_redundancies",
    "dual_path",
    "find_redundancies",
    "flatten",
    "g_compose",
    "g_hom",
    "g_identity",
    "g_inverse",
    "g_map",
    "is_general_redundancy",
    "not_cartesian_demo",
    "reduce",
    "reduce_count",
    "reduce_in_order",
    "reduced_paths_from",
    "reduction_matching",
    "unit_path",
]
