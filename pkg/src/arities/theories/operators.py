"""Simplicial operators ``[m] -> [n]``, the step-by-one subcategory and generic/free factorisations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialOperator:
    """A map ``{0..m} -> {0..n}``; ``monotone=True`` places it in the simplex category."""

    m: int
    n: int
    values: tuple
    monotone: bool = True

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.m < 0 or self.n < 0:
            raise OperatorError("dimensions must be non-negative")
        if len(self.values) != self.m + 1:
            raise OperatorError(f"need {self.m + 1} values, got {len(self.values)}")
        if any(not 0 <= v <= self.n for v in self.values):
            raise OperatorError(f"values must lie in 0..{self.n}")
        if self.monotone and any(a > b for a, b in zip(self.values, self.values[1:])):
            raise OperatorError("operator flagged monotone is not order-preserving")

    @classmethod
    def of(cls, values: Sequence[int], n: int | None = None, monotone: bool | None = None) -> "SimplicialOperator":
        values = tuple(values)
        if n is None:
            n = max(values)
        if monotone is None:
            monotone = is_monotone(values)
        return cls(len(values) - 1, n, values, monotone)

    @classmethod
    def identity(cls, n: int, monotone: bool = True) -> "SimplicialOperator":
        return cls(n, n, tuple(range(n + 1)), monotone)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def then(self, other: "SimplicialOperator") -> "SimplicialOperator":
        """Diagrammatic composite: ``self`` first."""
        if self.n != other.m:
            raise OperatorError(f"cannot compose [{self.m}]->[{self.n}] with [{other.m}]->[{other.n}]")
        return SimplicialOperator(self.m, other.n, tuple(other.values[v] for v in self.values), self.monotone and other.monotone)

    def as_sym(self) -> "SimplicialOperator":
        return SimplicialOperator(self.m, self.n, self.values, False)

    def is_monotone(self) -> bool:
        return is_monotone(self.values)

    def is_endpoint_preserving(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == self.n

    def is_bijective(self) -> bool:
        return self.m == self.n and sorted(self.values) == list(range(self.n + 1))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "values": list(self.values)}


def is_monotone(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def is_delta0(phi: SimplicialOperator) -> bool:
    """Consecutive values step by exactly one."""
    v = phi.values
    return all(b == a + 1 for a, b in zip(v, v[1:]))


def all_operators(m: int, n: int, monotone: bool = True) -> Iterator[SimplicialOperator]:
    if monotone:
        for vals in itertools.combinations_with_replacement(range(n + 1), m + 1):
            yield SimplicialOperator(m, n, vals, True)
    else:
        for vals in itertools.product(range(n + 1), repeat=m + 1):
            yield SimplicialOperator(m, n, vals, False)


# --- generic/free factorisations --------------------------------------------


def factor_delta(phi: SimplicialOperator) -> tuple[SimplicialOperator, SimplicialOperator]:
    """Endpoint-preserving part followed by a translation in the step-by-one subcategory."""
    if not is_monotone(phi.values):
        raise OperatorError("factor_delta needs an order-preserving operator")
    lo, hi = phi.values[0], phi.values[-1]
    k = hi - lo
    generic = SimplicialOperator(phi.m, k, tuple(v - lo for v in phi.values))
    free = SimplicialOperator(k, phi.n, tuple(range(lo, hi + 1)))
    return generic, free


def _unit_walk(a: int, b: int) -> list[int]:
    step = 1 if b >= a else -1
    return list(range(a, b + step, step))


def factor_delta_sym(f: SimplicialOperator) -> tuple[SimplicialOperator, SimplicialOperator]:
    """Monotone endpoint-preserving part followed by a unit-step walk.

    The middle object has ``k = sum |f(i+1) - f(i)|``: the walk is the
    reduced one, so no step is immediately undone inside a segment.
    """
    v = f.values
    sums = [0]
    walk = [v[0]]
    for a, b in zip(v, v[1:]):
        sums.append(sums[-1] + abs(b - a))
        walk.extend(_unit_walk(a, b)[1:])
    k = sums[-1]
    generic = SimplicialOperator(f.m, k, tuple(sums), False)
    free = SimplicialOperator(k, f.n, tuple(walk), False)
    return generic, free


def is_sym_generic(g: SimplicialOperator) -> bool:
    """Endpoint-preserving and either order-preserving or order-reversing."""
    v = g.values
    up = v[0] == 0 and v[-1] == g.n and is_monotone(v)
    down = v[0] == g.n and v[-1] == 0 and is_monotone(v[::-1])
    return up or down


def is_unit_step(h: SimplicialOperator) -> bool:
    v = h.values
    return all(abs(b - a) == 1 for a, b in zip(v, v[1:]))


def middle_isomorphisms(
    first: tuple[SimplicialOperator, SimplicialOperator],
    second: tuple[SimplicialOperator, SimplicialOperator],
    monotone: bool = True,
) -> list[SimplicialOperator]:
    """Bijections ``s`` of the middle object with ``g1 s == g2`` and ``s h2 == h1``."""
    g1, h1 = first
    g2, h2 = second
    if g1.n != g2.n:
        return []
    k = g1.n
    out = []
    for perm in itertools.permutations(range(k + 1)):
        if monotone and list(perm) != list(range(k + 1)):
            continue
        if all(perm[g1.values[i]] == g2.values[i] for i in range(g1.m + 1)) and all(
            h2.values[perm[j]] == h1.values[j] for j in range(k + 1)
        ):
            out.append(SimplicialOperator(k, k, perm, monotone))
    return out


def sym_factorisations(f: SimplicialOperator, k: int) -> Iterator[tuple[SimplicialOperator, SimplicialOperator]]:
    """All generic/free pairs through ``[k]``: endpoint-preserving (anti)monotone then unit-step."""
    for gv in itertools.product(range(k + 1), repeat=f.m + 1):
        g = SimplicialOperator(f.m, k, gv, False)
        if not is_sym_generic(g):
            continue
        for hv in _unit_walks(k, f.n):
            h = SimplicialOperator(k, f.n, hv, False)
            if g.then(h).values == f.values:
                yield g, h


def _unit_walks(k: int, n: int) -> Iterator[tuple]:
    def go(acc):
        if len(acc) == k + 1:
            yield tuple(acc)
            return
        for w in (acc[-1] - 1, acc[-1] + 1):
            if 0 <= w <= n:
                acc.append(w)
                yield from go(acc)
                acc.pop()

    for s in range(n + 1):
        yield from go([s])


# --- generators --------------------------------------------------------------


def face(q: int, j: int) -> SimplicialOperator:
    """``[q-1] -> [q]`` missing ``j``."""
    return SimplicialOperator(q - 1, q, tuple(i if i < j else i + 1 for i in range(q)))


def degeneracy(q: int, j: int) -> SimplicialOperator:
    """``[q+1] -> [q]`` hitting ``j`` twice."""
    return SimplicialOperator(q + 1, q, tuple(i if i <= j else i - 1 for i in range(q + 2)))


def transposition(q: int, j: int) -> SimplicialOperator:
    """``[q] -> [q]`` swapping ``j`` and ``j+1``."""
    v = list(range(q + 1))
    v[j], v[j + 1] = v[j + 1], v[j]
    return SimplicialOperator(q, q, tuple(v), False)


def decompose_monotone(phi: SimplicialOperator) -> list[tuple]:
    """Degeneracies then faces whose diagrammatic composite is ``phi``."""
    if not is_monotone(phi.values):
        raise OperatorError("not order-preserving")
    out = []
    v = list(phi.values)
    # surjection onto the image, one collapse at a time
    while True:
        t = next((t for t in range(len(v) - 1) if v[t] == v[t + 1]), None)
        if t is None:
            break
        out.append(("s", len(v) - 2, t))
        del v[t + 1]
    faces = []
    n = phi.n
    while len(v) < n + 1:
        j = max(x for x in range(n + 1) if x not in v)
        faces.append(("d", n, j))
        v = [x if x < j else x - 1 for x in v]
        n -= 1
    return out + faces[::-1]


def adjacent_transpositions(perm: Sequence[int]) -> list[int]:
    """Positions ``j`` whose transpositions, applied in order, compose to ``perm``."""
    target = [0] * len(perm)
    for i, p in enumerate(perm):
        target[p] = i
    arr = list(target)
    swaps = []
    for end in range(len(arr) - 1, 0, -1):
        for j in range(end):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                swaps.append(j)
    return swaps[::-1]


def decompose_any(f: SimplicialOperator) -> list[tuple]:
    """Transpositions, then degeneracies, then faces."""
    order = sorted(range(f.m + 1), key=lambda i: f.values[i])
    perm = [0] * (f.m + 1)
    for pos, i in enumerate(order):
        perm[i] = pos
    mono = SimplicialOperator(f.m, f.n, tuple(f.values[i] for i in order))
    return [("t", f.m, j) for j in adjacent_transpositions(perm)] + decompose_monotone(mono)


def generator(key: tuple) -> SimplicialOperator:
    kind, q, j = key
    if kind == "d":
        return face(q, j)
    if kind == "s":
        return degeneracy(q, j)
    if kind == "t":
        return transposition(q, j)
    raise OperatorError(f"unknown generator {key!r}")


def compose_all(keys: Sequence[tuple], start: int) -> SimplicialOperator:
    out = SimplicialOperator.identity(start, monotone=True)
    for k in keys:
        out = out.then(generator(k))
    return out
