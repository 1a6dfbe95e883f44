"""Truncated presheaves stored as generator action tables.

An operator ``a -> b`` acts ``X_b -> X_a``.  Only generators are
tabulated; any other operator is decomposed by its shape and the
generator actions are applied right to left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from . import operators as ops


class PresheafError(ValueError):
    pass


@lru_cache(maxsize=65536)
def _cached(fn, op) -> tuple:
    return tuple(fn(op))


class Delta:
    name = "delta"
    monotone = True

    def generators(self, dim: int) -> list[tuple]:
        out = []
        for q in range(1, dim + 1):
            out += [("d", q, j) for j in range(q + 1)]
        for q in range(dim):
            out += [("s", q, j) for j in range(q + 1)]
        return out

    def gen_op(self, key):
        return ops.generator(key)

    def dom(self, op) -> int:
        return op.m

    def cod(self, op) -> int:
        return op.n

    def factor(self, op) -> list[tuple]:
        return _cached(ops.decompose_monotone, op)

    def identity(self, n: int):
        return ops.SimplicialOperator.identity(n, self.monotone)

    def compose(self, a, b):
        return a.then(b)

    def all_ops(self, a: int, b: int):
        return ops.all_operators(a, b, self.monotone)

    def coerce(self, op):
        if not isinstance(op, ops.SimplicialOperator):
            op = ops.SimplicialOperator.of(op)
        if self.monotone and not op.is_monotone():
            raise PresheafError("the simplex category only has order-preserving operators")
        return op


class DeltaSym(Delta):
    name = "sym"
    monotone = False

    def generators(self, dim: int) -> list[tuple]:
        out = super().generators(dim)
        for q in range(1, dim + 1):
            out += [("t", q, j) for j in range(q)]
        return out

    def factor(self, op) -> list[tuple]:
        return _cached(ops.decompose_any, op)


SHAPES: dict = {"delta": Delta(), "sym": DeltaSym()}


def get_shape(name: str):
    if name not in SHAPES:
        # Gamma registers itself on import
        from . import commutative  # noqa: F401
    try:
        return SHAPES[name]
    except KeyError:
        raise PresheafError(f"unknown shape {name!r}") from None


@dataclass(frozen=True, eq=False)
class TruncPresheaf:
    shape: object
    dim: int
    cells: Mapping  # level -> tuple of cells
    tables: Mapping  # generator key -> {cell: cell}
    _members: Mapping = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", {n: tuple(self.cells.get(n, ())) for n in range(self.dim + 1)})
        object.__setattr__(self, "_members", {n: set(c) for n, c in self.cells.items()})

    def level(self, n: int) -> tuple:
        return self.cells[n]

    def act(self, op, x):
        """``op: a -> b`` applied to ``x`` in level ``b``."""
        sh = self.shape
        op = sh.coerce(op)
        if sh.cod(op) > self.dim or sh.dom(op) > self.dim:
            raise PresheafError("operator exceeds the truncation")
        if x not in self._members[sh.cod(op)]:
            raise PresheafError(f"{x!r} is not a cell of level {sh.cod(op)}")
        for key in reversed(sh.factor(op)):
            table = self.tables.get(key)
            if table is None or x not in table:
                raise PresheafError(f"no action of {key!r} on {x!r}")
            x = table[x]
        if x not in self._members[sh.dom(op)]:
            raise PresheafError(f"{op!r} sends a cell outside level {sh.dom(op)}")
        return x

    def is_functorial(self, max_level: int | None = None) -> bool:
        """Check ``(phi psi)^* == psi^* phi^*`` over all operator pairs up to ``max_level``."""
        top = self.dim if max_level is None else min(max_level, self.dim)
        sh = self.shape
        try:
            for n in range(top + 1):
                for x in self.cells[n]:
                    if self.act(sh.identity(n), x) != x:
                        return False
            for a in range(top + 1):
                for b in range(top + 1):
                    for phi in sh.all_ops(a, b):
                        for c in range(top + 1):
                            for psi in sh.all_ops(b, c):
                                comp = sh.compose(phi, psi)
                                for x in self.cells[c]:
                                    if self.act(comp, x) != self.act(phi, self.act(psi, x)):
                                        return False
            for key, table in self.tables.items():
                op = sh.gen_op(key)
                if sh.dom(op) > self.dim or sh.cod(op) > self.dim:
                    continue
                for x, y in table.items():
                    if y not in self._members[sh.dom(op)]:
                        return False
        except PresheafError:
            return False
        return True

    def restrict(self, shape) -> "TruncPresheaf":
        """Forget the generators the smaller shape does not have."""
        keep = set(shape.generators(self.dim))
        return TruncPresheaf(shape, self.dim, self.cells, {k: v for k, v in self.tables.items() if k in keep})

    def sizes(self) -> list[int]:
        return [len(self.cells[n]) for n in range(self.dim + 1)]


def from_action(shape, dim: int, cells: Mapping, action) -> TruncPresheaf:
    """Tabulate ``action(op, x)`` on the generators."""
    tables = {}
    for key in shape.generators(dim):
        op = shape.gen_op(key)
        tables[key] = {x: action(op, x) for x in cells[shape.cod(op)]}
    return TruncPresheaf(shape, dim, cells, tables)


def drop_cell(X: TruncPresheaf, n: int, cell) -> TruncPresheaf:
    cells = dict(X.cells)
    cells[n] = tuple(c for c in cells[n] if c != cell)
    tables = {k: {x: y for x, y in t.items() if x != cell} for k, t in X.tables.items()}
    return TruncPresheaf(X.shape, X.dim, cells, tables)


def duplicate_cell(X: TruncPresheaf, n: int, cell, tag="dup") -> TruncPresheaf:
    """Add a copy of ``cell`` with the same faces; nothing lands on the copy."""
    twin = (tag, cell)
    cells = dict(X.cells)
    cells[n] = tuple(cells[n]) + (twin,)
    tables = {}
    for k, t in X.tables.items():
        t = dict(t)
        if cell in t:
            t[twin] = t[cell]
        tables[k] = t
    return TruncPresheaf(X.shape, X.dim, cells, tables)


def _key_json(key):
    return [key[0]] + list(key[1:])


def presheaf_to_json(X: TruncPresheaf) -> dict:
    from .._util import thaw

    index = {n: {c: i for i, c in enumerate(X.cells[n])} for n in X.cells}
    out_tables = []
    for key, table in X.tables.items():
        op = X.shape.gen_op(key)
        src, dst = X.shape.cod(op), X.shape.dom(op)
        if src > X.dim or dst > X.dim:
            continue
        out_tables.append(
            {"generator": _key_json(key), "map": [index[dst].get(table[c], None) if c in table else None for c in X.cells[src]]}
        )
    return {
        "shape": X.shape.name,
        "dim": X.dim,
        "cells": {str(n): [thaw(c) for c in X.cells[n]] for n in X.cells},
        "tables": out_tables,
    }


def presheaf_from_json(data: Mapping) -> TruncPresheaf:
    from .._util import freeze

    try:
        shape = get_shape(data["shape"])
        dim = int(data["dim"])
        cells = {int(n): tuple(freeze(c) for c in cs) for n, cs in data["cells"].items()}
        for n in range(dim + 1):
            cells.setdefault(n, ())
        tables = {}
        for t in data["tables"]:
            key = tuple(t["generator"])
            op = shape.gen_op(key)
            src, dst = shape.cod(op), shape.dom(op)
            tables[key] = {
                cells[src][i]: cells[dst][j] for i, j in enumerate(t["map"]) if j is not None
            }
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise PresheafError(f"malformed presheaf JSON: {exc}") from exc
    return TruncPresheaf(shape, dim, cells, tables)

