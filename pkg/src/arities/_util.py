"""Small shared helpers: deterministic ordering, union-find, JSON freezing."""

from __future__ import annotations

from typing import Any, Hashable, Iterable


def order_key(x: Any) -> tuple:
    # Deterministic total order over mixed hashable ids; numeric for
    # non-negative ints because shorter reprs sort first.
    r = repr(x)
    return (len(r), r)


def sort_ids(xs: Iterable[Hashable]) -> list:
    return sorted(xs, key=order_key)


class UnionFind:
    """Union-find whose class representative is the earliest-added member."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: dict = {}
        self._rank: dict = {}
        for x in items:
            self.add(x)

    def add(self, x: Hashable) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._rank[x] = len(self._rank)

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> Hashable:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self._rank[ry] < self._rank[rx]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        return rx

    def classes(self) -> dict:
        out: dict = {}
        for x in self._parent:
            out.setdefault(self.find(x), []).append(x)
        return out

    def __len__(self) -> int:
        return sum(1 for x in self._parent if self._parent[x] == x)


def freeze(obj: Any) -> Any:
    """Turn JSON lists back into (nested) tuples so they can serve as ids."""
    if isinstance(obj, list):
        return tuple(freeze(x) for x in obj)
    return obj


def thaw(obj: Any) -> Any:
    if isinstance(obj, tuple):
        return [thaw(x) for x in obj]
    return obj
