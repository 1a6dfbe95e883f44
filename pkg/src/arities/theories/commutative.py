"""Natural-number matrices as homomorphisms ``N^m -> N^n``, and Γ-presheaves of commutative monoids.

Row ``i`` of an ``m x n`` matrix is the image of the ``i``-th generator;
composition is the matrix product in diagrammatic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

from .operators import adjacent_transpositions
from .presheaf import SHAPES, PresheafError, TruncPresheaf, from_action


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class NMatrix:
    m: int
    n: int
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if len(rows) != self.m or any(len(r) != self.n for r in rows):
            raise MatrixError(f"entries do not have shape {self.m}x{self.n}")
        if any(x < 0 for r in rows for x in r):
            raise MatrixError("entries must be natural numbers")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> "NMatrix":
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise MatrixError("give n explicitly for a matrix with no rows")
            n = len(rows[0])
        return cls(len(rows), n, rows)

    @classmethod
    def identity(cls, n: int) -> "NMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def col_sums(self) -> list[int]:
        return [sum(r[j] for r in self.entries) for j in range(self.n)]

    def total(self) -> int:
        return sum(map(sum, self.entries))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, data) -> "NMatrix":
        try:
            if isinstance(data, list):
                return cls.of(data)
            return cls(int(data["m"]), int(data["n"]), data["entries"])
        except (KeyError, TypeError) as exc:
            raise MatrixError(f"malformed matrix JSON: {exc}") from exc


def theta_com_compose(A: NMatrix, B: NMatrix) -> NMatrix:
    if A.n != B.m:
        raise MatrixError(f"cannot compose {A.m}x{A.n} with {B.m}x{B.n}")
    return NMatrix(A.m, B.n, [[sum(A.entries[i][k] * B.entries[k][j] for k in range(A.n)) for j in range(B.n)] for i in range(A.m)])


def is_generic_com(A: NMatrix) -> bool:
    """Every target generator is used exactly once."""
    return all(s == 1 for s in A.col_sums())


def is_gamma(A: NMatrix) -> bool:
    """0/1 entries and every target generator used at most once."""
    return all(x in (0, 1) for r in A.entries for x in r) and all(s <= 1 for s in A.col_sums())


def is_free(A: NMatrix) -> bool:
    """Exactly one 1 per row: induced by a map of generating sets."""
    return all(sorted(r) == [0] * (A.n - 1) + [1] for r in A.entries) if A.n else A.m == 0


def is_free_injective(A: NMatrix) -> bool:
    return is_free(A) and is_gamma(A)


def free_from_map(targets: Sequence[int], n: int) -> NMatrix:
    return NMatrix(len(targets), n, [[int(j == t) for j in range(n)] for t in targets])


def factor_theta_com(A: NMatrix) -> tuple[NMatrix, NMatrix]:
    """Generic ``N^m -> N^k`` (rows are consecutive blocks) then free ``N^k -> N^n``, ``k`` the entry sum."""
    k = A.total()
    gen = []
    targets = []
    off = 0
    for row in A.entries:
        s = sum(row)
        gen.append([int(off <= c < off + s) for c in range(k)])
        off += s
        for j, a in enumerate(row):
            targets += [j] * a
    return NMatrix(A.m, k, gen), free_from_map(targets, A.n)


def _signature(G: NMatrix, F: NMatrix, c: int) -> tuple:
    row = next(i for i in range(G.m) if G.entries[i][c])
    col = next(j for j in range(F.n) if F.entries[c][j])
    return row, col


def com_factorisation_isomorphism(first: tuple[NMatrix, NMatrix], second: tuple[NMatrix, NMatrix]):
    """A permutation ``p`` of the middle generators with ``G1 P == G2`` and ``P F2 == F1``, or ``None``."""
    G1, F1 = first
    G2, F2 = second
    if G1.n != G2.n or not all(map(is_generic_com, (G1, G2))) or not all(map(is_free, (F1, F2))):
        return None
    k = G1.n
    sig2 = {}
    for c in range(k):
        sig2.setdefault(_signature(G2, F2, c), []).append(c)
    perm = []
    for c in range(k):
        bucket = sig2.get(_signature(G1, F1, c))
        if not bucket:
            return None
        perm.append(bucket.pop(0))
    P = free_from_map(perm, k)
    if theta_com_compose(G1, P) != G2 or theta_com_compose(P, F2) != F1:
        return None
    return perm


def all_matrices(m: int, n: int, max_entry: int) -> Iterator[NMatrix]:
    for vals in itertools.product(range(max_entry + 1), repeat=m * n):
        yield NMatrix(m, n, [vals[i * n : (i + 1) * n] for i in range(m)])


def all_generic(m: int, k: int) -> Iterator[NMatrix]:
    for owners in itertools.product(range(m), repeat=k):
        yield NMatrix(m, k, [[int(o == i) for o in owners] for i in range(m)])


def all_free(k: int, n: int) -> Iterator[NMatrix]:
    for targets in itertools.product(range(n), repeat=k):
        yield free_from_map(targets, n)


def all_gamma(m: int, n: int) -> Iterator[NMatrix]:
    for owners in itertools.product(range(-1, m), repeat=n):
        yield NMatrix(m, n, [[int(o == i) for o in owners] for i in range(m)])


def coproduct_check(m: int, n: int, p: int, max_entry: int) -> bool:
    """Maps out of ``N^(m+n)`` correspond to pairs of maps out of ``N^m`` and ``N^n``.

    Restriction is precomposition with the two free injections.
    """
    i1 = free_from_map(list(range(m)), m + n)
    i2 = free_from_map(list(range(m, m + n)), m + n)
    seen = set()
    for A in all_matrices(m + n, p, max_entry):
        pair = (theta_com_compose(i1, A), theta_com_compose(i2, A))
        if pair in seen:
            return False
        seen.add(pair)
    return len(seen) == (max_entry + 1) ** (m * p) * (max_entry + 1) ** (n * p)


# --- the Γ shape -------------------------------------------------------------


def split(q: int, i: int) -> NMatrix:
    """``N^q -> N^(q+1)``: generator ``i`` goes to the sum of two."""
    rows = []
    for r in range(q):
        if r < i:
            rows.append([int(c == r) for c in range(q + 1)])
        elif r == i:
            rows.append([int(c in (i, i + 1)) for c in range(q + 1)])
        else:
            rows.append([int(c == r + 1) for c in range(q + 1)])
    return NMatrix(q, q + 1, rows)


def zero(q: int, i: int) -> NMatrix:
    """``N^q -> N^(q-1)``: generator ``i`` goes to 0."""
    return free_like(q, q - 1, [r if r < i else (None if r == i else r - 1) for r in range(q)])


def free_like(m: int, n: int, targets: Sequence) -> NMatrix:
    return NMatrix(m, n, [[int(t is not None and c == t) for c in range(n)] for t in targets])


def insertion(q: int, j: int) -> NMatrix:
    """``N^(q-1) -> N^q`` missing generator ``j``."""
    return free_from_map([r if r < j else r + 1 for r in range(q - 1)], q)


def gen_transposition(q: int, j: int) -> NMatrix:
    t = list(range(q))
    t[j], t[j + 1] = t[j + 1], t[j]
    return free_from_map(t, q)


def _gamma_gen(key) -> NMatrix:
    kind, q, j = key
    return {"split": split, "zero": zero, "d": insertion, "t": gen_transposition}[kind](q, j)


@lru_cache(maxsize=65536)
def decompose_gamma(A: NMatrix) -> tuple:
    """Splits and zeros (the generic part) then transpositions and insertions (free injective)."""
    if not is_gamma(A):
        raise MatrixError("not a Γ matrix")
    G, F = factor_theta_com(A)
    out = []
    q = A.m
    for i in reversed(range(A.m)):
        s = sum(A.entries[i])
        if s == 0:
            out.append(("zero", q, i))
            q -= 1
        else:
            for _ in range(s - 1):
                out.append(("split", q, i))
                q += 1
    k = G.n
    targets = [F.entries[c].index(1) for c in range(k)]
    ranks = sorted(range(k), key=lambda c: targets[c])
    perm = [0] * k
    for pos, c in enumerate(ranks):
        perm[c] = pos
    out += [("t", k, j) for j in adjacent_transpositions(perm)]
    image = sorted(targets)
    n = A.n
    faces = []
    while len(image) < n:
        j = max(x for x in range(n) if x not in image)
        faces.append(("d", n, j))
        image = [x if x < j else x - 1 for x in image]
        n -= 1
    return tuple(out + faces[::-1])


class Gamma:
    name = "gamma"

    def generators(self, dim: int) -> list[tuple]:
        out = []
        for q in range(1, dim + 1):
            out += [("split", q, i) for i in range(q) if q + 1 <= dim]
            out += [("zero", q, i) for i in range(q)]
            out += [("d", q, j) for j in range(q)]
            out += [("t", q, j) for j in range(q - 1)]
        return out

    def gen_op(self, key) -> NMatrix:
        return _gamma_gen(key)

    def dom(self, op: NMatrix) -> int:
        return op.m

    def cod(self, op: NMatrix) -> int:
        return op.n

    def factor(self, op: NMatrix) -> tuple:
        return decompose_gamma(op)

    def identity(self, n: int) -> NMatrix:
        return NMatrix.identity(n)

    def compose(self, a, b):
        return theta_com_compose(a, b)

    def all_ops(self, a: int, b: int):
        return all_gamma(a, b)

    def coerce(self, op):
        if not isinstance(op, NMatrix):
            op = NMatrix.from_json(op)
        if not is_gamma(op):
            raise PresheafError("operator is not a Γ matrix")
        return op


SHAPES["gamma"] = Gamma()


# --- commutative monoids -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinCommMonoid:
    carrier: tuple
    table: Mapping  # (a, b) -> a + b
    unit: object

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        problem = self.law_violation()
        if problem:
            raise MatrixError(problem)

    def add(self, a, b):
        return self.table[(a, b)]

    def law_violation(self) -> str | None:
        els = self.carrier
        s = set(els)
        if self.unit not in s:
            return "unit not in the carrier"
        for a in els:
            for b in els:
                if self.table.get((a, b)) not in s:
                    return f"{a!r} + {b!r} undefined or outside the carrier"
                if self.table[(a, b)] != self.table[(b, a)]:
                    return f"not commutative at {a!r}, {b!r}"
            if self.table[(a, self.unit)] != a:
                return f"unit law fails at {a!r}"
        for a, b, c in itertools.product(els, repeat=3):
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                return f"not associative at {a!r}, {b!r}, {c!r}"
        return None

    def total(self, xs) -> object:
        out = self.unit
        for x in xs:
            out = self.add(out, x)
        return out

    def to_json(self) -> dict:
        from .._util import thaw

        return {
            "carrier": [thaw(a) for a in self.carrier],
            "unit": thaw(self.unit),
            "table": [[thaw(a), thaw(b), thaw(self.table[(a, b)])] for a in self.carrier for b in self.carrier],
        }

    @classmethod
    def from_json(cls, data) -> "FinCommMonoid":
        from .._util import freeze

        try:
            return cls(
                [freeze(a) for a in data["carrier"]],
                {(freeze(a), freeze(b)): freeze(c) for a, b, c in data["table"]},
                freeze(data["unit"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MatrixError(f"malformed monoid JSON: {exc}") from exc


def monoid_from(carrier, op: Callable, unit) -> FinCommMonoid:
    carrier = list(carrier)
    return FinCommMonoid(carrier, {(a, b): op(a, b) for a in carrier for b in carrier}, unit)


def cyclic_monoid(n: int) -> FinCommMonoid:
    return monoid_from(range(n), lambda a, b: (a + b) % n, 0)


def all_comm_monoids(order: int) -> list[FinCommMonoid]:
    """Every commutative monoid structure on ``{0..order-1}`` with unit 0."""
    if order == 0:
        return []
    els = list(range(order))
    free_pairs = [(a, b) for a in els[1:] for b in els[1:] if a <= b]
    out = []
    for vals in itertools.product(els, repeat=len(free_pairs)):
        table = {}
        for a in els:
            table[(0, a)] = table[(a, 0)] = a
        for (a, b), v in zip(free_pairs, vals):
            table[(a, b)] = table[(b, a)] = v
        if all(table[(table[(a, b)], c)] == table[(a, table[(b, c)])] for a in els[1:] for b in els[1:] for c in els[1:]):
            out.append(FinCommMonoid(els, table, 0))
    return out


def gamma_nerve(M: FinCommMonoid, N: int = 4) -> TruncPresheaf:
    """``X(n) = M^n``; a Γ matrix ``A`` sends ``x`` to ``(sum_j A[i][j] x_j)_i``."""
    cells = {n: list(itertools.product(M.carrier, repeat=n)) for n in range(N + 1)}

    def action(A: NMatrix, x):
        return tuple(M.total(x[j] for j in range(A.n) if A.entries[i][j]) for i in range(A.m))

    return from_action(SHAPES["gamma"], N, cells, action)


def _coordinate(n: int, j: int) -> NMatrix:
    return free_from_map([j], n)


def gamma_segal_failures(X: TruncPresheaf) -> list[str]:
    out = []
    try:
        base = len(X.cells[1])
        for n in range(X.dim + 1):
            seen = {}
            for x in X.cells[n]:
                c = tuple(X.act(_coordinate(n, j), x) for j in range(n))
                if c in seen:
                    out.append(f"level {n}: {seen[c]!r} and {x!r} have the same coordinates")
                seen[c] = x
            if len(seen) != base**n:
                out.append(f"level {n}: {len(seen)} coordinate tuples, expected {base ** n}")
    except PresheafError as exc:
        out.append(str(exc))
    return out


def gamma_segal_check(X: TruncPresheaf) -> bool:
    return not gamma_segal_failures(X)


def recover_monoid(X: TruncPresheaf) -> FinCommMonoid:
    """Carrier ``X(1)``, unit from ``X(0)``, addition through ``[[1, 1]]``."""
    if X.dim < 2:
        raise PresheafError("need level 2 to read off the addition")
    problems = gamma_segal_failures(X)
    if problems:
        raise PresheafError("not a Segal Γ-presheaf: " + problems[0])
    (pt,) = X.cells[0]
    unit = X.act(NMatrix(1, 0, [[]]), pt)
    pairs = {tuple(X.act(_coordinate(2, j), x) for j in range(2)): x for x in X.cells[2]}
    plus = NMatrix.of([[1, 1]])
    table = {(a, b): X.act(plus, pairs[(a, b)]) for a in X.cells[1] for b in X.cells[1]}
    try:
        return FinCommMonoid(X.cells[1], table, unit)
    except MatrixError as exc:
        raise PresheafError(f"recovered operation is not a commutative monoid: {exc}") from exc


def monoid_round_trip(M: FinCommMonoid, N: int = 4) -> bool:
    """Recovering from ``gamma_nerve(M)`` gives ``M`` back along ``(a,) -> a``."""
    R = recover_monoid(gamma_nerve(M, N))
    return R.unit == (M.unit,) and all(R.add((a,), (b,)) == (M.add(a, b),) for a in M.carrier for b in M.carrier)
