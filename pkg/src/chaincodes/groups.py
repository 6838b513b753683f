"""Finite groups as multiplication tables over indices 0..n-1."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import prod
from typing import Optional, Sequence

import numpy as np

from .errors import InputError, InvalidTable, TooLarge

MAX_ORDER = 64


@dataclass(frozen=True, eq=False)
class GroupTable:
    """mul[i][j] is the index of g_i * g_j; index 0 need not be the identity."""

    mul: np.ndarray
    identity: int
    inv: np.ndarray
    kind: str = "table"
    orders: tuple = ()
    labels: tuple = ()

    @property
    def n(self) -> int:
        return int(self.mul.shape[0])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"g{i}"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "n": self.n}
        if self.orders:
            out["orders"] = list(self.orders)
        if self.kind == "table":
            out["table"] = self.mul.tolist()
        return out

    def exponent_tuple(self, i: int) -> tuple:
        """Mixed-radix exponents for cyclic/product groups (first factor most significant)."""
        out = []
        for n_a in reversed(self.orders):
            out.append(i % n_a)
            i //= n_a
        return tuple(reversed(out))

    def index_of(self, exps: Sequence[int]) -> int:
        i = 0
        for e, n_a in zip(exps, self.orders):
            i = i * n_a + (e % n_a)
        return i


def _validate(mul: np.ndarray) -> tuple[int, np.ndarray]:
    n = mul.shape[0]
    if mul.shape != (n, n) or n == 0:
        raise InvalidTable("table must be a non-empty square matrix")
    if mul.min() < 0 or mul.max() >= n:
        raise InvalidTable("table entries must be indices 0..n-1")
    ids = [i for i in range(n) if np.array_equal(mul[i], np.arange(n)) and np.array_equal(mul[:, i], np.arange(n))]
    if not ids:
        raise InvalidTable("no two-sided identity")
    e = ids[0]
    # associativity: (ab)c == a(bc) for all triples, vectorised over c
    left = mul[mul]  # left[a, b, c] = mul[mul[a, b], c]
    right = mul[:, mul]  # right[a, b, c] = mul[a, mul[b, c]]
    if not np.array_equal(left, right):
        raise InvalidTable("table is not associative")
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.nonzero(mul[a] == e)[0]
        if len(hits) != 1 or mul[hits[0], a] != e:
            raise InvalidTable(f"element {a} has no two-sided inverse")
        inv[a] = hits[0]
    return e, inv


def _check_size(n: int, bound: int) -> None:
    if n > bound:
        raise TooLarge(f"group order {n} exceeds the bound {bound}")


def from_table(table, bound: int = MAX_ORDER) -> GroupTable:
    mul = np.asarray(table, dtype=np.int64)
    if mul.ndim != 2:
        raise InvalidTable("table must be two-dimensional")
    _check_size(mul.shape[0], bound)
    e, inv = _validate(mul)
    return GroupTable(mul, e, inv, "table")


def abelian_product(orders: Sequence[int], bound: int = MAX_ORDER) -> GroupTable:
    orders = tuple(int(o) for o in orders)
    if not orders or any(o < 1 for o in orders):
        raise InputError("cyclic orders must be positive")
    n = prod(orders)
    _check_size(n, bound)
    exps = list(product(*[range(o) for o in orders]))
    index = {e: i for i, e in enumerate(exps)}
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(exps):
        for j, b in enumerate(exps):
            mul[i, j] = index[tuple((x + y) % o for x, y, o in zip(a, b, orders))]
    inv = np.array([index[tuple((-x) % o for x, o in zip(a, orders))] for a in exps], dtype=np.int64)
    labels = tuple("*".join(f"c{k+1}^{x}" for k, x in enumerate(a) if x) or "1" for a in exps)
    kind = "cyclic" if len(orders) == 1 else "product"
    return GroupTable(mul, 0, inv, kind, orders, labels)


def cyclic(n: int, bound: int = MAX_ORDER) -> GroupTable:
    return abelian_product([n], bound)


def _compose(a: tuple, b: tuple) -> tuple:
    """(a*b)(x) = a(b(x)): apply b first."""
    return tuple(a[b[x]] for x in range(len(a)))


def symmetric(m: int, bound: int = MAX_ORDER) -> GroupTable:
    """Symmetric group on m points.

    For m = 3 the order is 1, r, r^2, s, r*s, r^2*s with r = (1 2 3) and
    s = (1 2); larger m use lexicographic order of permutation images.
    """
    from math import factorial

    if m < 1:
        raise InputError("symmetric group needs m >= 1")
    _check_size(factorial(m), bound)
    if m == 3:
        ident = (0, 1, 2)
        r = (1, 2, 0)
        s = (1, 0, 2)
        r2 = _compose(r, r)
        perms = [ident, r, r2, s, _compose(r, s), _compose(r2, s)]
        labels = ("1", "r", "r^2", "s", "r*s", "r^2*s")
    else:
        perms = list(permutations(range(m)))
        labels = tuple("(" + " ".join(str(x + 1) for x in p) + ")" for p in perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = np.array([[index[_compose(a, b)] for b in perms] for a in perms], dtype=np.int64)
    e, inv = _validate(mul)
    return GroupTable(mul, e, inv, "symmetric", (m,), labels)


def build_group(obj) -> GroupTable:
    """From JSON: {"kind": "cyclic"|"product"|"symmetric"|"table", ...}."""
    if isinstance(obj, GroupTable):
        return obj
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("group description must be an object with a 'kind' field")
    kind = obj["kind"]
    bound = int(obj.get("max_order", MAX_ORDER))
    try:
        if kind == "cyclic":
            n = obj.get("n", (obj.get("orders") or [None])[0])
            return cyclic(int(n), bound)
        if kind == "product":
            return abelian_product([int(o) for o in obj["orders"]], bound)
        if kind == "symmetric":
            return symmetric(int(obj["n"]), bound)
        if kind == "table":
            return from_table(obj["table"], bound)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed group description: {exc}") from None
    raise InputError(f"unknown group kind {kind!r}")
