"""Canonical row forms and submodule arithmetic over Z/p^e.

Every module handled by the package is a quotient Z_N^n / Rel with
N = p^e.  A submodule is stored through its full preimage in Z_N^n, in
Howell form: an echelon basis whose pivots are powers of p and which is
closed under the "multiply by p^(e-v) and push down" operation.  That
closure makes reduction-to-zero an exact membership test and makes the
reduced form of a vector canonical.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np


@lru_cache(maxsize=None)
def _tables(p: int, e: int) -> tuple[np.ndarray, np.ndarray]:
    """Valuation and unit-part inverse for every residue mod p^e."""
    n = p**e
    val = np.full(n, e, dtype=np.int64)
    inv = np.zeros(n, dtype=np.int64)
    for x in range(1, n):
        v, u = 0, x
        while u % p == 0:
            u //= p
            v += 1
        val[x] = v
        inv[x] = pow(u, -1, n)
    return val, inv


def _as_matrix(rows, ncols: int) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return a.reshape(-1, ncols)


def howell_form(rows, ncols: int, p: int, e: int) -> tuple[np.ndarray, list[int], list[int]]:
    """Return (H, pivot_columns, pivot_valuations) for the span of ``rows``.

    Pivots are chosen by lowest valuation, ties going to the earliest row.
    Each pivot entry equals p^v and entries above a pivot lie in [0, p^v).
    """
    n = p**e
    val, inv = _tables(p, e)
    work = _as_matrix(rows, ncols) % n
    work = work[work.any(axis=1)]
    out: list[np.ndarray] = []
    cols: list[int] = []
    vals: list[int] = []
    for c in range(ncols):
        if work.shape[0] == 0:
            break
        col = work[:, c]
        vs = val[col]
        i = int(np.argmin(vs))
        v = int(vs[i])
        if v >= e:
            continue
        piv = work[i] * inv[col[i]] % n
        rest = np.delete(work, i, axis=0)
        if rest.shape[0]:
            f = rest[:, c] // p**v
            rest = (rest - np.outer(f, piv)) % n
        out.append(piv)
        cols.append(c)
        vals.append(v)
        if v > 0:
            rest = np.vstack([rest, (piv * p ** (e - v)) % n])
        work = rest[rest.any(axis=1)]
    if not out:
        return np.zeros((0, ncols), dtype=np.int64), [], []
    h = np.array(out, dtype=np.int64)
    for i in range(1, len(out)):
        c, pv = cols[i], p ** vals[i]
        f = h[:i, c] // pv
        if f.any():
            h[:i] = (h[:i] - np.outer(f, h[i])) % n
    return h, cols, vals


class Span:
    """A Z_N-submodule of Z_N^n held in Howell form."""

    __slots__ = ("p", "e", "n", "ncols", "rows", "cols", "vals")

    def __init__(self, rows, ncols: int, p: int, e: int, *, _raw=None):
        self.p, self.e, self.n, self.ncols = p, e, p**e, ncols
        if _raw is None:
            _raw = howell_form(rows, ncols, p, e)
        self.rows, self.cols, self.vals = _raw

    @classmethod
    def zero(cls, ncols: int, p: int, e: int) -> "Span":
        return cls([], ncols, p, e)

    @classmethod
    def full(cls, ncols: int, p: int, e: int) -> "Span":
        return cls(np.eye(ncols, dtype=np.int64), ncols, p, e)

    def reduce(self, x) -> np.ndarray:
        """Canonical representative of x (a vector or a stack of vectors) modulo the span."""
        a = np.asarray(x, dtype=np.int64) % self.n
        if a.ndim == 1:
            # ring multiplication lands here for every product; skip the stack machinery
            for r, c, v in zip(self.rows, self.cols, self.vals):
                f = a[c] // self.p**v
                if f:
                    a = (a - f * r) % self.n
            return a
        for r, c, v in zip(self.rows, self.cols, self.vals):
            f = a[:, c] // self.p**v
            if f.any():
                a = (a - np.outer(f, r)) % self.n
        return a

    def contains(self, x) -> bool:
        return not self.reduce(x).any()

    def contains_all(self, xs) -> bool:
        xs = _as_matrix(xs, self.ncols)
        return xs.shape[0] == 0 or not self.reduce(xs).any()

    @property
    def log_size(self) -> int:
        """Exponent of p in the cardinality."""
        return sum(self.e - v for v in self.vals)

    @property
    def size(self) -> int:
        return self.p**self.log_size

    def _same(self, other: "Span") -> None:
        if (self.p, self.e, self.ncols) != (other.p, other.e, other.ncols):
            raise ValueError("spans live in different ambients")

    def plus(self, other: "Span") -> "Span":
        self._same(other)
        return Span(np.vstack([self.rows, other.rows]), self.ncols, self.p, self.e)

    def add_rows(self, rows) -> "Span":
        return Span(np.vstack([self.rows, _as_matrix(rows, self.ncols)]), self.ncols, self.p, self.e)

    def intersect(self, other: "Span") -> "Span":
        self._same(other)
        m = self.ncols
        u, v = self.rows, other.rows
        top = np.hstack([u, u])
        bot = np.hstack([v, np.zeros_like(v)])
        h, cols, _ = howell_form(np.vstack([top, bot]), 2 * m, self.p, self.e)
        keep = [i for i, c in enumerate(cols) if c >= m]
        return Span(h[keep, m:], m, self.p, self.e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        if (self.p, self.e, self.ncols) != (other.p, other.e, other.ncols):
            return False
        return self.log_size == other.log_size and self.le(other)

    __hash__ = None  # type: ignore[assignment]

    def le(self, other: "Span") -> bool:
        """Inclusion test."""
        return other.contains_all(self.rows)

    def elements(self) -> Iterator[np.ndarray]:
        """Every element, generated from the Howell basis with bounded coefficients."""
        ranges = [range(self.p ** (self.e - v)) for v in self.vals]
        for coeffs in product(*ranges):
            if not coeffs:
                yield np.zeros(self.ncols, dtype=np.int64)
                continue
            yield np.asarray(coeffs, dtype=np.int64) @ self.rows % self.n

    def quotient_reps(self) -> Iterator[np.ndarray]:
        """Canonical representatives of Z_N^n modulo this span."""
        pivot = dict(zip(self.cols, self.vals))
        ranges = [range(self.p ** pivot[c]) if c in pivot else range(self.n) for c in range(self.ncols)]
        for xs in product(*ranges):
            yield np.asarray(xs, dtype=np.int64)

    def __repr__(self) -> str:
        return f"Span(Z_{self.n}^{self.ncols}, size={self.p}^{self.log_size})"


def left_kernel(a, p: int, e: int, rel: Span | None = None) -> Span:
    """All x in Z_N^m with x @ a lying in ``rel`` (zero when omitted)."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    top = np.hstack([a, np.eye(m, dtype=np.int64)])
    blocks = [top]
    if rel is not None and rel.rows.shape[0]:
        blocks.append(np.hstack([rel.rows, np.zeros((rel.rows.shape[0], m), dtype=np.int64)]))
    h, cols, _ = howell_form(np.vstack(blocks), n + m, p, e)
    keep = [i for i, c in enumerate(cols) if c >= n]
    return Span(h[keep, n:], m, p, e)


def solve(a, b, p: int, e: int, rel: Span | None = None) -> np.ndarray | None:
    """Some x with x @ a = b modulo ``rel``, or None when there is none."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    blocks = [np.hstack([a, np.eye(m, dtype=np.int64)])]
    if rel is not None and rel.rows.shape[0]:
        blocks.append(np.hstack([rel.rows, np.zeros((rel.rows.shape[0], m), dtype=np.int64)]))
    big = Span(np.vstack(blocks), n + m, p, e)
    r = big.reduce(np.concatenate([np.asarray(b, dtype=np.int64), np.zeros(m, dtype=np.int64)]))
    if r[:n].any():
        return None
    return (-r[n:]) % p**e


def image(rows: Sequence, matrix, p: int, e: int) -> np.ndarray:
    """Row-wise product rows @ matrix mod p^e."""
    return np.asarray(rows, dtype=np.int64) @ np.asarray(matrix, dtype=np.int64) % p**e
