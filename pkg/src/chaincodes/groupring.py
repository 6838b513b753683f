"""Group rings A[G] for a chain ring A and a finite group G given by its table.

An element is an (n, dim) integer array: row g holds the coefficient of
group element g in A-coordinates.  Flattened coordinates are (g, m) ->
g * dim + m, group index major.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, LengthMismatch, Mismatch
from .groups import GroupTable
from .howell import Span
from .rings import ChainRing, RingElement, Tower


class GroupRing:
    def __init__(self, ring: ChainRing, group: GroupTable, tower: Optional[Tower] = None):
        self.ring, self.group, self.tower = ring, group, tower
        self.n, self.dim = group.n, ring.dim
        self.N = ring.N

    # -- construction ----------------------------------------------------------
    def canon(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64).reshape(self.n, self.dim)
        return self.ring.canon(a)

    def zero(self) -> "GroupRingElement":
        return GroupRingElement(self, np.zeros((self.n, self.dim), dtype=np.int64))

    def one(self) -> "GroupRingElement":
        return self.scalar(self.ring.one_vec)

    def scalar(self, r, g: Optional[int] = None) -> "GroupRingElement":
        """r * g (g defaults to the identity)."""
        a = np.zeros((self.n, self.dim), dtype=np.int64)
        a[self.group.identity if g is None else g] = self.ring.vec(r)
        return GroupRingElement(self, self.canon(a))

    def group_element(self, g: int) -> "GroupRingElement":
        return self.scalar(1, g)

    def element(self, coeffs) -> "GroupRingElement":
        return GroupRingElement(self, self.canon(coeffs))

    def from_terms(self, terms: dict) -> "GroupRingElement":
        """{group index: ring coefficient (int, vector or RingElement)}."""
        a = np.zeros((self.n, self.dim), dtype=np.int64)
        for g, r in terms.items():
            a[g] = (a[g] + self.ring.vec(r)) % self.N
        return GroupRingElement(self, self.canon(a))

    def parse(self, coeffs: Sequence, level: str) -> "GroupRingElement":
        """JSON list of n nested ring coefficients."""
        if self.tower is None:
            raise InputError("parsing nested coefficients needs the tower")
        if not isinstance(coeffs, (list, tuple)) or len(coeffs) != self.n:
            raise LengthMismatch(f"expected {self.n} coefficients, got {coeffs!r}")
        rows = [self.tower.parse(level, c).vec for c in coeffs]
        return GroupRingElement(self, self.canon(np.array(rows)))

    def to_json(self, a) -> list:
        return [self.ring.to_nested(r) for r in np.asarray(a).reshape(self.n, self.dim)]

    # -- arithmetic ------------------------------------------------------------
    def mul(self, a, b) -> np.ndarray:
        prod = np.einsum("gi,hj,ijk->ghk", a, b, self.ring.T) % self.N
        out = np.zeros((self.n, self.dim), dtype=np.int64)
        np.add.at(out, self.group.mul.reshape(-1), prod.reshape(-1, self.dim))
        return self.ring.canon(out % self.N)

    def scale(self, r, a) -> np.ndarray:
        """Coefficient-wise product with a ring element."""
        M = self.ring.mult_map(self.ring.vec(r))
        return self.ring.canon(np.asarray(a) @ M)

    def mu(self, a) -> np.ndarray:
        return np.asarray(a)[self.group.inv]

    def left_translate(self, g: int, a) -> np.ndarray:
        out = np.empty_like(a)
        out[self.group.mul[g]] = a
        return out

    def right_translate(self, a, g: int) -> np.ndarray:
        out = np.empty_like(a)
        out[self.group.mul[:, g]] = a
        return out

    def augmentation(self, a) -> np.ndarray:
        return self.ring.canon(np.asarray(a).sum(axis=0))

    def coeff_id(self, a) -> np.ndarray:
        return np.asarray(a)[self.group.identity]

    def bilinear(self, a, b) -> np.ndarray:
        """<a, b> = sum_g a_g b_g."""
        prod = np.einsum("gi,gj,ijk->k", a, b, self.ring.T) % self.N
        return self.ring.canon(prod)

    # -- Phi: S^n <-> S[G] and the coordinate actions ---------------------------
    def phi(self, v: Sequence) -> "GroupRingElement":
        if len(v) != self.n:
            raise LengthMismatch(f"expected a vector of length {self.n}")
        return self.element(np.array([self.ring.vec(x) for x in v]))

    def phi_inverse(self, a) -> list[RingElement]:
        return [RingElement(self.ring, r) for r in np.asarray(a)]

    def vector_left_action(self, g: int, v: np.ndarray) -> np.ndarray:
        """(^g v)_h = v_{g h}."""
        return np.asarray(v)[self.group.mul[g]]

    def vector_right_action(self, v: np.ndarray, g: int) -> np.ndarray:
        """(v^g)_h = v_{h g}."""
        return np.asarray(v)[self.group.mul[:, g]]

    # -- flattened coordinates --------------------------------------------------
    @property
    def ncols(self) -> int:
        return self.n * self.dim

    def flatten(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64).reshape(-1)

    def unflatten(self, v) -> np.ndarray:
        return np.asarray(v, dtype=np.int64).reshape(self.n, self.dim)

    @cached_property
    def rel_rows(self) -> np.ndarray:
        r = self.ring.rel.rows
        if r.shape[0] == 0:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.kron(np.eye(self.n, dtype=np.int64), r)

    @cached_property
    def rel(self) -> Span:
        return Span(self.rel_rows, self.ncols, self.ring.p, self.ring.e)

    @cached_property
    def left_perms(self) -> np.ndarray:
        """perm[g] maps flattened coordinates of a to those of g*a."""
        return self._perms(lambda g: self.group.mul[g])

    @cached_property
    def right_perms(self) -> np.ndarray:
        return self._perms(lambda g: self.group.mul[:, g])

    def _perms(self, target) -> np.ndarray:
        out = np.empty((self.n, self.ncols), dtype=np.int64)
        base = np.arange(self.dim)
        for g in range(self.n):
            dest = target(g)
            # position of old coordinate (h, m) after translation is (dest[h], m)
            out[g] = (dest[:, None] * self.dim + base[None, :]).reshape(-1)
        return out

    def translate_rows(self, rows: np.ndarray, side: str) -> np.ndarray:
        """All translates of each row by G on the given side ('left' or 'right')."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols)
        perms = self.left_perms if side == "left" else self.right_perms
        out = np.zeros((self.n, rows.shape[0], self.ncols), dtype=np.int64)
        for g in range(self.n):
            out[g][:, perms[g]] = rows
        return out.reshape(-1, self.ncols)

    def scalar_rows(self, rows: np.ndarray, scalars: ChainRing) -> np.ndarray:
        """Products of each row with every monomial of the prefix ring ``scalars``."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n, self.dim)
        outs = []
        for m in range(scalars.dim):
            mono = np.zeros(self.dim, dtype=np.int64)
            mono[m] = 1
            M = self.ring.mult_map(mono)
            outs.append((rows @ M % self.N).reshape(-1, self.ncols))
        return np.vstack(outs)

    def mu_matrix_perm(self) -> np.ndarray:
        """Flattened coordinate permutation realising mu."""
        base = np.arange(self.dim)
        src = self.group.inv
        return (src[:, None] * self.dim + base[None, :]).reshape(-1)

    def mu_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols)
        return rows[:, self.mu_matrix_perm()]

    def elements(self):
        """Every element as an (n, dim) array (small ambients only)."""
        from itertools import product

        ring_elems = list(self.ring.elements())
        for combo in product(ring_elems, repeat=self.n):
            yield np.array(combo)

    @property
    def size(self) -> int:
        return self.ring.size**self.n


class GroupRingElement:
    __slots__ = ("gr", "coeffs")

    def __init__(self, gr: GroupRing, coeffs: np.ndarray):
        self.gr, self.coeffs = gr, coeffs

    def _other(self, o) -> np.ndarray:
        if isinstance(o, GroupRingElement):
            if o.gr is not self.gr:
                raise Mismatch("elements of different group rings")
            return o.coeffs
        return self.gr.scalar(o).coeffs

    def __add__(self, o):
        return GroupRingElement(self.gr, self.gr.canon(self.coeffs + self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return GroupRingElement(self.gr, self.gr.canon(self.coeffs - self._other(o)))

    def __rsub__(self, o):
        return GroupRingElement(self.gr, self.gr.canon(self._other(o) - self.coeffs))

    def __neg__(self):
        return GroupRingElement(self.gr, self.gr.canon(-self.coeffs))

    def __mul__(self, o):
        if isinstance(o, (int, np.integer, RingElement)):
            return GroupRingElement(self.gr, self.gr.scale(o, self.coeffs))
        return GroupRingElement(self.gr, self.gr.mul(self.coeffs, self._other(o)))

    def __rmul__(self, o):
        if isinstance(o, (int, np.integer, RingElement)):
            return GroupRingElement(self.gr, self.gr.scale(o, self.coeffs))
        return GroupRingElement(self.gr, self.gr.mul(self._other(o), self.coeffs))

    def __pow__(self, k: int):
        out = self.gr.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o) -> bool:
        try:
            return bool(np.array_equal(self.coeffs, self._other(o)))
        except Mismatch:
            return False

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def mu(self) -> "GroupRingElement":
        return GroupRingElement(self.gr, self.gr.mu(self.coeffs))

    def augmentation(self) -> RingElement:
        return RingElement(self.gr.ring, self.gr.augmentation(self.coeffs))

    def coeff_id(self) -> RingElement:
        return RingElement(self.gr.ring, self.gr.coeff_id(self.coeffs))

    def coeff(self, g: int) -> RingElement:
        return RingElement(self.gr.ring, self.coeffs[g])

    def flat(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def to_json(self) -> list:
        return self.gr.to_json(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __repr__(self) -> str:
        terms = []
        for g in range(self.gr.n):
            if self.coeffs[g].any():
                terms.append(f"({self.gr.ring.format(self.coeffs[g])})*{self.gr.group.label(g)}")
        return f"<{self.gr.ring.name}[G]: {' + '.join(terms) or '0'}>"


def bilinear(a: GroupRingElement, b: GroupRingElement) -> RingElement:
    if a.gr is not b.gr:
        raise Mismatch("elements of different group rings")
    return RingElement(a.gr.ring, a.gr.bilinear(a.coeffs, b.coeffs))


def pi_residue(gr: GroupRing, a) -> tuple[GroupRing, np.ndarray]:
    """Reduce coefficients modulo the maximal ideal."""
    field = residue_ring(gr.ring)
    target = GroupRing(field, gr.group, gr.tower)
    return target, field.canon(np.asarray(a))


_RESIDUE: dict = {}


def residue_ring(ring: ChainRing) -> ChainRing:
    key = id(ring)
    if key not in _RESIDUE:
        _RESIDUE[key] = (ring, ring.quotient([ring.pi], ring.name + "/m", s=1))
    return _RESIDUE[key][1]
