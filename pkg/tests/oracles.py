"""Brute-force reference arithmetic, written without touching the library.

Every ring here is a handful of explicit multiplication rules on integer
coordinate vectors; duals, idempotents and dual bases are found by exhaustive
search.  Tests compare library output against these.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class OracleRing:
    """A finite ring on coordinate vectors with an R-valued pairing (x, y) -> Tr(x y)."""

    name: str
    moduli: tuple  # modulus of each coordinate
    char: int  # characteristic, the modulus of the base ring R
    mul: Callable  # (..., dim) x (..., dim) -> (..., dim)
    form: Callable  # (..., dim) x (..., dim) -> (...) integers mod char
    trace: Callable = None

    @property
    def dim(self) -> int:
        return len(self.moduli)

    @property
    def size(self) -> int:
        return int(np.prod(self.moduli))

    def canon(self, x):
        return np.asarray(x, dtype=np.int64) % np.array(self.moduli)

    def all_elements(self) -> np.ndarray:
        return np.array(list(itertools.product(*[range(m) for m in self.moduli])), dtype=np.int64)


def zn(n: int) -> OracleRing:
    return OracleRing(f"Z{n}", (n,), n,
                      mul=lambda a, b: (a * b) % n,
                      form=lambda a, b: (a[..., 0] * b[..., 0]) % n)


def _z9_gamma_mul(a, b):
    # gamma^2 = 3, 3 gamma = 0
    c0 = (a[..., 0] * b[..., 0] + 3 * a[..., 1] * b[..., 1]) % 9
    c1 = (a[..., 0] * b[..., 1] + a[..., 1] * b[..., 0]) % 3
    return np.stack([c0, c1], axis=-1)


Z9_GAMMA = OracleRing("Z9[gamma]", (9, 3), 9, mul=_z9_gamma_mul,
                      form=lambda a, b: (a[..., 0] * b[..., 0] + 3 * a[..., 1] * b[..., 1]) % 9)


def _galois_quadratic(n: int, c0: int, c1: int, name: str) -> OracleRing:
    """Z_n[a] with a^2 = c0 + c1 a; trace(x + y a) = 2x + c1 y."""

    def mul(a, b):
        x0, x1, y0, y1 = a[..., 0], a[..., 1], b[..., 0], b[..., 1]
        hi = x1 * y1
        return np.stack([(x0 * y0 + c0 * hi) % n, (x0 * y1 + x1 * y0 + c1 * hi) % n], axis=-1)

    def trace(x):
        return (2 * x[..., 0] + c1 * x[..., 1]) % n

    return OracleRing(name, (n, n), n, mul=mul, form=lambda a, b: trace(mul(a, b)), trace=trace)


# alpha^2 = 5 alpha + 1 over Z9
Z9_ALPHA = _galois_quadratic(9, 1, 5, "Z9[alpha]")
# alpha^2 + alpha + 1 = 0 over Z4
GR4_2 = _galois_quadratic(4, 3, 3, "GR(4,2)")


def _z9_alpha_gamma_mul(a, b):
    # coordinates (x00, x01, x10, x11) for x00 + x01 a + (x10 + x11 a) gamma; gamma^2 = 3, 3 gamma = 0
    m = Z9_ALPHA.mul
    lo = (m(a[..., 0:2], b[..., 0:2]) + 3 * m(a[..., 2:4], b[..., 2:4])) % 9
    hi = (m(a[..., 0:2], b[..., 2:4]) + m(a[..., 2:4], b[..., 0:2])) % 3
    return np.concatenate([lo, hi], axis=-1)


def _z9_alpha_gamma_form(a, b):
    m = Z9_ALPHA.mul
    pre = (m(a[..., 0:2], b[..., 0:2]) + 3 * m(a[..., 2:4], b[..., 2:4])) % 9
    return Z9_ALPHA.trace(pre)


Z9_ALPHA_GAMMA = OracleRing("Z9[alpha,gamma]", (9, 9, 3, 3), 9, mul=_z9_alpha_gamma_mul, form=_z9_alpha_gamma_form)


# -- groups ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleGroup:
    """Abelian group Z_{o1} x ... as exponent tuples, indexed in a caller-supplied order."""

    orders: tuple
    order: tuple  # exponent tuple of each index

    @property
    def n(self) -> int:
        return len(self.order)

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def translate(self, h: int, v: np.ndarray) -> np.ndarray:
        """(h v)_g = v_{g - h}."""
        idx = {t: i for i, t in enumerate(self.order)}
        out = np.empty_like(v)
        for i, g in enumerate(self.order):
            out[..., i, :] = v[..., idx[self.add(g, self.neg(self.order[h]))], :]
        return out


def cyclic_group(n: int) -> OracleGroup:
    return OracleGroup((n,), tuple((i,) for i in range(n)))


def product_group(orders) -> OracleGroup:
    """Mixed-radix order, first factor most significant."""
    return OracleGroup(tuple(orders), tuple(itertools.product(*[range(o) for o in orders])))


# -- codes and duals ------------------------------------------------------------------------------


def ambient_elements(ring: OracleRing, n: int) -> np.ndarray:
    """All of S[G] as an array (|S|^n, n, dim)."""
    elems = ring.all_elements()
    idx = np.array(list(itertools.product(range(len(elems)), repeat=n)), dtype=np.int64)
    return elems[idx]


def form(ring: OracleRing, v, w) -> np.ndarray:
    """Coordinate-wise pairing summed over the group."""
    return ring.form(v, w).sum(axis=-1) % ring.char


def left_code_spanning_set(ring: OracleRing, G: OracleGroup, gens) -> np.ndarray:
    """Additive generators of the smallest left-closed code containing gens (R = Z/char)."""
    return np.array([G.translate(h, np.asarray(x)) for x in gens for h in range(G.n)])


def additive_closure(ring: OracleRing, span: np.ndarray) -> set:
    """All Z-combinations of the rows, as a set of byte keys."""
    moduli = np.array(ring.moduli)
    n = span.shape[1]
    zero = np.zeros((1, n, ring.dim), dtype=np.int64)
    cur = zero
    for x in span:
        mult = np.array([(k * x) % moduli for k in range(ring.char)])
        cur = ((cur[:, None] + mult[None]) % moduli).reshape(-1, n, ring.dim)
        cur = np.unique(cur, axis=0)
    return {c.tobytes() for c in cur}


def brute_dual(ring: OracleRing, G: OracleGroup, gens, everything: np.ndarray) -> np.ndarray:
    """{w : x (*) w = 0 for every x in the left code generated by gens}, by exhaustive scan."""
    spanning = left_code_spanning_set(ring, G, gens)
    keep = np.ones(len(everything), dtype=bool)
    for x in spanning:
        keep &= form(ring, x[None], everything) == 0
    return everything[keep]


# -- idempotents of Z_{p^2}[C_n] ---------------------------------------------------------------


def cyclic_mul(a, b, mod: int) -> np.ndarray:
    n = len(a)
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            out[(i + j) % n] += a[i] * b[j]
    return out % mod


def idempotents_mod_p(p: int, n: int) -> list:
    """Every idempotent of F_p[C_n] by exhaustive search."""
    found = []
    for v in itertools.product(range(p), repeat=n):
        a = np.array(v, dtype=np.int64)
        if np.array_equal(cyclic_mul(a, a, p), a):
            found.append(a)
    return found


def primitive_idempotents(p: int, e: int, n: int) -> list:
    """Primitive idempotents of Z_{p^e}[C_n], lifted from F_p[C_n] by x -> 3x^2 - 2x^3."""
    ids = [a for a in idempotents_mod_p(p, n) if a.any()]

    def le(a, b):  # a = a*b means a sits under b
        return np.array_equal(cyclic_mul(a, b, p), a)

    prim = [a for a in ids if not any(le(b, a) and not np.array_equal(a, b) for b in ids)]
    mod = p**e
    lifted = []
    for a in prim:
        x = a.copy()
        for _ in range(e):
            x2 = cyclic_mul(x, x, mod)
            x = (3 * x2 - 2 * cyclic_mul(x2, x, mod)) % mod
        lifted.append(x)
    return lifted


# -- dual basis by search ---------------------------------------------------------------------------


def brute_dual_basis(ring: OracleRing, basis) -> list:
    """The unique (b0*, b1*) with Tr(b_i b_j*) = delta_ij, found by scanning the ring."""
    elems = ring.all_elements()
    out = []
    for j in range(len(basis)):
        target = [1 if i == j else 0 for i in range(len(basis))]
        hits = [y for y in elems if all(int(ring.form(np.array(b), y)) == target[i] for i, b in enumerate(basis))]
        assert len(hits) == 1
        out.append(hits[0].tolist())
    return out
