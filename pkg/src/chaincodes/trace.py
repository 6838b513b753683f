"""Frobenius, trace, Gram matrices and dual bases for the Galois layer R_alpha | R.

The same code serves the reduced layer (R_alpha / g1^(s1-1)) | (R / g1^(s1-1))
because both share coordinates with the unreduced rings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import LevelMismatch, SingularGram
from .rings import ChainRing, RingElement, Tower


def _horner(ring: ChainRing, coeffs: Sequence[np.ndarray], x: np.ndarray) -> np.ndarray:
    acc = ring.zero_vec
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, x), c)
    return acc


def frobenius_image_of_alpha(tower: Tower, big: ChainRing) -> np.ndarray:
    """The root of f lifting alpha^q, found by Newton iteration."""
    if big.size <= 1:
        return big.zero_vec
    f = [big.canon(_pad_to(c, big.dim)) for c in tower._polys["f"]]
    df = [big.canon(c * i) for i, c in enumerate(f)][1:]
    alpha = big.canon(_pad_to(tower._mono("Ralpha", u=1), big.dim))
    r = big.power(alpha, tower.q)
    for _ in range(big.s + 2):
        val = _horner(big, f, r)
        if not val.any():
            return r
        r = big.sub(r, big.mul(val, big.inverse(_horner(big, df, r))))
    raise RuntimeError("Newton iteration for the Frobenius image did not converge")


def _pad_to(v, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    out[: min(n, len(v))] = v[:n]
    return out


class GaloisLayer:
    """Frobenius and trace for ``big`` over the prefix subring ``small``."""

    def __init__(self, tower: Tower, big: ChainRing, small: ChainRing):
        self.tower, self.big, self.small = tower, big, small
        self.l = tower.l
        D = big.dim
        if tower.has_gal:
            sa = frobenius_image_of_alpha(tower, big)
            powers = [big.one_vec]
            for _ in range(1, self.l):
                powers.append(big.mul(powers[-1], sa))
            dR = small.dim
            M = np.zeros((D, D), dtype=np.int64)
            for u in range(self.l):
                for r in range(dR):
                    mono = np.zeros(D, dtype=np.int64)
                    mono[r] = 1
                    M[u * dR + r] = big.mul(mono, powers[u])
            self.frob_matrix = M
        else:
            self.frob_matrix = np.eye(D, dtype=np.int64)
        acc = np.zeros((D, D), dtype=np.int64)
        P = np.eye(D, dtype=np.int64)
        for _ in range(self.l):
            acc = (acc + P) % big.N
            P = P @ self.frob_matrix % big.N
        self.trace_matrix = acc

    def frobenius(self, x) -> np.ndarray:
        return self.big.canon(np.asarray(x, dtype=np.int64) @ self.frob_matrix)

    def trace_big(self, x) -> np.ndarray:
        """Trace as an element of ``big`` (it lies in the subring)."""
        return self.big.canon(np.asarray(x, dtype=np.int64) @ self.trace_matrix)

    def trace(self, x) -> np.ndarray:
        return self.small.restrict_from(self.trace_big(x), self.big)

    def trace_many(self, xs: np.ndarray) -> np.ndarray:
        """Traces of a stack, returned in subring coordinates (prefix slice after canonicalisation)."""
        t = self.big.canon(np.asarray(xs, dtype=np.int64) @ self.trace_matrix)
        return self.small.canon(t[:, : self.small.dim])

    @property
    def is_trivial(self) -> bool:
        return self.small.size <= 1

    def polynomial_basis(self) -> list[np.ndarray]:
        dR = self.small.dim
        out = []
        for u in range(self.l):
            v = np.zeros(self.big.dim, dtype=np.int64)
            v[u * dR] = 1
            out.append(self.big.canon(v))
        return out

    def gram(self, beta: Sequence) -> list[list[np.ndarray]]:
        n = len(beta)
        B = np.asarray(beta, dtype=np.int64)
        tr = self.trace_many(self.big.mul_many(np.repeat(B, n, axis=0), np.tile(B, (n, 1))))
        return [[tr[i * n + j] for j in range(n)] for i in range(n)]

    def dual_basis(self, beta: Optional[Sequence] = None) -> "GaloisBasis":
        beta = [self.big.canon(b) for b in (beta if beta is not None else self.polynomial_basis())]
        if len(beta) != self.l:
            raise SingularGram(f"a basis needs {self.l} elements, got {len(beta)}")
        gram = self.gram(beta)
        if self.is_trivial:
            zero = self.small.zero_vec
            inv = [[zero] * self.l for _ in range(self.l)]
            star = [self.big.zero_vec] * self.l
            return GaloisBasis(self, beta, star, gram, inv)
        inv = matrix_inverse(self.small, gram)
        star = []
        for j in range(self.l):
            acc = self.big.zero_vec
            for i in range(self.l):
                acc = self.big.add(acc, self.big.mul(beta[i], self.small.embed(inv[i][j], self.big)))
            star.append(acc)
        return GaloisBasis(self, beta, star, gram, inv)


@dataclass
class GaloisBasis:
    layer: GaloisLayer
    beta: list
    beta_star: list
    gram: list
    gram_inv: list

    def coords(self, x) -> list[np.ndarray]:
        """d_i(x) = Tr(x * beta*_i); coordinates of x in the basis beta."""
        big = self.layer.big
        return [self.layer.trace(big.mul(x, b)) for b in self.beta_star]

    def coords_matrix(self) -> np.ndarray:
        """Z_N-linear matrix for x -> concatenated coordinates (shape big.dim x l*small.dim)."""
        big, small = self.layer.big, self.layer.small
        out = np.zeros((big.dim, self.layer.l * small.dim), dtype=np.int64)
        for m in range(big.dim):
            mono = np.zeros(big.dim, dtype=np.int64)
            mono[m] = 1
            for i, c in enumerate(self.coords(mono)):
                out[m, i * small.dim : (i + 1) * small.dim] = c
        return out

    def combine(self, coords: Sequence) -> np.ndarray:
        big, small = self.layer.big, self.layer.small
        acc = big.zero_vec
        for c, b in zip(coords, self.beta):
            acc = big.add(acc, big.mul(small.embed(c, big), b))
        return acc

    def dual(self) -> "GaloisBasis":
        return self.layer.dual_basis(self.beta_star)

    def is_self_dual(self) -> bool:
        return all(np.array_equal(a, b) for a, b in zip(self.beta, self.beta_star))


def matrix_inverse(ring: ChainRing, m: list[list[np.ndarray]]) -> list[list[np.ndarray]]:
    """Gauss-Jordan inversion over a chain ring, pivoting on units only."""
    n = len(m)
    a = [[ring.canon(x) for x in row] + [ring.one_vec if i == j else ring.zero_vec for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if ring.is_unit(a[r][c])), None)
        if piv is None:
            raise SingularGram("matrix is not invertible over the ring")
        a[c], a[piv] = a[piv], a[c]
        inv = ring.inverse(a[c][c])
        a[c] = [ring.mul(inv, x) for x in a[c]]
        for r in range(n):
            if r != c and a[r][c].any():
                f = a[r][c]
                a[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


class TraceAPI:
    """Convenience wrapper exposing element-level frobenius/trace/dual basis on a tower."""

    def __init__(self, tower: Tower):
        self.tower = tower

    @cached_property
    def layer(self) -> GaloisLayer:
        return GaloisLayer(self.tower, self.tower.Ralpha, self.tower.R)

    @cached_property
    def reduced_layer(self) -> GaloisLayer:
        return GaloisLayer(self.tower, self.tower.Ralpha_bar, self.tower.Rbar)

    def _check(self, x: RingElement) -> None:
        if x.ring is not self.tower.Ralpha:
            raise LevelMismatch(f"expected an element of Ralpha, got {x.ring.name}")

    def frobenius(self, x: RingElement) -> RingElement:
        self._check(x)
        return RingElement(x.ring, self.layer.frobenius(x.vec))

    def trace(self, x: RingElement) -> RingElement:
        self._check(x)
        return RingElement(self.tower.R, self.layer.trace(x.vec))

    def dual_basis(self, beta: Optional[Sequence[RingElement]] = None) -> GaloisBasis:
        if beta is not None:
            for b in beta:
                self._check(b)
            beta = [b.vec for b in beta]
        return self.layer.dual_basis(beta)

    def coords_d(self, x: RingElement, basis: Optional[GaloisBasis] = None) -> list[RingElement]:
        self._check(x)
        basis = basis or self.dual_basis()
        return [RingElement(self.tower.R, c) for c in basis.coords(x.vec)]


def frobenius(tower: Tower, x: RingElement) -> RingElement:
    return TraceAPI(tower).frobenius(x)


def trace(tower: Tower, x: RingElement) -> RingElement:
    return TraceAPI(tower).trace(x)


def dual_basis(tower: Tower, beta: Optional[Sequence[RingElement]] = None) -> GaloisBasis:
    return TraceAPI(tower).dual_basis(beta)
