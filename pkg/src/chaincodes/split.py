"""Splitting S = R_alpha[g] into untruncated and truncated slots.

For x in S with canonical g-slots x_0..x_{k-1} (each in R_alpha):

* ``xi`` returns (x_0..x_{t-1} | x_t mod m..x_{k-1} mod m) where the tail
  lives in R_alpha / g1^(s1-1);
* ``theta`` further expands every slot in the Galois basis, placing the
  coordinate for (slot i, basis index u) at position i*l + u;
* ``chi`` sends the reduced ring back into R_alpha by z -> g1 * lift(z).

The class also holds the R-valued pairing used for duality,

    <<x, y>> = Tr( sum_{i<t} x_i y_i + g1 * sum_{j>=t} x_j y_j ),

tabulated as a structure tensor on monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .howell import Span
from .rings import ChainRing, RingElement, Tower
from .trace import GaloisBasis, GaloisLayer


@dataclass
class MixedVector:
    """Element of R^(t*l) x Rbar^((k-t)*l)."""

    head: list
    tail: list

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.head), len(self.tail)

    def to_json(self) -> dict:
        return {"head": [np.asarray(h).tolist() for h in self.head],
                "tail": [np.asarray(t).tolist() for t in self.tail]}


class SplitMaps:
    """All slot-splitting maps of a tower for a chosen Galois basis."""

    def __init__(self, tower: Tower, beta: Optional[Sequence] = None):
        self.tower = tower
        self.S, self.Ra, self.R = tower.S, tower.Ralpha, tower.R
        self.Rbar, self.Ra_bar = tower.Rbar, tower.Ralpha_bar
        self.k, self.t, self.l = tower.k, tower.t_split, tower.l
        self.block = self.Ra.dim
        self.layer = GaloisLayer(tower, self.Ra, self.R)
        self.reduced_layer = GaloisLayer(tower, self.Ra_bar, self.Rbar)
        self.basis: GaloisBasis = self.layer.dual_basis(beta)
        self.reduced_basis: GaloisBasis = self.reduced_layer.dual_basis(
            [self.Ra_bar.canon(b) for b in self.basis.beta]
        )
        self.gamma1 = self.R.embed(self.R.pi, self.Ra)

    # -- slots ---------------------------------------------------------------
    def slots(self, x) -> list[np.ndarray]:
        x = self.S.canon(x)
        return [self.Ra.canon(x[j * self.block : (j + 1) * self.block]) for j in range(self.k)]

    def from_slots(self, slots: Sequence) -> np.ndarray:
        v = np.zeros(self.S.dim, dtype=np.int64)
        for j, s in enumerate(slots):
            v[j * self.block : (j + 1) * self.block] = s
        return self.S.canon(v)

    def xi(self, x) -> MixedVector:
        sl = self.slots(x)
        return MixedVector(sl[: self.t], [self.Ra_bar.canon(s) for s in sl[self.t :]])

    def xi_inverse(self, mv: MixedVector) -> np.ndarray:
        return self.from_slots(list(mv.head) + list(mv.tail))

    # -- theta ---------------------------------------------------------------
    @property
    def n_head(self) -> int:
        return self.t * self.l

    @property
    def n_tail(self) -> int:
        return (self.k - self.t) * self.l

    @property
    def n_comp(self) -> int:
        return self.k * self.l

    def theta(self, x) -> MixedVector:
        mv = self.xi(x)
        head = [c for s in mv.head for c in self.basis.coords(s)]
        tail = [c for s in mv.tail for c in self.reduced_basis.coords(s)]
        return MixedVector(head, tail)

    def theta_inverse(self, mv: MixedVector) -> np.ndarray:
        comps = list(mv.head) + list(mv.tail)
        slots = []
        for j in range(self.k):
            coords = [self.R.canon(c) for c in comps[j * self.l : (j + 1) * self.l]]
            slots.append(self.basis.combine(coords))
        return self.from_slots(slots)

    @cached_property
    def theta_matrix(self) -> np.ndarray:
        """Z_N-matrix of theta on S-coordinates; output blocks of size R.dim per component."""
        dR = self.R.dim
        M = np.zeros((self.S.dim, self.n_comp * dR), dtype=np.int64)
        for m in range(self.S.dim):
            mono = np.zeros(self.S.dim, dtype=np.int64)
            mono[m] = 1
            mv = self.theta(mono)
            for c, v in enumerate(list(mv.head) + list(mv.tail)):
                M[m, c * dR : (c + 1) * dR] = v
        return M

    def component_ring(self, c: int) -> ChainRing:
        return self.R if c < self.n_head else self.Rbar

    def mixed_rel_rows(self) -> np.ndarray:
        """Relations of R^(t*l) x Rbar^((k-t)*l) in the concatenated coordinates."""
        dR = self.R.dim
        rows = []
        for c in range(self.n_comp):
            ring = self.component_ring(c)
            for r in ring.rel.rows:
                v = np.zeros(self.n_comp * dR, dtype=np.int64)
                v[c * dR : (c + 1) * dR] = r
                rows.append(v)
        return np.array(rows, dtype=np.int64).reshape(-1, self.n_comp * dR)

    # -- the commuting square --------------------------------------------------
    @cached_property
    def frob_S(self) -> np.ndarray:
        """Frobenius on S acting slot-wise (fixes g)."""
        F = self.layer.frob_matrix
        return np.kron(np.eye(self.k, dtype=np.int64), F) % self.S.N

    @cached_property
    def trace_S(self) -> np.ndarray:
        T = self.layer.trace_matrix
        return np.kron(np.eye(self.k, dtype=np.int64), T) % self.S.N

    def theta_via_coordinates_first(self, x) -> MixedVector:
        """Expand in the basis over R[g] first, then split each coordinate, then reorder."""
        S = self.S
        x = S.canon(x)
        coords = []
        for bs in self.basis.beta_star:
            prod = S.mul(x, self.Ra.embed(bs, S))
            coords.append(S.canon(prod @ self.trace_S))
        dR = self.R.dim
        head, tail = [None] * self.n_head, [None] * self.n_tail
        for u, c in enumerate(coords):
            for j in range(self.k):
                blk = c[j * self.block : j * self.block + dR]
                if j < self.t:
                    head[j * self.l + u] = self.R.canon(blk)
                else:
                    tail[(j - self.t) * self.l + u] = self.Rbar.canon(blk)
        return MixedVector(head, tail)

    # -- chi -------------------------------------------------------------------
    def chi(self, z) -> np.ndarray:
        """z -> g1 * lift(z), from R_alpha/g1^(s1-1) into g1*R_alpha."""
        return self.Ra.mul(self.gamma1, np.asarray(z, dtype=np.int64))

    def chi_digits(self, z) -> np.ndarray:
        """Same map via Teichmuller digits, identifying residue representatives."""
        Rb, Ra = self.Ra_bar, self.Ra
        if Rb.size <= 1:
            return Ra.zero_vec
        acc = Ra.zero_vec
        pw = self.gamma1
        for digit in Rb.gamma_adic(z):
            acc = Ra.add(acc, Ra.mul(Ra.teich(digit), pw))
            pw = Ra.mul(pw, self.gamma1)
        return acc

    # -- pairings --------------------------------------------------------------
    def ast(self, x, y) -> np.ndarray:
        """Pre-trace value in R_alpha of the slot pairing."""
        Ra = self.Ra
        xs, ys = self.slots(x), self.slots(y)
        acc = Ra.zero_vec
        tail = Ra.zero_vec
        for j in range(self.k):
            prod = Ra.mul(xs[j], ys[j])
            if j < self.t:
                acc = Ra.add(acc, prod)
            else:
                tail = Ra.add(tail, prod)
        return Ra.add(acc, Ra.mul(self.gamma1, tail))

    def pairing(self, x, y) -> np.ndarray:
        return self.layer.trace(self.ast(x, y))

    @cached_property
    def pairing_tensor(self) -> np.ndarray:
        """F[m, m'] = <<mono_m, mono_m'>> in R-coordinates."""
        D, dR = self.S.dim, self.R.dim
        F = np.zeros((D, D, dR), dtype=np.int64)
        eye = np.eye(D, dtype=np.int64)
        for m in range(D):
            for m2 in range(m, D):
                v = self.pairing(eye[m], eye[m2])
                F[m, m2] = F[m2, m] = v
        return F

    @cached_property
    def ast_tensor(self) -> np.ndarray:
        D = self.S.dim
        F = np.zeros((D, D, self.Ra.dim), dtype=np.int64)
        eye = np.eye(D, dtype=np.int64)
        for m in range(D):
            for m2 in range(m, D):
                F[m, m2] = F[m2, m] = self.ast(eye[m], eye[m2])
        return F

    # -- mixed-space Euclidean form ---------------------------------------------
    def euclid_value(self, a: Sequence, b: Sequence) -> np.ndarray:
        """R-valued Euclidean form on component lists (tail products scaled by g1)."""
        R = self.R
        acc = R.zero_vec
        for c in range(self.n_comp):
            prod = R.mul(a[c], b[c])
            if c >= self.n_head:
                prod = R.mul(R.pi, prod)
            acc = R.add(acc, prod)
        return acc

    @cached_property
    def euclid_tensor(self) -> np.ndarray:
        """E[c, m, m'] for monomials m, m' of R in component c."""
        R, dR = self.R, self.R.dim
        E = np.zeros((self.n_comp, dR, dR, dR), dtype=np.int64)
        eye = np.eye(dR, dtype=np.int64)
        for c in range(self.n_comp):
            for m in range(dR):
                for m2 in range(dR):
                    prod = R.mul(eye[m], eye[m2])
                    if c >= self.n_head:
                        prod = R.mul(R.pi, prod)
                    E[c, m, m2] = prod
        return E
