"""Additive group codes: R[G]-submodules of S[G] and their mixed-alphabet images.

A code is stored as the Howell form of its preimage in the flattened
coordinate space of S[G] (relations of S included), so membership,
cardinality, sums and intersections are exact span operations.

Duality uses the R-valued form

    v (*) w = sum_g << v_g, w_g >>

where << , >> is the slot pairing of :class:`~chaincodes.split.SplitMaps`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import AmbientMismatch, NotLeftClosed, SidednessViolation
from .groupring import GroupRing, GroupRingElement
from .groups import GroupTable
from .howell import Span, left_kernel
from .rings import ChainRing, Tower
from .split import SplitMaps

CLOSURES = ("none", "left", "right", "two-sided")


class CodeAmbient:
    """S[G] together with every map needed for codes and duality."""

    def __init__(self, tower: Tower, group: GroupTable, beta: Optional[Sequence] = None):
        self.tower, self.group = tower, group
        self.maps = SplitMaps(tower, beta)
        self.SG = GroupRing(tower.S, group, tower)
        self.RG = GroupRing(tower.R, group, tower)
        self.n = group.n
        self.p, self.e, self.N = tower.p, tower.e, tower.N
        self.ncols = self.SG.ncols

    def with_basis(self, beta: Sequence) -> "CodeAmbient":
        return CodeAmbient(self.tower, self.group, beta)

    @cached_property
    def dual_basis_ambient(self) -> "CodeAmbient":
        """Same S[G] with Theta taken in the trace-dual basis (self when that changes nothing)."""
        if self.maps.layer.is_trivial or self.maps.basis.is_self_dual():
            return self
        return self.with_basis(self.maps.basis.beta_star)

    def transported_dual(self, code: "AdditiveCode") -> "MixedCode":
        """Theta of dual(code), with Theta taken in the dual basis; equals Theta(code)^perp."""
        return self.dual_basis_ambient.from_span(code.dual().span).mixed_image()

    def scalar_ring(self, name: str) -> ChainRing:
        return {"R": self.tower.R, "Ralpha": self.tower.Ralpha, "S": self.tower.S}[name]

    # -- elements ----------------------------------------------------------------
    def lift(self, x) -> np.ndarray:
        """Flattened S[G]-coordinates of a group ring element at any tower level."""
        if isinstance(x, GroupRingElement):
            if x.gr.group is not self.group:
                raise AmbientMismatch("element lives over a different group")
            coeffs = x.coeffs
            if coeffs.shape[1] != self.SG.dim:
                pad = np.zeros((self.n, self.SG.dim), dtype=np.int64)
                pad[:, : coeffs.shape[1]] = coeffs
                coeffs = pad
            return self.SG.canon(coeffs).reshape(-1)
        arr = np.asarray(x, dtype=np.int64)
        return self.SG.canon(arr.reshape(self.n, self.SG.dim)).reshape(-1)

    def element(self, flat) -> GroupRingElement:
        return GroupRingElement(self.SG, self.SG.canon(np.asarray(flat).reshape(self.n, -1)))

    # -- codes ---------------------------------------------------------------------
    def span(self, rows) -> Span:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols)
        return Span(np.vstack([rows, self.SG.rel_rows]), self.ncols, self.p, self.e)

    def code(self, gens: Iterable, closure: str = "left", scalars: str = "R") -> "AdditiveCode":
        if closure not in CLOSURES:
            raise ValueError(f"closure must be one of {CLOSURES}")
        gens = [self.lift(g) for g in gens]
        rows = np.array(gens, dtype=np.int64).reshape(-1, self.ncols)
        rows = self.SG.scalar_rows(rows, self.scalar_ring(scalars))
        if closure in ("left", "two-sided"):
            rows = self.SG.translate_rows(rows, "left")
        if closure == "two-sided":
            rows = self.SG.translate_rows(self.span(rows).rows, "right")
        elif closure == "right":
            rows = self.SG.translate_rows(rows, "right")
        return AdditiveCode(self, self.span(rows), closure)

    def from_span(self, span: Span, closure: str = "none") -> "AdditiveCode":
        return AdditiveCode(self, span, closure)

    def zero_code(self) -> "AdditiveCode":
        return AdditiveCode(self, self.span(np.zeros((0, self.ncols))), "two-sided")

    def full_code(self) -> "AdditiveCode":
        return AdditiveCode(self, self.span(np.eye(self.ncols, dtype=np.int64)), "two-sided")

    @property
    def log_size(self) -> int:
        return self.e * self.ncols - self.SG.rel.log_size

    @property
    def size(self) -> int:
        return self.p**self.log_size

    # -- pairings ------------------------------------------------------------------
    def inner_ast(self, v, w) -> np.ndarray:
        """Pre-trace value in R_alpha."""
        v = np.asarray(v).reshape(self.n, -1)
        w = np.asarray(w).reshape(self.n, -1)
        val = np.einsum("gi,gj,ijk->k", v, w, self.maps.ast_tensor) % self.N
        return self.tower.Ralpha.canon(val)

    def inner_star(self, v, w) -> np.ndarray:
        v = np.asarray(v).reshape(self.n, -1)
        w = np.asarray(w).reshape(self.n, -1)
        val = np.einsum("gi,gj,ijk->k", v, w, self.maps.pairing_tensor) % self.N
        return self.tower.R.canon(val)

    def _functional_matrix(self, rows: np.ndarray) -> tuple[np.ndarray, Span]:
        """Matrix of w -> (c (*) w)_c over the given rows, plus the target relations."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n, self.SG.dim)
        r = rows.shape[0]
        F = self.maps.pairing_tensor
        dR = F.shape[2]
        A = np.einsum("rgm,mjk->gjrk", rows, F) % self.N
        A = A.reshape(self.ncols, r * dR)
        relR = self.tower.R.rel.rows
        rel = Span(np.kron(np.eye(r, dtype=np.int64), relR) if relR.shape[0] else np.zeros((0, r * dR)),
                   r * dR, self.p, self.e)
        return A, rel

    def orthogonal(self, rows) -> Span:
        """{w : c (*) w = 0 for every row c}."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols)
        if rows.shape[0] == 0:
            return self.span(np.eye(self.ncols, dtype=np.int64))
        A, rel = self._functional_matrix(rows)
        ker = left_kernel(A, self.p, self.e, rel)
        return ker.plus(self.SG.rel)

    # -- Theta and the mixed ambient ---------------------------------------------------
    @cached_property
    def mixed(self) -> "MixedAmbient":
        return MixedAmbient(self)

    # -- Galois-layer trace on S[G] ------------------------------------------------------
    @cached_property
    def trace_S_matrix(self) -> np.ndarray:
        """Coefficient-wise slot trace on flattened S[G] coordinates."""
        return np.kron(np.eye(self.n, dtype=np.int64), self.maps.trace_S) % self.N

    def left_mult_matrix(self, c) -> np.ndarray:
        """Matrix of x -> c * x on flattened coordinates (row-vector convention)."""
        c = np.asarray(c).reshape(self.n, self.SG.dim)
        D, n = self.SG.dim, self.n
        M = np.zeros((self.ncols, self.ncols), dtype=np.int64)
        T = self.tower.S.T
        mul = self.group.mul
        for h in range(n):  # x supported at group element h
            for g in range(n):
                if not c[g].any():
                    continue
                # c_g x_h contributes at g*h; block (D x D): entry [j, k] = sum_i c_g[i] T[i, j, k]
                blk = np.einsum("i,ijk->jk", c[g], T) % self.N
                gh = mul[g, h]
                M[h * D : (h + 1) * D, gh * D : (gh + 1) * D] += blk
        return M % self.N

    def trace_annihilator(self, code: "AdditiveCode") -> "AdditiveCode":
        rows = code.span.rows
        if rows.shape[0] == 0:
            return self.full_code()
        blocks = [self.left_mult_matrix(c) @ self.trace_S_matrix % self.N for c in rows]
        A = np.hstack(blocks)
        r = len(blocks)
        rel = Span(np.kron(np.eye(r, dtype=np.int64), self.SG.rel_rows) if self.SG.rel_rows.shape[0]
                   else np.zeros((0, r * self.ncols)), r * self.ncols, self.p, self.e)
        ker = left_kernel(A, self.p, self.e, rel)
        return AdditiveCode(self, ker.plus(self.SG.rel), "none")

    def is_self_orthogonal_generator(self, x) -> bool:
        """Tr(x mu(x)) == 0 in S[G] (slot trace)."""
        x = self.lift(x).reshape(self.n, -1)
        prod = self.SG.mul(x, self.SG.mu(x))
        tr = self.tower.S.canon(prod @ self.maps.trace_S)
        return not tr.any()

    # -- identities used by the property checks --------------------------------------------
    def shifted_star_sum(self, v, w) -> np.ndarray:
        """sum_h ((h^-1 v) (*) w) h as an (n, dim_R) array."""
        v = np.asarray(v).reshape(self.n, -1)
        out = np.zeros((self.n, self.tower.R.dim), dtype=np.int64)
        for h in range(self.n):
            out[h] = self.inner_star(self.SG.left_translate(int(self.group.inv[h]), v), w)
        return out


@dataclass(eq=False)
class AdditiveCode:
    ambient: CodeAmbient
    span: Span
    closure: str = "none"

    def _same(self, other: "AdditiveCode") -> None:
        if other.ambient is not self.ambient:
            raise AmbientMismatch("codes live in different ambients")

    # -- basic invariants ----------------------------------------------------------------
    @property
    def log_size(self) -> int:
        return self.span.log_size - self.ambient.SG.rel.log_size

    @property
    def size(self) -> int:
        return self.ambient.p**self.log_size

    def contains(self, x) -> bool:
        return self.span.contains(self.ambient.lift(x))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdditiveCode):
            return NotImplemented
        return other.ambient is self.ambient and self.span == other.span

    __hash__ = None  # type: ignore[assignment]

    def le(self, other: "AdditiveCode") -> bool:
        self._same(other)
        return self.span.le(other.span)

    def plus(self, other: "AdditiveCode") -> "AdditiveCode":
        self._same(other)
        return AdditiveCode(self.ambient, self.span.plus(other.span), _meet_closure(self.closure, other.closure))

    def intersect(self, other: "AdditiveCode") -> "AdditiveCode":
        self._same(other)
        return AdditiveCode(self.ambient, self.span.intersect(other.span), _meet_closure(self.closure, other.closure))

    def generators(self) -> list[np.ndarray]:
        """Howell rows that are nonzero modulo the ring relations."""
        rel = self.ambient.SG.rel
        out = []
        for r in self.span.rows:
            if not rel.contains(r):
                out.append(r)
        return out

    def elements(self):
        """All codewords as canonical flattened vectors (small codes only)."""
        seen = set()
        rel = self.ambient.SG.rel
        for x in self.span.elements():
            y = rel.reduce(x)
            key = y.tobytes()
            if key not in seen:
                seen.add(key)
                yield y

    # -- sidedness -------------------------------------------------------------------------
    def _closed(self, side: str) -> bool:
        rows = self.span.rows
        return self.span.contains_all(self.ambient.SG.translate_rows(rows, side))

    @cached_property
    def is_left(self) -> bool:
        return self._closed("left")

    @cached_property
    def is_right(self) -> bool:
        return self._closed("right")

    @property
    def is_two_sided(self) -> bool:
        return self.is_left and self.is_right

    @property
    def sidedness(self) -> str:
        if self.is_two_sided:
            return "two-sided"
        if self.is_left:
            return "left"
        if self.is_right:
            return "right"
        return "none"

    # -- transformations ----------------------------------------------------------------------
    def mu(self) -> "AdditiveCode":
        rows = self.ambient.SG.mu_rows(self.span.rows)
        flip = {"left": "right", "right": "left"}.get(self.closure, self.closure)
        return AdditiveCode(self.ambient, Span(rows, self.ambient.ncols, self.ambient.p, self.ambient.e), flip)

    def dual(self, require_left: bool = True) -> "AdditiveCode":
        if require_left and not self.is_left:
            raise NotLeftClosed("the dual is only taken for left-closed codes")
        return AdditiveCode(self.ambient, self.ambient.orthogonal(self.span.rows), "left")

    def mixed_image(self) -> "MixedCode":
        return self.ambient.mixed.image(self)

    # -- R-module type ---------------------------------------------------------------------------
    def module_type(self) -> tuple[int, ...]:
        amb = self.ambient
        g1 = amb.tower.R.embed(amb.tower.R.pi, amb.tower.S)
        return _module_type(
            lambda rows: amb.span(rows).log_size - amb.SG.rel.log_size,
            lambda rows: _scale_rows(amb.SG, rows, g1),
            self.span.rows,
            amb.tower.s1,
            amb.tower.d,
        )

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "log_p_size": self.log_size,
            "sidedness": self.sidedness,
            "generators": [self.ambient.SG.to_json(g.reshape(self.ambient.n, -1)) for g in self.generators()],
        }


def _meet_closure(a: str, b: str) -> str:
    if a == b:
        return a
    if "two-sided" in (a, b):
        return b if a == "two-sided" else a
    return "none"


def _scale_rows(gr: GroupRing, rows: np.ndarray, r: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows).reshape(-1, gr.n, gr.dim)
    M = gr.ring.mult_map(r)
    return (rows @ M % gr.N).reshape(-1, gr.ncols)


def _module_type(log_size_of, scale, rows, s: int, d: int) -> tuple[int, ...]:
    """Type (k_0..k_{s-1}) of a finite R-module from the sizes of g1^j * M."""
    sizes = []
    cur = rows
    for _ in range(s + 1):
        sizes.append(log_size_of(cur))
        cur = scale(cur)
    # c_j = (L_j - L_{j+1}) / d counts summands of length > j
    c = [(sizes[j] - sizes[j + 1]) // d for j in range(s)] + [0]
    return tuple(c[s - 1 - i] - c[s - i] for i in range(s))


def is_weakly_free(type_tuple: Sequence[int], has_tail: bool) -> bool:
    """Nonzero multiplicities only at the free slot, plus slot 1 when a truncated block exists."""
    allowed = {0, 1} if has_tail else {0}
    return all(k == 0 or i in allowed for i, k in enumerate(type_tuple))


# ---------------------------------------------------------------------------
# Mixed-alphabet ambient R[G]^(t l) x Rbar[G]^((k-t) l)
# ---------------------------------------------------------------------------


class MixedAmbient:
    """Coordinates are component-major, then group index, then R-coordinate."""

    def __init__(self, amb: CodeAmbient):
        self.amb = amb
        self.maps = amb.maps
        self.n = amb.n
        self.dR = amb.tower.R.dim
        self.n_comp = self.maps.n_comp
        self.ncols = self.n_comp * self.n * self.dR
        self.p, self.e, self.N = amb.p, amb.e, amb.N

    def block(self, c: int) -> slice:
        w = self.n * self.dR
        return slice(c * w, (c + 1) * w)

    @cached_property
    def rel_rows(self) -> np.ndarray:
        rows = []
        for c in range(self.n_comp):
            ring = self.maps.component_ring(c)
            rr = ring.rel.rows
            if rr.shape[0] == 0:
                continue
            blk = np.kron(np.eye(self.n, dtype=np.int64), rr)
            full = np.zeros((blk.shape[0], self.ncols), dtype=np.int64)
            full[:, self.block(c)] = blk
            rows.append(full)
        if not rows:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.vstack(rows)

    @cached_property
    def rel(self) -> Span:
        return Span(self.rel_rows, self.ncols, self.p, self.e)

    def span(self, rows) -> Span:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols)
        return Span(np.vstack([rows, self.rel_rows]), self.ncols, self.p, self.e)

    @cached_property
    def theta_matrix(self) -> np.ndarray:
        """Flattened S[G] -> mixed coordinates."""
        th = self.maps.theta_matrix  # (D_S, n_comp * dR)
        D = self.amb.SG.dim
        M = np.zeros((self.n * D, self.ncols), dtype=np.int64)
        for g in range(self.n):
            for c in range(self.n_comp):
                cols = slice(c * self.n * self.dR + g * self.dR, c * self.n * self.dR + (g + 1) * self.dR)
                M[g * D : (g + 1) * D, cols] = th[:, c * self.dR : (c + 1) * self.dR]
        return M

    def theta(self, flat) -> np.ndarray:
        v = np.asarray(flat, dtype=np.int64) @ self.theta_matrix % self.N
        return self.rel.reduce(v)

    def components(self, vec) -> list[np.ndarray]:
        """Split a mixed vector into (n, dR) group ring coefficient arrays."""
        vec = np.asarray(vec)
        return [vec[self.block(c)].reshape(self.n, self.dR) for c in range(self.n_comp)]

    def image(self, code: AdditiveCode) -> "MixedCode":
        rows = code.span.rows @ self.theta_matrix % self.N
        return MixedCode(self, self.span(rows))

    def product(self, component_rows: Sequence) -> "MixedCode":
        """Code whose c-th component is spanned by component_rows[c] (each (r, n*dR))."""
        rows = []
        for c, cr in enumerate(component_rows):
            cr = np.asarray(cr, dtype=np.int64).reshape(-1, self.n * self.dR)
            full = np.zeros((cr.shape[0], self.ncols), dtype=np.int64)
            full[:, self.block(c)] = cr
            rows.append(full)
        return MixedCode(self, self.span(np.vstack(rows) if rows else np.zeros((0, self.ncols))))

    def group_ring(self, c: int) -> GroupRing:
        return GroupRing(self.maps.component_ring(c), self.amb.group, self.amb.tower)

    def component_ideal_rows(self, c: int, gens: Sequence, closure: str = "left") -> np.ndarray:
        """R[G]-span (left ideal by default) of elements of the c-th component group ring."""
        gr = self.group_ring(c)
        rows = np.array([np.asarray(g, dtype=np.int64).reshape(-1) for g in gens]).reshape(-1, gr.ncols)
        rows = gr.scalar_rows(rows, self.amb.tower.R)
        if closure in ("left", "two-sided"):
            rows = gr.translate_rows(rows, "left")
        if closure in ("right", "two-sided"):
            rows = gr.translate_rows(rows, "right")
        return rows

    # -- Euclidean form ------------------------------------------------------------------------
    @cached_property
    def euclid_matrix_tensor(self) -> np.ndarray:
        """E[(c,g,m), (c,g,m'), :] block-diagonal tensor flattened on the first two axes."""
        E = self.maps.euclid_tensor  # (n_comp, dR, dR, dR)
        out = np.zeros((self.ncols, self.ncols, self.dR), dtype=np.int64)
        for c in range(self.n_comp):
            for g in range(self.n):
                base = c * self.n * self.dR + g * self.dR
                out[base : base + self.dR, base : base + self.dR] = E[c]
        return out

    def euclid(self, v, w) -> np.ndarray:
        val = np.einsum("i,j,ijk->k", np.asarray(v), np.asarray(w), self.euclid_matrix_tensor) % self.N
        return self.amb.tower.R.canon(val)

    def euclid_group_valued(self, v, w) -> np.ndarray:
        """sum_c Theta_c(v) mu(Theta_c(w)) (tail terms times g1) as an (n, dR) array."""
        R = self.amb.tower.R
        inv, mul = self.amb.group.inv, self.amb.group.mul
        out = np.zeros((self.n, self.dR), dtype=np.int64)
        vs, ws = self.components(v), self.components(w)
        for c in range(self.n_comp):
            a, b = vs[c], ws[c]
            for h in range(self.n):
                # coefficient at h of a * mu(b) = sum_g a_{h g} b_g
                acc = np.einsum("gi,gj,ijk->k", a[mul[h]], b, R.T) % self.N
                if c >= self.maps.n_head:
                    acc = R.mul_raw(R.pi, acc)
                out[h] = (out[h] + acc) % self.N
        return R.canon(out)

    def orthogonal(self, rows) -> Span:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols)
        if rows.shape[0] == 0:
            return self.span(np.eye(self.ncols, dtype=np.int64))
        Et = self.euclid_matrix_tensor
        A = np.einsum("ri,ijk->jrk", rows, Et) % self.N
        r = rows.shape[0]
        A = A.reshape(self.ncols, r * self.dR)
        relR = self.amb.tower.R.rel.rows
        rel = Span(np.kron(np.eye(r, dtype=np.int64), relR) if relR.shape[0] else np.zeros((0, r * self.dR)),
                   r * self.dR, self.p, self.e)
        return left_kernel(A, self.p, self.e, rel).plus(self.rel)

    def wp_rows(self, rows) -> np.ndarray:
        """Apply mu inside every component."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n_comp, self.n, self.dR)
        return rows[:, :, self.amb.group.inv, :].reshape(-1, self.ncols)


@dataclass(eq=False)
class MixedCode:
    ambient: MixedAmbient
    span: Span

    @property
    def log_size(self) -> int:
        return self.span.log_size - self.ambient.rel.log_size

    @property
    def size(self) -> int:
        return self.ambient.p**self.log_size

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedCode):
            return NotImplemented
        return other.ambient is self.ambient and self.span == other.span

    __hash__ = None  # type: ignore[assignment]

    def intersect(self, other: "MixedCode") -> "MixedCode":
        return MixedCode(self.ambient, self.span.intersect(other.span))

    def plus(self, other: "MixedCode") -> "MixedCode":
        return MixedCode(self.ambient, self.span.plus(other.span))

    def dual(self) -> "MixedCode":
        return MixedCode(self.ambient, self.ambient.orthogonal(self.span.rows))

    def wp(self) -> "MixedCode":
        amb = self.ambient
        return MixedCode(amb, amb.span(amb.wp_rows(self.span.rows)))

    def component_rows(self, c: int) -> np.ndarray:
        return self.span.rows[:, self.ambient.block(c)]

    def component(self, c: int) -> Span:
        """Projection onto component c, including that component's relations."""
        amb = self.ambient
        ring = amb.maps.component_ring(c)
        relc = np.kron(np.eye(amb.n, dtype=np.int64), ring.rel.rows) if ring.rel.rows.shape[0] else np.zeros((0, amb.n * amb.dR))
        return Span(np.vstack([self.component_rows(c), relc]), amb.n * amb.dR, amb.p, amb.e)

    def product_of_components(self) -> "MixedCode":
        return self.ambient.product([self.component(c).rows for c in range(self.ambient.n_comp)])

    def is_product(self) -> bool:
        return self == self.product_of_components()

    def module_type(self) -> tuple[int, ...]:
        amb = self.ambient
        R = amb.amb.tower.R

        def scale(rows):
            rows = np.asarray(rows).reshape(-1, amb.n_comp * amb.n, amb.dR)
            return (rows @ R.mult_map(R.pi) % amb.N).reshape(-1, amb.ncols)

        return _module_type(lambda rows: amb.span(rows).log_size - amb.rel.log_size, scale,
                            self.span.rows, amb.amb.tower.s1, amb.amb.tower.d)

    def is_weakly_free(self) -> bool:
        return is_weakly_free(self.module_type(), self.ambient.maps.n_tail > 0)


# ---------------------------------------------------------------------------
# Complementary pairs
# ---------------------------------------------------------------------------


@dataclass
class ACPResult:
    is_acp: bool
    intersection_size: int
    sum_size: int
    ambient_size: int
    witness: Optional[np.ndarray]
    witness_kind: Optional[str]

    def to_json(self, amb: CodeAmbient) -> dict:
        return {
            "is_acp": self.is_acp,
            "intersection_size": self.intersection_size,
            "sum_size": self.sum_size,
            "ambient_size": self.ambient_size,
            "witness_kind": self.witness_kind,
            "witness": None if self.witness is None else amb.SG.to_json(self.witness.reshape(amb.n, -1)),
        }


def acp_check(C: AdditiveCode, D: AdditiveCode) -> ACPResult:
    C._same(D)
    amb = C.ambient
    inter = C.intersect(D)
    total = C.plus(D)
    witness, kind = None, None
    if inter.size > 1:
        witness, kind = inter.generators()[0], "nonzero_intersection"
    elif total.size < amb.size:
        for i in range(amb.ncols):
            v = np.zeros(amb.ncols, dtype=np.int64)
            v[i] = 1
            if not total.span.contains(v) and not amb.SG.rel.contains(v):
                witness, kind = amb.SG.rel.reduce(v), "missing_from_sum"
                break
    return ACPResult(inter.size == 1 and total.size == amb.size, inter.size, total.size, amb.size, witness, kind)


@dataclass
class DualityCheck:
    mu_C_equals_D_dual: bool
    acp: bool
    two_sided: bool
    coprime: bool
    consistent_with_characterisation: bool
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def acp_duality_check(C: AdditiveCode, D: AdditiveCode) -> DualityCheck:
    C._same(D)
    amb = C.ambient
    two_sided = C.is_two_sided and D.is_two_sided
    coprime = gcd(amb.n, amb.p) == 1
    if not two_sided and not coprime:
        raise SidednessViolation("with p dividing |G| both codes must be two-sided")
    if not (C.is_left and D.is_left):
        raise SidednessViolation("both codes must at least be left-closed")
    mu_eq = C.mu() == D.dual()
    acp = acp_check(C, D).is_acp
    violations = []
    if two_sided and acp and not mu_eq:
        violations.append("two-sided ACP without mu(C) = dual(D)")
    if coprime and mu_eq and not acp:
        violations.append("mu(C) = dual(D) with gcd(|G|, p) = 1 but no ACP")
    return DualityCheck(mu_eq, acp, two_sided, coprime, not violations, violations)
