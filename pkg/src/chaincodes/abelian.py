"""Semisimple abelian group rings: cyclotomic cosets, idempotents, code decomposition.

Group elements of a product of cyclic groups are indexed in mixed radix
(first factor most significant), so c_a^y sits at the index whose a-th
exponent is y and all others are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .codes import AdditiveCode, CodeAmbient
from .errors import (
    DescentFailure,
    InputError,
    NotAbelian,
    NotComponentAligned,
    NotCoprime,
    NotFlagForm,
    UnsupportedTower,
)
from .groupring import GroupRing
from .howell import Span
from .rings import ChainRing, Tower, build_tower, prime_factors


# ---------------------------------------------------------------------------
# Cyclotomic cosets
# ---------------------------------------------------------------------------


def _orbit(i: int, mult: int, n: int) -> tuple[int, ...]:
    out, x = [], i % n
    while x not in out:
        out.append(x)
        x = x * mult % n
    return tuple(sorted(out))


@dataclass(frozen=True)
class Coset:
    rep: int
    elements: tuple
    parts: tuple  # q^l-cosets of rep * q^j, j = 0..len(parts)-1
    self_inverse: bool

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def split(self) -> bool:
        return len(self.parts) > 1

    @property
    def label(self) -> str:
        return ("F" if self.self_inverse else "L") + ("2" if self.split else "1")

    def to_json(self) -> dict:
        return {
            "rep": self.rep,
            "elements": list(self.elements),
            "parts": [list(p) for p in self.parts],
            "label": self.label,
        }


@dataclass(frozen=True)
class CosetSystem:
    n: int
    q: int
    l: int
    cosets: tuple

    @property
    def reps(self) -> list[int]:
        return [c.rep for c in self.cosets]

    def coset_of(self, i: int) -> Coset:
        i %= self.n
        return next(c for c in self.cosets if i in c.elements)

    def labelled(self, label: str) -> list[int]:
        return [c.rep for c in self.cosets if c.label == label]

    @property
    def F(self) -> list[int]:
        return [c.rep for c in self.cosets if c.self_inverse]

    @property
    def L(self) -> list[int]:
        return [c.rep for c in self.cosets if not c.self_inverse]

    @property
    def u(self) -> int:
        """Number of cosets that do not split over q^l."""
        return sum(1 for c in self.cosets if not c.split)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "l": self.l,
            "representatives": self.reps,
            "cosets": [c.to_json() for c in self.cosets],
            "partition": {lab: self.labelled(lab) for lab in ("F1", "F2", "L1", "L2")},
        }


def cyclotomic_cosets(n: int, q: int, l: int = 1) -> CosetSystem:
    if n < 1:
        raise InputError("modulus must be positive")
    if gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    seen: set = set()
    cosets = []
    ql = pow(q, l, n) if n > 1 else 0
    for i in range(n):
        if i in seen:
            continue
        elems = _orbit(i, q, n)
        seen.update(elems)
        g = gcd(len(elems), l)
        parts = tuple(_orbit(i * pow(q, j, n), ql, n) for j in range(g))
        cosets.append(Coset(i, elems, parts, (-i) % n in elems))
    return CosetSystem(n, q, l, tuple(cosets))


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def _is_generator(ring: ChainRing, t: np.ndarray) -> bool:
    order = ring.Q - 1
    if not t.any():
        return False
    if order == 1:
        return True
    return all(not np.array_equal(ring.power(t, order // r), ring.one_vec) for r in prime_factors(order))


class RootOfUnity:
    """A primitive n-th root of unity eta and a way to bring Frobenius-fixed sums into S."""

    def __init__(self, tower: Tower, n: int):
        self.tower, self.n = tower, n
        S = tower.S
        self.S = S
        self.m = multiplicative_order(S.Q % n if n > 1 else 1, n)
        if self.m == 1:
            self.big = S
            alpha = tower._mono("S", u=1) if tower.has_gal else None
            if alpha is not None and np.array_equal(S.power(alpha, S.Q), alpha) and _is_generator(S, alpha):
                self.zeta, self.zeta_source = alpha, "alpha"
            else:
                self.zeta, self.zeta_source = self._first_generator(S), "first_teichmuller_generator"
        else:
            deg = len(S.residue_idx) * self.m
            self.big = build_tower({"p": tower.p, "e": tower.e, "d": deg}).level("GR")
            self.zeta, self.zeta_source = self._first_generator(self.big), "first_teichmuller_generator"
        B = self.big
        self.eta = B.power(self.zeta, (B.Q - 1) // n) if n > 1 else B.one_vec
        self.eta_powers = [B.one_vec]
        for _ in range(1, n):
            self.eta_powers.append(B.mul(self.eta_powers[-1], self.eta))

    @staticmethod
    def _first_generator(ring: ChainRing) -> np.ndarray:
        for t in ring.teichmuller:
            if _is_generator(ring, t):
                return t
        raise RuntimeError("no generator of the Teichmuller group")  # unreachable

    # -- moving big -> S ---------------------------------------------------------
    @cached_property
    def _embedding(self):
        """(power table of omega in big, image tau in S) for the degree-dl subring."""
        B, S = self.big, self.S
        omega = B.power(self.zeta, (B.Q - 1) // (S.Q - 1))
        deg = len(S.residue_idx)
        # minimal polynomial of omega over Z/p^e: prod (x - omega^(p^i))
        poly = [B.one_vec]
        conj = omega
        for _ in range(deg):
            new = [B.zero_vec] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] = B.add(new[i + 1], c)
                new[i] = B.sub(new[i], B.mul(c, conj))
            poly = new
            conj = B.power(conj, B.p)
        ints = []
        for c in poly:
            if c[1:].any():
                raise DescentFailure("minimal polynomial has non-integral coefficients")
            ints.append(int(c[0]))
        tau = None
        for t in S.teichmuller:
            acc = S.zero_vec
            for c in reversed(ints):
                acc = S.add(S.mul(acc, t), S.vec(c))
            if not acc.any() and _is_generator(S, t):
                tau = t
                break
        if tau is None:
            raise DescentFailure("no image for the Teichmuller generator")
        logs = {}
        x = B.one_vec
        for k in range(S.Q - 1):
            logs[x.tobytes()] = k
            x = B.mul(x, omega)
        return logs, tau

    def to_S(self, b: np.ndarray) -> np.ndarray:
        if self.big is self.S:
            return self.S.canon(b)
        logs, tau = self._embedding
        S = self.S
        acc, pw = S.zero_vec, S.one_vec
        p_el = S.vec(self.tower.p)
        for digit in self.big.gamma_adic(b):
            if digit.any():
                k = logs.get(digit.tobytes())
                if k is None:
                    raise DescentFailure("coefficient lies outside the residue degree of S")
                acc = S.add(acc, S.mul(pw, S.power(tau, k)))
            pw = S.mul(pw, p_el)
        return acc

    def coset_sum_coeffs(self, elems: Sequence[int]) -> list[np.ndarray]:
        """(1/n) sum_{z in elems} eta^(-y z) for y = 0..n-1, as elements of S."""
        B, n = self.big, self.n
        inv_n = pow(n, -1, self.tower.N)
        out = []
        for y in range(n):
            acc = B.zero_vec
            for z in elems:
                acc = B.add(acc, self.eta_powers[(-y * z) % n])
            out.append(self.to_S(B.mul(B.vec(inv_n), acc)))
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "zeta": self.zeta_source,
                "extension_degree": len(self.big.residue_idx)}


# ---------------------------------------------------------------------------
# Idempotents
# ---------------------------------------------------------------------------


@dataclass
class Idempotent:
    label: tuple  # per factor: (rep,) or (rep, j)
    coeffs: np.ndarray  # (n, dim) at the level of the owning set
    kind: str  # "K" (all factors unsplit, coefficients in R) or "L"

    def label_str(self) -> str:
        return "x".join(f"{t[0]}" if len(t) == 1 else f"{t[0]}.{t[1]}" for t in self.label)


@dataclass
class IdempotentSet:
    level: str
    gr: GroupRing
    idempotents: list
    checks: dict = field(default_factory=dict)
    mu_table: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.idempotents)

    def __iter__(self):
        return iter(self.idempotents)

    def by_label(self, label: tuple) -> Idempotent:
        return next(e for e in self.idempotents if e.label == label)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "idempotents": [
                {"label": e.label_str(), "kind": e.kind, "coeffs": self.gr.to_json(e.coeffs)}
                for e in self.idempotents
            ],
            "mu": self.mu_table,
            "checks": self.checks,
        }


def _require_semisimple_abelian(tower: Tower, group) -> None:
    if not group.is_abelian:
        raise NotAbelian("group is not abelian")
    if not group.orders:
        raise InputError("abelian groups must be given as a product of cyclic groups")
    if gcd(group.n, tower.p) != 1:
        raise NotCoprime(f"p = {tower.p} divides |G| = {group.n}")


class AbelianStructure:
    """Cosets, roots of unity and idempotents of R[G] and S[G]."""

    def __init__(self, tower: Tower, group):
        _require_semisimple_abelian(tower, group)
        self.tower, self.group = tower, group
        self.orders = tuple(group.orders)
        self.q, self.l = tower.q, tower.l
        self.cosets = [cyclotomic_cosets(n, self.q, self.l) for n in self.orders]
        self.roots = [RootOfUnity(tower, n) for n in self.orders]
        self.RG = GroupRing(tower.R, group, tower)
        self.SG = GroupRing(tower.S, group, tower)

    def _factor_element(self, a: int, coeffs: Sequence[np.ndarray], ring: ChainRing) -> np.ndarray:
        out = np.zeros((self.group.n, ring.dim), dtype=np.int64)
        exps = [0] * len(self.orders)
        for y, c in enumerate(coeffs):
            exps[a] = y
            out[self.group.index_of(exps)] = c
        return out

    def _factor_idempotents(self, a: int, level: str) -> list[tuple[tuple, np.ndarray, bool]]:
        """(label, coefficients, split) for factor a at level R or S."""
        S, R = self.tower.S, self.tower.R
        root, cs = self.roots[a], self.cosets[a]
        out = []
        for c in cs.cosets:
            pieces = [((c.rep,), c.elements)] if (level == "R" or not c.split) else [
                ((c.rep, j), part) for j, part in enumerate(c.parts)
            ]
            for label, elems in pieces:
                coeffs = root.coset_sum_coeffs(elems)
                if level == "R":
                    coeffs = [R.restrict_from(x, S) for x in coeffs]
                    ring = R
                else:
                    ring = S
                out.append((label, self._factor_element(a, coeffs, ring), c.split))
        return out

    def factor_idempotents(self, a: int, level: str = "R") -> IdempotentSet:
        gr = self.RG if level == "R" else self.SG
        items = [Idempotent((lab,), co, "L" if (level == "S" and len(lab) == 2) else "K")
                 for lab, co, _ in self._factor_idempotents(a, level)]
        return self._finish(level, gr, items)

    def _products(self, level: str) -> list[Idempotent]:
        gr = self.RG if level == "R" else self.SG
        per_factor = [self._factor_idempotents(a, level) for a in range(len(self.orders))]
        out = []
        for combo in product(*per_factor):
            acc = gr.one().coeffs
            for _, co, _ in combo:
                acc = gr.mul(acc, co)
            label = tuple(lab for lab, _, _ in combo)
            kind = "L" if any(len(lab) == 2 for lab in label) else "K"
            out.append(Idempotent(label, acc, kind))
        return out

    @cached_property
    def idempotents_R(self) -> IdempotentSet:
        return self._finish("R", self.RG, self._products("R"))

    @cached_property
    def idempotents_S(self) -> IdempotentSet:
        ids = self._finish("S", self.SG, self._products("S"))
        ids.checks["refinement"] = self._refinement_ok()
        return ids

    def _refinement_ok(self) -> bool:
        """Split parts sum to the R-level idempotent of their coset, factor by factor."""
        S = self.tower.S
        for a in range(len(self.orders)):
            r_level = {lab: co for lab, co, _ in self._factor_idempotents(a, "R")}
            acc: dict = {}
            for lab, co, _ in self._factor_idempotents(a, "S"):
                key = (lab[0],)
                acc[key] = (acc.get(key, 0) + co) % self.tower.N
            for key, total in acc.items():
                lifted = np.array([self.tower.R.embed(r, S) for r in r_level[key]])
                if not np.array_equal(S.canon(total), lifted):
                    return False
        return True

    def _finish(self, level: str, gr: GroupRing, items: list[Idempotent]) -> IdempotentSet:
        ids = IdempotentSet(level, gr, items)
        one = gr.one().coeffs
        total = gr.zero().coeffs
        idem = orth = True
        for i, e in enumerate(items):
            total = gr.canon(total + e.coeffs)
            if not np.array_equal(gr.mul(e.coeffs, e.coeffs), e.coeffs):
                idem = False
            for f in items[i + 1 :]:
                if gr.mul(e.coeffs, f.coeffs).any():
                    orth = False
        ids.checks.update({"idempotent": idem, "orthogonal": orth, "sum_is_one": bool(np.array_equal(total, one))})
        ids.mu_table, ids.checks["mu_matches_cosets"] = self._mu_table(gr, items)
        return ids

    def _predicted_mu_label(self, label: tuple) -> tuple:
        out = []
        for a, lab in enumerate(label):
            cs = self.cosets[a]
            c = cs.coset_of(-lab[0])
            if len(lab) == 1:
                out.append((c.rep,))
            else:
                src = cs.coset_of(lab[0]).parts[lab[1]]
                neg = tuple(sorted((-z) % cs.n for z in src))
                out.append((c.rep, c.parts.index(neg)))
        return tuple(out)

    def _mu_table(self, gr: GroupRing, items: list[Idempotent]) -> tuple[dict, bool]:
        table, ok = {}, True
        for e in items:
            img = gr.mu(e.coeffs)
            hit = next((f for f in items if np.array_equal(f.coeffs, img)), None)
            table[e.label_str()] = None if hit is None else hit.label_str()
            if hit is None or hit.label != self._predicted_mu_label(e.label):
                ok = False
        return table, ok

    def mu_partner(self, ids: IdempotentSet, idx: int) -> int:
        img = ids.gr.mu(ids.idempotents[idx].coeffs)
        for j, f in enumerate(ids.idempotents):
            if np.array_equal(f.coeffs, img):
                return j
        raise RuntimeError("idempotent set is not closed under mu")

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "l": self.l,
            "factors": [
                {"order": n, "cosets": cs.to_json(), "root_of_unity": rt.to_json()}
                for n, cs, rt in zip(self.orders, self.cosets, self.roots)
            ],
        }


# ---------------------------------------------------------------------------
# Code decomposition
# ---------------------------------------------------------------------------


@dataclass
class Component:
    label: str
    kind: str
    exponents: list  # K: one per basis element; L: single entry; value s means absent

    def to_json(self) -> dict:
        return {"label": self.label, "kind": self.kind, "exponents": list(self.exponents)}


@dataclass
class Decomposition:
    ambient: CodeAmbient
    structure: AbelianStructure
    basis: list
    s: int
    components: list

    def flags(self) -> list:
        return [[int(a < self.s) for a in c.exponents] for c in self.components]

    def to_json(self) -> dict:
        Ra = self.ambient.tower.Ralpha
        return {
            "s": self.s,
            "basis": [Ra.to_nested(b) for b in self.basis],
            "components": [c.to_json() for c in self.components],
        }


def _pi_power(S: ChainRing, a: int) -> np.ndarray:
    return S.power(S.pi, a) if a > 0 else S.one_vec


def component_code(amb: CodeAmbient, ids: IdempotentSet, idx: int, exponents: Sequence[int],
                   basis: Sequence[np.ndarray]) -> AdditiveCode:
    S, Ra = amb.tower.S, amb.tower.Ralpha
    s = S.s
    e = ids.idempotents[idx]
    gens = []
    if e.kind == "K":
        for a, b in zip(exponents, basis):
            if a < s:
                scal = S.mul(_pi_power(S, a), Ra.embed(b, S))
                gens.append(amb.SG.scale(scal, e.coeffs))
        scalars = "R"
    else:
        (b,) = exponents
        if b < s:
            gens.append(amb.SG.scale(_pi_power(S, b), e.coeffs))
        scalars = "S"
    if not gens:
        return amb.zero_code()
    return amb.code(gens, closure="left", scalars=scalars)


def code_from_decomposition(dec: Decomposition) -> AdditiveCode:
    amb = dec.ambient
    ids = dec.structure.idempotents_S
    code = amb.zero_code()
    for idx, comp in enumerate(dec.components):
        code = code.plus(component_code(amb, ids, idx, comp.exponents, dec.basis))
    return AdditiveCode(amb, code.span, "two-sided")


def _project(amb: CodeAmbient, code: AdditiveCode, e: np.ndarray) -> np.ndarray:
    rows = code.span.rows.reshape(-1, amb.n, amb.SG.dim)
    return np.array([amb.SG.mul(r, e) for r in rows]).reshape(-1, amb.ncols)


def _min_valuation(S: ChainRing, rows: np.ndarray) -> int:
    best = S.s
    for r in rows.reshape(-1, S.dim):
        if r.any():
            best = min(best, S.valuation(r))
    return best


def decompose_code(code: AdditiveCode, structure: Optional[AbelianStructure] = None) -> Decomposition:
    amb = code.ambient
    st = structure or AbelianStructure(amb.tower, amb.group)
    ids = st.idempotents_S
    S = amb.tower.S
    basis = amb.maps.basis
    comps = []
    for idx, e in enumerate(ids.idempotents):
        proj = _project(amb, code, e.coeffs)
        if e.kind == "K":
            exps = []
            for bstar in basis.beta_star:
                coords = proj.reshape(-1, amb.n, S.dim)
                scal = amb.tower.Ralpha.embed(bstar, S)
                prod = np.array([amb.SG.scale(scal, c) for c in coords]).reshape(-1, S.dim)
                traced = S.canon(prod @ amb.maps.trace_S)
                exps.append(_min_valuation(S, traced))
        else:
            exps = [_min_valuation(S, proj)]
        comps.append(Component(e.label_str(), e.kind, exps))
    dec = Decomposition(amb, st, list(basis.beta), S.s, comps)
    for idx, comp in enumerate(comps):
        piece = component_code(amb, ids, idx, comp.exponents, dec.basis)
        proj = amb.from_span(amb.span(_project(amb, code, ids.idempotents[idx].coeffs)))
        if not piece == proj:
            raise NotComponentAligned(f"component {comp.label} does not have the decomposed shape")
    if not code_from_decomposition(dec) == code:
        raise NotComponentAligned("components do not reassemble the code")
    return dec


def abelian_dual(dec: Decomposition) -> Decomposition:
    """Dual read off componentwise: exponent a on component x becomes s - a on mu(x)."""
    amb = dec.ambient
    if amb.tower.k != 1:
        raise UnsupportedTower("the componentwise dual formula is implemented for towers without a second Eisenstein step")
    st = dec.structure
    ids = st.idempotents_S
    layer = amb.maps.layer
    star = layer.dual_basis(dec.basis).beta_star
    new = [None] * len(dec.components)
    for idx, comp in enumerate(dec.components):
        j = st.mu_partner(ids, idx)
        new[j] = Component(ids.idempotents[j].label_str(), comp.kind, [dec.s - a for a in comp.exponents])
    return Decomposition(amb, st, list(star), dec.s, new)


def abelian_acp_pair(dec: Decomposition) -> Decomposition:
    """Complement of a flag-form decomposition: every present piece becomes absent and vice versa."""
    for comp in dec.components:
        if any(a not in (0, dec.s) for a in comp.exponents):
            raise NotFlagForm(f"component {comp.label} has a proper power of the uniformizer")
    flipped = [Component(c.label, c.kind, [dec.s - a for a in c.exponents]) for c in dec.components]
    return Decomposition(dec.ambient, dec.structure, list(dec.basis), dec.s, flipped)


def random_decomposition(amb: CodeAmbient, structure: AbelianStructure, rng: np.random.Generator,
                         flag_only: bool = False) -> Decomposition:
    S = amb.tower.S
    s = S.s
    ids = structure.idempotents_S
    comps = []
    for e in ids.idempotents:
        width = amb.tower.l if e.kind == "K" else 1
        choices = [0, s] if flag_only else list(range(s + 1))
        comps.append(Component(e.label_str(), e.kind, [int(rng.choice(choices)) for _ in range(width)]))
    return Decomposition(amb, structure, list(amb.maps.basis.beta), s, comps)
