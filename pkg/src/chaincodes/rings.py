"""Finite chain rings built as towers Z_{p^e} -> GR(p^e, d) -> R -> R_alpha -> S.

Every level is realised as a quotient of the free Z_{p^e}-module on the
monomials x^a g1^b alpha^u g^j (g1, g the two Eisenstein generators) by a
relation submodule.  Monomials are indexed so that each lower level is a
prefix of the next one:

    index = ((j * l + u) * k1 + b) * d + a

Products come from a structure-constant tensor obtained by rewriting
monomials with the defining polynomials; canonical forms come from the
Howell form of the relation module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DescentFailure,
    InputError,
    LevelMismatch,
    NotAUnit,
    NotBasicIrreducible,
    NotEisenstein,
    NotPrime,
    TruncationOutOfRange,
)
from .howell import Span, solve

LEVELS = ("Zpe", "GR", "R", "Ralpha", "S")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Tower description
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TowerSpec:
    """Declarative tower description; polynomial coefficients are little-endian.

    Coefficient entries use the nested convention: an int is a constant and
    a list holds coefficients over the top generator of the level the entry
    belongs to (x for GR, g1 for R when present), each entry one level down.
    """

    p: int
    e: int
    d: int = 1
    h: Optional[tuple] = None
    g1: Optional[tuple] = None
    t1: Optional[int] = None
    f: Optional[tuple] = None
    g: Optional[tuple] = None
    t: Optional[int] = None

    @classmethod
    def from_json(cls, obj: dict) -> "TowerSpec":
        if not isinstance(obj, dict):
            raise InputError("ring description must be a JSON object")
        try:
            p, e = int(obj["p"]), int(obj["e"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"ring description needs integer fields p and e ({exc})") from None
        d = int(obj.get("d", 1))
        e1 = obj.get("eisenstein1")
        gal = obj.get("galois")
        e2 = obj.get("eisenstein2")
        try:
            return cls(
                p=p,
                e=e,
                d=d,
                h=_freeze(obj.get("h")),
                g1=_freeze(e1["g1"]) if e1 else None,
                t1=int(e1["t1"]) if e1 else None,
                f=_freeze(gal["f"]) if gal else None,
                g=_freeze(e2["g"]) if e2 else None,
                t=int(e2["t"]) if e2 else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed extension block: {exc}") from None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "d": self.d,
            "h": _thaw(self.h),
            "eisenstein1": None if self.g1 is None else {"g1": _thaw(self.g1), "t1": self.t1},
            "galois": None if self.f is None else {"f": _thaw(self.f)},
            "eisenstein2": None if self.g is None else {"g": _thaw(self.g), "t": self.t},
        }


def _freeze(x):
    if x is None:
        return None
    if isinstance(x, (list, tuple)):
        return tuple(_freeze(v) for v in x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"polynomial coefficients must be integers or nested lists, got {x!r}")
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# A single chain ring level
# ---------------------------------------------------------------------------


class ChainRing:
    """One ring: Z_N^dim modulo ``rel`` with multiplication tensor ``T``."""

    def __init__(
        self,
        name: str,
        p: int,
        e: int,
        T: np.ndarray,
        rel: Span,
        pi: np.ndarray,
        residue_idx: Sequence[int],
        layout: tuple,
        s: Optional[int] = None,
    ):
        self.name = name
        self.p, self.e, self.N = p, e, p**e
        self.T = T
        self.dim = T.shape[0]
        self.rel = rel
        self.residue_idx = list(residue_idx)
        self.Q = p ** len(self.residue_idx)
        # layout: (d, k1, l, k) bounds of generators present at this level
        self.layout = layout
        self.pi = self.canon(pi)
        self.s = self._nilpotency() if s is None else s

    # -- element plumbing ----------------------------------------------------
    def canon(self, v) -> np.ndarray:
        return self.rel.reduce(v)

    def vec(self, x) -> np.ndarray:
        if isinstance(x, RingElement):
            if x.ring is not self:
                raise LevelMismatch(f"element of {x.ring.name} used at {self.name}")
            return x.vec
        if isinstance(x, (int, np.integer)):
            v = np.zeros(self.dim, dtype=np.int64)
            v[0] = int(x)
            return self.canon(v)
        return self.canon(np.asarray(x, dtype=np.int64))

    def elem(self, v) -> "RingElement":
        return RingElement(self, self.vec(v))

    @cached_property
    def zero_vec(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    @cached_property
    def one_vec(self) -> np.ndarray:
        return self.vec(1)

    def zero(self) -> "RingElement":
        return RingElement(self, self.zero_vec)

    def one(self) -> "RingElement":
        return RingElement(self, self.one_vec)

    def monomial(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return self.canon(v)

    def mul_raw(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.T) % self.N

    def mul(self, a, b) -> np.ndarray:
        return self.canon(self.mul_raw(a, b))

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise products of two stacks of vectors."""
        return self.canon(np.einsum("ni,nj,ijk->nk", a, b, self.T) % self.N)

    def add(self, a, b) -> np.ndarray:
        return self.canon(a + b)

    def sub(self, a, b) -> np.ndarray:
        return self.canon(a - b)

    def neg(self, a) -> np.ndarray:
        return self.canon(-a)

    def power(self, a, n: int) -> np.ndarray:
        result, base = self.one_vec, self.canon(a)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def equal(self, a, b) -> bool:
        return bool(np.array_equal(self.canon(a), self.canon(b)))

    def is_zero(self, a) -> bool:
        return not self.canon(a).any()

    @cached_property
    def mult_matrix_basis(self) -> np.ndarray:
        """M[i] = (monomial i) as a vector; used to build multiplication maps."""
        return self.canon(np.eye(self.dim, dtype=np.int64))

    def mult_map(self, a) -> np.ndarray:
        """Matrix of x -> a*x acting on row vectors (x @ M)."""
        return np.einsum("j,ijk->ik", np.asarray(a, dtype=np.int64), self.T) % self.N

    # -- sizes and enumeration ---------------------------------------------
    @property
    def log_size(self) -> int:
        return self.e * self.dim - self.rel.log_size

    @property
    def size(self) -> int:
        return self.p**self.log_size

    def elements(self):
        return self.rel.quotient_reps()

    # -- local structure ----------------------------------------------------
    def _nilpotency(self) -> int:
        x, j = self.one_vec, 0
        while x.any():
            x = self.mul(x, self.pi)
            j += 1
            if j > self.e * self.dim + 1:
                raise RuntimeError("uniformizer is not nilpotent")
        return j

    def ideal_power(self, j: int) -> Span:
        """The ideal m^j (as a preimage span including the relations)."""
        gen = self.power(self.pi, j)
        rows = self.mult_map(gen)
        return self.rel.add_rows(rows)

    @cached_property
    def _ideal_chain(self) -> list[Span]:
        return [self.ideal_power(j) for j in range(self.s + 1)]

    def valuation(self, a) -> int:
        a = self.canon(a)
        v = 0
        while v < self.s and self._ideal_chain[v + 1].contains(a):
            v += 1
        return v

    def residue_rep(self, a) -> np.ndarray:
        """Representative of the residue class built from residue monomials with digits < p."""
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.residue_idx] = a[self.residue_idx] % self.p
        return out

    def is_unit(self, a) -> bool:
        return bool((np.asarray(a)[self.residue_idx] % self.p).any()) and self.s > 0

    def residue_digits_to_vec(self, r: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for idx in self.residue_idx:
            v[idx] = r % self.p
            r //= self.p
        return self.canon(v)

    def teich(self, a) -> np.ndarray:
        """Teichmuller representative of the residue class of a."""
        t = self.canon(self.residue_rep(a))
        while True:
            nxt = self.power(t, self.Q)
            if np.array_equal(nxt, t):
                return t
            t = nxt

    @cached_property
    def teichmuller(self) -> list[np.ndarray]:
        return [self.teich(self.residue_digits_to_vec(r)) for r in range(self.Q)]

    def inverse(self, a) -> np.ndarray:
        a = self.canon(a)
        t = self.teich(a)
        if not t.any():
            raise NotAUnit(f"{self.format(a)} lies in the maximal ideal of {self.name}")
        t_inv = self.power(t, self.Q - 2) if self.Q > 2 else t
        m = self.sub(self.mul(t_inv, a), self.one_vec)
        neg_m = self.neg(m)
        acc, term = self.one_vec, self.one_vec
        for _ in range(self.s):
            term = self.mul(term, neg_m)
            if not term.any():
                break
            acc = self.add(acc, term)
        return self.mul(t_inv, acc)

    @cached_property
    def _pi_map(self) -> np.ndarray:
        return self.mult_map(self.pi)

    def divide_by_pi(self, a) -> np.ndarray:
        y = solve(self._pi_map, self.canon(a), self.p, self.e, self.rel)
        if y is None:
            raise NotAUnit(f"{self.format(a)} is not divisible by the uniformizer")
        return self.canon(y)

    def gamma_adic(self, a) -> list[np.ndarray]:
        """Teichmuller digits (x_0..x_{s-1}) with a = sum x_i * pi^i."""
        r = self.canon(a)
        digits = []
        for i in range(self.s):
            x = self.teich(r)
            digits.append(x)
            if i + 1 < self.s:
                r = self.divide_by_pi(self.sub(r, x))
        return digits

    def from_gamma_adic(self, digits: Sequence) -> np.ndarray:
        acc, pw = self.zero_vec, self.one_vec
        for x in digits:
            acc = self.add(acc, self.mul(x, pw))
            pw = self.mul(pw, self.pi)
        return acc

    # -- moving between levels ----------------------------------------------
    def embed(self, a, target: "ChainRing") -> np.ndarray:
        """Embed a vector of this ring into a ring with a longer monomial prefix."""
        v = np.zeros(target.dim, dtype=np.int64)
        v[: self.dim] = np.asarray(a, dtype=np.int64)
        return target.canon(v)

    def restrict_from(self, a, source: "ChainRing") -> np.ndarray:
        """Write an element of ``source`` lying in this prefix subring in local coordinates."""
        a = source.canon(a)
        if not a[self.dim:].any():
            return self.canon(a[: self.dim])
        emb = np.zeros((self.dim, source.dim), dtype=np.int64)
        emb[:, : self.dim] = np.eye(self.dim, dtype=np.int64)
        y = solve(emb, a, self.p, self.e, source.rel)
        if y is None:
            raise DescentFailure(f"element does not lie in {self.name}")
        return self.canon(y)

    def quotient(self, gens: Iterable, name: str, s: Optional[int] = None) -> "ChainRing":
        rows = [self.rel.rows]
        for g in gens:
            rows.append(self.mult_map(g))
        rel = Span(np.vstack(rows), self.dim, self.p, self.e)
        return ChainRing(name, self.p, self.e, self.T, rel, self.pi, self.residue_idx, self.layout, s=s)

    # -- presentation -------------------------------------------------------
    def to_nested(self, a):
        return _nest(np.asarray(self.canon(a)).tolist(), self.layout)

    def format(self, a) -> str:
        a = self.canon(a)
        d, k1, l, k = self.layout
        names = (("x", d), ("g1", k1), ("a", l), ("g", k))
        terms = []
        for idx in range(self.dim):
            c = int(a[idx])
            if not c:
                continue
            rest, mono = idx, []
            for sym, bound in names:
                exp = rest % bound
                rest //= bound
                if exp:
                    mono.append(sym if exp == 1 else f"{sym}^{exp}")
            m = "*".join(mono)
            terms.append(str(c) if not m else (m if c == 1 else f"{c}*{m}"))
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"ChainRing({self.name}, |.|={self.p}^{self.log_size}, Q={self.Q}, s={self.s})"


def _nest(flat: list, layout: tuple):
    bounds = [b for b in layout]
    # peel generators from the top; absent generators (bound 1) are skipped
    def rec(vals: list, depth: int):
        while depth >= 0 and bounds[depth] == 1:
            depth -= 1
        if depth < 0:
            return vals[0]
        stride = len(vals) // bounds[depth]
        return [rec(vals[i * stride : (i + 1) * stride], depth - 1) for i in range(bounds[depth])]

    return rec(flat, len(bounds) - 1)


class RingElement:
    """Immutable ring element bound to a :class:`ChainRing`."""

    __slots__ = ("ring", "vec")

    def __init__(self, ring: ChainRing, vec: np.ndarray):
        self.ring = ring
        self.vec = vec

    @property
    def level(self) -> str:
        return self.ring.name

    def _other(self, o) -> np.ndarray:
        return self.ring.vec(o)

    def __add__(self, o):
        return RingElement(self.ring, self.ring.add(self.vec, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return RingElement(self.ring, self.ring.sub(self.vec, self._other(o)))

    def __rsub__(self, o):
        return RingElement(self.ring, self.ring.sub(self._other(o), self.vec))

    def __mul__(self, o):
        return RingElement(self.ring, self.ring.mul(self.vec, self._other(o)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.vec))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RingElement(self.ring, self.ring.power(self.vec, n))

    def __eq__(self, o) -> bool:
        if isinstance(o, RingElement) and o.ring is not self.ring:
            return False
        try:
            return bool(np.array_equal(self.vec, self._other(o)))
        except LevelMismatch:
            return False

    def __hash__(self):
        return hash((id(self.ring), self.vec.tobytes()))

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inverse(self.vec))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.vec)

    def valuation(self) -> int:
        return self.ring.valuation(self.vec)

    def gamma_adic(self) -> list["RingElement"]:
        return [RingElement(self.ring, x) for x in self.ring.gamma_adic(self.vec)]

    @property
    def coeffs(self):
        return self.ring.to_nested(self.vec)

    def __repr__(self) -> str:
        return f"<{self.ring.name}: {self.ring.format(self.vec)}>"


# ---------------------------------------------------------------------------
# Polynomials over a residue field (used for irreducibility tests)
# ---------------------------------------------------------------------------


class _FieldPolys:
    def __init__(self, K: ChainRing):
        self.K = K

    def trim(self, a: list) -> list:
        a = list(a)
        while a and not a[-1].any():
            a.pop()
        return a

    def sub(self, a, b):
        n = max(len(a), len(b))
        z = self.K.zero_vec
        return self.trim([self.K.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])

    def mul(self, a, b):
        if not a or not b:
            return []
        out = [self.K.zero_vec] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x.any():
                continue
            for j, y in enumerate(b):
                out[i + j] = self.K.add(out[i + j], self.K.mul(x, y))
        return self.trim(out)

    def divmod(self, a, m):
        a = self.trim(a)
        m = self.trim(m)
        inv_lead = self.K.inverse(m[-1])
        q = [self.K.zero_vec] * max(len(a) - len(m) + 1, 0)
        while len(a) >= len(m):
            c = self.K.mul(a[-1], inv_lead)
            shift = len(a) - len(m)
            q[shift] = c
            a = self.sub(a, [self.K.zero_vec] * shift + [self.K.mul(c, x) for x in m])
        return self.trim(q), a

    def mod(self, a, m):
        return self.divmod(a, m)[1]

    def gcd(self, a, b):
        a, b = self.trim(a), self.trim(b)
        while b:
            a, b = b, self.mod(a, b)
        return a

    def powmod(self, a, n, m):
        result = [self.K.one_vec]
        base = self.mod(a, m)
        while n:
            if n & 1:
                result = self.mod(self.mul(result, base), m)
            base = self.mod(self.mul(base, base), m)
            n >>= 1
        return result

    def is_irreducible(self, f: list, q: int) -> bool:
        """Rabin's test for a monic polynomial over F_q."""
        f = self.trim(f)
        n = len(f) - 1
        if n <= 0:
            return False
        if n == 1:
            return True
        x = [self.K.zero_vec, self.K.one_vec]
        # x^(q^i) mod f for i = 0..n
        frob = [self.mod(x, f)]
        for _ in range(n):
            frob.append(self.powmod(frob[-1], q, f))
        if self.sub(frob[n], self.mod(x, f)):
            return False
        for r in prime_factors(n):
            h = self.sub(frob[n // r], x)
            g = self.gcd(f, h)
            if len(g) > 1:
                return False
        return True


def prime_residue_field(p: int, e: int) -> ChainRing:
    T = np.ones((1, 1, 1), dtype=np.int64)
    rel = Span([[p]], 1, p, e)
    return ChainRing("Fp", p, e, T, rel, np.array([p]), [0], (1, 1, 1, 1), s=1)


def first_irreducible(p: int, n: int) -> list[int]:
    """Lexicographically first monic irreducible of degree n over F_p (little-endian, monic)."""
    from itertools import product

    K = prime_residue_field(p, 1)
    P = _FieldPolys(K)
    for tail in product(range(p), repeat=n):
        coeffs = list(tail) + [1]
        if P.is_irreducible([np.array([c]) for c in coeffs], p):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# The tower
# ---------------------------------------------------------------------------


def _degree(poly) -> int:
    if poly is None:
        return 0
    if not isinstance(poly, (list, tuple)) or len(poly) < 2:
        raise InputError("a defining polynomial needs at least two coefficients")
    return len(poly) - 1


class Tower:
    """Ring tower with named levels; absent extensions alias the level below."""

    def __init__(self, spec: TowerSpec):
        self.spec = spec
        p, e = spec.p, spec.e
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1 or spec.d < 1:
            raise InputError("e and d must be positive")
        self.p, self.e, self.N = p, e, p**e
        h = spec.h
        if h is None:
            h = tuple([0, 1]) if spec.d == 1 else tuple(first_irreducible(p, spec.d))
        self.d = _degree(h)
        if self.d != spec.d:
            raise InputError(f"h has degree {self.d} but d = {spec.d}")
        self.k1 = _degree(spec.g1) if spec.g1 is not None else 1
        self.l = _degree(spec.f) if spec.f is not None else 1
        self.k = _degree(spec.g) if spec.g is not None else 1
        self.has_e1 = spec.g1 is not None
        self.has_gal = spec.f is not None
        self.has_e2 = spec.g is not None
        if self.has_e1 and not 0 <= spec.t1 <= self.k1:
            raise TruncationOutOfRange(f"t1 = {spec.t1} outside [0, {self.k1}]")
        if self.has_e2 and not 0 <= spec.t <= self.k:
            raise TruncationOutOfRange(f"t = {spec.t} outside [0, {self.k}]")
        self.bounds = (self.d, self.k1, self.l, self.k)
        self.dims = {
            "Zpe": 1,
            "GR": self.d,
            "R": self.d * self.k1,
            "Ralpha": self.d * self.k1 * self.l,
            "S": self.d * self.k1 * self.l * self.k,
        }
        self._memo: dict = {}
        self._cum_rel: list[np.ndarray] = []
        self._polys: dict[str, list[np.ndarray]] = {}
        self.levels: dict[str, ChainRing] = {}

        # Z_{p^e}
        self._build_level("Zpe", [], np.array([p]), (1, 1, 1, 1))
        # GR(p^e, d)
        self._polys["h"] = [self._parse("Zpe", c) for c in h]
        if int(self._polys["h"][-1][0]) % self.N != 1:
            raise InputError("h must be monic")
        Fp = self.levels["Zpe"].quotient([np.array([p])], "Fp", s=1)
        if not _FieldPolys(Fp).is_irreducible([Fp.canon(c) for c in self._polys["h"]], p):
            raise NotBasicIrreducible("h is not irreducible modulo p")
        self._build_level("GR", [], self._const("GR", p), (self.d, 1, 1, 1))
        # R
        if self.has_e1:
            self._polys["g1"] = self._eisenstein("GR", spec.g1, "g1")
            rel = [self._reduce(0, spec.t1, 0, 0) * p ** (e - 1) % self.N]
            self._build_level("R", rel, self._mono("R", b=1), (self.d, self.k1, 1, 1))
            self.s1 = self.k1 * (e - 1) + spec.t1
        else:
            self.levels["R"] = self.levels["GR"]
            self.s1 = e
        self.gamma1 = self._pad(self.levels["R"].pi, "R")
        # R_alpha
        if self.has_gal:
            R = self.levels["R"]
            self._polys["f"] = [self._parse("R", c) for c in spec.f]
            if not R.equal(self._polys["f"][-1], R.one_vec):
                raise InputError("f must be monic")
            resR = R.quotient([R.pi], "R/m", s=1)
            if not _FieldPolys(resR).is_irreducible([resR.canon(c) for c in self._polys["f"]], resR.Q):
                raise NotBasicIrreducible("f is not irreducible over the residue field of R")
            self._build_level("Ralpha", [], self._pad(R.pi, "R", "Ralpha"),
                              (self.d, self.k1, self.l, 1))
        else:
            self.levels["Ralpha"] = self.levels["R"]
        # S
        if self.has_e2:
            self._polys["g"] = self._eisenstein("R", spec.g, "g")
            g1pow = self.levels["R"].power(self.levels["R"].pi, self.s1 - 1)
            trunc = self._times_gamma(g1pow, spec.t)
            self._build_level("S", [trunc], self._mono("S", j=1), self.bounds)
            self.s2 = spec.t + (self.s1 - 1) * self.k
        else:
            self.levels["S"] = self.levels["Ralpha"]
            self.s2 = self.s1

    # -- construction helpers -------------------------------------------------
    def _index(self, a=0, b=0, u=0, j=0) -> int:
        return ((j * self.l + u) * self.k1 + b) * self.d + a

    def _unindex(self, i: int) -> tuple[int, int, int, int]:
        a = i % self.d
        i //= self.d
        b = i % self.k1
        i //= self.k1
        u = i % self.l
        j = i // self.l
        return a, b, u, j

    def _pad(self, v, frm: str, to: str = "S") -> np.ndarray:
        out = np.zeros(self.dims[to], dtype=np.int64)
        out[: len(v)] = v
        return out

    def _mono(self, level: str, a=0, b=0, u=0, j=0) -> np.ndarray:
        v = np.zeros(self.dims[level], dtype=np.int64)
        v[self._index(a, b, u, j)] = 1
        return v

    def _const(self, level: str, c: int) -> np.ndarray:
        v = np.zeros(self.dims[level], dtype=np.int64)
        v[0] = c % self.N
        return v

    def _mono_times_const(self, level, c, **exps) -> np.ndarray:
        return self._mono(level, **exps) * c % self.N

    def _times_gamma(self, v: np.ndarray, j: int) -> np.ndarray:
        """v * g^j for a vector v supported on R_alpha monomials."""
        out = np.zeros(self.dims["S"], dtype=np.int64)
        self._accumulate(out, -np.asarray(v, dtype=np.int64), 0, 0, 0, j)
        return out % self.N

    def _parse(self, level: str, obj) -> np.ndarray:
        """Nested JSON coefficient -> vector at ``level``."""
        dim = self.dims[level]
        if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
            return self._const(level, int(obj))
        if not isinstance(obj, (list, tuple)):
            raise InputError(f"bad coefficient {obj!r}")
        top = self._top_generator(level)
        if top is None:
            if len(obj) != 1:
                raise InputError(f"{level} has no generator; coefficient {obj!r} must be an integer")
            return self._parse(level, obj[0])
        sub, bound, stride = top
        if len(obj) > bound:
            raise InputError(f"coefficient list {obj!r} longer than the generator degree {bound}")
        v = np.zeros(dim, dtype=np.int64)
        for i, c in enumerate(obj):
            w = self._parse(sub, c)
            v[i * stride : i * stride + len(w)] = w
        return v % self.N

    def _top_generator(self, level: str):
        chain = [("GR", "Zpe", self.d, 1, self.d > 1),
                 ("R", "GR", self.k1, self.d, self.has_e1),
                 ("Ralpha", "R", self.l, self.d * self.k1, self.has_gal),
                 ("S", "Ralpha", self.k, self.d * self.k1 * self.l, self.has_e2)]
        order = {name: i for i, name in enumerate(LEVELS)}
        for name, sub, bound, stride, present in reversed(chain):
            if order[name] <= order[level] and present:
                return sub, bound, stride
        return None

    def _eisenstein(self, level: str, poly, label: str) -> list[np.ndarray]:
        ring = self.levels[level]
        coeffs = [ring.canon(self._parse(level, c)) for c in poly]
        if not ring.equal(coeffs[-1], ring.one_vec):
            raise NotEisenstein(f"{label} must be monic")
        for i, c in enumerate(coeffs[:-1]):
            if ring.valuation(c) < 1:
                raise NotEisenstein(f"coefficient {i} of {label} is a unit")
        if ring.s > 1 and ring.valuation(coeffs[0]) != 1:
            raise NotEisenstein(f"constant term of {label} must be a uniformizer times a unit")
        return coeffs

    def _reduce(self, a: int, b: int, u: int, j: int) -> np.ndarray:
        key = (a, b, u, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        D = self.dims["S"]
        out = np.zeros(D, dtype=np.int64)
        if j >= self.k:
            # g^k = -sum g_i g^i
            for i, gi in enumerate(self._polys["g"][:-1]):
                self._accumulate(out, gi, a, b, u, j - self.k + i)
        elif u >= self.l:
            for i, fi in enumerate(self._polys["f"][:-1]):
                self._accumulate(out, fi, a, b, u - self.l + i, j)
        elif b >= self.k1:
            for i, ci in enumerate(self._polys["g1"][:-1]):
                self._accumulate(out, ci, a, b - self.k1 + i, u, j)
        elif a >= self.d:
            for i, hi in enumerate(self._polys["h"][:-1]):
                self._accumulate(out, hi, a - self.d + i, b, u, j)
        else:
            out[self._index(a, b, u, j)] = 1
            self._memo[key] = out
            return out
        out %= self.N
        self._memo[key] = out
        return out

    def _accumulate(self, out, coeff, a, b, u, j):
        """out -= coeff * x^a g1^b alpha^u g^j (coeff lives in a lower prefix)."""
        for idx in np.nonzero(coeff)[0]:
            a2, b2, u2, j2 = self._unindex(int(idx))
            out -= int(coeff[idx]) * self._reduce(a + a2, b + b2, u + u2, j + j2)
            out %= self.N

    def _build_level(self, name: str, rel_gens: list, pi: np.ndarray, layout: tuple) -> None:
        D = self.dims[name]
        exps = [self._unindex(i) for i in range(D)]
        T = np.zeros((D, D, D), dtype=np.int64)
        for i, (a, b, u, j) in enumerate(exps):
            for i2 in range(i, D):
                a2, b2, u2, j2 = exps[i2]
                prod = self._reduce(a + a2, b + b2, u + u2, j + j2)
                if prod[D:].any():
                    raise RuntimeError("monomial reduction escaped its level")
                T[i, i2] = T[i2, i] = prod[:D]
        free = ChainRing(name, self.p, self.e, T, Span.zero(D, self.p, self.e),
                         np.zeros(D, dtype=np.int64), [], layout, s=0)
        rows = [np.zeros((0, D), dtype=np.int64)]
        gens = self._cum_rel + [self._pad(g, name) for g in rel_gens]
        self._cum_rel = gens
        for g in gens:
            g = g[:D]
            rows.append(free.mult_map(g))
        rel = Span(np.vstack(rows), D, self.p, self.e)
        residue_idx = [self._index(a, 0, u, 0) for a in range(layout[0]) for u in range(layout[2])]
        residue_idx.sort()
        ring = ChainRing(name, self.p, self.e, T, rel, np.asarray(pi[:D], dtype=np.int64), residue_idx, layout)
        self.levels[name] = ring

    # -- public API ----------------------------------------------------------
    def level(self, name: str) -> ChainRing:
        if name not in LEVELS:
            raise InputError(f"unknown level {name!r}")
        return self.levels[name]

    @property
    def R(self) -> ChainRing:
        return self.levels["R"]

    @property
    def Ralpha(self) -> ChainRing:
        return self.levels["Ralpha"]

    @property
    def S(self) -> ChainRing:
        return self.levels["S"]

    @cached_property
    def gamma1_pow(self) -> np.ndarray:
        """g1^(s1-1) as an element of R."""
        return self.R.power(self.R.pi, self.s1 - 1)

    @cached_property
    def Rbar(self) -> ChainRing:
        return self.R.quotient([self.gamma1_pow], "Rbar", s=self.s1 - 1)

    @cached_property
    def Ralpha_bar(self) -> ChainRing:
        R, Ra = self.R, self.Ralpha
        return Ra.quotient([R.embed(self.gamma1_pow, Ra)], "Ralpha_bar", s=self.s1 - 1)

    @property
    def t_split(self) -> int:
        """Number of untruncated g-slots (t), equal to k when there is no second Eisenstein layer."""
        return self.spec.t if self.has_e2 else self.k

    @property
    def q(self) -> int:
        return self.p**self.d

    def parse(self, level: str, obj) -> RingElement:
        ring = self.level(level)
        target = _owner_level(self, level)
        return ring.elem(self._parse(target, obj)[: ring.dim])

    def invariants(self) -> dict:
        K = self.k1 * self.k
        return {
            "p": self.p,
            "e": self.e,
            "d": self.d,
            "k1": self.k1,
            "t1": self.spec.t1 if self.has_e1 else None,
            "l": self.l,
            "k": self.k,
            "t": self.spec.t if self.has_e2 else None,
            "s1": self.s1,
            "s2": self.s2,
            "q": self.q,
            "quintuple": [self.p, self.e, self.d * self.l, K, self.s2 - K * (self.e - 1)],
            "sizes": {name: self.levels[name].size for name in LEVELS},
        }

    def is_pure(self) -> bool:
        """True when the second Eisenstein polynomial is a binomial x^k - g1*u."""
        if not self.has_e2:
            return True
        return all(not self.R.canon(c).any() for c in self._polys["g"][1:-1])


def _owner_level(tower: Tower, level: str) -> str:
    """Lowest level name that denotes the same ring object (alias resolution)."""
    ring = tower.levels[level]
    for name in LEVELS:
        if tower.levels[name] is ring:
            return name
    return level


def build_tower(obj: Any) -> Tower:
    """Build from a TowerSpec, a JSON dict, or a Tower (returned unchanged)."""
    if isinstance(obj, Tower):
        return obj
    if isinstance(obj, dict):
        obj = TowerSpec.from_json(obj)
    return Tower(obj)
