"""Randomized identity checks over small ambients.

Each suite returns a dict with the number of cases run and the list of
violating cases, so callers can report rather than assert.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .abelian import (
    AbelianStructure,
    abelian_acp_pair,
    abelian_dual,
    code_from_decomposition,
    decompose_code,
    random_decomposition,
)
from .codes import AdditiveCode, CodeAmbient, acp_check
from .groups import abelian_product, cyclic, symmetric
from .rings import build_tower

Z9 = {"p": 3, "e": 2}
Z9_ALPHA = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}}
Z9_GAMMA = {"p": 3, "e": 2, "eisenstein2": {"g": [6, 0, 1], "t": 1}}
Z9_ALPHA_GAMMA = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}, "eisenstein2": {"g": [6, 0, 1], "t": 1}}
Z25 = {"p": 5, "e": 2}
Z4 = {"p": 2, "e": 2}


def random_element(amb: CodeAmbient, rng: np.random.Generator) -> np.ndarray:
    return amb.SG.canon(rng.integers(0, amb.N, size=(amb.n, amb.SG.dim)))


def _random_scalar(amb: CodeAmbient, rng: np.random.Generator) -> np.ndarray:
    """A random power of the uniformizer of S (possibly 1), so codes are not always free."""
    S = amb.tower.S
    k = int(rng.integers(0, S.s))
    return S.power(S.pi, k) if k else S.one_vec


def random_code(amb: CodeAmbient, rng: np.random.Generator, closure: str = "left", max_gens: int = 2) -> AdditiveCode:
    k = int(rng.integers(1, max_gens + 1))
    gens = [amb.SG.scale(_random_scalar(amb, rng), random_element(amb, rng)) for _ in range(k)]
    return amb.code(gens, closure)


# -- ACP characterisation ---------------------------------------------------------

COPRIME_AMBIENTS = [
    (Z9, ("cyclic", 2)),
    (Z9, ("cyclic", 4)),
    (Z9_ALPHA, ("cyclic", 2)),
    (Z9_GAMMA, ("cyclic", 2)),
    (Z25, ("symmetric", 3)),
    (Z4, ("cyclic", 3)),
]


def _group(desc):
    kind, n = desc
    return cyclic(n) if kind == "cyclic" else symmetric(n)


def acp_characterisation_suite(rng: np.random.Generator, instances: int = 100) -> dict:
    """acp(C, D) <=> mu(C) = dual(D) on two-sided pairs with gcd(|G|, p) = 1.

    Instances cycle through three generators: D = mu(C)^dual for a random
    two-sided C, idempotent complements in abelian ambients, and independent
    random two-sided pairs.
    """
    ambients = [CodeAmbient(build_tower(r), _group(g)) for r, g in COPRIME_AMBIENTS]
    assert all(gcd(a.n, a.p) == 1 for a in ambients)
    structures = {id(a): AbelianStructure(a.tower, a.group) for a in ambients if a.group.is_abelian}
    cases, violations = 0, []
    counts = {"acp": 0, "mu_eq": 0}
    for i in range(instances):
        amb = ambients[i % len(ambients)]
        mode = (i // len(ambients)) % 3
        if mode == 1 and id(amb) not in structures:
            mode = 0
        if mode == 0:
            C = random_code(amb, rng, "two-sided")
            D = C.mu().dual(require_left=False)
        elif mode == 1:
            st = structures[id(amb)]
            dec = random_decomposition(amb, st, rng, flag_only=True)
            C = code_from_decomposition(dec)
            D = code_from_decomposition(abelian_acp_pair(dec))
        else:
            C = random_code(amb, rng, "two-sided")
            D = random_code(amb, rng, "two-sided")
        acp = acp_check(C, D).is_acp
        mu_eq = C.mu() == D.dual()
        counts["acp"] += acp
        counts["mu_eq"] += mu_eq
        cases += 1
        if acp != mu_eq:
            violations.append({
                "instance": i,
                "mode": ["dual_of_mu", "idempotent_split", "independent"][mode],
                "ring": amb.tower.invariants()["quintuple"],
                "group_order": amb.n,
                "acp": acp,
                "mu_C_equals_D_dual": mu_eq,
                "log_p_sizes": [C.log_size, D.log_size],
                "C_generators": [g.tolist() for g in C.generators()],
            })
    return {"cases": cases, "violations": violations, "counts": counts}


# -- Theta and the group-valued form -------------------------------------------------


def inner_rel2_suite(rng: np.random.Generator, pairs: int = 1000, corrected: bool = False) -> dict:
    """[Theta v, Theta w]_E == sum_h ((h^-1 v) (*) w) h over Z9[alpha, gamma][S3].

    With ``corrected`` the second argument is expanded in the dual basis.
    """
    amb = CodeAmbient(build_tower(Z9_ALPHA_GAMMA), symmetric(3))
    mixed = amb.mixed
    other = amb.with_basis(amb.maps.basis.beta_star).mixed if corrected else mixed
    bad = []
    for i in range(pairs):
        v, w = random_element(amb, rng).reshape(-1), random_element(amb, rng).reshape(-1)
        lhs = mixed.euclid_group_valued(mixed.theta(v), other.theta(w))
        rhs = amb.shifted_star_sum(v, w)
        if not np.array_equal(lhs, rhs):
            bad.append(i)
    basis_self_dual = amb.maps.basis.is_self_dual()
    return {"cases": pairs, "violations": bad, "basis_self_dual": basis_self_dual}


def g_shift_suite(rng: np.random.Generator, triples: int = 1000) -> dict:
    """(g v) (*) w == v (*) (g^-1 w)."""
    amb = CodeAmbient(build_tower(Z9_ALPHA_GAMMA), symmetric(3))
    SG, inv = amb.SG, amb.group.inv
    bad = []
    for i in range(triples):
        g = int(rng.integers(0, amb.n))
        v, w = random_element(amb, rng), random_element(amb, rng)
        lhs = amb.inner_star(SG.left_translate(g, v), w)
        rhs = amb.inner_star(v, SG.left_translate(int(inv[g]), w))
        if not np.array_equal(lhs, rhs):
            bad.append(i)
    return {"cases": triples, "violations": bad}


# -- abelian round trip -----------------------------------------------------------------


def abelian_roundtrip_suite(rng: np.random.Generator, codes: int = 50) -> dict:
    setups = [(Z9, cyclic(4)), (Z9, abelian_product([8, 4]))]
    out = {}
    for ring, G in setups:
        amb = CodeAmbient(build_tower(ring), G)
        st = AbelianStructure(amb.tower, G)
        bad = []
        for i in range(codes):
            dec = random_decomposition(amb, st, rng)
            C = code_from_decomposition(dec)
            back = decompose_code(C, st)
            same = [c.exponents for c in back.components] == [c.exponents for c in dec.components]
            dual_ok = code_from_decomposition(abelian_dual(back)) == C.dual()
            if not (same and dual_ok):
                bad.append({"case": i, "roundtrip": same, "dual_matches": dual_ok})
        out[f"Z9[{'x'.join(f'C{o}' for o in G.orders)}]"] = {"cases": codes, "violations": bad}
    return out
