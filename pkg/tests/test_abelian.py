from math import gcd

import numpy as np
import pytest

import oracles
from chaincodes.abelian import (
    AbelianStructure,
    Component,
    Decomposition,
    abelian_acp_pair,
    abelian_dual,
    code_from_decomposition,
    cyclotomic_cosets,
    decompose_code,
    random_decomposition,
)
from chaincodes.codes import CodeAmbient
from chaincodes.errors import NotAbelian, NotComponentAligned, NotCoprime, NotFlagForm, UnsupportedTower
from chaincodes.groups import abelian_product, cyclic, symmetric
from chaincodes.rings import build_tower

Z9 = {"p": 3, "e": 2}
Z9_ALPHA = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}}
TOWER = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}, "eisenstein2": {"g": [6, 0, 1], "t": 1}}


def brute_cosets(n, q):
    out, seen = [], set()
    for i in range(n):
        if i not in seen:
            orbit = {i * q**j % n for j in range(n)}
            seen |= orbit
            out.append(sorted(orbit))
    return out


@pytest.mark.parametrize("n,q,l", [(4, 3, 2), (8, 3, 2), (13, 3, 3), (10, 3, 1), (15, 2, 2)])
def test_cosets_and_labels_by_definition(n, q, l):
    cs = cyclotomic_cosets(n, q, l)
    assert [list(c.elements) for c in cs.cosets] == brute_cosets(n, q)
    for c in cs.cosets:
        assert c.self_inverse == ((-c.rep) % n in c.elements)
        assert len(c.parts) == gcd(len(c.elements), l)
        assert sorted(x for part in c.parts for x in part) == list(c.elements)


def test_small_partitions():
    c4 = cyclotomic_cosets(4, 3, 2)
    assert c4.to_json()["partition"] == {"F1": [0, 2], "F2": [1], "L1": [], "L2": []}
    c8 = cyclotomic_cosets(8, 3, 2)
    assert c8.reps == [0, 1, 2, 4, 5]
    assert c8.to_json()["partition"]["L2"] == [1, 5]


def test_coset_rejects_non_coprime():
    with pytest.raises(NotCoprime):
        cyclotomic_cosets(6, 3)


@pytest.mark.parametrize("n", [4, 8])
def test_primitive_idempotents_agree_with_hensel_lift(n):
    st = AbelianStructure(build_tower(TOWER), cyclic(n))
    got = sorted(e.coeffs[:, 0].tolist() for e in st.idempotents_R)
    want = sorted(x.tolist() for x in oracles.primitive_idempotents(3, 2, n))
    assert got == want


@pytest.mark.parametrize("spec,G", [
    (TOWER, cyclic(8)),
    (Z9_ALPHA, abelian_product([4, 2])),
    ({"p": 2, "e": 2, "galois": {"f": [1, 1, 1]}}, cyclic(3)),
    ({"p": 5, "e": 2}, cyclic(6)),
])
def test_idempotent_sets_are_complete_orthogonal(spec, G):
    t = build_tower(spec)
    st = AbelianStructure(t, G)
    for ids in (st.idempotents_R, st.idempotents_S):
        assert all(ids.checks.values()), ids.checks
        gr = ids.gr
        total = np.zeros_like(ids.idempotents[0].coeffs)
        for i, a in enumerate(ids.idempotents):
            assert np.array_equal(gr.mul(a.coeffs, a.coeffs), a.coeffs)
            for b in ids.idempotents[i + 1:]:
                assert not gr.mul(a.coeffs, b.coeffs).any()
            total = gr.canon(total + a.coeffs)
        assert np.array_equal(total, gr.one().coeffs)


def test_mu_permutes_idempotents():
    st = AbelianStructure(build_tower(Z9_ALPHA), cyclic(8))
    ids = st.idempotents_S
    gr = ids.gr
    keys = [e.coeffs.tobytes() for e in ids.idempotents]
    for i, e in enumerate(ids.idempotents):
        j = st.mu_partner(ids, i)
        assert gr.mu(e.coeffs).tobytes() == keys[j]


def test_idempotents_need_abelian_group():
    with pytest.raises(NotAbelian):
        AbelianStructure(build_tower(Z9), symmetric(3))


@pytest.mark.parametrize("spec,G", [(Z9, cyclic(4)), (Z9_ALPHA, cyclic(2)), (Z9_ALPHA, cyclic(4))])
def test_roundtrip_and_dual(spec, G):
    amb = CodeAmbient(build_tower(spec), G)
    st = AbelianStructure(amb.tower, G)
    rng = np.random.default_rng(1)
    for _ in range(10):
        dec = random_decomposition(amb, st, rng)
        C = code_from_decomposition(dec)
        back = decompose_code(C, st)
        assert [c.exponents for c in back.components] == [c.exponents for c in dec.components]
        assert code_from_decomposition(abelian_dual(back)) == C.dual()


def test_flag_complement_is_an_acp():
    amb = CodeAmbient(build_tower(Z9), cyclic(4))
    st = AbelianStructure(amb.tower, amb.group)
    rng = np.random.default_rng(2)
    for _ in range(10):
        dec = random_decomposition(amb, st, rng, flag_only=True)
        C, D = code_from_decomposition(dec), code_from_decomposition(abelian_acp_pair(dec))
        assert C.intersect(D).size == 1 and C.plus(D).size == amb.size


def test_flip_requires_flag_form():
    amb = CodeAmbient(build_tower(Z9), cyclic(4))
    st = AbelianStructure(amb.tower, amb.group)
    dec = random_decomposition(amb, st, np.random.default_rng(0))
    dec.components[0] = Component(dec.components[0].label, dec.components[0].kind, [1])
    with pytest.raises(NotFlagForm):
        abelian_acp_pair(dec)


def test_misaligned_code_is_rejected():
    amb = CodeAmbient(build_tower(Z9_ALPHA), cyclic(2))
    st = AbelianStructure(amb.tower, amb.group)
    e = st.idempotents_S.idempotents[0].coeffs
    one_plus_alpha = amb.tower.S.add(amb.tower.S.one_vec, amb.tower._mono("S", u=1))
    C = amb.code([amb.SG.scale(one_plus_alpha, e)], "left")
    with pytest.raises(NotComponentAligned):
        decompose_code(C, st)


def test_componentwise_dual_needs_k_equal_one():
    amb = CodeAmbient(build_tower(TOWER), cyclic(2))
    st = AbelianStructure(amb.tower, amb.group)
    dec = Decomposition(amb, st, list(amb.maps.basis.beta), amb.tower.S.s, [])
    with pytest.raises(UnsupportedTower):
        abelian_dual(dec)
