import numpy as np
import pytest

import dual_harness
import oracles
from chaincodes.codes import CodeAmbient, acp_check, acp_duality_check, is_weakly_free
from chaincodes.errors import AmbientMismatch, NotLeftClosed, SidednessViolation
from chaincodes.groups import cyclic, symmetric
from chaincodes.properties import random_code, random_element
from chaincodes.rings import build_tower

Z4 = {"p": 2, "e": 2}
Z9 = {"p": 3, "e": 2}
Z9_ALPHA = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}}
Z9_GAMMA = {"p": 3, "e": 2, "eisenstein2": {"g": [6, 0, 1], "t": 1}}
TOWER = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}, "eisenstein2": {"g": [6, 0, 1], "t": 1}}


def amb(spec, G):
    return CodeAmbient(build_tower(spec), G)


@pytest.mark.parametrize("rname,gname", [("Z4", "C2"), ("Z9[gamma]", "C2"), ("GR(4,2)", "C2"), ("Z8", "C3")])
def test_dual_matches_exhaustive_scan(rname, gname):
    spec, oring = dual_harness.RINGS[rname]
    orders, make = dual_harness.GROUPS[gname]
    dc = dual_harness.DualComparison(spec, oring, orders, make)
    rng = np.random.default_rng(11)
    for _ in range(10):
        res = dc.compare(dual_harness.random_generators(oring, dc.ogroup.n, rng))
        assert all(res.values()), res


def test_size_sum_and_intersection_by_enumeration():
    a = amb(Z4, cyclic(2))
    o = oracles.zn(4)
    G = oracles.cyclic_group(2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        g1 = [o.canon(rng.integers(0, 4, (2, 1)))]
        g2 = [o.canon(rng.integers(0, 4, (2, 1)))]
        C, D = a.code(g1), a.code(g2)
        sc = oracles.additive_closure(o, oracles.left_code_spanning_set(o, G, g1))
        sd = oracles.additive_closure(o, oracles.left_code_spanning_set(o, G, g2))
        assert C.size == len(sc) and D.size == len(sd)
        assert C.intersect(D).size == len(sc & sd)
        both = oracles.left_code_spanning_set(o, G, g1 + g2)
        assert C.plus(D).size == len(oracles.additive_closure(o, both))


def test_membership_and_elements():
    a = amb(Z9_GAMMA, cyclic(2))
    C = a.code([a.SG.parse([[1, 1], 0], "S").coeffs], "left")
    elems = list(C.elements())
    assert len(elems) == C.size
    assert all(C.contains(x) for x in elems)


def test_left_but_not_right():
    t = build_tower(Z9_ALPHA)
    a = CodeAmbient(t, symmetric(3))
    x = np.zeros((6, t.S.dim), dtype=np.int64)
    x[0] = t._mono("S", u=1)
    x[3] = t.S.neg(x[0])
    C = a.code([x], "left")
    assert C.is_left and not C.is_right and C.sidedness == "left"
    assert a.code([x], "two-sided").is_two_sided


def test_dual_requires_left_closure():
    a = amb(Z9_ALPHA, symmetric(3))
    rng = np.random.default_rng(3)
    C = a.code([random_element(a, rng)], "right")
    if not C.is_left:
        with pytest.raises(NotLeftClosed):
            C.dual()
    D = C.dual(require_left=False)
    assert C.size * D.size == a.size


def test_dual_is_left_and_double_dual_nonabelian():
    a = amb(TOWER, symmetric(3))
    rng = np.random.default_rng(4)
    for _ in range(5):
        C = random_code(a, rng)
        D = C.dual()
        assert D.is_left
        assert D.dual() == C
        assert C.size * D.size == a.size


def test_theta_transports_duality():
    a = amb(TOWER, symmetric(3))
    rng = np.random.default_rng(5)
    for _ in range(5):
        C = random_code(a, rng)
        img = C.mixed_image()
        assert img.size == C.size
        assert a.transported_dual(C).span == img.dual().span
        # the basis (1, alpha) is not self-dual, so the same-basis image differs
        assert C.dual().mixed_image() != img.dual()
        assert img.wp() == C.mu().mixed_image()


def test_trace_annihilator_gives_dual():
    a = amb(Z9_ALPHA, cyclic(3))
    rng = np.random.default_rng(6)
    for _ in range(8):
        C = random_code(a, rng)
        assert C.dual() == a.trace_annihilator(C).mu()


def test_self_orthogonal_generators_by_search():
    a = amb(Z9_ALPHA, cyclic(2))
    found = 0
    for x in a.SG.elements():
        flat = np.asarray(x).reshape(-1)
        if not flat.any() or not a.is_self_orthogonal_generator(flat):
            continue
        C = a.code([flat], "left")
        assert C.le(C.dual())
        found += 1
        if found == 25:
            break
    assert found == 25


def test_g_shift_law_exhaustive_small():
    a = amb(Z9_GAMMA, cyclic(2))
    elems = [np.asarray(x) for x in a.SG.elements()]
    rng = np.random.default_rng(8)
    ws = [elems[i] for i in rng.integers(0, len(elems), 30)]
    for v in elems:
        for w in ws:
            lhs = a.inner_star(a.SG.left_translate(1, v), w)
            rhs = a.inner_star(v, a.SG.left_translate(int(a.group.inv[1]), w))
            assert np.array_equal(lhs, rhs)


def test_pairing_is_symmetric():
    a = amb(TOWER, symmetric(3))
    rng = np.random.default_rng(9)
    for _ in range(200):
        v, w = random_element(a, rng), random_element(a, rng)
        assert np.array_equal(a.inner_star(v, w), a.inner_star(w, v))


def test_module_type_and_weak_freeness():
    a = amb(TOWER, cyclic(2))
    full = a.full_code()
    # Z9^4 free part from the head slots, Z3^4 from the truncated tail
    assert full.mixed_image().module_type() == (4, 4)
    assert full.mixed_image().is_weakly_free()
    gamma = a.tower._mono("S", j=1)
    C = a.code([a.SG.scale(gamma, a.SG.one().coeffs)], "left", "S")
    assert is_weakly_free(C.mixed_image().module_type(), True)
    three = a.code([a.SG.scale(a.tower.S.vec(3), a.SG.one().coeffs)], "left", "S")
    assert three.module_type()[0] == 0


def test_acp_counterexample_z4():
    a = amb(Z4, cyclic(2))
    C, D = a.code([[1, 1]]), a.code([[1, 3]])
    res = acp_check(C, D)
    assert (C.size, D.size, C.plus(D).size) == (4, 4, 8)
    assert not res.is_acp and res.witness_kind == "nonzero_intersection"
    assert D.dual() == C and C.mu() == D.dual()
    dc = acp_duality_check(C, D)
    assert dc.mu_C_equals_D_dual and not dc.acp and dc.consistent_with_characterisation


def test_acp_when_two_is_invertible():
    a = amb(Z9, cyclic(2))
    C, D = a.code([[1, 1]]), a.code([[1, 8]])
    assert acp_check(C, D).is_acp
    assert C.mu() == D.dual()


def test_sidedness_violation():
    a = amb(Z4, symmetric(3))  # p = 2 divides 6
    t = a.tower
    x = np.zeros((6, t.S.dim), dtype=np.int64)
    x[0], x[3] = 1, 3
    C = a.code([x], "left")
    assert not C.is_two_sided
    with pytest.raises(SidednessViolation):
        acp_duality_check(C, a.zero_code())


def test_codes_from_different_ambients_do_not_mix():
    a, b = amb(Z4, cyclic(2)), amb(Z4, cyclic(2))
    with pytest.raises(AmbientMismatch):
        a.code([[1, 1]]).plus(b.code([[1, 1]]))


def test_residue_acp_does_not_lift():
    # residue images F3 and 0 form an ACP of F3, yet 3Z9 sits inside both lifts
    a, res = amb(Z9, cyclic(1)), amb({"p": 3, "e": 1}, cyclic(1))
    C, D = a.code([[1]]), a.code([[3]])
    assert acp_check(res.code([[1]]), res.code([[0]])).is_acp
    assert not acp_check(C, D).is_acp


def test_duality_characterisation_fails_both_ways():
    a = amb(Z9, cyclic(1))
    C = a.code([[3]])
    dc = acp_duality_check(C, C)
    assert dc.mu_C_equals_D_dual and not dc.acp

    b = amb(Z9_ALPHA, cyclic(1))
    C, D = b.code([[1, 0]]), b.code([[0, 1]])
    dc = acp_duality_check(C, D)
    assert dc.acp and not dc.mu_C_equals_D_dual
    assert not dc.consistent_with_characterisation
