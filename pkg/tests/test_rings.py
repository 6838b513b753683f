import numpy as np
import pytest

import oracles
from chaincodes.errors import InputError, NotBasicIrreducible, NotEisenstein, NotPrime, TruncationOutOfRange
from chaincodes.rings import build_tower, first_irreducible

Z9_ALPHA = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}}
Z9_GAMMA = {"p": 3, "e": 2, "eisenstein2": {"g": [6, 0, 1], "t": 1}}
Z9_ALPHA_GAMMA = {"p": 3, "e": 2, "galois": {"f": [8, 4, 1]}, "eisenstein2": {"g": [6, 0, 1], "t": 1}}
GR4_2 = {"p": 2, "e": 2, "galois": {"f": [1, 1, 1]}}


@pytest.mark.parametrize("spec,oracle", [
    (Z9_ALPHA, oracles.Z9_ALPHA),
    (Z9_GAMMA, oracles.Z9_GAMMA),
    (Z9_ALPHA_GAMMA, oracles.Z9_ALPHA_GAMMA),
    (GR4_2, oracles.GR4_2),
])
def test_multiplication_agrees_with_hand_rules(spec, oracle):
    S = build_tower(spec).S
    assert S.size == oracle.size
    rng = np.random.default_rng(1)
    for _ in range(300):
        a = oracle.canon(rng.integers(0, 9, size=oracle.dim))
        b = oracle.canon(rng.integers(0, 9, size=oracle.dim))
        assert np.array_equal(S.canon(S.mul(a, b)), oracle.mul(a, b))


def test_invariants_of_the_running_tower():
    inv = build_tower(Z9_ALPHA_GAMMA).invariants()
    assert inv["quintuple"] == [3, 2, 2, 2, 1]
    assert inv["sizes"]["S"] == 729
    assert (inv["s1"], inv["s2"], inv["q"]) == (2, 3, 3)


def test_z4_invariants():
    t = build_tower({"p": 2, "e": 2})
    assert t.R.size == 4 and t.S.s == 2


def test_element_api():
    t = build_tower(Z9_ALPHA_GAMMA)
    a = t.parse("Ralpha", [0, 1])
    assert (a * a) == t.parse("Ralpha", [1, 5])
    x = t.parse("S", [[1, 2], [0, 1]])
    assert x.coeffs == [[1, 2], [0, 1]]
    assert x.is_unit() and (x * x.inverse()) == 1
    g = t.parse("S", [0, [1]])
    assert g.valuation() == 1 and not g.is_unit()
    assert (g * g) == 3
    assert (g * 3) == 0


def test_units_and_valuations_by_enumeration():
    S = build_tower(Z9_GAMMA).S
    elems = list(S.elements())
    assert len(elems) == 27
    units = [x for x in elems if S.is_unit(x)]
    assert len(units) == 18  # residue field F3, so 2/3 are units
    for x in units:
        assert np.array_equal(S.mul(x, S.inverse(x)), S.one_vec)
    assert max(S.valuation(x) for x in elems if x.any()) == S.s - 1


def test_teichmuller_set():
    Ra = build_tower(Z9_ALPHA).Ralpha
    T = Ra.teichmuller
    assert len(T) == 9
    for t in T:
        assert np.array_equal(Ra.power(t, 9), t)


def test_gamma_adic_roundtrip():
    S = build_tower(Z9_ALPHA_GAMMA).S
    rng = np.random.default_rng(3)
    for _ in range(50):
        x = S.canon(rng.integers(0, 9, size=S.dim))
        assert np.array_equal(S.from_gamma_adic(S.gamma_adic(x)), x)


def test_embedding_and_restriction():
    t = build_tower(Z9_ALPHA_GAMMA)
    a = t.parse("Ralpha", [4, 1]).vec
    up = t.Ralpha.embed(a, t.S)
    assert np.array_equal(t.Ralpha.restrict_from(up, t.S), a)


def test_default_galois_polynomial_is_irreducible():
    f = first_irreducible(3, 2)
    assert len(f) == 3 and f[-1] == 1
    assert all((x * x + f[1] * x + f[0]) % 3 for x in range(3))


@pytest.mark.parametrize("spec,err", [
    ({"p": 4, "e": 2}, NotPrime),
    ({"p": 3, "e": 2, "galois": {"f": [2, 0, 1]}}, NotBasicIrreducible),  # x^2 + 2 = (x-1)(x+1) mod 3
    ({"p": 3, "e": 2, "eisenstein2": {"g": [1, 0, 1], "t": 1}}, NotEisenstein),
    ({"p": 3, "e": 2, "eisenstein2": {"g": [6, 0, 1], "t": 7}}, TruncationOutOfRange),
    ({"p": 3}, InputError),
])
def test_rejects_bad_towers(spec, err):
    with pytest.raises(err):
        build_tower(spec)
