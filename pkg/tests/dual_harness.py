"""Glue between library codes and the brute-force oracle (shared by several test files)."""

from __future__ import annotations

import numpy as np

import oracles
from chaincodes.codes import CodeAmbient
from chaincodes.groups import abelian_product, cyclic
from chaincodes.rings import build_tower

RINGS = {
    "Z4": ({"p": 2, "e": 2}, oracles.zn(4)),
    "Z8": ({"p": 2, "e": 3}, oracles.zn(8)),
    "Z9": ({"p": 3, "e": 2}, oracles.zn(9)),
    "Z9[gamma]": ({"p": 3, "e": 2, "eisenstein2": {"g": [6, 0, 1], "t": 1}}, oracles.Z9_GAMMA),
    "GR(4,2)": ({"p": 2, "e": 2, "galois": {"f": [1, 1, 1]}}, oracles.GR4_2),
}

GROUPS = {
    "C2": ((2,), lambda: cyclic(2)),
    "C3": ((3,), lambda: cyclic(3)),
    "C4": ((4,), lambda: cyclic(4)),
    "C2xC2": ((2, 2), lambda: abelian_product([2, 2])),
}


def ambients(max_size: int = 65536):
    """Every (ring, group) pair from the grid with |S[G]| <= max_size."""
    for rname, (spec, oring) in RINGS.items():
        for gname, (orders, make) in GROUPS.items():
            n = int(np.prod(orders))
            if oring.size**n <= max_size:
                yield rname, gname, spec, oring, orders, make


def random_generators(oring, n: int, rng, k: int | None = None) -> list:
    """1-2 random elements of S[G]; some are multiplied by p to get non-free codes."""
    k = k or int(rng.integers(1, 3))
    p = {4: 2, 8: 2, 9: 3}[oring.char]
    gens = []
    for _ in range(k):
        x = oring.canon(rng.integers(0, oring.char, size=(n, oring.dim)))
        if rng.random() < 0.3:
            x = oring.canon(x * p)
        gens.append(x)
    return gens


class DualComparison:
    """Kernel dual versus exhaustive dual for one ambient."""

    def __init__(self, spec, oring, orders, make_group):
        self.oring = oring
        self.ogroup = oracles.product_group(orders)
        self.amb = CodeAmbient(build_tower(spec), make_group())
        self.everything = oracles.ambient_elements(oring, self.ogroup.n)

    def compare(self, gens) -> dict:
        C = self.amb.code(gens, "left")
        D = C.dual()
        brute = oracles.brute_dual(self.oring, self.ogroup, gens, self.everything)
        flat = brute.reshape(len(brute), -1)
        return {
            "oracle_match": D.size == len(brute) and D.span.contains_all(flat),
            "double_dual": D.dual() == C,
            "size_product": C.size * D.size == self.amb.size,
        }
