"""Exact arithmetic for chain-ring towers, group rings and additive group codes."""

__version__ = "0.1.0"

from .abelian import AbelianStructure, abelian_acp_pair, abelian_dual, cyclotomic_cosets, decompose_code
from .codes import AdditiveCode, CodeAmbient, acp_check, acp_duality_check
from .groupring import GroupRing, GroupRingElement
from .groups import GroupTable, build_group, cyclic, symmetric
from .rings import ChainRing, RingElement, Tower, build_tower
from .split import SplitMaps
from .trace import TraceAPI

__all__ = [
    "AbelianStructure",
    "AdditiveCode",
    "ChainRing",
    "CodeAmbient",
    "GroupRing",
    "GroupRingElement",
    "GroupTable",
    "RingElement",
    "SplitMaps",
    "Tower",
    "TraceAPI",
    "abelian_acp_pair",
    "abelian_dual",
    "acp_check",
    "acp_duality_check",
    "build_group",
    "build_tower",
    "cyclic",
    "cyclotomic_cosets",
    "decompose_code",
    "symmetric",
]
