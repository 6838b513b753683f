"""Request and report models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

# nested coefficient: an int, or a list of nested coefficients one level down
Coeff = Union[int, list]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Eisenstein1(_Strict):
    g1: list[Coeff]
    t1: int


class Galois(_Strict):
    f: list[Coeff]


class Eisenstein2(_Strict):
    g: list[Coeff]
    t: int


class RingSpec(_Strict):
    p: int
    e: int = Field(ge=1)
    d: int = Field(1, ge=1)
    h: Optional[list[int]] = None
    eisenstein1: Optional[Eisenstein1] = None
    galois: Optional[Galois] = None
    eisenstein2: Optional[Eisenstein2] = None


class GroupSpec(_Strict):
    kind: Literal["cyclic", "product", "symmetric", "table"]
    n: Optional[int] = None
    orders: Optional[list[int]] = None
    table: Optional[list[list[int]]] = None
    max_order: Optional[int] = None


class CodeSpec(_Strict):
    generators: list[list[Coeff]]
    closure: Literal["none", "left", "right", "two-sided"] = "left"
    scalars: Literal["R", "Ralpha", "S"] = "R"
    level: Literal["Zpe", "GR", "R", "Ralpha", "S"] = "S"
    basis: Optional[list[Coeff]] = None
    ring: Optional[RingSpec] = None
    group: Optional[GroupSpec] = None


class RingRequest(_Strict):
    ring: RingSpec


class GroupRequest(_Strict):
    group: GroupSpec


class TraceRequest(_Strict):
    ring: RingSpec
    element: Coeff


class DualBasisRequest(_Strict):
    ring: RingSpec
    basis: Optional[list[Coeff]] = None


class IdempotentsRequest(_Strict):
    ring: RingSpec
    group: GroupSpec


class CodeRequest(_Strict):
    ring: RingSpec
    group: GroupSpec
    code: CodeSpec


class AcpRequest(_Strict):
    ring: RingSpec
    group: GroupSpec
    code_c: CodeSpec
    code_d: CodeSpec


class VerifyRequest(_Strict):
    names: Optional[list[str]] = None


class RunReport(BaseModel):
    command: str
    inputs_digest: str
    ok: bool
    outputs: dict[str, Any]
    verdicts: dict[str, Any] = {}
    wall_time_s: Optional[float] = None


class ErrorReport(BaseModel):
    code: str
    message: str
