"""Command-line front end.

Runs commands in-process by default; with ``--server URL`` the same request
bodies are posted to a running service instead.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel, ValidationError

from . import commands
from .errors import ChainCodesError
from .schemas import (
    AcpRequest,
    CodeRequest,
    CodeSpec,
    DualBasisRequest,
    GroupRequest,
    GroupSpec,
    IdempotentsRequest,
    RingRequest,
    RingSpec,
    TraceRequest,
    VerifyRequest,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class CliInputError(Exception):
    pass


class RemoteError(ChainCodesError):
    """A library error reported by the service, carrying its original code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _read(path: Optional[str], flag: str) -> Any:
    if path is None:
        raise CliInputError(f"missing required {flag}")
    if path == "-":
        return _load_json(sys.stdin.read(), "<stdin>")
    p = Path(path)
    if not p.exists():
        raise CliInputError(f"{flag}: no such file {path}")
    return _load_json(p.read_text(), path)


def _validate(model: type[BaseModel], data: Any, source: str) -> BaseModel:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(x) for x in first["loc"])
        raise CliInputError(f"{source}: invalid field {loc or '<root>'}: {first['msg']}") from None


# -- request builders: argparse namespace -> (service path, request model) ----------------


def _ring_group(args) -> tuple[RingSpec, GroupSpec, Optional[CodeSpec]]:
    code = None
    if getattr(args, "code", None):
        code = _validate(CodeSpec, _read(args.code[0], "--code"), args.code[0])
    ring = _validate(RingSpec, _read(args.ring, "--ring"), args.ring) if args.ring else (code.ring if code else None)
    group = (_validate(GroupSpec, _read(args.group, "--group"), args.group) if args.group
             else (code.group if code else None))
    if ring is None:
        raise CliInputError("missing required --ring")
    if group is None:
        raise CliInputError("missing required --group")
    return ring, group, code


def _strip(code: CodeSpec) -> CodeSpec:
    return code.model_copy(update={"ring": None, "group": None})


def build_ring_info(args):
    return "/ring/info", RingRequest(ring=_validate(RingSpec, _read(args.ring, "--ring"), str(args.ring)))


def build_group_new(args):
    return "/group/new", GroupRequest(group=_validate(GroupSpec, _read(args.group, "--group"), str(args.group)))


def build_trace(args):
    ring = _validate(RingSpec, _read(args.ring, "--ring"), str(args.ring))
    return "/trace", TraceRequest(ring=ring, element=_load_json(args.element, "--element"))


def build_dual_basis(args):
    ring = _validate(RingSpec, _read(args.ring, "--ring"), str(args.ring))
    basis = None if args.basis is None else _load_json(args.basis, "--basis")
    return "/dual-basis", DualBasisRequest(ring=ring, basis=basis)


def build_idempotents(args):
    ring, group, _ = _ring_group(args)
    return "/idempotents", IdempotentsRequest(ring=ring, group=group)


def _code_request(path: str):
    def build(args):
        ring, group, code = _ring_group(args)
        if code is None:
            raise CliInputError("missing required --code")
        return path, CodeRequest(ring=ring, group=group, code=_strip(code))

    return build


def build_code_acp(args):
    if not args.code or len(args.code) != 2:
        raise CliInputError("code acp needs exactly two --code files")
    ring, group, c = _ring_group(args)
    d = _validate(CodeSpec, _read(args.code[1], "--code"), args.code[1])
    return "/code/acp", AcpRequest(ring=ring, group=group, code_c=_strip(c), code_d=_strip(d))


def build_verify(args):
    return "/verify/paper-examples", VerifyRequest(names=args.only)


# -- local dispatch mirrors the service routes ------------------------------------------------


def _dump(model: BaseModel) -> dict:
    return model.model_dump(exclude_none=True)


LOCAL: dict[str, Callable[[Any], dict]] = {
    "/ring/info": lambda r: commands.cmd_ring_info(_dump(r.ring)),
    "/group/new": lambda r: commands.cmd_group_new(_dump(r.group)),
    "/trace": lambda r: commands.cmd_trace(_dump(r.ring), r.element),
    "/dual-basis": lambda r: commands.cmd_dual_basis(_dump(r.ring), r.basis),
    "/idempotents": lambda r: commands.cmd_idempotents(_dump(r.ring), _dump(r.group)),
    "/code/dual": lambda r: commands.cmd_code_dual(_dump(r.ring), _dump(r.group), _dump(r.code)),
    "/code/decompose": lambda r: commands.cmd_code_decompose(_dump(r.ring), _dump(r.group), _dump(r.code)),
    "/code/acp": lambda r: commands.cmd_code_acp(_dump(r.ring), _dump(r.group), _dump(r.code_c), _dump(r.code_d)),
    "/verify/paper-examples": lambda r: commands.cmd_verify_examples(r.names),
}


def _remote(server: str, path: str, request: BaseModel) -> dict:
    import httpx

    try:
        resp = httpx.post(server.rstrip("/") + path, json=request.model_dump(exclude_none=True), timeout=600)
    except httpx.HTTPError as exc:
        raise CliInputError(f"cannot reach {server}: {exc}") from None
    body = resp.json()
    if resp.status_code >= 400:
        if "code" in body:
            raise RemoteError(body["code"], body["message"])
        raise CliInputError(f"service rejected the request: {json.dumps(body.get('detail', body))}")
    return body


def _properties(args) -> dict:
    from .properties import abelian_roundtrip_suite, acp_characterisation_suite, g_shift_suite, inner_rel2_suite

    rng = np.random.default_rng(args.seed)
    n = args.trials
    results = {
        "acp_characterisation": acp_characterisation_suite(rng, n),
        "theta_group_form": inner_rel2_suite(rng, 10 * n),
        "theta_group_form_dual_basis": inner_rel2_suite(rng, 10 * n, corrected=True),
        "g_shift": g_shift_suite(rng, 10 * n),
        "abelian_roundtrip": abelian_roundtrip_suite(rng, max(1, n // 2)),
    }
    verdicts = {}
    for k, v in results.items():
        if "violations" in v:
            verdicts[k] = not v["violations"]
        else:
            verdicts[k] = all(not sub["violations"] for sub in v.values())
    return commands._report("verify properties", {"seed": args.seed, "trials": n}, results, verdicts,
                            all(verdicts.values()))


# -- argument parsing ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall time (reports are then not byte-stable)")
    p.add_argument("--server", help="post the request to a running service at this base URL")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chaincodes", description="Chain-ring towers, group rings and additive codes.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    ring = sub.add_parser("ring").add_subparsers(dest="sub", required=True)
    p = ring.add_parser("info", help="tower invariants")
    p.add_argument("--ring", required=True)
    _common(p)
    p.set_defaults(build=build_ring_info)

    group = sub.add_parser("group").add_subparsers(dest="sub", required=True)
    p = group.add_parser("new", help="validate a group and print its tables")
    p.add_argument("--group", required=True)
    _common(p)
    p.set_defaults(build=build_group_new)

    p = sub.add_parser("trace", help="trace and Frobenius of an element of the Galois level")
    p.add_argument("--ring", required=True)
    p.add_argument("--element", required=True, help="nested coefficient JSON")
    _common(p)
    p.set_defaults(build=build_trace)

    p = sub.add_parser("dual-basis", help="Gram matrix and trace-dual basis")
    p.add_argument("--ring", required=True)
    p.add_argument("--basis", help="JSON list of nested coefficients (default: powers of alpha)")
    _common(p)
    p.set_defaults(build=build_dual_basis)

    p = sub.add_parser("idempotents", help="cosets and idempotents of R[G] and S[G]")
    p.add_argument("--ring")
    p.add_argument("--group")
    _common(p)
    p.set_defaults(build=build_idempotents, code=None)

    code = sub.add_parser("code").add_subparsers(dest="sub", required=True)
    for name, builder, help_ in [
        ("dual", _code_request("/code/dual"), "dual code with transport checks"),
        ("decompose", _code_request("/code/decompose"), "idempotent decomposition"),
        ("acp", build_code_acp, "complementary-pair check"),
    ]:
        p = code.add_parser(name, help=help_)
        p.add_argument("--ring")
        p.add_argument("--group")
        p.add_argument("--code", action="append", help="code JSON (give twice for acp)")
        _common(p)
        p.set_defaults(build=builder)

    verify = sub.add_parser("verify").add_subparsers(dest="sub", required=True)
    p = verify.add_parser("paper-examples", help="replay the worked examples")
    p.add_argument("--only", action="append", help="run only the named fixture (repeatable)")
    _common(p)
    p.set_defaults(build=build_verify)
    p = verify.add_parser("properties", help="randomized identity suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(local=_properties)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(serve=True)
    return ap


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "serve", False):
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    t0 = time.perf_counter()
    try:
        if hasattr(args, "local"):
            report = args.local(args)
        else:
            path, request = args.build(args)
            report = _remote(args.server, path, request) if args.server else LOCAL[path](request)
    except (CliInputError, ChainCodesError) as exc:
        code = getattr(exc, "code", "input_error")
        sys.stderr.write(f"error [{code}]: {exc}\n")
        return EXIT_INPUT
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - t0, 6)
    _emit(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
