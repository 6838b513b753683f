"""HTTP service exposing the command layer."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, commands
from .errors import ChainCodesError, InputError
from .schemas import (
    AcpRequest,
    CodeRequest,
    DualBasisRequest,
    ErrorReport,
    GroupRequest,
    IdempotentsRequest,
    RingRequest,
    RunReport,
    TraceRequest,
    VerifyRequest,
)

app = FastAPI(title="chaincodes", version=__version__)


@app.exception_handler(ChainCodesError)
async def _library_error(request: Request, exc: ChainCodesError):
    status = 422 if isinstance(exc, InputError) else 400
    return JSONResponse(status_code=status, content=ErrorReport(code=exc.code, message=str(exc)).model_dump())


def _dump(model) -> dict:
    return model.model_dump(exclude_none=True)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/ring/info", response_model=RunReport)
def ring_info(req: RingRequest):
    return commands.cmd_ring_info(_dump(req.ring))


@app.post("/group/new", response_model=RunReport)
def group_new(req: GroupRequest):
    return commands.cmd_group_new(_dump(req.group))


@app.post("/trace", response_model=RunReport)
def trace(req: TraceRequest):
    return commands.cmd_trace(_dump(req.ring), req.element)


@app.post("/dual-basis", response_model=RunReport)
def dual_basis(req: DualBasisRequest):
    return commands.cmd_dual_basis(_dump(req.ring), req.basis)


@app.post("/idempotents", response_model=RunReport)
def idempotents(req: IdempotentsRequest):
    return commands.cmd_idempotents(_dump(req.ring), _dump(req.group))


@app.post("/code/dual", response_model=RunReport)
def code_dual(req: CodeRequest):
    return commands.cmd_code_dual(_dump(req.ring), _dump(req.group), _dump(req.code))


@app.post("/code/decompose", response_model=RunReport)
def code_decompose(req: CodeRequest):
    return commands.cmd_code_decompose(_dump(req.ring), _dump(req.group), _dump(req.code))


@app.post("/code/acp", response_model=RunReport)
def code_acp(req: AcpRequest):
    return commands.cmd_code_acp(_dump(req.ring), _dump(req.group), _dump(req.code_c), _dump(req.code_d))


@app.post("/verify/paper-examples", response_model=RunReport)
def verify(req: VerifyRequest):
    return commands.cmd_verify_examples(req.names)
