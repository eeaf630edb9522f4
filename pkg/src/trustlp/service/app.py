"""HTTP surface of the solver.

Stateless POST endpoints, one per command; pure-function handlers make the
service safe under concurrent requests. Run with
``uvicorn trustlp.service.app:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    CertificationFailure,
    InvalidInstance,
    NotApplicable,
    ParseError,
    ResourceLimit,
    VerificationFailure,
)
from . import handlers
from . import models as m

app = FastAPI(
    title="trustlp",
    version=__version__,
    description=(
        "Exact solver for trust-constrained sender-receiver persuasion games: "
        "game value, informativeness, near-equilibrium sequences, graph closed "
        "forms, and brute-force verification."
    ),
)

_STATUS = {
    ParseError: 400,
    InvalidInstance: 422,
    NotApplicable: 422,
    ResourceLimit: 413,
    VerificationFailure: 500,
    CertificationFailure: 500,
}


def _register_error_handlers() -> None:
    for exc_type, status in _STATUS.items():

        def handler(request: Request, exc: Exception, status: int = status) -> JSONResponse:
            return JSONResponse(
                status_code=status,
                content={"error": type(exc).__name__, "detail": str(exc)},
            )

        app.add_exception_handler(exc_type, handler)


_register_error_handlers()


@app.get("/health", response_model=m.HealthResponse)
def health() -> m.HealthResponse:
    return m.HealthResponse(status="ok", version=__version__)


@app.post("/sgv", response_model=m.SgvResponse, response_model_exclude_none=True)
def sgv(req: m.SgvRequest) -> m.SgvResponse:
    return handlers.handle_sgv(req)


@app.post("/info", response_model=m.InfoResponse, response_model_exclude_none=True)
def info(req: m.InfoRequest) -> m.InfoResponse:
    return handlers.handle_info(req)


@app.post("/eps-ses", response_model=m.EpsSesResponse, response_model_exclude_none=True)
def eps_ses(req: m.EpsSesRequest) -> m.EpsSesResponse:
    return handlers.handle_eps_ses(req)


@app.post("/graph", response_model=m.GraphResponse, response_model_exclude_none=True)
def graph(req: m.GraphRequest) -> m.GraphResponse:
    return handlers.handle_graph(req)


@app.post("/compare", response_model=m.CompareResponse, response_model_exclude_none=True)
def compare(req: m.CompareRequest) -> m.CompareResponse:
    return handlers.handle_compare(req)


@app.post("/verify", response_model=m.VerifyResponse, response_model_exclude_none=True)
def verify(req: m.VerifyRequest) -> m.VerifyResponse:
    return handlers.handle_verify(req)
