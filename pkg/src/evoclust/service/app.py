"""FastAPI application exposing the clustering benchmark as a service."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import ops
from .schemas import (
    ImputeRequest,
    ImputeResponse,
    JcRequest,
    JcResponse,
    PcaRequest,
    PcaResponse,
    RunRequest,
    RunResponse,
)

app = FastAPI(title="evoclust", version="0.1.0")


def _guard(fn, req):
    try:
        return fn(req)
    except (ValueError, FileNotFoundError, OSError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest) -> RunResponse:
    return _guard(ops.do_run, req)


@app.post("/jc", response_model=JcResponse)
def jc(req: JcRequest) -> JcResponse:
    return _guard(ops.do_jc, req)


@app.post("/pca", response_model=PcaResponse)
def pca(req: PcaRequest) -> PcaResponse:
    return _guard(ops.do_pca, req)


@app.post("/impute", response_model=ImputeResponse)
def impute(req: ImputeRequest) -> ImputeResponse:
    return _guard(ops.do_impute, req)
