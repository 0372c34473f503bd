"""HTTP service exposing the engine pipelines.

POST endpoints mirror the CLI commands and take {"spec": <payload>, ...options}.
Mathematical failures come back as 200 with {"ok": false, "error": ...};
schema problems are 422.  Run with `qg serve` or any ASGI server pointed at
qg.service:app.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__, pipelines
from .errors import QGError, SchemaError
from .tenscore import DEFAULT_TOL, Tolerance


def _tol(value: float | None) -> Tolerance:
    if value is None:
        return DEFAULT_TOL
    try:
        return Tolerance(abs_tol=float(value), rel_tol=float(value))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


class SpecRequest(BaseModel):
    spec: dict
    tol: float | None = None


class HaarRequest(SpecRequest):
    method: str = "solve"
    max_iter: int = 10000
    seed: int = 0


class DecomposeRequest(SpecRequest):
    corep: str = "regular"
    seed: int = 2


class RewriteRequest(SpecRequest):
    expr: str | None = None
    degree_cap: int = 6
    max_steps: int = 10000


class EvalRequest(SpecRequest):
    assignment: dict


app = FastAPI(title="qg", version=__version__,
              description="Finite quantum group engine")


def _run(fn, *args, **kwargs) -> dict:
    try:
        return fn(*args, **kwargs)
    except SchemaError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except QGError as exc:
        return {"ok": False,
                "error": {"type": type(exc).__name__, "message": str(exc)}}


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/catalog")
def catalog_index() -> dict:
    return {"names": pipelines.catalog_names()}


@app.get("/catalog/{name}")
def catalog_entry(name: str, q: float = 1.0, n: int = 3, seed: int = 0,
                  blocks: str = "2:2,1:1") -> dict:
    return _run(pipelines.catalog_payload, name, q=q, n=n, seed=seed, blocks=blocks)


@app.post("/verify")
def verify(req: SpecRequest) -> dict:
    return _run(pipelines.run_verify, req.spec, _tol(req.tol))


@app.post("/haar")
def haar(req: HaarRequest) -> dict:
    return _run(pipelines.run_haar, req.spec, _tol(req.tol), method=req.method,
                max_iter=req.max_iter, seed=req.seed)


@app.post("/decompose")
def decompose(req: DecomposeRequest) -> dict:
    return _run(pipelines.run_decompose, req.spec, corep_name=req.corep,
                tol=_tol(req.tol), seed=req.seed)


@app.post("/dual")
def dual(req: SpecRequest) -> dict:
    return _run(pipelines.run_dual, req.spec, _tol(req.tol))


@app.post("/rewrite")
def rewrite(req: RewriteRequest) -> dict:
    return _run(pipelines.run_rewrite, req.spec, expr=req.expr,
                degree_cap=req.degree_cap, max_steps=req.max_steps)


@app.post("/magic")
def magic(req: SpecRequest) -> dict:
    return _run(pipelines.run_magic, req.spec, _tol(req.tol))


@app.post("/eval")
def eval_hom(req: EvalRequest) -> dict:
    return _run(pipelines.run_eval_hom, req.spec, req.assignment, _tol(req.tol))
