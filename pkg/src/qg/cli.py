"""Command-line front end.

Commands run in-process by default; pass --server URL to forward the same
request to a running service instead.  Exit codes: 0 all checks pass,
1 mathematical failure, 2 input or schema error.  The QG_TOL environment
variable overrides the default tolerance (both absolute and relative).
"""

from __future__ import annotations

import functools
import os
import sys

import click

from . import jsonio, pipelines
from .errors import QGError, SchemaError
from .tenscore import DEFAULT_TOL, Tolerance


def _emit(report: dict) -> None:
    click.echo(jsonio.dumps(report))


def _resolve_tol(tol: float | None) -> Tolerance:
    value = tol
    if value is None:
        env = os.environ.get("QG_TOL")
        if env is not None:
            try:
                value = float(env)
            except ValueError as exc:
                raise SchemaError(f"QG_TOL must be a float, got {env!r}") from exc
    if value is None:
        return DEFAULT_TOL
    try:
        return Tolerance(abs_tol=value, rel_tol=value)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            fn(*args, **kwargs)
        except SchemaError as exc:
            _emit({"ok": False, "error": {"type": "SchemaError", "message": str(exc)}})
            sys.exit(2)
        except QGError as exc:
            _emit({"ok": False, "error": {"type": type(exc).__name__, "message": str(exc)}})
            sys.exit(1)
    return wrapper


def _finish(report: dict) -> None:
    _emit(report)
    sys.exit(0 if report.get("ok") else 1)


def _remote(server: str, endpoint: str, body: dict) -> None:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/{endpoint}", json=body, timeout=300.0)
    if resp.status_code == 422:
        _emit({"ok": False, "error": {"type": "SchemaError", "message": resp.text}})
        sys.exit(2)
    resp.raise_for_status()
    report = resp.json()
    if "error" in report:
        _emit(report)
        sys.exit(1)
    _finish(report)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Forward commands to a running qg service instead of running in-process.")
@click.pass_context
def main(ctx, server):
    """Finite quantum group toolbox: verification, Haar states, decomposition,
    duality, and free *-algebra rewriting."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


def _tol_option(fn):
    return click.option("--tol", type=float, default=None,
                        help="Absolute and relative tolerance (default 1e-9; QG_TOL overrides).")(fn)


@main.command()
@click.argument("path", type=click.Path())
@_tol_option
@click.pass_context
@_guard
def verify(ctx, path, tol):
    """Run every structural axiom check on a spec file."""
    payload = jsonio.load_file(path)
    if ctx.obj["server"]:
        _remote(ctx.obj["server"], "verify", {"spec": payload, "tol": tol})
    _finish(pipelines.run_verify(payload, _resolve_tol(tol)))


@main.command()
@click.argument("path", type=click.Path())
@click.option("--method", type=click.Choice(["solve", "cesaro", "both"]), default="solve")
@click.option("--max-iter", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_tol_option
@click.pass_context
@_guard
def haar(ctx, path, method, max_iter, seed, tol):
    """Compute the Haar state of a hopf spec."""
    payload = jsonio.load_file(path)
    if ctx.obj["server"]:
        _remote(ctx.obj["server"], "haar",
                {"spec": payload, "tol": tol, "method": method,
                 "max_iter": max_iter, "seed": seed})
    _finish(pipelines.run_haar(payload, _resolve_tol(tol), method=method,
                               max_iter=max_iter, seed=seed))


@main.command()
@click.argument("path", type=click.Path())
@click.option("--corep", default="regular", show_default=True,
              help="'regular' or the name of a corep embedded in the file.")
@click.option("--seed", type=int, default=2, show_default=True)
@_tol_option
@click.pass_context
@_guard
def decompose(ctx, path, corep, seed, tol):
    """Decompose a unitary corepresentation into irreducibles."""
    payload = jsonio.load_file(path)
    if ctx.obj["server"]:
        _remote(ctx.obj["server"], "decompose",
                {"spec": payload, "tol": tol, "corep": corep, "seed": seed})
    _finish(pipelines.run_decompose(payload, corep_name=corep,
                                    tol=_resolve_tol(tol), seed=seed))


@main.command()
@click.argument("path", type=click.Path(), required=False)
@click.option("--truncated", "truncated_path", type=click.Path(), default=None,
              help="Irrdata file with Q blocks only (no host algebra).")
@_tol_option
@click.pass_context
@_guard
def dual(ctx, path, truncated_path, tol):
    """Build the dual discrete quantum group and verify its structure."""
    if (path is None) == (truncated_path is None):
        raise SchemaError("pass exactly one of PATH or --truncated FILE")
    payload = jsonio.load_file(path if path is not None else truncated_path)
    if ctx.obj["server"]:
        _remote(ctx.obj["server"], "dual", {"spec": payload, "tol": tol})
    _finish(pipelines.run_dual(payload, _resolve_tol(tol)))


@main.command()
@click.argument("path", type=click.Path())
@click.option("--expr", default=None,
              help="Whitespace-separated word to normalize, e.g. 'g a'.")
@click.option("--degree-cap", type=int, default=6, show_default=True)
@click.option("--max-steps", type=int, default=10000, show_default=True)
@click.pass_context
@_guard
def rewrite(ctx, path, expr, degree_cap, max_steps):
    """Normalize a word, or validate the whole presentation when no --expr."""
    payload = jsonio.load_file(path)
    if ctx.obj["server"]:
        _remote(ctx.obj["server"], "rewrite",
                {"spec": payload, "expr": expr, "degree_cap": degree_cap,
                 "max_steps": max_steps})
    _finish(pipelines.run_rewrite(payload, expr=expr, degree_cap=degree_cap,
                                  max_steps=max_steps))


@main.command()
@click.argument("path", type=click.Path())
@_tol_option
@click.pass_context
@_guard
def magic(ctx, path, tol):
    """Validate a magic unitary (matrix of projections)."""
    payload = jsonio.load_file(path)
    if ctx.obj["server"]:
        _remote(ctx.obj["server"], "magic", {"spec": payload, "tol": tol})
    _finish(pipelines.run_magic(payload, _resolve_tol(tol)))


@main.command()
@click.argument("name")
@click.option("-o", "--out", type=click.Path(), default=None,
              help="Write the payload to a file instead of stdout.")
@click.option("--q", type=float, default=1.0, show_default=True,
              help="Deformation parameter for the suq2 entry.")
@click.option("--n", type=int, default=3, show_default=True,
              help="Size for the snplus entry.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for the magic4 entry's random projections.")
@click.option("--blocks", default="2:2,1:1", show_default=True,
              help="Block list 'n:t,...' for the nonkac entry.")
@_guard
def catalog(name, out, q, n, seed, blocks):
    """Emit a built-in example as a spec file (use 'list' to see names)."""
    if name == "list":
        _emit({"names": pipelines.catalog_names(), "ok": True})
        sys.exit(0)
    payload = pipelines.catalog_payload(name, q=q, n=n, seed=seed, blocks=blocks)
    text = jsonio.dumps(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    sys.exit(0)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
