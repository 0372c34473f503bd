"""Command pipelines shared by the CLI and the HTTP service.

Each runner takes a parsed payload dict plus options and returns a
JSON-ready report dict with an "ok" flag.  Schema problems raise
SchemaError, mathematical failures raise the engine's error types;
callers translate those into exit codes or HTTP responses.
"""

from __future__ import annotations

import numpy as np

from . import catalog, jsonio
from .corep import (corep_identity_residual, decompose, is_kac, orthogonality_residuals,
                    q_matrix_gram, regular_corep, unitarity_residual, unitarize)
from .dualqg import (big_w, build_dual, fourier, fourier_inv, irr_data_from_host,
                     modular_report, unimodularity_report, verify_dual_invariance,
                     biduality_check, _weight_vectors)
from .errors import NotACorep, SchemaError, SpecError
from .freestar import (WordPoly, delta_well_defined, eval_hom, normal_form,
                       validate_magic, validate_presentation)
from .hopfcore import check_cancellation, verify_algebra, verify_all
from .measures import haar_cesaro, haar_solve
from .tenscore import DEFAULT_TOL, Tolerance, linf

_fmt = jsonio._fmt


def _checks_json(report) -> list:
    return [{"name": c.name, "residual": _fmt(c.residual), "passed": bool(c.passed)}
            for c in report.checks]


# ---------------------------------------------------------------------------


def run_verify(payload: dict, tol: Tolerance = DEFAULT_TOL) -> dict:
    kind = jsonio.payload_kind(payload)
    checks = []
    if kind == "algebra":
        alg = jsonio.algebra_from_payload(payload)
        checks = _checks_json(verify_algebra(alg, tol))
    elif kind == "hopf":
        h = jsonio.hopf_from_payload(payload)
        report = verify_all(h, tol)
        checks = _checks_json(report)
        cancel = check_cancellation(h, tol)
        checks.append({"name": "cancellation-spans", "residual": 0.0 if cancel else 1.0,
                       "passed": bool(cancel)})
    elif kind == "group":
        g = jsonio.group_from_payload(payload)
        for prefix, h in (("group-algebra", catalog.group_algebra(g)),
                          ("function-algebra", catalog.function_algebra(g))):
            for c in verify_all(h, tol).checks:
                checks.append({"name": f"{prefix}/{c.name}", "residual": _fmt(c.residual),
                               "passed": bool(c.passed)})
    elif kind == "presentation":
        pres = jsonio.presentation_from_payload(payload)
        checks = _checks_json(validate_presentation(pres))
    elif kind == "irrdata":
        src = jsonio.irrdata_from_payload(payload)
        build_dual(src, tol)
        checks = _checks_json_from_modular(modular_report(src, tol))
    else:
        raise SchemaError(f"verify does not accept kind {kind!r}")
    return {"command": "verify", "kind": kind, "checks": checks,
            "ok": all(c["passed"] for c in checks)}


def _checks_json_from_modular(rep) -> list:
    return [{"name": c.name, "residual": _fmt(c.residual), "passed": bool(c.passed)}
            for c in rep.checks]


def run_haar(payload: dict, tol: Tolerance = DEFAULT_TOL, method: str = "solve",
             max_iter: int = 10000, seed: int = 0) -> dict:
    if jsonio.payload_kind(payload) != "hopf":
        raise SchemaError("haar needs a hopf payload")
    h = jsonio.hopf_from_payload(payload)
    out = {"command": "haar", "method": method, "ok": True}
    state = None
    if method in ("solve", "both"):
        res = haar_solve(h, tol)
        state = res.state
        out["state"] = jsonio._vec_out(res.state.coeffs)
        out["residual"] = _fmt(res.residual)
    if method in ("cesaro", "both"):
        res_c = haar_cesaro(h, max_iter=max_iter, tol=tol, seed=seed)
        out["cesaro_state"] = jsonio._vec_out(res_c.state.coeffs)
        out["cesaro_residual"] = _fmt(res_c.residual)
        out["iterations"] = res_c.iterations
        if state is None:
            state = res_c.state
        else:
            agreement = linf(state.coeffs - res_c.state.coeffs)
            out["agreement"] = _fmt(agreement)
            out["ok"] = bool(agreement <= 10 * tol.bound(1.0))
    if method not in ("solve", "cesaro", "both"):
        raise SchemaError(f"unknown haar method {method!r}")
    k = np.einsum("abc,c->ab", h.mult, state.coeffs)
    out["tracial"] = bool(linf(k - k.T) <= 100 * tol.bound(max(1.0, linf(k))))
    return out


def run_decompose(payload: dict, corep_name: str = "regular",
                  tol: Tolerance = DEFAULT_TOL, seed: int = 2) -> dict:
    if jsonio.payload_kind(payload) != "hopf":
        raise SchemaError("decompose needs a hopf payload")
    h = jsonio.hopf_from_payload(payload)
    haar = haar_solve(h, tol).state
    if corep_name == "regular":
        u = regular_corep(h)
    else:
        named = payload.get("coreps", {})
        if corep_name not in named:
            raise SchemaError(f"no corep named {corep_name!r} in file; "
                              f"available: {sorted(named)} plus 'regular'")
        u = jsonio.corep_from_payload(named[corep_name], h)
    scale = max(1.0, linf(u.coeffs)) ** 2
    if corep_identity_residual(u) > 10 * tol.bound(scale):
        raise NotACorep(f"{corep_name!r} fails the corep identity")
    if unitarity_residual(u) > 10 * tol.bound(scale):
        u, _ = unitarize(u, tol)
    dec = decompose(u, tol, seed=seed)

    summands = []
    for s in dec.summands:
        summands.append({
            "irrep": s.irrep_id,
            "dim": dec.irreps[s.irrep_id].size,
            "multiplicity": s.multiplicity,
            "intertwiner": jsonio._dense_out(s.intertwiner),
        })
    qmats = [q_matrix_gram(rep, haar, tol) for rep in dec.irreps]
    r1, r2 = orthogonality_residuals(dec.irreps, haar, tol)
    kac = is_kac(h, tol)
    return {
        "command": "decompose",
        "corep": corep_name,
        "size": u.size,
        "dims": [rep.size for rep in dec.irreps],
        "multiplicities": [s.multiplicity for s in dec.summands],
        "summands": summands,
        "q_matrices": [jsonio._dense_out(qm.q) for qm in qmats],
        "completeness_residual": _fmt(dec.completeness),
        "orthogonality": {"family1": _fmt(r1), "family2": _fmt(r2)},
        "kac": {
            "q_trivial": kac.q_trivial,
            "antipode_involutive": kac.antipode_involutive,
            "haar_tracial": kac.haar_tracial,
            "dims_match": kac.dims_match,
            "is_kac": kac.is_kac,
        },
        "ok": bool(dec.completeness <= 100 * tol.bound(scale)
                   and max(r1, r2) <= 100 * tol.bound(1.0)),
    }


def run_dual(payload: dict, tol: Tolerance = DEFAULT_TOL) -> dict:
    kind = jsonio.payload_kind(payload)
    if kind == "hopf":
        h = jsonio.hopf_from_payload(payload)
        src = irr_data_from_host(h, tol)
        alg = build_dual(src, tol)
        w = big_w(src, tol)

        f_mat = np.zeros((alg.dim, h.dim), dtype=np.complex128)
        finv_mat = np.zeros((h.dim, alg.dim), dtype=np.complex128)
        for p in range(h.dim):
            e = np.zeros(h.dim)
            e[p] = 1.0
            f_mat[:, p] = alg.flatten(fourier(e, w, src.haar))
        for x in range(alg.dim):
            finv_mat[:, x] = fourier_inv(alg.unflatten(np.eye(alg.dim)[x]), w)
        rt1 = linf(finv_mat @ f_mat - np.eye(h.dim))
        rt2 = linf(f_mat @ finv_mat - np.eye(alg.dim))

        f_unit = fourier(h.unit, w, src.haar)
        triv = np.zeros(alg.dim)
        triv[alg.flat(alg.trivial_block, 0, 0)] = 1.0
        unit_res = linf(alg.flatten(f_unit) - triv)

        inv_rep = verify_dual_invariance(src, tol)
        mod = modular_report(src, tol)
        unimod = unimodularity_report(src, tol)
        bidual = biduality_check(h, tol)
        ok = bool(max(rt1, rt2, unit_res) <= 100 * tol.bound(1.0)
                  and inv_rep.ok and mod.ok and bidual)
        return {
            "command": "dual", "kind": kind,
            "blocks": list(alg.sizes),
            "fourier_roundtrip": {"inv_after": _fmt(rt1), "after_inv": _fmt(rt2)},
            "fourier_unit_residual": _fmt(unit_res),
            "invariance": _checks_json(inv_rep),
            "modular": _checks_json_from_modular(mod) + [
                {"name": "kac-reduction", "residual": 0.0, "passed": True,
                 "note": ("Q = 1: modular identities reduce to the invariance laws"
                          if mod.kac_reduction else "Q != 1")}],
            "unimodular": unimod.unimodular,
            "biduality": bool(bidual),
            "ok": ok,
        }
    if kind == "irrdata":
        src = jsonio.irrdata_from_payload(payload)
        alg = build_dual(src, tol)
        wl, wr = _weight_vectors(alg)
        gap = np.abs(wl - wr)
        witness = int(np.argmax(gap))
        mod = modular_report(src, tol)
        unimod = unimodularity_report(src, tol)
        out = {
            "command": "dual", "kind": kind,
            "blocks": list(alg.sizes),
            "weights_differ": bool(gap.max() > 100 * tol.bound(1.0)),
            "modular": _checks_json_from_modular(mod),
            "unimodular": unimod.unimodular,
            "ok": mod.ok,
        }
        if out["weights_differ"]:
            out["witness"] = {"basis_index": witness,
                              "hhat_L": _fmt(wl[witness].real),
                              "hhat_R": _fmt(wr[witness].real),
                              "gap": _fmt(gap.max())}
        return out
    raise SchemaError(f"dual does not accept kind {kind!r}")


def run_rewrite(payload: dict, expr: str | None = None, degree_cap: int = 6,
                max_steps: int = 10000) -> dict:
    if jsonio.payload_kind(payload) != "presentation":
        raise SchemaError("rewrite needs a presentation payload")
    pres = jsonio.presentation_from_payload(payload)
    if expr is not None:
        word = tuple(expr.split())
        unknown = [l for l in word if l not in pres.star_map]
        if unknown:
            raise SchemaError(f"unknown letters {unknown}; alphabet: {sorted(pres.star_map)}")
        nf = normal_form(WordPoly.monomial(word), pres, max_steps)
        return {"command": "rewrite", "input": list(word),
                "normal_form": jsonio._wordpoly_out(nf), "ok": True}
    checks = _checks_json(validate_presentation(pres, max_steps))
    if pres.delta_gens is not None:
        checks += _checks_json(delta_well_defined(pres, degree_cap=degree_cap,
                                                  max_steps=max_steps))
    return {"command": "rewrite", "checks": checks,
            "ok": all(c["passed"] for c in checks)}


def run_magic(payload: dict, tol: Tolerance = DEFAULT_TOL) -> dict:
    if jsonio.payload_kind(payload) != "magic":
        raise SchemaError("magic needs a magic payload")
    u = jsonio.magic_from_payload(payload)
    report = validate_magic(u, tol)
    return {"command": "magic", "size": int(u.shape[0]), "block_dim": int(u.shape[2]),
            "checks": _checks_json(report), "ok": report.ok}


def run_eval_hom(payload: dict, assignment: dict, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Evaluate a presentation in a concrete matrix representation."""
    if jsonio.payload_kind(payload) != "presentation":
        raise SchemaError("eval needs a presentation payload")
    pres = jsonio.presentation_from_payload(payload)
    mats = {str(k): jsonio._dense_in(v) for k, v in assignment.items()}
    report = eval_hom(pres, mats, tol)
    return {"command": "eval", "checks": _checks_json(report), "ok": report.ok}


# ---------------------------------------------------------------------------
# catalog access


def _rank1_projection(rng) -> np.ndarray:
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    v = v / np.linalg.norm(v)
    return np.outer(v, np.conjugate(v))


def catalog_names() -> list:
    names = []
    for name in catalog.group_names():
        names.append(f"cg_{name.lower()}")
        names.append(f"c_{name.lower()}")
        names.append(f"group_{name.lower()}")
    names += ["monoid_bialgebra", "suq2", "snplus", "magic4", "nonkac"]
    return names


def catalog_payload(name: str, q: float = 1.0, n: int = 3, seed: int = 0,
                    blocks: str = "2:2,1:1") -> dict:
    key = name.lower()

    def named_group(gname):
        # a typo in the entry name is an input error, not a computation failure
        try:
            return catalog.group(gname)
        except SpecError as exc:
            raise SchemaError(str(exc)) from exc

    if key.startswith("cg_") or key.startswith("c_"):
        g = named_group(key.split("_", 1)[1])
        if key.startswith("cg_"):
            return jsonio.hopf_to_payload(catalog.group_algebra(g), name=key)
        h = catalog.function_algebra(g)
        coreps = {"defining": catalog.permutation_corep(g, h)}
        return jsonio.hopf_to_payload(h, coreps=coreps, name=key)
    if key.startswith("group_"):
        return jsonio.group_to_payload(named_group(key.split("_", 1)[1]))
    if key == "monoid_bialgebra":
        return jsonio.hopf_to_payload(catalog.idempotent_monoid_bialgebra(), name=key)
    if key == "suq2":
        return jsonio.presentation_to_payload(catalog.suq2_presentation(q))
    if key == "snplus":
        return jsonio.presentation_to_payload(catalog.sn_plus_presentation(n))
    if key == "magic4":
        rng = np.random.default_rng(seed)
        u = catalog.magic_block_example(_rank1_projection(rng), _rank1_projection(rng))
        return jsonio.magic_to_payload(u)
    if key == "nonkac":
        parsed = []
        try:
            for part in blocks.split(","):
                size, t = part.split(":")
                parsed.append((int(size), float(t)))
        except ValueError as exc:
            raise SchemaError(f"blocks must look like '2:2,1:1', got {blocks!r}") from exc
        return jsonio.irrdata_to_payload(catalog.synthetic_nonkac(parsed))
    raise SchemaError(f"unknown catalog entry {name!r}; try one of {catalog_names()}")
