"""JSON schema (version "1") for algebra specs, groups, presentations,
dual data, and magic unitaries.

Conventions: complex scalars are [re, im]; mult is sparse rows [i, j, k, re, im]
meaning b_i b_j contains (re+im·i)·b_k; delta is sparse rows [i, p, re, im]
with pair index p = j*dim + k meaning Delta(b_i) contains (re+im·i)·b_j(x)b_k;
star is {"J": dense matrix, "conjugate": true} (the map x* = J conj(x));
coreps are {"size": n, "coeffs": sparse rows [i, j, c, re, im]}.
All floats are emitted with 12 significant digits.
"""

from __future__ import annotations

import json

import numpy as np

from .corep import Corep, QMatrix
from .dualqg import IrrData, truncated_irr_data
from .errors import SchemaError
from .freestar import Presentation, WordPoly
from .hopfcore import HopfData, StructureAlgebra, AntilinearMap, make_hopf
from .tenscore import linf

__all__ = [
    "VERSION", "dumps", "load_file", "payload_kind",
    "hopf_to_payload", "hopf_from_payload", "algebra_from_payload",
    "group_to_payload", "group_from_payload",
    "presentation_to_payload", "presentation_from_payload",
    "irrdata_to_payload", "irrdata_from_payload",
    "magic_to_payload", "magic_from_payload",
    "corep_to_payload", "corep_from_payload",
]

VERSION = "1"

KINDS = ("algebra", "hopf", "group", "presentation", "irrdata", "magic")


def _fmt(x) -> float:
    return float(f"{float(x):.12g}")


def _cplx_out(z) -> list:
    z = complex(z)
    return [_fmt(z.real), _fmt(z.imag)]


def _cplx_in(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise SchemaError(f"complex scalar must be [re, im], got {v!r}")
    return complex(float(v[0]), float(v[1]))


def _vec_out(v) -> list:
    return [_cplx_out(z) for z in np.asarray(v).ravel()]


def _vec_in(rows, n=None) -> np.ndarray:
    out = np.array([_cplx_in(r) for r in rows], dtype=np.complex128)
    if n is not None and out.shape != (n,):
        raise SchemaError(f"vector length {out.shape} does not match dim {n}")
    return out


def _dense_out(m) -> list:
    m = np.asarray(m)
    return [[_cplx_out(z) for z in row] for row in m]


def _dense_in(rows, shape=None) -> np.ndarray:
    try:
        m = np.array([[_cplx_in(z) for z in row] for row in rows], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad dense matrix: {exc}") from exc
    if m.ndim != 2:
        raise SchemaError("dense matrix must be a list of rows")
    if shape is not None and m.shape != shape:
        raise SchemaError(f"matrix shape {m.shape}, expected {shape}")
    return m


def _sparse3_out(t) -> list:
    t = np.asarray(t)
    rows = []
    for i, j, k in zip(*np.nonzero(np.abs(t) > 0)):
        z = t[i, j, k]
        rows.append([int(i), int(j), int(k), _fmt(z.real), _fmt(z.imag)])
    return sorted(rows, key=lambda r: r[:3])


def _sparse3_in(rows, n) -> np.ndarray:
    t = np.zeros((n, n, n), dtype=np.complex128)
    for r in rows:
        if len(r) != 5:
            raise SchemaError(f"sparse tensor row must be [i,j,k,re,im], got {r!r}")
        i, j, k = (int(r[0]), int(r[1]), int(r[2]))
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise SchemaError(f"tensor index out of range in {r!r}")
        t[i, j, k] += complex(float(r[3]), float(r[4]))
    return t


def _delta_out(delta, n) -> list:
    rows = []
    for p, i in zip(*np.nonzero(np.abs(delta) > 0)):
        z = delta[p, i]
        rows.append([int(i), int(p), _fmt(z.real), _fmt(z.imag)])
    return sorted(rows, key=lambda r: r[:2])


def _delta_in(rows, n) -> np.ndarray:
    d = np.zeros((n * n, n), dtype=np.complex128)
    for r in rows:
        if len(r) != 4:
            raise SchemaError(f"delta row must be [i, pair, re, im], got {r!r}")
        i, p = int(r[0]), int(r[1])
        if not (0 <= i < n and 0 <= p < n * n):
            raise SchemaError(f"delta index out of range in {r!r}")
        d[p, i] += complex(float(r[2]), float(r[3]))
    return d


def corep_to_payload(c: Corep) -> dict:
    rows = []
    for i, j, k in zip(*np.nonzero(np.abs(c.coeffs) > 0)):
        z = c.coeffs[i, j, k]
        rows.append([int(i), int(j), int(k), _fmt(z.real), _fmt(z.imag)])
    return {"size": c.size, "coeffs": sorted(rows, key=lambda r: r[:3])}


def corep_from_payload(d: dict, host: HopfData) -> Corep:
    size = int(d["size"])
    coeffs = np.zeros((size, size, host.dim), dtype=np.complex128)
    for r in d["coeffs"]:
        if len(r) != 5:
            raise SchemaError(f"corep row must be [i,j,c,re,im], got {r!r}")
        i, j, k = int(r[0]), int(r[1]), int(r[2])
        if not (0 <= i < size and 0 <= j < size and 0 <= k < host.dim):
            raise SchemaError(f"corep index out of range in {r!r}")
        coeffs[i, j, k] += complex(float(r[3]), float(r[4]))
    return Corep(host=host, size=size, coeffs=coeffs, unitary=bool(d.get("unitary", False)))


# ---------------------------------------------------------------------------
# algebra / hopf payloads


def hopf_to_payload(h: HopfData, coreps: dict | None = None, name: str | None = None) -> dict:
    n = h.dim
    out = {
        "version": VERSION,
        "kind": "hopf",
        "dim": n,
        "mult": _sparse3_out(h.mult),
        "unit": _vec_out(h.unit),
        "star": {"J": _dense_out(h.star.j), "conjugate": True},
        "delta": _delta_out(h.delta, n),
        "epsilon": _vec_out(h.epsilon),
    }
    if h.basis_labels:
        out["labels"] = list(h.basis_labels)
    if h.antipode is not None:
        out["antipode"] = _dense_out(h.antipode)
    if coreps:
        out["coreps"] = {k: corep_to_payload(v) for k, v in coreps.items()}
    if name:
        out["name"] = name
    return out


def _check_head(d: dict, kind: str) -> None:
    if not isinstance(d, dict):
        raise SchemaError("payload must be a JSON object")
    if d.get("version") != VERSION:
        raise SchemaError(f"unsupported schema version {d.get('version')!r}")
    if d.get("kind") != kind:
        raise SchemaError(f"expected kind {kind!r}, got {d.get('kind')!r}")


def hopf_from_payload(d: dict) -> HopfData:
    _check_head(d, "hopf")
    try:
        n = int(d["dim"])
        mult = _sparse3_in(d["mult"], n)
        unit = _vec_in(d["unit"], n)
        star_j = _dense_in(d["star"]["J"], (n, n))
        delta = _delta_in(d["delta"], n)
        epsilon = _vec_in(d["epsilon"], n)
        antipode = _dense_in(d["antipode"], (n, n)) if "antipode" in d else None
        labels = tuple(d.get("labels", ()))
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from exc
    delta3 = delta.T.reshape(n, n, n)
    return make_hopf(mult=mult, unit=unit, delta3=delta3, epsilon=epsilon,
                     antipode=antipode, star_j=star_j, labels=labels)


def algebra_from_payload(d: dict) -> StructureAlgebra:
    _check_head(d, "algebra")
    try:
        n = int(d["dim"])
        mult = _sparse3_in(d["mult"], n)
        unit = _vec_in(d["unit"], n)
        star_j = _dense_in(d["star"]["J"], (n, n))
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from exc
    return StructureAlgebra(dim=n, mult=mult, unit=unit,
                            star=AntilinearMap(j=star_j),
                            basis_labels=tuple(d.get("labels", ())))


# ---------------------------------------------------------------------------
# groups


def group_to_payload(g) -> dict:
    return {
        "version": VERSION,
        "kind": "group",
        "name": g.name,
        "order": g.order,
        "cayley": [list(row) for row in g.cayley],
        "identity": g.identity,
        "inverse": list(g.inverse),
        "labels": list(g.labels),
        "perm_action": [list(p) for p in g.perm_action],
    }


def group_from_payload(d: dict):
    from .catalog import FiniteGroupSpec, validate_group

    _check_head(d, "group")
    try:
        order = int(d["order"])
        cayley = tuple(tuple(int(x) for x in row) for row in d["cayley"])
        identity = int(d["identity"])
        inverse = tuple(int(x) for x in d["inverse"])
        labels = tuple(d.get("labels", [str(i) for i in range(order)]))
        if "perm_action" in d:
            perm = tuple(tuple(int(x) for x in p) for p in d["perm_action"])
        else:
            perm = tuple(tuple(cayley[g][x] for x in range(order)) for g in range(order))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad group payload: {exc}") from exc
    spec = FiniteGroupSpec(name=d.get("name", "G"), order=order, cayley=cayley,
                           identity=identity, inverse=inverse, labels=labels,
                           perm_action=perm)
    validate_group(spec)
    return spec


# ---------------------------------------------------------------------------
# presentations


def _wordpoly_out(p: WordPoly) -> list:
    return [[_cplx_out(c), list(w)]
            for w, c in sorted(p.terms.items(), key=lambda t: (len(t[0]), t[0]))]


def _wordpoly_in(terms) -> WordPoly:
    out = {}
    for t in terms:
        if not (isinstance(t, (list, tuple)) and len(t) == 2):
            raise SchemaError(f"word-poly term must be [[re,im],[letters]], got {t!r}")
        coeff, word = _cplx_in(t[0]), tuple(str(l) for l in t[1])
        out[word] = out.get(word, 0) + coeff
    return WordPoly(out)


def presentation_to_payload(p: Presentation) -> dict:
    out = {
        "version": VERSION,
        "kind": "presentation",
        "generators": list(p.generators),
        "star_map": dict(p.star_map),
        "relations": [_wordpoly_out(r) for r in p.relations],
        "rules": [{"lhs": list(lhs), "rhs": _wordpoly_out(rhs)} for lhs, rhs in p.rules],
        "parameters": {k: _fmt(v) for k, v in p.parameters.items()},
        "weights": {k: int(v) for k, v in p.weights.items()},
        "precedence": list(p.precedence),
    }
    if p.delta_gens is not None:
        out["delta"] = {l: _wordpoly_out(img) for l, img in p.delta_gens.items()}
    return out


def presentation_from_payload(d: dict) -> Presentation:
    _check_head(d, "presentation")
    try:
        star_map = {str(k): str(v) for k, v in d["star_map"].items()}
        relations = tuple(_wordpoly_in(r) for r in d["relations"])
        rules = tuple((tuple(str(l) for l in r["lhs"]), _wordpoly_in(r["rhs"]))
                      for r in d["rules"])
        delta = None
        if "delta" in d:
            delta = {str(l): _wordpoly_in(img) for l, img in d["delta"].items()}
        return Presentation(
            generators=tuple(str(g) for g in d["generators"]),
            star_map=star_map, relations=relations, rules=rules,
            parameters={str(k): float(v) for k, v in d.get("parameters", {}).items()},
            weights={str(k): int(v) for k, v in d.get("weights", {}).items()},
            precedence=tuple(str(l) for l in d.get("precedence", [])),
            delta_gens=delta,
        )
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"bad presentation payload: {exc}") from exc


# ---------------------------------------------------------------------------
# dual data and magic unitaries


def irrdata_to_payload(src: IrrData) -> dict:
    return {
        "version": VERSION,
        "kind": "irrdata",
        "blocks": [{"size": qm.size, "q": _dense_out(qm.q)} for qm in src.qmats],
    }


def irrdata_from_payload(d: dict) -> IrrData:
    _check_head(d, "irrdata")
    qmats = []
    try:
        for b in d["blocks"]:
            n = int(b["size"])
            q = _dense_in(b["q"], (n, n))
            qmats.append(QMatrix(q=q, d=float(np.trace(q).real)))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad irrdata payload: {exc}") from exc
    return truncated_irr_data(qmats)


def magic_to_payload(u) -> dict:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim == 2:
        u = u.reshape(u.shape[0], u.shape[1], 1, 1)
    return {
        "version": VERSION,
        "kind": "magic",
        "size": int(u.shape[0]),
        "block_dim": int(u.shape[2]),
        "entries": [[_dense_out(u[i, j]) for j in range(u.shape[1])]
                    for i in range(u.shape[0])],
    }


def magic_from_payload(d: dict) -> np.ndarray:
    _check_head(d, "magic")
    try:
        n, bd = int(d["size"]), int(d["block_dim"])
        u = np.zeros((n, n, bd, bd), dtype=np.complex128)
        for i in range(n):
            for j in range(n):
                u[i, j] = _dense_in(d["entries"][i][j], (bd, bd))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"bad magic payload: {exc}") from exc
    return u


# ---------------------------------------------------------------------------
# files


def payload_kind(d: dict) -> str:
    if not isinstance(d, dict) or "kind" not in d:
        raise SchemaError("payload must be an object with a 'kind' field")
    kind = d["kind"]
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return kind


def load_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            d = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    payload_kind(d)
    return d


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
