"""JSON serialization: exact roundtrips and strict schema rejection."""

import json

import numpy as np
import pytest

from qg import catalog, jsonio
from qg.corep import regular_corep
from qg.errors import SchemaError
from qg.freestar import WordPoly
from qg.hopfcore import verify_all
from qg.tenscore import linf


def _same_poly(p: WordPoly, q: WordPoly) -> bool:
    # coefficients are serialized to 12 significant digits
    return (p - q).max_coeff() <= 1e-11


def test_hopf_roundtrip_is_exact(hosts):
    for name in ("c_s3", "cg_q8", "c_z12"):
        h = hosts[name]
        d = json.loads(jsonio.dumps(jsonio.hopf_to_payload(h, name=name)))
        back = jsonio.hopf_from_payload(d)
        assert linf(back.mult - h.mult) == 0.0
        assert linf(back.delta - h.delta) == 0.0
        assert linf(back.antipode - h.antipode) == 0.0
        assert linf(back.star.j - h.star.j) == 0.0
        assert back.basis_labels == h.basis_labels
        assert verify_all(back).ok


def test_corep_roundtrip_through_embedded_payload(hosts):
    h = hosts["c_s3"]
    u = catalog.permutation_corep(catalog.group("S3"), h)
    d = jsonio.hopf_to_payload(h, coreps={"defining": u, "regular": regular_corep(h)})
    d = json.loads(jsonio.dumps(d))
    back_host = jsonio.hopf_from_payload(d)
    v = jsonio.corep_from_payload(d["coreps"]["defining"], back_host)
    assert v.size == u.size
    assert linf(v.coeffs - u.coeffs) == 0.0


def test_group_roundtrip(groups):
    g = groups["D4"]
    d = json.loads(jsonio.dumps(jsonio.group_to_payload(g)))
    back = jsonio.group_from_payload(d)
    assert back.cayley == g.cayley
    assert back.inverse == g.inverse
    assert back.perm_action == g.perm_action


def test_group_payload_defaults_to_regular_action(groups):
    d = jsonio.group_to_payload(groups["Z4"])
    del d["perm_action"]
    back = jsonio.group_from_payload(d)
    # left translation columns
    assert back.perm_action[1] == tuple(groups["Z4"].cayley[1])


def test_presentation_roundtrip():
    pres = catalog.suq2_presentation(0.75)
    d = json.loads(jsonio.dumps(jsonio.presentation_to_payload(pres)))
    back = jsonio.presentation_from_payload(d)
    assert back.generators == pres.generators
    assert back.star_map == pres.star_map
    assert back.weights == pres.weights
    assert back.precedence == pres.precedence
    assert back.parameters == pres.parameters
    assert len(back.rules) == len(pres.rules)
    for (la, ra), (lb, rb) in zip(back.rules, pres.rules):
        assert la == lb and _same_poly(ra, rb)
    for r_back, r_orig in zip(back.relations, pres.relations):
        assert _same_poly(r_back, r_orig)
    for l in pres.delta_gens:
        assert _same_poly(back.delta_gens[l], pres.delta_gens[l])


def test_irrdata_roundtrip():
    src = catalog.synthetic_nonkac([(2, 2.0), (1, 1.0)])
    d = json.loads(jsonio.dumps(jsonio.irrdata_to_payload(src)))
    back = jsonio.irrdata_from_payload(d)
    assert back.sizes == src.sizes
    for qa, qb in zip(back.qmats, src.qmats):
        assert linf(qa.q - qb.q) == 0.0
        assert qa.d == qb.d


def test_magic_roundtrip_scalar_and_block():
    perm = np.eye(4)[[1, 0, 3, 2]]
    d = jsonio.magic_to_payload(perm)
    assert d["block_dim"] == 1
    back = jsonio.magic_from_payload(json.loads(jsonio.dumps(d)))
    assert back.shape == (4, 4, 1, 1)
    assert linf(back[:, :, 0, 0] - perm) == 0.0

    u = catalog.magic_block_example(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    back2 = jsonio.magic_from_payload(json.loads(jsonio.dumps(jsonio.magic_to_payload(u))))
    assert linf(back2 - u) == 0.0


def test_coefficients_survive_to_twelve_digits(hosts):
    h = hosts["c_s3"]
    scaled = h.mult * (1.0 / 3.0)
    rows = jsonio._sparse3_out(scaled)
    back = jsonio._sparse3_in(rows, h.dim)
    assert linf(back - scaled) <= 1e-12


def test_version_and_kind_are_enforced(hosts):
    d = jsonio.hopf_to_payload(hosts["c_z2"])
    bad = dict(d, version="2")
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(bad)
    with pytest.raises(SchemaError):
        jsonio.algebra_from_payload(d)   # kind is "hopf"
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(["not", "a", "dict"])


def test_missing_field_is_schema_error(hosts):
    d = jsonio.hopf_to_payload(hosts["c_z2"])
    del d["epsilon"]
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(d)


def test_index_out_of_range_is_schema_error(hosts):
    d = jsonio.hopf_to_payload(hosts["c_z2"])
    d["mult"] = [[0, 0, 7, 1.0, 0.0]]
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(d)


def test_malformed_rows_are_schema_errors(hosts):
    d = jsonio.hopf_to_payload(hosts["c_z2"])
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(dict(d, mult=[[0, 0, 0, 1.0]]))
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(dict(d, delta=[[0, 0, 1.0]]))
    with pytest.raises(SchemaError):
        jsonio.hopf_from_payload(dict(d, unit=[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))


def test_corep_payload_rejects_bad_rows(hosts):
    h = hosts["c_z2"]
    with pytest.raises(SchemaError):
        jsonio.corep_from_payload({"size": 1, "coeffs": [[0, 0, 5, 1.0, 0.0]]}, h)
    with pytest.raises(SchemaError):
        jsonio.corep_from_payload({"size": 1, "coeffs": [[0, 0, 0]]}, h)


def test_payload_kind_gate():
    assert jsonio.payload_kind({"kind": "magic"}) == "magic"
    with pytest.raises(SchemaError):
        jsonio.payload_kind({"kind": "sandwich"})
    with pytest.raises(SchemaError):
        jsonio.payload_kind({"version": "1"})
    with pytest.raises(SchemaError):
        jsonio.payload_kind([1, 2, 3])


def test_load_file_errors(tmp_path):
    with pytest.raises(SchemaError):
        jsonio.load_file(str(tmp_path / "absent.json"))
    bad = tmp_path / "garbage.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError):
        jsonio.load_file(str(bad))
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"version": "1", "kind": "sandwich"}', encoding="utf-8")
    with pytest.raises(SchemaError):
        jsonio.load_file(str(unknown))


def test_load_file_roundtrip(tmp_path, groups):
    p = tmp_path / "d4.json"
    p.write_text(jsonio.dumps(jsonio.group_to_payload(groups["D4"])), encoding="utf-8")
    d = jsonio.load_file(str(p))
    assert d["kind"] == "group"
    assert jsonio.group_from_payload(d).order == 8


def test_dumps_is_deterministic(hosts):
    a = jsonio.dumps(jsonio.hopf_to_payload(hosts["cg_s3"]))
    b = jsonio.dumps(jsonio.hopf_to_payload(hosts["cg_s3"]))
    assert a == b
    keys = list(json.loads(a).keys())
    assert keys == sorted(keys)
