"""Payload-level pipelines behind the CLI and the HTTP service."""

import numpy as np
import pytest

from qg import pipelines
from qg.errors import NotAState, SchemaError
from qg.tenscore import Tolerance


@pytest.fixture(scope="module")
def pay():
    return pipelines.catalog_payload


def test_catalog_names_cover_all_entries():
    names = pipelines.catalog_names()
    assert len(names) == 3 * 16 + 5
    for stem in ("cg_z2", "c_s4", "group_q8", "suq2", "snplus", "magic4",
                 "nonkac", "monoid_bialgebra"):
        assert stem in names


def test_catalog_payload_unknown_name():
    with pytest.raises(SchemaError):
        pipelines.catalog_payload("c_sporadic")
    with pytest.raises(SchemaError):
        pipelines.catalog_payload("nonkac", blocks="2x2")


def test_verify_hopf_payload(pay):
    out = pipelines.run_verify(pay("c_s3"))
    assert out["ok"] is True
    names = [c["name"] for c in out["checks"]]
    assert "cancellation-spans" in names
    assert all(c["passed"] for c in out["checks"])


def test_verify_group_payload_runs_both_algebras(pay):
    out = pipelines.run_verify(pay("group_d4"))
    names = [c["name"] for c in out["checks"]]
    assert any(n.startswith("group-algebra/") for n in names)
    assert any(n.startswith("function-algebra/") for n in names)
    assert out["ok"] is True


def test_verify_presentation_and_irrdata(pay):
    assert pipelines.run_verify(pay("suq2", q=0.5))["ok"] is True
    out = pipelines.run_verify(pay("nonkac", blocks="2:2,1:1"))
    assert out["ok"] is True
    assert any(c["name"] == "trace-balance" for c in out["checks"])


def test_verify_rejects_magic_kind(pay):
    with pytest.raises(SchemaError):
        pipelines.run_verify(pay("magic4"))


def test_verify_flags_missing_cancellation(pay):
    out = pipelines.run_verify(pay("monoid_bialgebra"))
    assert out["ok"] is False
    failed = [c["name"] for c in out["checks"] if not c["passed"]]
    assert failed == ["cancellation-spans"]


def test_haar_solve_and_agreement(pay):
    out = pipelines.run_haar(pay("c_s3"), method="both")
    assert out["ok"] is True
    assert out["agreement"] <= 1e-6
    state = np.array([complex(re, im) for re, im in out["state"]])
    assert np.allclose(state, np.full(6, 1 / 6), atol=1e-12)
    assert out["tracial"] is True


def test_haar_group_algebra_is_identity_coefficient(pay):
    out = pipelines.run_haar(pay("cg_q8"))
    state = np.array([complex(re, im) for re, im in out["state"]])
    expect = np.zeros(8)
    expect[0] = 1.0
    assert np.allclose(state, expect, atol=1e-12)


def test_haar_unknown_method(pay):
    with pytest.raises(SchemaError):
        pipelines.run_haar(pay("c_z2"), method="guess")


def test_decompose_defining_corep(pay):
    out = pipelines.run_decompose(pay("c_s3"), corep_name="defining")
    assert out["ok"] is True
    assert sorted(out["dims"]) == [1, 2]
    assert out["multiplicities"] == [1, 1]
    assert out["kac"]["is_kac"] is True
    assert out["completeness_residual"] <= 1e-8


def test_decompose_regular_corep(pay):
    out = pipelines.run_decompose(pay("c_s3"))
    assert sorted(out["dims"]) == [1, 1, 2]
    assert sorted(out["multiplicities"]) == [1, 1, 2]
    assert out["orthogonality"]["family1"] <= 1e-8
    assert out["orthogonality"]["family2"] <= 1e-8


def test_decompose_unknown_corep_name(pay):
    with pytest.raises(SchemaError):
        pipelines.run_decompose(pay("c_s3"), corep_name="spinor")


def test_dual_of_function_algebra(pay):
    out = pipelines.run_dual(pay("c_s3"))
    assert out["ok"] is True
    assert sorted(out["blocks"]) == [1, 1, 2]
    assert out["biduality"] is True
    assert out["fourier_roundtrip"]["inv_after"] <= 1e-9
    assert out["fourier_roundtrip"]["after_inv"] <= 1e-9
    assert out["fourier_unit_residual"] <= 1e-9
    assert any(c["name"] == "kac-reduction" for c in out["modular"])
    assert out["unimodular"] is True


def test_dual_of_nonkac_witness(pay):
    out = pipelines.run_dual(pay("nonkac", blocks="2:2,1:1"))
    assert out["ok"] is True
    assert out["weights_differ"] is True
    assert out["witness"]["hhat_L"] == pytest.approx(1.25)
    assert out["witness"]["hhat_R"] == pytest.approx(5.0)
    assert out["witness"]["gap"] >= 0.1
    assert out["unimodular"] is False


def test_dual_rejects_other_kinds(pay):
    with pytest.raises(SchemaError):
        pipelines.run_dual(pay("group_z3"))


def test_rewrite_validation_mode(pay):
    out = pipelines.run_rewrite(pay("suq2", q=0.5))
    assert out["ok"] is True
    names = [c["name"] for c in out["checks"]]
    assert "rules-reduce-order" in names
    assert any(n.startswith("delta-relation-") for n in names)


def test_rewrite_expression_mode(pay):
    out = pipelines.run_rewrite(pay("suq2", q=0.5), expr="g a")
    assert out["ok"] is True
    assert out["normal_form"] == [[[2.0, 0.0], ["a", "g"]]]


def test_rewrite_rejects_unknown_letter(pay):
    with pytest.raises(SchemaError):
        pipelines.run_rewrite(pay("suq2", q=0.5), expr="a b")


def test_rewrite_snplus(pay):
    out = pipelines.run_rewrite(pay("snplus", n=3))
    assert out["ok"] is True


def test_magic_pipeline(pay):
    out = pipelines.run_magic(pay("magic4", seed=5))
    assert out["ok"] is True
    assert out["size"] == 4 and out["block_dim"] == 2

    d = pay("magic4", seed=5)
    d["entries"][0][0][0][0] = [0.9, 0.0]   # break idempotency
    bad = pipelines.run_magic(d)
    assert bad["ok"] is False


def test_eval_hom_pipeline(pay):
    d = pay("suq2", q=0.7)
    ok = pipelines.run_eval_hom(d, {"a": [[[1.0, 0.0]]], "g": [[[0.0, 0.0]]]})
    assert ok["ok"] is True
    bad = pipelines.run_eval_hom(d, {"a": [[[2.0, 0.0]]], "g": [[[0.0, 0.0]]]})
    assert bad["ok"] is False


def test_tolerance_threading(pay):
    # a demanding tolerance reaches the averaging loop: the finite-iteration
    # limit no longer qualifies as a state at 1e-12
    tight = Tolerance(1e-12, 1e-12)
    with pytest.raises(NotAState):
        pipelines.run_haar(pay("c_s3"), tol=tight, method="both")
