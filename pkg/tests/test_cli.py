"""Command-line interface: exit codes, JSON output, QG_TOL, remote mode."""

import json

import pytest
from click.testing import CliRunner

from qg import jsonio, pipelines
from qg.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def spec_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("specs")
    for name in ("c_s3", "cg_z6", "monoid_bialgebra", "suq2", "magic4",
                 "nonkac", "group_d4"):
        path = d / f"{name}.json"
        path.write_text(jsonio.dumps(pipelines.catalog_payload(name, q=0.5)),
                        encoding="utf-8")
    return d


def _run(runner, args, env=None):
    result = runner.invoke(main, args, env=env, catch_exceptions=False)
    report = json.loads(result.output) if result.output.strip() else {}
    return result.exit_code, report


def test_catalog_list(runner):
    code, rep = _run(runner, ["catalog", "list"])
    assert code == 0
    assert "c_s3" in rep["names"]


def test_catalog_writes_file(runner, tmp_path):
    out = tmp_path / "z2.json"
    code, _ = _run(runner, ["catalog", "cg_z2", "-o", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["kind"] == "hopf"


def test_catalog_unknown_name_exits_2(runner):
    code, rep = _run(runner, ["catalog", "c_monster"])
    assert code == 2
    assert rep["error"]["type"] == "SchemaError"


def test_verify_passes(runner, spec_dir):
    code, rep = _run(runner, ["verify", str(spec_dir / "c_s3.json")])
    assert code == 0
    assert rep["ok"] is True


def test_verify_group_spec(runner, spec_dir):
    code, rep = _run(runner, ["verify", str(spec_dir / "group_d4.json")])
    assert code == 0


def test_verify_mathematical_failure_exits_1(runner, spec_dir):
    code, rep = _run(runner, ["verify", str(spec_dir / "monoid_bialgebra.json")])
    assert code == 1
    assert rep["ok"] is False


def test_verify_missing_file_exits_2(runner):
    code, rep = _run(runner, ["verify", "/nonexistent/file.json"])
    assert code == 2


def test_verify_wrong_kind_exits_2(runner, spec_dir):
    code, rep = _run(runner, ["verify", str(spec_dir / "magic4.json")])
    assert code == 2


def test_haar_both_methods(runner, spec_dir):
    code, rep = _run(runner, ["haar", str(spec_dir / "c_s3.json"),
                              "--method", "both"])
    assert code == 0
    assert rep["agreement"] <= 1e-6


def test_qg_tol_env_threads_into_checks(runner, spec_dir):
    path = str(spec_dir / "c_s3.json")
    code, _ = _run(runner, ["haar", path, "--method", "both"],
                   env={"QG_TOL": "1e-6"})
    assert code == 0
    code, rep = _run(runner, ["haar", path, "--method", "both"],
                     env={"QG_TOL": "1e-12"})
    assert code == 1
    assert "error" in rep or rep.get("ok") is False


def test_qg_tol_must_be_a_float(runner, spec_dir):
    code, rep = _run(runner, ["haar", str(spec_dir / "c_s3.json")],
                     env={"QG_TOL": "tight"})
    assert code == 2
    assert "QG_TOL" in rep["error"]["message"]


def test_explicit_tol_overrides_env(runner, spec_dir):
    code, _ = _run(runner, ["haar", str(spec_dir / "c_s3.json"),
                            "--method", "both", "--tol", "1e-6"],
                   env={"QG_TOL": "1e-12"})
    assert code == 0


def test_decompose_embedded_corep(runner, spec_dir):
    code, rep = _run(runner, ["decompose", str(spec_dir / "c_s3.json"),
                              "--corep", "defining"])
    assert code == 0
    assert sorted(rep["dims"]) == [1, 2]


def test_decompose_unknown_corep_exits_2(runner, spec_dir):
    code, _ = _run(runner, ["decompose", str(spec_dir / "c_s3.json"),
                            "--corep", "spinor"])
    assert code == 2


def test_dual_from_hopf(runner, spec_dir):
    code, rep = _run(runner, ["dual", str(spec_dir / "cg_z6.json")])
    assert code == 0
    assert rep["biduality"] is True


def test_dual_truncated(runner, spec_dir):
    code, rep = _run(runner, ["dual", "--truncated", str(spec_dir / "nonkac.json")])
    assert code == 0
    assert rep["witness"]["gap"] >= 0.1


def test_dual_requires_exactly_one_source(runner, spec_dir):
    code, _ = _run(runner, ["dual"])
    assert code == 2
    code, _ = _run(runner, ["dual", str(spec_dir / "cg_z6.json"),
                            "--truncated", str(spec_dir / "nonkac.json")])
    assert code == 2


def test_rewrite_expr(runner, spec_dir):
    code, rep = _run(runner, ["rewrite", str(spec_dir / "suq2.json"),
                              "--expr", "g a"])
    assert code == 0
    assert rep["normal_form"] == [[[2.0, 0.0], ["a", "g"]]]


def test_rewrite_validates_presentation(runner, spec_dir):
    code, rep = _run(runner, ["rewrite", str(spec_dir / "suq2.json")])
    assert code == 0
    assert rep["ok"] is True


def test_magic_command(runner, spec_dir):
    code, rep = _run(runner, ["magic", str(spec_dir / "magic4.json")])
    assert code == 0
    assert all(c["passed"] for c in rep["checks"])


def test_server_mode_forwards_and_maps_422(runner, spec_dir, monkeypatch):
    calls = {}

    class FakeResponse:
        def __init__(self, status_code, body):
            self.status_code = status_code
            self._body = body
            self.text = json.dumps(body)

        def json(self):
            return self._body

        def raise_for_status(self):
            pass

    def fake_post(url, json=None, timeout=None):
        calls["url"] = url
        calls["body"] = json
        if json["spec"]["kind"] == "magic":
            return FakeResponse(422, {"detail": "bad kind"})
        return FakeResponse(200, {"ok": True, "command": "verify", "checks": []})

    import httpx
    monkeypatch.setattr(httpx, "post", fake_post)

    code, rep = _run(runner, ["--server", "http://qqq:1", "verify",
                              str(spec_dir / "c_s3.json")])
    assert code == 0
    assert calls["url"] == "http://qqq:1/verify"
    assert calls["body"]["spec"]["kind"] == "hopf"

    code, rep = _run(runner, ["--server", "http://qqq:1", "verify",
                              str(spec_dir / "magic4.json")])
    assert code == 2
    assert rep["error"]["type"] == "SchemaError"


def test_server_mode_maps_error_envelope_to_1(runner, spec_dir, monkeypatch):
    def fake_post(url, json=None, timeout=None):
        class R:
            status_code = 200
            text = ""

            def json(self):
                return {"ok": False,
                        "error": {"type": "NoSolution", "message": "no antipode"}}

            def raise_for_status(self):
                pass
        return R()

    import httpx
    monkeypatch.setattr(httpx, "post", fake_post)
    code, rep = _run(runner, ["--server", "http://qqq:1", "verify",
                              str(spec_dir / "c_s3.json")])
    assert code == 1
    assert rep["error"]["type"] == "NoSolution"
