import json
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from lorentzlie.cli import main as cli_main
from lorentzlie.service import app

client = TestClient(app)

SL2_DOC = {
    "schema_version": "1",
    "entries": [
        {"id": "sl2", "kind": "algebra", "payload": {"catalog": {"name": "sl2"}}},
        {"id": "k", "kind": "form", "payload": {"algebra": "sl2", "killing": True}},
        {
            "id": "space",
            "kind": "reductive_space",
            "payload": {"algebra": "sl2", "h": [], "metric": {"form": "k"}},
        },
    ],
}


def test_health():
    resp = client.get("/v1/health")
    assert resp.status_code == 200 and resp.json() == {"status": "ok"}


def test_analyze_endpoint_golden():
    resp = client.post("/v1/analyze", json={"model_file": SL2_DOC})
    assert resp.status_code == 200
    report = resp.json()
    by_id = {e["id"]: e["results"] for e in report["entries"]}
    assert by_id["space"]["scal"] == {"v": "-3/4", "mode": "exact"}
    assert by_id["space"]["holonomy_dim"] == 3
    assert by_id["k"]["lorentzian"] is True
    assert by_id["sl2"]["classification"]["s_kind"] == "sl2"
    # entries ordered by id
    assert [e["id"] for e in report["entries"]] == sorted(e["id"] for e in report["entries"])


def test_analyze_parse_error():
    resp = client.post("/v1/analyze", json={"model_file": {"schema_version": "0"}})
    assert resp.status_code == 400
    assert resp.json()["error"] == "parse"


def test_analyze_validation_error_names_entry():
    doc = {
        "schema_version": "1",
        "entries": [
            {
                "id": "bad",
                "kind": "algebra",
                "payload": {"dim": 3, "structure": [[1, 2, 0, "1"], [0, 1, 1, "1"]]},
            }
        ],
    }
    resp = client.post("/v1/analyze", json={"model_file": doc})
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "validation" and body["entry"] == "bad"
    assert "Jacobi" in body["detail"]


def test_analyze_empty_entries():
    resp = client.post("/v1/analyze", json={"model_file": {"schema_version": "1", "entries": []}})
    assert resp.status_code == 200
    assert resp.json()["entries"] == []


def test_classify_endpoint():
    doc = {
        "schema_version": "1",
        "entries": [
            {
                "id": "tw",
                "kind": "algebra",
                "payload": {"catalog": {"name": "twisted_heisenberg", "lambda": ["2", "4"]}},
            }
        ],
    }
    resp = client.post("/v1/classify", json={"model_file": doc})
    assert resp.status_code == 200
    cls = resp.json()["classification"]
    assert cls["in_classification"] and cls["s_lambda"] == [1, 2]


def test_classify_requires_single_algebra():
    resp = client.post(
        "/v1/classify", json={"model_file": {"schema_version": "1", "entries": []}}
    )
    assert resp.status_code == 422


def test_verify_endpoint_constants():
    resp = client.post("/v1/verify", json={"suite": "constants"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert len(body["suites"]) == 1 and len(body["suites"][0]["criteria"]) == 4


def test_cli_analyze_and_determinism(tmp_path, capsys):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(SL2_DOC))
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert cli_main(["analyze", str(path), "--json", str(out1)]) == 0
    first = capsys.readouterr().out
    assert cli_main(["analyze", str(path), "--json", str(out2)]) == 0
    second = capsys.readouterr().out
    assert first == second  # byte-identical markdown
    assert out1.read_bytes() == out2.read_bytes()  # byte-identical sidecar
    assert "| scal | -3/4 |" in first
    # machine-readable report re-parses
    report = json.loads(out1.read_text())
    assert report["provenance"]["mode"] == "exact"


def test_cli_exit_codes(tmp_path, capsys):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{")
    with pytest.raises(SystemExit) as exc:
        cli_main(["analyze", str(bad_json)])
    assert exc.value.code == 2
    capsys.readouterr()

    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        json.dumps(
            {
                "schema_version": "1",
                "entries": [
                    {
                        "id": "bad",
                        "kind": "algebra",
                        "payload": {"dim": 3, "structure": [[1, 2, 0, "1"], [0, 1, 1, "1"]]},
                    }
                ],
            }
        )
    )
    with pytest.raises(SystemExit) as exc:
        cli_main(["analyze", str(invalid)])
    assert exc.value.code == 1
    capsys.readouterr()


def test_cli_classify(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(
        json.dumps(
            {
                "schema_version": "1",
                "entries": [
                    {"id": "so3", "kind": "algebra", "payload": {"catalog": {"name": "so3"}}}
                ],
            }
        )
    )
    assert cli_main(["classify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "k_dim=3, a_dim=0, s=trivial" in out


def test_cli_numeric_mode(tmp_path, capsys):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(SL2_DOC))
    assert cli_main(["analyze", str(path), "--mode", "numeric"]) == 0
    out = capsys.readouterr().out
    assert "| scal | -0.75 |" in out


def test_service_rejects_malformed_payloads_without_500():
    fuzz_client = TestClient(app, raise_server_exceptions=False)
    cases = [
        {"schema_version": "1", "entries": [{"id": "a", "kind": "algebra", "payload": {"dim": 3, "structure": 5}}]},
        {"schema_version": "1", "entries": [{"id": "a", "kind": "algebra", "payload": {"catalog": {"name": "abelian", "n": "x"}}}]},
        {"schema_version": "1", "entries": [
            {"id": "f", "kind": "form", "payload": {"algebra": "g", "twisted_lorentz": "x"}},
            {"id": "g", "kind": "algebra", "payload": {"catalog": {"name": "sl2"}}},
        ]},
        {"schema_version": "1", "entries": [{"id": "m", "kind": "twisted_model", "payload": {"lambda": ["1"], "abelian_dim": "x"}}]},
        {"schema_version": "1", "entries": [{"id": "m", "kind": "twisted_model", "payload": {"lambda": ["1"], "compact_factor": 3}}]},
        {"schema_version": "1", "entries": [
            {"id": "sp", "kind": "reductive_space", "payload": {"algebra": "g", "h": "bad", "metric": [["1"]]}},
            {"id": "g", "kind": "algebra", "payload": {"catalog": {"name": "abelian", "n": 1}}},
        ]},
        {"schema_version": "1", "entries": [{"id": "a", "kind": "algebra", "payload": {"dim": True, "structure": []}}]},
    ]
    for doc in cases:
        resp = fuzz_client.post("/v1/analyze", json={"model_file": doc})
        assert resp.status_code in (400, 422), (resp.status_code, doc)

    import random

    rng = random.Random(123)

    def rv(depth=0):
        kind = rng.choice(
            ["int", "str", "list", "dict", "none", "bool"] if depth < 3 else ["int", "str", "none"]
        )
        if kind == "int":
            return rng.randint(-5, 5)
        if kind == "str":
            return rng.choice(["1/2", "x", "", "sl2", "so3", "1", "7/3", "-2"])
        if kind == "none":
            return None
        if kind == "bool":
            return rng.choice([True, False])
        if kind == "list":
            return [rv(depth + 1) for _ in range(rng.randint(0, 4))]
        keys = [
            "catalog", "dim", "structure", "algebra", "matrix", "killing", "lambda",
            "tilt", "k", "z", "h", "m", "metric", "name", "d", "n", "scale",
            "twisted_lorentz", "alpha", "beta", "zz", "compact_factor", "abelian_dim",
            "riemann_p", "basis_labels", "form",
        ]
        return {rng.choice(keys): rv(depth + 1) for _ in range(rng.randint(0, 4))}

    for _ in range(120):
        doc = {
            "schema_version": "1",
            "entries": [
                {
                    "id": rng.choice(["a", "b", "c"]),
                    "kind": rng.choice(["algebra", "form", "reductive_space", "twisted_model"]),
                    "payload": rv(),
                }
                for _ in range(rng.randint(0, 3))
            ],
        }
        resp = fuzz_client.post("/v1/analyze", json={"model_file": doc})
        assert resp.status_code < 500, doc


def test_cli_verify_constants(capsys):
    assert cli_main(["verify", "--suite", "constants"]) == 0
    out = capsys.readouterr().out
    assert "suite constants: PASS" in out
    assert out.count("[PASS]") == 4


def test_sample_models_analyze(capsys):
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[1] / "sample_models"
    for name in ("sl2_analysis.json", "twisted_tilted.json"):
        assert cli_main(["analyze", str(root / name)]) == 0
        capsys.readouterr()
    assert cli_main(["classify", str(root / "classify_he2.json")]) == 0
    out = capsys.readouterr().out
    assert "twisted_heisenberg(lambda=[1, 2])" in out
