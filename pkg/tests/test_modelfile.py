import json

import pytest

from lorentzlie.modelfile import (
    ParseError,
    ValidationError,
    load_model_file,
    parse_model_file,
)


def _doc(entries):
    return json.dumps({"schema_version": "1", "entries": entries})


def test_parse_rejects_bad_json():
    with pytest.raises(ParseError, match="line 1"):
        parse_model_file("{nope")


def test_parse_rejects_wrong_schema():
    with pytest.raises(ParseError, match="schema_version"):
        parse_model_file(json.dumps({"schema_version": "2", "entries": []}))


def test_parse_rejects_duplicate_ids():
    doc = _doc(
        [
            {"id": "a", "kind": "algebra", "payload": {"catalog": {"name": "sl2"}}},
            {"id": "a", "kind": "algebra", "payload": {"catalog": {"name": "so3"}}},
        ]
    )
    with pytest.raises(ParseError, match="duplicate"):
        parse_model_file(doc)


def test_parse_rejects_unknown_kind():
    with pytest.raises(ParseError, match="unknown kind"):
        parse_model_file(_doc([{"id": "a", "kind": "mystery", "payload": {}}]))


def test_empty_entries_ok():
    model = load_model_file(_doc([]))
    assert model.entries == []


def test_build_catalog_and_explicit_table():
    doc = _doc(
        [
            {"id": "cat", "kind": "algebra", "payload": {"catalog": {"name": "heisenberg", "d": 2}}},
            {
                "id": "explicit",
                "kind": "algebra",
                "payload": {
                    "dim": 3,
                    "basis_labels": ["e", "f", "h"],
                    "structure": [[0, 1, 2, "1"], [2, 0, 0, "2"], [2, 1, 1, "-2"]],
                },
            },
        ]
    )
    model = load_model_file(doc)
    assert model.entry("cat").obj.dim == 5
    assert model.entry("explicit").obj.table == {
        (0, 1): {2: 1},
        (0, 2): {0: -2},
        (1, 2): {1: 2},
    }


def test_build_rejects_jacobi_violation_with_triple():
    doc = _doc(
        [
            {
                "id": "bad",
                "kind": "algebra",
                "payload": {
                    "dim": 3,
                    "structure": [[1, 2, 0, "1"], [0, 1, 1, "1"]],
                },
            }
        ]
    )
    with pytest.raises(ValidationError, match="Jacobi.*\\(0, 1, 2\\)"):
        load_model_file(doc)


def test_unresolved_reference():
    doc = _doc([{"id": "f", "kind": "form", "payload": {"algebra": "ghost", "killing": True}}])
    with pytest.raises(ValidationError, match="unresolved"):
        load_model_file(doc)


def test_references_are_order_independent():
    doc = _doc(
        [
            {"id": "k", "kind": "form", "payload": {"algebra": "g", "killing": True}},
            {"id": "g", "kind": "algebra", "payload": {"catalog": {"name": "so3"}}},
        ]
    )
    model = load_model_file(doc)
    assert model.entry("k").obj.matrix[0][0] == -2


def test_twisted_model_payload():
    doc = _doc(
        [
            {
                "id": "m",
                "kind": "twisted_model",
                "payload": {
                    "lambda": ["1"],
                    "alpha": "1",
                    "beta": "0",
                    "compact_factor": "so3",
                    "tilt": [{"k": ["1", "0", "0"], "z": "1"}],
                },
            }
        ]
    )
    model = load_model_file(doc)
    from lorentzlie.twisted_model import is_special

    assert not is_special(model.entry("m").obj)


def test_twisted_model_invalid_riemann():
    doc = _doc(
        [
            {
                "id": "m",
                "kind": "twisted_model",
                "payload": {
                    "lambda": ["1"],
                    "compact_factor": "so3",
                    "tilt": [{"k": ["1", "0", "0"], "z": "0"}],
                    "riemann_p": [["1", "0"], ["0", "-1"]],
                },
            }
        ]
    )
    with pytest.raises(ValidationError, match="positive definite"):
        load_model_file(doc)


def test_reductive_space_with_isotropy():
    # the round 2-sphere as so3 with isotropy span{A1}
    doc = _doc(
        [
            {"id": "so3", "kind": "algebra", "payload": {"catalog": {"name": "so3"}}},
            {
                "id": "sphere",
                "kind": "reductive_space",
                "payload": {
                    "algebra": "so3",
                    "h": [["1", "0", "0"]],
                    "m": [["0", "1", "0"], ["0", "0", "1"]],
                    "metric": [["1", "0"], ["0", "1"]],
                },
            },
        ]
    )
    model = load_model_file(doc)
    from lorentzlie.homogeneous import ricci_tensor, scalar_curvature

    sp = model.entry("sphere").obj
    ric = ricci_tensor(sp)
    assert ric[0][0] == ric[1][1] > 0 and ric[0][1] == 0
    assert scalar_curvature(sp) == 2 * ric[0][0]


def test_reductive_space_with_form_metric():
    doc = _doc(
        [
            {"id": "g", "kind": "algebra", "payload": {"catalog": {"name": "sl2"}}},
            {"id": "k", "kind": "form", "payload": {"algebra": "g", "killing": True, "scale": "3"}},
            {"id": "sp", "kind": "reductive_space", "payload": {"algebra": "g", "metric": {"form": "k"}}},
        ]
    )
    model = load_model_file(doc)
    from lorentzlie.homogeneous import scalar_curvature
    from fractions import Fraction as F

    assert scalar_curvature(model.entry("sp").obj) == F(-1, 4)
