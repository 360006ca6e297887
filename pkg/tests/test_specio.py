"""Problem-spec parsing, validation messages, and codecs."""

import json

import numpy as np
import pytest

from cqreduce import Mixture, ModelConfig, ProjectivePower, Uniform
from cqreduce.errors import SpecError
from cqreduce.specio import (
    canonical_sha256,
    load_problem,
    matrix_from_pairs,
    pairs_from_matrix,
    parse_problem,
)


def _spec(**overrides):
    document = {
        "schema": "cqreduce.problem/1",
        "config": {"dim": 2, "hbar": 1.0},
        "state": {"kind": "uniform"},
        "observables": [
            {"label": "sz", "matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}
        ],
        "run": {"seed": 7, "samples": 100, "tolerance": 1e-10},
    }
    document.update(overrides)
    return document


def test_parse_valid_spec():
    spec = parse_problem(_spec())
    assert spec.config == ModelConfig(2, 1.0)
    assert isinstance(spec.state, Uniform)
    assert spec.observables[0].label == "sz"
    assert spec.run.seed == 7
    assert spec.run.samples == 100
    assert len(spec.sha256) == 64


def test_parse_all_state_variants():
    e1 = [[1, 0], [0, 0]]
    variants = [
        ({"kind": "point_mass", "phi": e1}, "PointMass"),
        (
            {
                "kind": "mixture",
                "components": [
                    {"weight": 0.5, "phi": e1},
                    {"weight": 0.5, "phi": [[0, 0], [1, 0]]},
                ],
            },
            "Mixture",
        ),
        ({"kind": "uniform"}, "Uniform"),
        ({"kind": "projective_power", "phi": e1, "power": 2}, "ProjectivePower"),
        (
            {"kind": "exponential_overlap", "phi": e1, "kappa": 1.5},
            "ExponentialOverlap",
        ),
    ]
    for node, expected in variants:
        spec = parse_problem(_spec(state=node))
        assert type(spec.state).__name__ == expected


def test_schema_violation_carries_location():
    with pytest.raises(SpecError) as err:
        parse_problem(_spec(config={"hbar": 1.0}))
    assert "config" in str(err.value)
    with pytest.raises(SpecError) as err:
        parse_problem(_spec(state={"kind": "nonsense"}))
    assert "state" in str(err.value)


def test_missing_schema_field_rejected():
    document = _spec()
    del document["schema"]
    with pytest.raises(SpecError):
        parse_problem(document)


def test_dimension_mismatch_names_field():
    bad = _spec(state={"kind": "point_mass", "phi": [[1, 0], [0, 0], [0, 0]]})
    with pytest.raises(SpecError) as err:
        parse_problem(bad)
    assert "state" in str(err.value)

    bad = _spec(
        observables=[{"matrix": [[[1, 0]]]}]
    )
    with pytest.raises(SpecError) as err:
        parse_problem(bad)
    assert "observables[0]" in str(err.value)


def test_off_sphere_phi_rejected():
    with pytest.raises(SpecError):
        parse_problem(_spec(state={"kind": "point_mass", "phi": [[1, 0], [1, 0]]}))


def test_overrides_replace_run_values():
    spec = parse_problem(
        _spec(), overrides={"seed": 99, "samples": 5, "hbar": 2.0, "tolerance": 1e-6}
    )
    assert spec.run.seed == 99
    assert spec.run.samples == 5
    assert spec.run.tolerance == 1e-6
    assert spec.config.hbar == 2.0
    # the hash reflects the document, not the overrides
    assert spec.sha256 == parse_problem(_spec()).sha256


def test_hash_is_order_insensitive():
    a = {"x": 1, "y": [1, 2]}
    b = {"y": [1, 2], "x": 1}
    assert canonical_sha256(a) == canonical_sha256(b)


def test_matrix_codec_round_trip():
    m = np.array([[1.0 + 2.0j, 0.0], [-1.5j, 3.0]])
    assert np.array_equal(matrix_from_pairs(pairs_from_matrix(m)), m)


def test_load_problem_reports_json_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"schema": }', encoding="utf-8")
    with pytest.raises(SpecError) as err:
        load_problem(path)
    assert "line 1" in str(err.value)


def test_load_problem_missing_file(tmp_path):
    with pytest.raises(SpecError):
        load_problem(tmp_path / "absent.json")


def test_mixture_spec_builds_mixture():
    node = {
        "kind": "mixture",
        "components": [
            {"weight": 0.25, "phi": [[1, 0], [0, 0]]},
            {"weight": 0.75, "phi": [[0, 0], [1, 0]]},
        ],
    }
    spec = parse_problem(_spec(state=node))
    assert isinstance(spec.state, Mixture)
    assert spec.state.components[1][0] == 0.75


def test_kernel_spec_builds_projective_power():
    node = {"kind": "projective_power", "phi": [[1, 0], [0, 0]], "power": 3}
    spec = parse_problem(_spec(state=node))
    assert isinstance(spec.state, ProjectivePower)
    assert spec.state.power == 3
