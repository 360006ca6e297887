"""Published JSON schemas for problem specs and run reports (version 1).

Complex numbers are [re, im] pairs; vectors are lists of pairs; matrices
are row-major lists of rows of pairs.  These dicts are the interchange
contract for test fixtures and reimplementations in other languages.
"""

from __future__ import annotations

PROBLEM_SCHEMA_ID = "cqreduce.problem/1"
REPORT_SCHEMA_ID = "cqreduce.report/1"

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_CVECTOR = {"type": "array", "items": _COMPLEX, "minItems": 1}
_CMATRIX = {"type": "array", "items": _CVECTOR, "minItems": 1}
_RVECTOR = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_RMATRIX = {"type": "array", "items": _RVECTOR, "minItems": 1}

_CONFIG = {
    "type": "object",
    "required": ["dim"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "hbar": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}

_STATE_VARIANTS = [
    {
        "type": "object",
        "required": ["kind", "phi"],
        "properties": {"kind": {"const": "point_mass"}, "phi": _CVECTOR},
        "additionalProperties": False,
    },
    {
        "type": "object",
        "required": ["kind", "components"],
        "properties": {
            "kind": {"const": "mixture"},
            "components": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "required": ["weight", "phi"],
                    "properties": {
                        "weight": {"type": "number", "minimum": 0},
                        "phi": _CVECTOR,
                    },
                    "additionalProperties": False,
                },
            },
        },
        "additionalProperties": False,
    },
    {
        "type": "object",
        "required": ["kind"],
        "properties": {"kind": {"const": "uniform"}},
        "additionalProperties": False,
    },
    {
        "type": "object",
        "required": ["kind", "phi", "power"],
        "properties": {
            "kind": {"const": "projective_power"},
            "phi": _CVECTOR,
            "power": {"type": "integer", "minimum": 0},
        },
        "additionalProperties": False,
    },
    {
        "type": "object",
        "required": ["kind", "phi", "kappa"],
        "properties": {
            "kind": {"const": "exponential_overlap"},
            "phi": _CVECTOR,
            "kappa": {"type": "number", "minimum": 0},
        },
        "additionalProperties": False,
    },
]

_OBSERVABLE = {
    "type": "object",
    "required": ["matrix"],
    "properties": {
        "matrix": _CMATRIX,
        "label": {"type": "string"},
    },
    "additionalProperties": False,
}

_RUN = {
    "type": "object",
    "properties": {
        "seed": {"type": "integer", "minimum": 0},
        "samples": {"type": "integer", "minimum": 1},
        "tolerance": {"type": "number", "minimum": 0},
        "times": {"type": "array", "items": {"type": "number"}, "minItems": 1},
    },
    "additionalProperties": False,
}

PROBLEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": PROBLEM_SCHEMA_ID,
    "type": "object",
    "required": ["schema", "config", "state"],
    "properties": {
        "schema": {"const": PROBLEM_SCHEMA_ID},
        "config": _CONFIG,
        "state": {"oneOf": _STATE_VARIANTS},
        "observables": {"type": "array", "items": _OBSERVABLE},
        "run": _RUN,
    },
    "additionalProperties": False,
}

_LABEL = {"type": ["string", "null"]}

_REDUCTION_REPORT = {
    "type": "object",
    "required": [
        "method",
        "estimate",
        "stderr_real",
        "stderr_imag",
        "sample_count",
        "seed",
    ],
    "properties": {
        "method": {"enum": ["closed_form", "monte_carlo"]},
        "estimate": {
            "type": "object",
            "required": ["matrix", "hbar"],
            "properties": {"matrix": _CMATRIX, "hbar": {"type": "number"}},
            "additionalProperties": False,
        },
        "stderr_real": _RMATRIX,
        "stderr_imag": _RMATRIX,
        "sample_count": {"type": "integer", "minimum": 0},
        "seed": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}

_MOMENT_REPORT = {
    "type": "object",
    "required": [
        "matrix",
        "stderr_real",
        "stderr_imag",
        "max_abs_deviation",
        "envelope_passed",
    ],
    "properties": {
        "matrix": _CMATRIX,
        "stderr_real": _RMATRIX,
        "stderr_imag": _RMATRIX,
        "max_abs_deviation": {"type": "number"},
        "envelope_passed": {"type": "boolean"},
    },
    "additionalProperties": False,
}

_RESULTS = {
    "reduce": {
        "type": "object",
        "oneOf": [
            {
                "required": ["reduction"],
                "properties": {"reduction": _REDUCTION_REPORT},
                "additionalProperties": False,
            },
            {
                "required": ["closed_form", "monte_carlo", "comparison"],
                "properties": {
                    "closed_form": _REDUCTION_REPORT,
                    "monte_carlo": _REDUCTION_REPORT,
                    "comparison": {
                        "type": "object",
                        "required": ["max_abs_deviation", "within_five_sigma"],
                        "properties": {
                            "max_abs_deviation": {"type": "number"},
                            "within_five_sigma": {"type": "boolean"},
                        },
                        "additionalProperties": False,
                    },
                },
                "additionalProperties": False,
            },
        ],
    },
    "expect": {
        "type": "object",
        "required": ["sample_count", "seed", "observables"],
        "properties": {
            "sample_count": {"type": "integer"},
            "seed": {"type": "integer"},
            "observables": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": [
                        "label",
                        "classical_value",
                        "classical_stderr",
                        "quantum_value",
                        "quantum_method",
                    ],
                    "properties": {
                        "label": _LABEL,
                        "classical_value": {"type": "number"},
                        "classical_stderr": {"type": "number"},
                        "quantum_value": {"type": "number"},
                        "quantum_method": {
                            "enum": ["closed_form", "same_batch_monte_carlo"]
                        },
                    },
                    "additionalProperties": False,
                },
            },
        },
        "additionalProperties": False,
    },
    "verify": {
        "type": "object",
        "required": ["sample_count", "seed", "tolerance", "all_passed", "observables"],
        "properties": {
            "sample_count": {"type": "integer"},
            "seed": {"type": "integer"},
            "tolerance": {"type": "number"},
            "all_passed": {"type": "boolean"},
            "observables": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": [
                        "label",
                        "classical_value",
                        "quantum_value",
                        "absolute_difference",
                        "relative_difference",
                        "comparison",
                        "passed",
                        "closed_form_value",
                    ],
                    "properties": {
                        "label": _LABEL,
                        "classical_value": {"type": "number"},
                        "quantum_value": {"type": "number"},
                        "absolute_difference": {"type": "number"},
                        "relative_difference": {"type": ["number", "null"]},
                        "comparison": {"enum": ["relative", "absolute"]},
                        "passed": {"type": "boolean"},
                        "closed_form_value": {"type": ["number", "null"]},
                    },
                    "additionalProperties": False,
                },
            },
        },
        "additionalProperties": False,
    },
    "evolve": {
        "type": "object",
        "required": ["generator", "times", "trajectory", "conservation"],
        "properties": {
            "generator": _LABEL,
            "times": {"type": "array", "items": {"type": "number"}},
            "trajectory": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": [
                        "time",
                        "state",
                        "norm_deviation",
                        "generator_value",
                        "q",
                        "p",
                        "energy",
                    ],
                    "properties": {
                        "time": {"type": "number"},
                        "state": _CVECTOR,
                        "norm_deviation": {"type": "number"},
                        "generator_value": {"type": "number"},
                        "q": _RVECTOR,
                        "p": _RVECTOR,
                        "energy": {"type": "number"},
                    },
                    "additionalProperties": False,
                },
            },
            "conservation": {
                "type": "object",
                "required": ["max_norm_deviation", "max_generator_drift"],
                "properties": {
                    "max_norm_deviation": {"type": "number"},
                    "max_generator_drift": {"type": "number"},
                },
                "additionalProperties": False,
            },
            "observable_values": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["label", "values"],
                    "properties": {
                        "label": _LABEL,
                        "values": {"type": "array", "items": {"type": "number"}},
                    },
                    "additionalProperties": False,
                },
            },
        },
        "additionalProperties": False,
    },
    "moments": {
        "type": "object",
        "required": ["sample_count", "seed", "moment", "unitary_invariance", "passed"],
        "properties": {
            "sample_count": {"type": "integer"},
            "seed": {"type": "integer"},
            "moment": _MOMENT_REPORT,
            "unitary_invariance": {
                "type": "object",
                "required": ["unitary_seed", "moment", "passed"],
                "properties": {
                    "unitary_seed": {"type": "integer"},
                    "moment": _MOMENT_REPORT,
                    "passed": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
            "passed": {"type": "boolean"},
        },
        "additionalProperties": False,
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": REPORT_SCHEMA_ID,
    "type": "object",
    "required": [
        "schema",
        "engine_version",
        "command",
        "spec_sha256",
        "config",
        "run",
        "results",
    ],
    "properties": {
        "schema": {"const": REPORT_SCHEMA_ID},
        "engine_version": {"type": "string"},
        "command": {"enum": sorted(_RESULTS)},
        "spec_sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "config": _CONFIG,
        "run": _RUN,
        "results": {"type": "object"},
        "duration_seconds": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
    "allOf": [
        {
            "if": {"properties": {"command": {"const": command}}},
            "then": {"properties": {"results": results}},
        }
        for command, results in sorted(_RESULTS.items())
    ],
}
