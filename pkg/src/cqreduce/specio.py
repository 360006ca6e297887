"""Problem-spec parsing: JSON file -> validated domain objects.

Files are validated against the published problem schema first (so syntax
and shape errors carry a JSON-path location), then cross-checked for
dimensional consistency while the domain objects are built.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import jsonschema
import numpy as np

from .config import ModelConfig
from .errors import CqreduceError, SpecError
from .observables import HermitianObservable
from .schemas import PROBLEM_SCHEMA
from .sphere import StateVector
from .states import (
    ClassicalState,
    ExponentialOverlap,
    Mixture,
    PointMass,
    ProjectivePower,
    Uniform,
    state_dim,
)

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 10_000
DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class RunParams:
    """Command parameters carried by the spec's ``run`` block."""

    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    tolerance: float = DEFAULT_TOLERANCE
    times: tuple = ()


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A fully parsed problem: configuration, state, observables, run params."""

    config: ModelConfig
    state: ClassicalState
    observables: tuple
    run: RunParams
    sha256: str


def complex_from_pair(pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def vector_from_pairs(pairs) -> np.ndarray:
    return np.array([complex_from_pair(p) for p in pairs], dtype=np.complex128)


def matrix_from_pairs(rows) -> np.ndarray:
    return np.array([[complex_from_pair(p) for p in row] for row in rows])


def pair_from_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def pairs_from_vector(v: np.ndarray) -> list:
    return [pair_from_complex(z) for z in np.asarray(v)]


def pairs_from_matrix(m: np.ndarray) -> list:
    return [pairs_from_vector(row) for row in np.asarray(m)]


def canonical_sha256(document: dict) -> str:
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _build_state(node: dict) -> ClassicalState:
    kind = node["kind"]
    if kind == "point_mass":
        return PointMass(StateVector(vector_from_pairs(node["phi"])))
    if kind == "mixture":
        return Mixture(
            tuple(
                (c["weight"], StateVector(vector_from_pairs(c["phi"])))
                for c in node["components"]
            )
        )
    if kind == "uniform":
        return Uniform()
    if kind == "projective_power":
        return ProjectivePower(
            StateVector(vector_from_pairs(node["phi"])), int(node["power"])
        )
    if kind == "exponential_overlap":
        return ExponentialOverlap(
            StateVector(vector_from_pairs(node["phi"])), float(node["kappa"])
        )
    raise SpecError(f"state.kind: unknown variant {kind!r}")


def parse_problem(document: dict, overrides: dict | None = None) -> ProblemSpec:
    """Validate a spec document and build the domain objects.

    ``overrides`` may replace ``hbar``, ``seed``, ``samples`` or
    ``tolerance`` (the CLI flags); the spec hash is computed on the
    document before overrides, so a report records which file produced it.
    """
    try:
        jsonschema.validate(document, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as err:
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path
        )
        raise SpecError(f"{path}: {err.message}") from err

    sha = canonical_sha256(document)
    overrides = overrides or {}

    config_node = dict(document["config"])
    if overrides.get("hbar") is not None:
        config_node["hbar"] = overrides["hbar"]
    run_node = dict(document.get("run", {}))
    for key in ("seed", "samples", "tolerance"):
        if overrides.get(key) is not None:
            run_node[key] = overrides[key]

    try:
        config = ModelConfig(
            int(config_node["dim"]), float(config_node.get("hbar", 1.0))
        )
        state = _build_state(document["state"])
        observables = tuple(
            HermitianObservable(
                matrix_from_pairs(node["matrix"]), node.get("label")
            )
            for node in document.get("observables", [])
        )
    except CqreduceError as err:
        raise SpecError(str(err)) from err

    sdim = state_dim(state)
    if sdim is not None and sdim != config.dim:
        raise SpecError(
            f"state: dimension {sdim} does not match config.dim {config.dim}"
        )
    for i, obs in enumerate(observables):
        if obs.dim != config.dim:
            raise SpecError(
                f"observables[{i}].matrix: dimension {obs.dim} does not match "
                f"config.dim {config.dim}"
            )

    run = RunParams(
        seed=int(run_node.get("seed", DEFAULT_SEED)),
        samples=int(run_node.get("samples", DEFAULT_SAMPLES)),
        tolerance=float(run_node.get("tolerance", DEFAULT_TOLERANCE)),
        times=tuple(float(t) for t in run_node.get("times", ())),
    )
    return ProblemSpec(
        config=config, state=state, observables=observables, run=run, sha256=sha
    )


def load_problem(path: str | Path, overrides: dict | None = None) -> ProblemSpec:
    """Read and parse a problem-spec JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise SpecError(f"cannot read spec file {path}: {err}") from err
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecError(
            f"{path}: invalid JSON at line {err.lineno}, column {err.colno}: "
            f"{err.msg}"
        ) from err
    return parse_problem(document, overrides)
