"""Report assembly and rendering (JSON and CSV).

Reports are self-describing (schema version field) and serialized with
sorted keys and shortest-roundtrip floats, so identical inputs produce
byte-identical output.  CSV rendering follows the matrix convention of one
quoted "re,im" pair per cell for complex matrices, and flat tables for the
scalar-valued commands.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from ._version import __version__
from .config import ModelConfig
from .errors import CqreduceError
from .reduction import ReductionReport
from .schemas import REPORT_SCHEMA_ID
from .specio import RunParams, pairs_from_matrix, pairs_from_vector
from .sphere import MomentReport


def real_matrix(m: np.ndarray) -> list:
    return [[float(x) for x in row] for row in np.asarray(m)]


def reduction_to_dict(report: ReductionReport) -> dict:
    return {
        "method": report.method,
        "estimate": {
            "matrix": pairs_from_matrix(report.estimate.matrix),
            "hbar": float(report.estimate.hbar),
        },
        "stderr_real": real_matrix(report.stderr_real),
        "stderr_imag": real_matrix(report.stderr_imag),
        "sample_count": report.sample_count,
        "seed": report.seed,
    }


def moment_to_dict(report: MomentReport, envelope_passed: bool) -> dict:
    return {
        "matrix": pairs_from_matrix(report.matrix),
        "stderr_real": real_matrix(report.stderr_real),
        "stderr_imag": real_matrix(report.stderr_imag),
        "max_abs_deviation": float(report.max_abs_deviation),
        "envelope_passed": bool(envelope_passed),
    }


def build_report(
    command: str,
    spec_sha256: str,
    config: ModelConfig,
    run: RunParams,
    results: dict,
    duration_seconds: float | None = None,
) -> dict:
    report = {
        "schema": REPORT_SCHEMA_ID,
        "engine_version": __version__,
        "command": command,
        "spec_sha256": spec_sha256,
        "config": {"dim": config.dim, "hbar": config.hbar},
        "run": {
            "seed": run.seed,
            "samples": run.samples,
            "tolerance": run.tolerance,
            **({"times": list(run.times)} if run.times else {}),
        },
        "results": results,
    }
    if duration_seconds is not None:
        report["duration_seconds"] = float(duration_seconds)
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _matrix_rows(matrix_pairs: list) -> list[list[str]]:
    return [[f"{re!r},{im!r}" for re, im in row] for row in matrix_pairs]


def render_csv(report: dict) -> str:
    """Flat CSV rendering; complex matrices use quoted "re,im" cells."""
    command = report["command"]
    results = report["results"]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")

    if command == "reduce":
        block = results.get("reduction") or results["monte_carlo"]
        writer.writerows(_matrix_rows(block["estimate"]["matrix"]))
    elif command == "moments":
        writer.writerows(_matrix_rows(results["moment"]["matrix"]))
    elif command == "expect":
        writer.writerow(
            ["label", "classical_value", "classical_stderr", "quantum_value"]
        )
        for row in results["observables"]:
            writer.writerow(
                [
                    row["label"] or "",
                    repr(row["classical_value"]),
                    repr(row["classical_stderr"]),
                    repr(row["quantum_value"]),
                ]
            )
    elif command == "verify":
        writer.writerow(
            [
                "label",
                "classical_value",
                "quantum_value",
                "absolute_difference",
                "relative_difference",
                "passed",
            ]
        )
        for row in results["observables"]:
            rel = row["relative_difference"]
            writer.writerow(
                [
                    row["label"] or "",
                    repr(row["classical_value"]),
                    repr(row["quantum_value"]),
                    repr(row["absolute_difference"]),
                    "" if rel is None else repr(rel),
                    str(row["passed"]).lower(),
                ]
            )
    elif command == "evolve":
        writer.writerow(["time", "component", "re", "im"])
        for step in results["trajectory"]:
            for n, (re, im) in enumerate(step["state"]):
                writer.writerow([repr(step["time"]), n, repr(re), repr(im)])
    else:
        raise CqreduceError(f"no CSV rendering for command {command!r}")
    return out.getvalue()


def state_vector_pairs(amplitudes: np.ndarray) -> list:
    return pairs_from_vector(amplitudes)
