"""Command-line front end.

Five subcommands over a JSON problem spec: ``reduce``, ``expect``,
``verify``, ``evolve`` and ``moments``.  Reports go to stdout (or
``--output``) as JSON or CSV and are byte-identical for identical
(spec, seed, engine version); human-readable summaries go to stderr.

Exit codes: 0 success/pass, 1 operational error, 2 verification failure.
Environment variables are not consulted for any problem parameter.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .errors import CqreduceError, UnsupportedVariantError
from .observables import evaluate_form, generate_flow
from .oscillator import from_sphere, shell_energy
from .reduction import (
    classical_expectation,
    closed_form_report,
    consistent_with,
    quantum_expectation,
    reduce_batch,
    reduce_closed_form,
    reduce_monte_carlo,
    born_rule_verify,
)
from .reports import (
    build_report,
    moment_to_dict,
    reduction_to_dict,
    render_csv,
    render_json,
    state_vector_pairs,
)
from .specio import ProblemSpec, load_problem
from .sphere import (
    moment_report,
    random_unitary,
    sample_uniform,
    uniform_envelope_check,
)
from .states import Mixture, PointMass, Uniform, draw_samples

EXIT_OK = 0
EXIT_OPERATIONAL = 1
EXIT_VERIFICATION = 2


class _Parser(argparse.ArgumentParser):
    # Usage errors are operational errors (exit 1), not argparse's default 2,
    # which is reserved for verification failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_OPERATIONAL, f"{self.prog}: error: {message}\n")


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", required=True, help="problem spec JSON file")
    common.add_argument(
        "--seed", type=_nonneg_int, default=None, help="override run.seed"
    )
    common.add_argument(
        "--samples", type=int, default=None, help="override run.samples"
    )
    common.add_argument(
        "--hbar", type=float, default=None, help="override config.hbar"
    )
    common.add_argument(
        "--tolerance", type=float, default=None, help="override run.tolerance"
    )
    common.add_argument("--output", default=None, help="write the report here")
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )
    common.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock duration in the report (breaks byte identity)",
    )

    parser = _Parser(prog="cqreduce", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    reduce_p = sub.add_parser(
        "reduce", parents=[common], help="reduce the state to a density matrix"
    )
    reduce_p.add_argument(
        "--compare",
        action="store_true",
        help="run closed form and Monte Carlo and compare them",
    )
    sub.add_parser(
        "expect", parents=[common], help="classical and quantum expectations"
    )
    sub.add_parser(
        "verify", parents=[common], help="same-batch classical/quantum identity"
    )
    sub.add_parser(
        "evolve", parents=[common], help="canonical flow and oscillator trajectory"
    )
    sub.add_parser(
        "moments", parents=[common], help="uniform sampler validation"
    )
    return parser


def _reducible(spec: ProblemSpec) -> bool:
    return isinstance(spec.state, (PointMass, Mixture, Uniform))


def _require_observables(spec: ProblemSpec) -> None:
    if not spec.observables:
        raise CqreduceError("this command needs at least one observable in the spec file")


def _cmd_reduce(spec: ProblemSpec, args) -> tuple[dict, bool]:
    if args.compare:
        if not _reducible(spec):
            raise UnsupportedVariantError(
                "--compare needs an analytically reducible state "
                "(point_mass, mixture or uniform)"
            )
        closed = closed_form_report(spec.state, spec.config)
        sampled = reduce_monte_carlo(
            spec.state, spec.config, spec.run.seed, spec.run.samples
        )
        max_dev, within = consistent_with(sampled, closed.estimate)
        results = {
            "closed_form": reduction_to_dict(closed),
            "monte_carlo": reduction_to_dict(sampled),
            "comparison": {
                "max_abs_deviation": max_dev,
                "within_five_sigma": within,
            },
        }
        return results, False
    if _reducible(spec):
        report = closed_form_report(spec.state, spec.config)
    else:
        report = reduce_monte_carlo(
            spec.state, spec.config, spec.run.seed, spec.run.samples
        )
    return {"reduction": reduction_to_dict(report)}, False


def _cmd_expect(spec: ProblemSpec, args) -> tuple[dict, bool]:
    _require_observables(spec)
    batch = draw_samples(spec.state, spec.config, spec.run.seed, spec.run.samples)
    if _reducible(spec):
        rho = reduce_closed_form(spec.state, spec.config)
        method = "closed_form"
    else:
        rho = reduce_batch(batch, spec.config).estimate
        method = "same_batch_monte_carlo"
    rows = []
    for obs in spec.observables:
        value, stderr = classical_expectation(obs, batch, spec.config)
        rows.append(
            {
                "label": obs.label,
                "classical_value": value,
                "classical_stderr": stderr,
                "quantum_value": quantum_expectation(obs, rho),
                "quantum_method": method,
            }
        )
    results = {
        "sample_count": spec.run.samples,
        "seed": spec.run.seed,
        "observables": rows,
    }
    return results, False


def _cmd_verify(spec: ProblemSpec, args) -> tuple[dict, bool]:
    _require_observables(spec)
    rows = []
    all_passed = True
    for obs in spec.observables:
        report = born_rule_verify(
            obs,
            spec.state,
            spec.config,
            spec.run.seed,
            spec.run.samples,
            spec.run.tolerance,
        )
        all_passed = all_passed and report.passed
        rows.append(
            {
                "label": obs.label,
                "classical_value": report.classical_value,
                "quantum_value": report.quantum_value,
                "absolute_difference": report.absolute_difference,
                "relative_difference": report.relative_difference,
                "comparison": report.comparison,
                "passed": report.passed,
                "closed_form_value": report.closed_form_value,
            }
        )
    results = {
        "sample_count": spec.run.samples,
        "seed": spec.run.seed,
        "tolerance": spec.run.tolerance,
        "all_passed": all_passed,
        "observables": rows,
    }
    return results, not all_passed


def _cmd_evolve(spec: ProblemSpec, args) -> tuple[dict, bool]:
    _require_observables(spec)
    if not isinstance(spec.state, PointMass):
        raise UnsupportedVariantError(
            "evolve needs a point_mass state to seed the trajectory"
        )
    if not spec.run.times:
        raise CqreduceError("evolve needs run.times in the spec file")
    generator = spec.observables[0]
    psi0 = spec.state.phi
    trajectory = []
    generator_values = []
    observable_values = [[] for _ in spec.observables]
    for t in spec.run.times:
        flown = generate_flow(generator, t, psi0, spec.config)
        amps = flown.state.amplitudes
        norm_dev = abs(float((amps.real**2 + amps.imag**2).sum()) - 1.0)
        value = evaluate_form(generator, flown.state, spec.config)
        generator_values.append(value)
        for slot, obs in zip(observable_values, spec.observables):
            slot.append(evaluate_form(obs, flown.state, spec.config))
        phase = from_sphere(flown.state, spec.config)
        trajectory.append(
            {
                "time": float(t),
                "state": state_vector_pairs(amps),
                "norm_deviation": norm_dev,
                "generator_value": value,
                "q": [float(x) for x in phase.q],
                "p": [float(x) for x in phase.p],
                "energy": shell_energy(phase),
            }
        )
    results = {
        "generator": generator.label,
        "times": [float(t) for t in spec.run.times],
        "trajectory": trajectory,
        "conservation": {
            "max_norm_deviation": max(s["norm_deviation"] for s in trajectory),
            "max_generator_drift": max(
                abs(v - generator_values[0]) for v in generator_values
            ),
        },
        "observable_values": [
            {"label": obs.label, "values": values}
            for obs, values in zip(spec.observables, observable_values)
        ],
    }
    return results, False


def _cmd_moments(spec: ProblemSpec, args) -> tuple[dict, bool]:
    if not isinstance(spec.state, Uniform):
        raise UnsupportedVariantError(
            "moments validates the uniform sampler; spec.state must be uniform"
        )
    batch = sample_uniform(spec.config, spec.run.seed, spec.run.samples)
    base = moment_report(batch, spec.config)
    base_ok = uniform_envelope_check(base, spec.config)

    unitary_seed = spec.run.seed + 1
    unitary = random_unitary(spec.config.dim, unitary_seed)
    rotated = moment_report(batch.transformed(unitary), spec.config)
    rotated_ok = uniform_envelope_check(rotated, spec.config)

    passed = base_ok and rotated_ok
    results = {
        "sample_count": spec.run.samples,
        "seed": spec.run.seed,
        "moment": moment_to_dict(base, base_ok),
        "unitary_invariance": {
            "unitary_seed": unitary_seed,
            "moment": moment_to_dict(rotated, rotated_ok),
            "passed": rotated_ok,
        },
        "passed": passed,
    }
    return results, not passed


_COMMANDS = {
    "reduce": _cmd_reduce,
    "expect": _cmd_expect,
    "verify": _cmd_verify,
    "evolve": _cmd_evolve,
    "moments": _cmd_moments,
}


def _summary(command: str, results: dict, failed: bool) -> str:
    if command == "verify":
        rows = results["observables"]
        passed = sum(1 for r in rows if r["passed"])
        return f"verify: {passed}/{len(rows)} observables passed"
    if command == "moments":
        return "moments: envelopes " + ("passed" if results["passed"] else "FAILED")
    if command == "reduce" and "comparison" in results:
        dev = results["comparison"]["max_abs_deviation"]
        return f"reduce: closed form vs Monte Carlo, max deviation {dev:.3g}"
    return f"{command}: done"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        overrides = {
            "seed": args.seed,
            "samples": args.samples,
            "hbar": args.hbar,
            "tolerance": args.tolerance,
        }
        spec = load_problem(args.spec, overrides)
        if spec.run.samples < 1:
            raise CqreduceError(f"samples must be >= 1, got {spec.run.samples}")
        results, failed = _COMMANDS[args.command](spec, args)
        duration = time.perf_counter() - start
        report = build_report(
            args.command,
            spec.sha256,
            spec.config,
            spec.run,
            results,
            duration_seconds=duration if args.timing else None,
        )
        text = render_json(report) if args.format == "json" else render_csv(report)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        print(_summary(args.command, results, failed), file=sys.stderr)
        return EXIT_VERIFICATION if failed else EXIT_OK
    except CqreduceError as err:
        print(f"cqreduce: error: {err}", file=sys.stderr)
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    sys.exit(main())
