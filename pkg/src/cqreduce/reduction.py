"""Reduction of classical states to density matrices, and both expectations.

The central objects:

* ``reduce_closed_form`` / ``reduce_monte_carlo`` build the matrix
  rho[m, n] = hbar * <psi_m conj(psi_n)> over the classical distribution,
  so that the quantum expectation tr(A rho) equals the classical average
  of the form hbar * psi^dagger A psi.
* ``born_rule_verify`` checks that identity on a single shared batch,
  where it holds algebraically -- the relative difference is roundoff,
  independent of sample count.

Monte Carlo estimates are exactly Hermitian (mirrored upper triangle),
exactly positive semidefinite up to roundoff (convex sums of rank-1
projectors), and carry trace hbar because every sample point is normalized.
All Monte Carlo sums run over the fixed adjacent-pairs tree documented in
``_kernels``, so estimates are bit-stable no matter how a batch is sharded
across workers or which kernel backend is active.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import ModelConfig
from .errors import (
    DegenerateBatchError,
    DimensionMismatchError,
    EmptyBatchError,
    InternalConsistencyError,
    UnsupportedVariantError,
    ValidationError,
)
from .observables import IMAG_RESIDUE_RTOL, HermitianObservable
from .sphere import ENVELOPE_ATOL, SIGMA_ENVELOPE, SampleBatch, _as_readonly
from .states import ClassicalState, Mixture, PointMass, Uniform, draw_samples

#: Relative PSD slack: minimum eigenvalue >= -PSD_RTOL * trace.
PSD_RTOL = 1e-10

#: Trace must match hbar within TRACE_ATOL * max(1, hbar).
TRACE_ATOL = 1e-12

#: Default tolerance of the same-batch verification (an algebraic identity).
DEFAULT_VERIFY_TOLERANCE = 1e-10

#: Below this magnitude the verification compares absolutely, not relatively.
RELATIVE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A reduced quantum state: Hermitian, positive semidefinite, trace hbar.

    Hermiticity is exact (bit-level); positivity allows a relative slack of
    ``PSD_RTOL`` times the trace, since every construction path is positive
    by design and larger violations indicate a bug, not statistics.
    """

    matrix: np.ndarray
    hbar: float

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValidationError("density matrix must be square and non-empty")
        if not np.array_equal(m, m.conj().T):
            raise ValidationError("density matrix must be exactly Hermitian")
        trace = float(np.trace(m).real)
        if abs(trace - self.hbar) > TRACE_ATOL * max(1.0, self.hbar):
            raise ValidationError(
                f"trace {trace!r} does not match hbar {self.hbar!r}"
            )
        min_eig = float(np.linalg.eigvalsh(m)[0])
        if min_eig < -PSD_RTOL * trace:
            raise ValidationError(
                f"matrix is not positive semidefinite (min eigenvalue {min_eig:g})"
            )
        object.__setattr__(self, "matrix", _as_readonly(m))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class ReductionReport:
    """A density-matrix estimate with entrywise standard errors.

    Closed-form reports carry zero errors and no sampling metadata.
    """

    estimate: DensityMatrix
    stderr_real: np.ndarray
    stderr_imag: np.ndarray
    sample_count: int
    seed: int | None
    method: str

    def __post_init__(self) -> None:
        if self.method not in ("closed_form", "monte_carlo"):
            raise ValidationError(f"unknown reduction method {self.method!r}")
        if self.method == "closed_form" and (
            np.any(self.stderr_real != 0) or np.any(self.stderr_imag != 0)
        ):
            raise ValidationError("closed-form reports must carry zero errors")


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """Outcome of the same-batch classical-vs-quantum comparison."""

    classical_value: float
    quantum_value: float
    absolute_difference: float
    relative_difference: float | None
    comparison: str
    tolerance: float
    sample_count: int
    seed: int
    passed: bool
    closed_form_value: float | None = None


def _projector(amplitudes: np.ndarray) -> np.ndarray:
    """The rank-1 matrix phi phi^dagger, exactly Hermitian.

    Split real/imag construction sidesteps FMA contraction in the vendored
    complex-multiply loops, which otherwise leaves ~1-ulp imaginary residue
    on the diagonal.
    """
    a, b = amplitudes.real, amplitudes.imag
    matrix = np.empty((a.size, a.size), dtype=np.complex128)
    matrix.real = np.outer(a, a) + np.outer(b, b)
    matrix.imag = np.outer(b, a) - np.outer(a, b)
    return matrix


def reduce_closed_form(state: ClassicalState, config: ModelConfig) -> DensityMatrix:
    """Exact reduction for the analytically reducible variants.

    PointMass phi -> hbar * phi phi^dagger; Mixture -> the weighted sum of
    its components' projectors; Uniform -> hbar * I / dim.  Density kernels
    have no closed form here and are directed to ``reduce_monte_carlo``.
    """
    hbar = config.hbar
    if isinstance(state, PointMass):
        if state.phi.dim != config.dim:
            raise DimensionMismatchError(
                f"state dimension {state.phi.dim} != config dimension {config.dim}"
            )
        return DensityMatrix(hbar * _projector(state.phi.amplitudes), hbar)
    if isinstance(state, Mixture):
        if state.dim != config.dim:
            raise DimensionMismatchError(
                f"state dimension {state.dim} != config dimension {config.dim}"
            )
        matrix = np.zeros((config.dim, config.dim), dtype=np.complex128)
        for weight, phi in state.components:
            matrix += weight * _projector(phi.amplitudes)
        return DensityMatrix(hbar * matrix, hbar)
    if isinstance(state, Uniform):
        return DensityMatrix(np.eye(config.dim) * (hbar / config.dim), hbar)
    raise UnsupportedVariantError(
        f"{type(state).__name__} has no closed-form reduction; "
        "use reduce_monte_carlo"
    )


def reduce_batch(batch: SampleBatch, config: ModelConfig) -> ReductionReport:
    """Reduce an existing batch: rho = hbar * sum_i w_i psi_i psi_i^dagger / sum_i w_i."""
    if batch.dim != config.dim:
        raise DimensionMismatchError(
            f"batch dimension {batch.dim} != config dimension {config.dim}"
        )
    raw, wsum = _kernels.weighted_second_moment(batch.points, batch.weights)
    if wsum <= 0:
        raise DegenerateBatchError("all weights are zero")
    # per-component normalization keeps the exact Hermitian mirror intact
    moment = np.empty_like(raw)
    moment.real = raw.real / wsum
    moment.imag = raw.imag / wsum
    se_re, se_im = _kernels.second_moment_stderr(
        batch.points, batch.weights, moment, wsum
    )
    estimate = DensityMatrix(config.hbar * moment, config.hbar)
    return ReductionReport(
        estimate=estimate,
        stderr_real=_as_readonly(config.hbar * se_re),
        stderr_imag=_as_readonly(config.hbar * se_im),
        sample_count=batch.count,
        seed=batch.seed,
        method="monte_carlo",
    )


def reduce_monte_carlo(
    state: ClassicalState, config: ModelConfig, seed: int, count: int
) -> ReductionReport:
    """Monte Carlo reduction of any state variant.

    Draws one batch and averages the rank-1 projectors with the batch
    weights; entrywise standard errors come from the weighted sample
    variance.  Requires count >= 2 so the errors mean something.
    """
    if count < 2:
        raise EmptyBatchError(f"count must be >= 2 for error estimates, got {count}")
    return reduce_batch(draw_samples(state, config, seed, count), config)


def closed_form_report(state: ClassicalState, config: ModelConfig) -> ReductionReport:
    """Closed-form reduction wrapped in a (zero-error) report."""
    estimate = reduce_closed_form(state, config)
    zeros = np.zeros((config.dim, config.dim))
    return ReductionReport(
        estimate=estimate,
        stderr_real=zeros,
        stderr_imag=zeros.copy(),
        sample_count=0,
        seed=None,
        method="closed_form",
    )


def consistent_with(
    monte_carlo: ReductionReport, reference: DensityMatrix
) -> tuple[float, bool]:
    """Compare an estimate to a reference matrix entrywise.

    Returns (max absolute deviation, whether every entry sits within
    5 standard errors plus a roundoff floor, real and imaginary parts
    separately).
    """
    dev = monte_carlo.estimate.matrix - reference.matrix
    ok_re = (
        np.abs(dev.real)
        <= SIGMA_ENVELOPE * monte_carlo.stderr_real + ENVELOPE_ATOL
    )
    ok_im = (
        np.abs(dev.imag)
        <= SIGMA_ENVELOPE * monte_carlo.stderr_imag + ENVELOPE_ATOL
    )
    return float(np.max(np.abs(dev))), bool(np.all(ok_re) and np.all(ok_im))


def classical_expectation(
    observable: HermitianObservable, batch: SampleBatch, config: ModelConfig
) -> tuple[float, float]:
    """Self-normalized weighted mean of the observable's form over a batch.

    Returns (value, standard_error).  The per-sample imaginary residues are
    checked against the Hermitian bound before being discarded.
    """
    if observable.dim != config.dim or batch.dim != config.dim:
        raise DimensionMismatchError(
            f"dimensions disagree: observable {observable.dim}, "
            f"batch {batch.dim}, config {config.dim}"
        )
    form_re, form_im = _kernels.quadratic_forms(batch.points, observable.matrix)
    bound = IMAG_RESIDUE_RTOL * (1.0 + observable.max_entry)
    worst = float(np.max(np.abs(form_im)))
    if worst > bound:
        raise InternalConsistencyError(
            f"imaginary residue {worst:g} exceeds bound {bound:g}"
        )
    mean, se = _kernels.weighted_mean_stderr(form_re, batch.weights)
    return config.hbar * mean, config.hbar * se


def quantum_expectation(observable: HermitianObservable, rho: DensityMatrix) -> float:
    """The trace pairing sum_nm A_nm rho_mn = tr(A rho)."""
    if observable.dim != rho.dim:
        raise DimensionMismatchError(
            f"observable dimension {observable.dim} != state dimension {rho.dim}"
        )
    value = complex(np.einsum("nm,mn->", observable.matrix, rho.matrix))
    scale = (1.0 + observable.max_entry) * (1.0 + float(np.max(np.abs(rho.matrix))))
    if abs(value.imag) > IMAG_RESIDUE_RTOL * scale:
        raise InternalConsistencyError(
            f"imaginary residue {value.imag:g} exceeds bound "
            f"{IMAG_RESIDUE_RTOL * scale:g}"
        )
    return value.real


def born_rule_verify(
    observable: HermitianObservable,
    state: ClassicalState,
    config: ModelConfig,
    seed: int,
    count: int,
    tolerance: float = DEFAULT_VERIFY_TOLERANCE,
) -> VerificationReport:
    """Check classical mean == quantum trace pairing on one shared batch.

    A single batch is drawn; the classical expectation over it and the
    quantum expectation against its reduction agree by linearity, so the
    difference is pure roundoff regardless of count.  When the state is
    analytically reducible the closed-form quantum value is reported too.
    """
    if count < 2:
        raise EmptyBatchError(f"count must be >= 2, got {count}")
    batch = draw_samples(state, config, seed, count)
    classical, _ = classical_expectation(observable, batch, config)
    rho = reduce_batch(batch, config).estimate
    quantum = quantum_expectation(observable, rho)

    absolute = abs(classical - quantum)
    if abs(classical) > RELATIVE_FLOOR:
        comparison = "relative"
        relative = absolute / abs(classical)
        passed = relative <= tolerance
    else:
        comparison = "absolute"
        relative = None
        passed = absolute <= tolerance

    closed_form_value = None
    if isinstance(state, (PointMass, Mixture, Uniform)):
        closed_form_value = quantum_expectation(
            observable, reduce_closed_form(state, config)
        )

    return VerificationReport(
        classical_value=classical,
        quantum_value=quantum,
        absolute_difference=absolute,
        relative_difference=relative,
        comparison=comparison,
        tolerance=float(tolerance),
        sample_count=count,
        seed=seed,
        passed=bool(passed),
        closed_form_value=closed_form_value,
    )
