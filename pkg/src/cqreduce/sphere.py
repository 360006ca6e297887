"""Points on the complex unit sphere and the uniform measure on it.

The uniform (unitarily invariant) probability measure is sampled exactly by
normalizing vectors of independent standard Gaussians: 2*dim real draws per
point, no rejection.  Batches are generated in fixed-size shards, each shard
owning a spawned child of the master seed sequence, and merged in shard
order -- so output is deterministic and independent of how many workers
generate the shards.
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
    ValidationError,
)

#: Absolute tolerance on |sum |psi_n|^2 - 1|; a single normalization leaves
#: roundoff orders of magnitude below this.
SPHERE_NORM_ATOL = 1e-12

#: Points per RNG substream shard (see module docstring).
SHARD_SIZE = 1 << 16

#: Tolerance on ||U^dagger U - I||_max for generated unitaries.
UNITARY_ATOL = 1e-12

#: Statistical acceptance envelope in units of the standard error; wide
#: enough to keep the false-failure probability negligible suite-wide.
SIGMA_ENVELOPE = 5.0

#: Roundoff floor added to sigma envelopes (covers zero-variance entries
#: whose deviation is pure sphere-constraint roundoff).
ENVELOPE_ATOL = 1e-12


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StateVector:
    """A point psi on the complex unit sphere: sum_n |psi_n|^2 = 1."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size == 0:
            raise ValidationError("amplitudes must be a non-empty 1-D sequence")
        norm_sq = float(np.sum(amps.real**2 + amps.imag**2))
        if abs(norm_sq - 1.0) > SPHERE_NORM_ATOL:
            raise ValidationError(
                f"state vector is off the unit sphere: |psi|^2 = {norm_sq!r}"
            )
        object.__setattr__(self, "amplitudes", _as_readonly(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        """The standard basis vector e_index in dimension dim."""
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """Weighted points on the sphere, the carrier of every Monte Carlo sum.

    ``points`` is an (count, dim) complex array whose rows all satisfy the
    sphere constraint; ``weights`` are nonnegative and not all zero.
    Immutable after construction.
    """

    points: np.ndarray
    weights: np.ndarray
    seed: int
    count: int

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.complex128)
        weights = np.asarray(self.weights, dtype=np.float64)
        if points.ndim != 2:
            raise ValidationError("points must be a 2-D (count, dim) array")
        if weights.shape != (points.shape[0],):
            raise ValidationError("weights must be 1-D with one entry per point")
        if points.shape[0] != self.count:
            raise ValidationError(
                f"count {self.count} != number of points {points.shape[0]}"
            )
        if self.count < 1:
            raise EmptyBatchError("a batch needs at least one point")
        norms = np.sum(points.real**2 + points.imag**2, axis=1)
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > SPHERE_NORM_ATOL:
            raise ValidationError(f"batch contains off-sphere points (dev {worst:g})")
        if np.any(weights < 0):
            raise ValidationError("weights must be nonnegative")
        if not np.any(weights > 0):
            raise DegenerateBatchError("all weights are zero")
        object.__setattr__(self, "points", _as_readonly(points))
        object.__setattr__(self, "weights", _as_readonly(weights))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.count

    def point(self, i: int) -> StateVector:
        return StateVector(self.points[i])

    def transformed(self, unitary: np.ndarray) -> "SampleBatch":
        """The batch with every point mapped to U psi (weights unchanged)."""
        return SampleBatch(self.points @ unitary.T, self.weights, self.seed, self.count)


@dataclass(frozen=True, eq=False)
class MomentReport:
    """Empirical second moments of a batch against the uniform reference I/d."""

    matrix: np.ndarray
    stderr_real: np.ndarray
    stderr_imag: np.ndarray
    max_abs_deviation: float
    sample_count: int


def _draw_uniform_points(dim: int, seed: int, count: int) -> np.ndarray:
    shards = -(-count // SHARD_SIZE)
    children = np.random.SeedSequence(seed).spawn(shards)
    parts = []
    remaining = count
    for child in children:
        n = min(SHARD_SIZE, remaining)
        remaining -= n
        z = np.random.default_rng(child).standard_normal((n, 2 * dim))
        psi = z[:, :dim] + 1j * z[:, dim:]
        norm_sq = np.sum(psi.real**2 + psi.imag**2, axis=1)
        parts.append(psi / np.sqrt(norm_sq)[:, None])
    return np.concatenate(parts, axis=0)


def sample_uniform(config: ModelConfig, seed: int, count: int) -> SampleBatch:
    """Draw ``count`` points from the uniform measure on the sphere.

    Unit weights; deterministic for fixed (config, seed, count).
    """
    if count < 1:
        raise EmptyBatchError(f"count must be >= 1, got {count}")
    points = _draw_uniform_points(config.dim, seed, count)
    return SampleBatch(points, np.ones(count), seed, count)


def moment_report(batch: SampleBatch, config: ModelConfig) -> MomentReport:
    """Weighted empirical moments M[m, n] = <psi_m conj(psi_n)> with errors.

    The reference matrix for the uniform measure is I/dim; the report
    carries the maximum absolute entry deviation from it.
    """
    if batch.dim != config.dim:
        raise DimensionMismatchError(
            f"batch dimension {batch.dim} != config dimension {config.dim}"
        )
    raw, wsum = _kernels.weighted_second_moment(batch.points, batch.weights)
    if wsum <= 0:
        raise DegenerateBatchError("all weights are zero")
    moment = np.empty_like(raw)
    moment.real = raw.real / wsum
    moment.imag = raw.imag / wsum
    se_re, se_im = _kernels.second_moment_stderr(
        batch.points, batch.weights, moment, wsum
    )
    reference = np.eye(config.dim) / config.dim
    max_dev = float(np.max(np.abs(moment - reference)))
    return MomentReport(
        matrix=_as_readonly(moment),
        stderr_real=_as_readonly(se_re),
        stderr_imag=_as_readonly(se_im),
        max_abs_deviation=max_dev,
        sample_count=batch.count,
    )


def uniform_envelope_check(report: MomentReport, config: ModelConfig) -> bool:
    """Entrywise |M - I/d| <= 5 * stderr (+ roundoff floor), real and imag parts."""
    reference = np.eye(config.dim) / config.dim
    dev = report.matrix - reference
    ok_re = np.abs(dev.real) <= SIGMA_ENVELOPE * report.stderr_real + ENVELOPE_ATOL
    ok_im = np.abs(dev.imag) <= SIGMA_ENVELOPE * report.stderr_imag + ENVELOPE_ATOL
    return bool(np.all(ok_re) and np.all(ok_im))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """A dim x dim unitary from the unitarily invariant distribution.

    Complex Gaussian matrix, QR decomposition, then each column multiplied
    by the phase of the corresponding R diagonal.  The phase fix both
    restores invariance of the distribution and pins the LAPACK sign
    ambiguity, so the result is deterministic per seed.
    """
    if dim < 1:
        raise ValidationError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    if np.any(np.abs(diag) == 0):
        raise InternalConsistencyError("degenerate QR factor in unitary draw")
    u = q * (diag / np.abs(diag))[None, :]
    residue = float(np.max(np.abs(u.conj().T @ u - np.eye(dim))))
    if residue > UNITARY_ATOL:
        raise InternalConsistencyError(f"unitary residue {residue:g} above tolerance")
    return _as_readonly(u)
