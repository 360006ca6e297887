"""Classical states: probability distributions over the sphere.

Four variants cover the code paths of the reduction: a point mass (pure
state), a finite mixture, the uniform distribution (maximally mixed), and
two parametric density kernels relative to the uniform measure with no
closed-form reduction.  Density kernels are sampled by importance sampling
from the uniform proposal; downstream estimators self-normalize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ModelConfig
from .errors import (
    DegenerateBatchError,
    DimensionMismatchError,
    EmptyBatchError,
    UnsupportedVariantError,
    ValidationError,
)
from .sphere import SampleBatch, StateVector, _draw_uniform_points, sample_uniform

#: Tolerance on |sum of mixture weights - 1|.
MIXTURE_WEIGHT_ATOL = 1e-12


class ClassicalState:
    """Base marker for the state variants below."""


def _coerce_phi(obj) -> None:
    if not isinstance(obj.phi, StateVector):
        object.__setattr__(obj, "phi", StateVector(obj.phi))


@dataclass(frozen=True, eq=False)
class PointMass(ClassicalState):
    """All probability on a single sphere point."""

    phi: StateVector

    def __post_init__(self) -> None:
        _coerce_phi(self)


@dataclass(frozen=True, eq=False)
class Mixture(ClassicalState):
    """Finite convex combination of point masses."""

    components: tuple

    def __post_init__(self) -> None:
        components = tuple(
            (float(w), phi if isinstance(phi, StateVector) else StateVector(phi))
            for w, phi in self.components
        )
        if not components:
            raise ValidationError("mixture needs at least one component")
        dims = {phi.dim for _, phi in components}
        if len(dims) != 1:
            raise ValidationError(f"mixture components have mixed dimensions {dims}")
        weights = [w for w, _ in components]
        if any(w < 0 for w in weights):
            raise ValidationError("mixture weights must be nonnegative")
        total = math.fsum(weights)
        if abs(total - 1.0) > MIXTURE_WEIGHT_ATOL:
            raise ValidationError(f"mixture weights sum to {total!r}, expected 1")
        object.__setattr__(self, "components", components)

    @property
    def dim(self) -> int:
        return self.components[0][1].dim


@dataclass(frozen=True, eq=False)
class Uniform(ClassicalState):
    """The unitarily invariant probability measure on the sphere."""


class WeightedDensity(ClassicalState):
    """Base for unnormalized densities w(psi) relative to the uniform measure."""

    phi: StateVector

    def kernel(self, overlap_sq: np.ndarray) -> np.ndarray:
        """Density value as a function of |<phi, psi>|^2."""
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class ProjectivePower(WeightedDensity):
    """Density |<phi, psi>|^(2k) for a nonnegative integer power k."""

    phi: StateVector
    power: int

    def __post_init__(self) -> None:
        _coerce_phi(self)
        if not isinstance(self.power, int) or isinstance(self.power, bool):
            raise ValidationError(f"power must be an integer, got {self.power!r}")
        if self.power < 0:
            raise ValidationError(f"power must be >= 0, got {self.power}")

    def kernel(self, overlap_sq: np.ndarray) -> np.ndarray:
        return overlap_sq**self.power


@dataclass(frozen=True, eq=False)
class ExponentialOverlap(WeightedDensity):
    """Density exp(kappa * |<phi, psi>|^2) for nonnegative kappa."""

    phi: StateVector
    kappa: float

    def __post_init__(self) -> None:
        _coerce_phi(self)
        kappa = float(self.kappa)
        if not math.isfinite(kappa) or kappa < 0:
            raise ValidationError(f"kappa must be finite and >= 0, got {self.kappa!r}")
        object.__setattr__(self, "kappa", kappa)

    def kernel(self, overlap_sq: np.ndarray) -> np.ndarray:
        return np.exp(self.kappa * overlap_sq)


def state_dim(state: ClassicalState) -> int | None:
    """The dimension a state pins down, or None for the uniform variant."""
    if isinstance(state, PointMass):
        return state.phi.dim
    if isinstance(state, Mixture):
        return state.dim
    if isinstance(state, WeightedDensity):
        return state.phi.dim
    return None


def _check_state_dim(state: ClassicalState, config: ModelConfig) -> None:
    dim = state_dim(state)
    if dim is not None and dim != config.dim:
        raise DimensionMismatchError(
            f"state dimension {dim} != config dimension {config.dim}"
        )


def _overlap_sq(phi: StateVector, points: np.ndarray) -> np.ndarray:
    overlap = points @ phi.amplitudes.conj()
    return overlap.real**2 + overlap.imag**2


def density_eval(state: ClassicalState, psi: StateVector) -> float:
    """Unnormalized density of the state at psi, relative to the uniform measure.

    Only Uniform and the density kernels have a density; calling this on a
    PointMass or Mixture is a category mistake and raises
    UnsupportedVariantError.
    """
    if isinstance(state, Uniform):
        return 1.0
    if isinstance(state, WeightedDensity):
        if psi.dim != state.phi.dim:
            raise DimensionMismatchError(
                f"state dimension {psi.dim} != kernel dimension {state.phi.dim}"
            )
        value = state.kernel(_overlap_sq(state.phi, psi.amplitudes[None, :]))
        return float(value[0])
    raise UnsupportedVariantError(
        f"{type(state).__name__} has no density relative to the sphere measure"
    )


def draw_samples(
    state: ClassicalState, config: ModelConfig, seed: int, count: int
) -> SampleBatch:
    """Draw a weighted sample batch representing the state.

    PointMass: count copies of phi, unit weights.  Mixture: components
    chosen by an inverse-CDF walk over the seeded stream, unit weights.
    Uniform: the uniform sampler.  Density kernels: uniform proposal with
    the kernel value as importance weight (estimators self-normalize).
    Deterministic for fixed (state, config, seed, count).
    """
    if count < 1:
        raise EmptyBatchError(f"count must be >= 1, got {count}")
    _check_state_dim(state, config)

    if isinstance(state, PointMass):
        points = np.tile(state.phi.amplitudes, (count, 1))
        return SampleBatch(points, np.ones(count), seed, count)

    if isinstance(state, Mixture):
        weights = np.array([w for w, _ in state.components])
        cdf = np.cumsum(weights)
        u = np.random.default_rng(np.random.SeedSequence(seed)).random(count)
        indices = np.minimum(
            np.searchsorted(cdf, u, side="right"), len(state.components) - 1
        )
        table = np.stack([phi.amplitudes for _, phi in state.components])
        return SampleBatch(table[indices], np.ones(count), seed, count)

    if isinstance(state, Uniform):
        return sample_uniform(config, seed, count)

    if isinstance(state, WeightedDensity):
        points = _draw_uniform_points(config.dim, seed, count)
        weights = state.kernel(_overlap_sq(state.phi, points))
        if not np.any(weights > 0):
            raise DegenerateBatchError(
                "density kernel vanished on every drawn point"
            )
        return SampleBatch(points, weights, seed, count)

    raise UnsupportedVariantError(f"unknown state variant {type(state).__name__}")
