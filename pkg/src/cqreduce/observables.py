"""Hermitian-form observables and the canonical flow they generate.

An observable is the real-valued form hbar * psi^dagger A psi with A a
Hermitian matrix.  Every such form generates a norm-preserving canonical
flow on the sphere, psi(t) = exp(-i * FLOW_RATE * A * t) psi(0), computed
exactly through the eigendecomposition of A (no step-size error).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ModelConfig
from .errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    ValidationError,
)
from .sphere import StateVector

#: Rate constant of the canonical flow, psi-dot = -i * FLOW_RATE * A psi.
#: Fixed by the unnormalized change of variables from (q, p) to psi, whose
#: Poisson brackets are {psi_n, conj(psi_m)} = -2i delta_nm / hbar.  Lives
#: here and nowhere else.
FLOW_RATE = 2.0

#: Relative tolerance for accepting (and symmetrizing) near-Hermitian input.
HERMITIAN_RTOL = 1e-12

#: Scale factor for the imaginary-residue consistency checks.
IMAG_RESIDUE_RTOL = 1e-12

#: Tolerance on ||U^dagger U - I||_max for matrix exponentials.
UNITARY_ATOL = 1e-12

#: Relative tolerance for conservation of the generator along its own flow.
CONSERVATION_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class HermitianObservable:
    """A Hermitian matrix defining the observable hbar * psi^dagger A psi.

    Construction symmetrizes input within ``HERMITIAN_RTOL`` of Hermitian
    (tolerating roundoff) and rejects anything further away (catching
    genuine errors).  The stored matrix is exactly Hermitian.
    """

    matrix: np.ndarray
    label: str | None = None

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValidationError("observable matrix must be square and non-empty")
        scale = float(np.max(np.abs(m)))
        asym = float(np.max(np.abs(m - m.conj().T)))
        if asym > HERMITIAN_RTOL * scale:
            raise ValidationError(
                f"matrix is not Hermitian (asymmetry {asym:g}, scale {scale:g})"
            )
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def max_entry(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    @classmethod
    def identity(cls, dim: int, label: str | None = None) -> "HermitianObservable":
        return cls(np.eye(dim, dtype=np.complex128), label)


@dataclass(frozen=True, eq=False)
class FlowResult:
    """State transported along a canonical flow for a given time."""

    state: StateVector
    time: float
    generator_label: str


def _check_dim(observable: HermitianObservable, dim: int) -> None:
    if observable.dim != dim:
        raise DimensionMismatchError(
            f"observable dimension {observable.dim} != expected {dim}"
        )


def evaluate_form(
    observable: HermitianObservable, psi: StateVector, config: ModelConfig
) -> float:
    """The observable's value hbar * psi^dagger A psi at a sphere point.

    The form is real for Hermitian A; an imaginary residue above
    ``IMAG_RESIDUE_RTOL * (1 + max|A|)`` signals a corrupted invariant and
    raises instead of being silently discarded.
    """
    _check_dim(observable, config.dim)
    if psi.dim != config.dim:
        raise DimensionMismatchError(
            f"state dimension {psi.dim} != config dimension {config.dim}"
        )
    value = complex(np.vdot(psi.amplitudes, observable.matrix @ psi.amplitudes))
    bound = IMAG_RESIDUE_RTOL * (1.0 + observable.max_entry)
    if abs(value.imag) > bound:
        raise InternalConsistencyError(
            f"imaginary residue {value.imag:g} exceeds bound {bound:g}"
        )
    return config.hbar * value.real


def hermitian_exponential(observable: HermitianObservable, angle: float) -> np.ndarray:
    """The unitary exp(-i * angle * A) via eigendecomposition of A.

    Exact for all angles; unitarity is verified to ``UNITARY_ATOL``.
    """
    eigenvalues, vectors = np.linalg.eigh(observable.matrix)
    phases = np.exp(-1j * angle * eigenvalues)
    u = (vectors * phases[None, :]) @ vectors.conj().T
    residue = float(np.max(np.abs(u.conj().T @ u - np.eye(observable.dim))))
    if residue > UNITARY_ATOL:
        raise InternalConsistencyError(
            f"exponential lost unitarity (residue {residue:g})"
        )
    return u


def generate_flow(
    observable: HermitianObservable,
    t: float,
    psi: StateVector,
    config: ModelConfig,
) -> FlowResult:
    """Transport psi along the canonical flow of the observable.

    psi(t) = exp(-i * FLOW_RATE * A * t) psi(0).  Postconditions enforced
    here: the sphere norm survives (checked by the StateVector constructor)
    and the generator's own value is conserved to ``CONSERVATION_RTOL``.
    """
    _check_dim(observable, config.dim)
    if psi.dim != config.dim:
        raise DimensionMismatchError(
            f"state dimension {psi.dim} != config dimension {config.dim}"
        )
    u = hermitian_exponential(observable, FLOW_RATE * t)
    evolved = StateVector(u @ psi.amplitudes)
    before = evaluate_form(observable, psi, config)
    after = evaluate_form(observable, evolved, config)
    if abs(after - before) > CONSERVATION_RTOL * max(1.0, abs(before)):
        raise InternalConsistencyError(
            f"generator value drifted from {before!r} to {after!r}"
        )
    label = observable.label if observable.label is not None else "observable"
    return FlowResult(state=evolved, time=float(t), generator_label=label)
