"""The isotropic oscillator on its energy shell, and the sphere chart.

Unit mass and unit frequency throughout; the energy shell is
sum_n (p_n^2 + q_n^2) = hbar, i.e. energy hbar/2.  The chart
psi_n = (q_n + i p_n) / sqrt(hbar) maps the shell onto the complex unit
sphere; free evolution is an exact rotation of (q, p) and corresponds to
the canonical flow generated by I/2 (a global phase) on the sphere side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ModelConfig
from .errors import OffShellError, ValidationError
from .sphere import StateVector, _as_readonly

#: Unit-mass, unit-frequency convention.
MASS = 1.0
FREQUENCY = 1.0

#: Relative tolerance on the energy-shell constraint.
SHELL_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """Oscillator coordinates and momenta (q, p), one pair per dimension."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self) -> None:
        q = np.asarray(self.q, dtype=np.float64)
        p = np.asarray(self.p, dtype=np.float64)
        if q.ndim != 1 or p.ndim != 1 or q.shape != p.shape or q.size == 0:
            raise ValidationError("q and p must be non-empty 1-D arrays of equal size")
        object.__setattr__(self, "q", _as_readonly(q))
        object.__setattr__(self, "p", _as_readonly(p))

    @property
    def dim(self) -> int:
        return self.q.shape[0]


def shell_energy(point: PhasePoint) -> float:
    """The oscillator energy sum (p^2 + q^2) / 2; equals hbar/2 on shell."""
    return float(np.sum(point.p**2 + point.q**2)) / 2


def rest_energy(config: ModelConfig) -> float:
    """The energy of the shell itself, hbar * FREQUENCY / 2."""
    return config.hbar * FREQUENCY / 2


def _require_on_shell(point: PhasePoint, config: ModelConfig) -> None:
    total = 2 * shell_energy(point)
    if abs(total - config.hbar) > SHELL_RTOL * config.hbar:
        raise OffShellError(
            f"sum(p^2 + q^2) = {total!r} is off the shell hbar = {config.hbar!r}"
        )


def to_sphere(point: PhasePoint, config: ModelConfig) -> StateVector:
    """Chart the on-shell point to the sphere: psi = (q + i p) / sqrt(hbar)."""
    if point.dim != config.dim:
        raise ValidationError(
            f"point dimension {point.dim} != config dimension {config.dim}"
        )
    _require_on_shell(point, config)
    scale = 1.0 / np.sqrt(config.hbar)
    return StateVector(scale * point.q + 1j * (scale * point.p))


def from_sphere(psi: StateVector, config: ModelConfig) -> PhasePoint:
    """Invert the chart: q = sqrt(hbar) Re psi, p = sqrt(hbar) Im psi."""
    if psi.dim != config.dim:
        raise ValidationError(
            f"state dimension {psi.dim} != config dimension {config.dim}"
        )
    root = np.sqrt(config.hbar)
    return PhasePoint(root * psi.amplitudes.real, root * psi.amplitudes.imag)


def oscillator_evolve(point: PhasePoint, t: float, config: ModelConfig) -> PhasePoint:
    """Exact free evolution: a clockwise rotation of each (q_n, p_n) pair.

    q(t) = q cos t + p sin t, p(t) = p cos t - q sin t.  Preserves the
    shell constraint to roundoff; no integrator is involved.
    """
    _require_on_shell(point, config)
    c, s = np.cos(t), np.sin(t)
    return PhasePoint(point.q * c + point.p * s, point.p * c - point.q * s)
