"""Model configuration: Hilbert-space dimension and the action scale."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class ModelConfig:
    """Global parameters of the model.

    ``dim`` is the number of complex sphere coordinates; ``hbar`` sets the
    action scale carried by observables and density matrices.  The derived
    spin ``(dim - 1) / 2`` is exposed read-only and satisfies
    ``2 * spin + 1 == dim`` exactly (half-integers are dyadic).
    """

    dim: int
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or isinstance(self.dim, bool):
            raise ValidationError(f"dim must be an integer, got {self.dim!r}")
        if self.dim < 1:
            raise ValidationError(f"dim must be >= 1, got {self.dim}")
        if not (isinstance(self.hbar, (int, float)) and math.isfinite(self.hbar)):
            raise ValidationError(f"hbar must be a finite real, got {self.hbar!r}")
        if self.hbar <= 0:
            raise ValidationError(f"hbar must be > 0, got {self.hbar}")
        object.__setattr__(self, "hbar", float(self.hbar))
        assert 2 * self.spin + 1 == self.dim

    @property
    def spin(self) -> float:
        """Spin value fixed by the dimension, s = (dim - 1) / 2."""
        return (self.dim - 1) / 2
