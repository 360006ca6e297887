"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`CqreduceError`, so callers (notably the CLI) can separate
operational failures from bugs in their own code.
"""

from __future__ import annotations


class CqreduceError(Exception):
    """Base class for all errors raised by cqreduce."""


class ValidationError(CqreduceError):
    """A domain-type invariant was violated at construction time."""


class SpecError(CqreduceError):
    """A problem-spec file is malformed; the message carries the location."""


class DimensionMismatchError(CqreduceError):
    """Operands have inconsistent dimensions."""


class EmptyBatchError(CqreduceError):
    """A sample batch of zero points was requested or supplied."""


class DegenerateBatchError(CqreduceError):
    """All importance weights in a batch are zero."""


class UnsupportedVariantError(CqreduceError):
    """The operation does not apply to this classical-state variant."""


class InternalConsistencyError(CqreduceError):
    """A numerical self-check failed; indicates a corrupted invariant."""


class OffShellError(CqreduceError):
    """A phase-space point does not lie on the fixed energy shell."""
