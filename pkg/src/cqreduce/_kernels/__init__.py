"""Backend dispatch for the hot numeric kernels.

Two interchangeable implementations exist: a numba-jitted one
(``_numba.py``) and a pure-numpy one (``_numpy.py``).  They execute
identical floating-point operations, so results are bit-for-bit equal;
the choice affects speed only and therefore cannot change any report.

Selection is done once at import time via the ``CQREDUCE_BACKEND``
environment variable:

* unset or ``auto`` -- numba when importable, else numpy;
* ``numba``         -- require numba, raise if unavailable;
* ``numpy``         -- force the pure-numpy path.
"""

from __future__ import annotations

import os

import numpy as np

from ._numpy import pairwise_sum

_CHOICE = os.environ.get("CQREDUCE_BACKEND", "auto").strip().lower() or "auto"
if _CHOICE not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"CQREDUCE_BACKEND must be 'auto', 'numba' or 'numpy', got {_CHOICE!r}"
    )

if _CHOICE == "numpy":
    from . import _numpy as _impl

    _BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl

        _BACKEND = "numba"
    except ImportError:
        if _CHOICE == "numba":
            raise
        from . import _numpy as _impl

        _BACKEND = "numpy"


def backend_name() -> str:
    """Name of the active kernel backend (``numba`` or ``numpy``)."""
    return _BACKEND


def _split(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag)


def quadratic_forms(points: np.ndarray, matrix: np.ndarray):
    """Per-sample forms psi^dagger A psi for a (n, d) complex point array.

    Returns (real_parts, imag_parts); the imaginary parts are retained so
    callers can check the Hermitian residue before discarding them.
    """
    pr, pi = _split(points)
    ar, ai = _split(matrix)
    return _impl.quadratic_forms(pr, pi, ar, ai)


def weighted_second_moment(points: np.ndarray, weights: np.ndarray):
    """Unnormalized sums M[m, n] = sum_i w_i psi_im conj(psi_in), plus sum w.

    M is exactly Hermitian by construction (upper triangle reduced, lower
    triangle mirrored by conjugation).
    """
    pr, pi = _split(points)
    w = np.ascontiguousarray(weights)
    mr, mi, wsum = _impl.weighted_second_moment(pr, pi, w)
    return mr + 1j * mi, wsum


def second_moment_stderr(
    points: np.ndarray, weights: np.ndarray, moment: np.ndarray, wsum: float
):
    """Entrywise standard errors (real, imag) of the normalized moment matrix."""
    pr, pi = _split(points)
    w = np.ascontiguousarray(weights)
    mr, mi = _split(moment)
    return _impl.second_moment_stderr(pr, pi, w, mr, mi, wsum)


def weighted_mean_stderr(values: np.ndarray, weights: np.ndarray):
    """Self-normalized weighted mean of a real stream and its standard error."""
    x = np.ascontiguousarray(values, dtype=np.float64)
    w = np.ascontiguousarray(weights, dtype=np.float64)
    return _impl.weighted_mean_stderr(x, w)


__all__ = [
    "backend_name",
    "pairwise_sum",
    "quadratic_forms",
    "weighted_second_moment",
    "second_moment_stderr",
    "weighted_mean_stderr",
]
