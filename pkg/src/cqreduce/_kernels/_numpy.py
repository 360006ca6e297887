"""Pure-numpy reference implementations of the hot kernels.

All reductions use an adjacent-pairs pairwise tree (``pairwise_sum``), and
all complex arithmetic is written out over split real/imaginary float64
arrays with a fixed association order.  The numba twins in ``_numba.py``
perform the exact same floating-point operations, so the two backends
produce bit-identical results.
"""

from __future__ import annotations

import numpy as np

# Rows per block when materializing (block, dim*dim) temporaries.  Blocking
# changes memory use only; per-sample results are independent of it.
_BLOCK = 4096


def pairwise_sum(x: np.ndarray) -> np.ndarray:
    """Sum along the last axis with an adjacent-pairs reduction tree.

    Level k adds element 2i to element 2i+1; an odd trailing element is
    carried to the next level unchanged.  The tree depends only on the
    input length, which makes the summation order documented, deterministic
    and independent of any worker/backend split.
    """
    if x.shape[-1] == 0:
        raise ValueError("pairwise_sum of an empty axis")
    while x.shape[-1] > 1:
        m = x.shape[-1]
        k = m // 2
        y = x[..., 0 : 2 * k : 2] + x[..., 1 : 2 * k : 2]
        if m & 1:
            y = np.concatenate([y, x[..., m - 1 : m]], axis=-1)
        x = y
    return x[..., 0]


def quadratic_forms(pr, pi, ar, ai):
    """Per-sample Hermitian quadratic forms sum_nm conj(psi_n) A_nm psi_m.

    Parameters are the split real/imag parts of the points (n_samples, dim)
    and of the matrix (dim, dim).  Returns the real and imaginary parts of
    the form for every sample.
    """
    n_samples, dim = pr.shape
    out_r = np.empty(n_samples)
    out_i = np.empty(n_samples)
    for lo in range(0, n_samples, _BLOCK):
        hi = min(lo + _BLOCK, n_samples)
        xr = pr[lo:hi, :, None]
        xi = pi[lo:hi, :, None]
        # c = conj(psi_n) * A_nm, then b = c * psi_m, term by term
        cr = xr * ar + xi * ai
        ci = xr * ai - xi * ar
        yr = pr[lo:hi, None, :]
        yi = pi[lo:hi, None, :]
        br = cr * yr - ci * yi
        bi = cr * yi + ci * yr
        out_r[lo:hi] = pairwise_sum(br.reshape(hi - lo, dim * dim))
        out_i[lo:hi] = pairwise_sum(bi.reshape(hi - lo, dim * dim))
    return out_r, out_i


def weighted_second_moment(pr, pi, w):
    """Raw weighted second-moment sums M[m, n] = sum_i w_i psi_im conj(psi_in).

    Only the upper triangle is reduced; the lower triangle is mirrored by
    conjugation, so the result is exactly Hermitian.  Returns the split
    parts of M plus the weight sum (same pairwise tree).
    """
    n_samples, dim = pr.shape
    mr = np.zeros((dim, dim))
    mi = np.zeros((dim, dim))
    for m in range(dim):
        for n in range(m, dim):
            xr = w * (pr[:, m] * pr[:, n] + pi[:, m] * pi[:, n])
            xi = w * (pi[:, m] * pr[:, n] - pr[:, m] * pi[:, n])
            fr = pairwise_sum(xr)
            fi = pairwise_sum(xi)
            mr[m, n] = fr
            mi[m, n] = fi
            mr[n, m] = fr
            mi[n, m] = -fi
    wsum = pairwise_sum(np.ascontiguousarray(w))
    return mr, mi, float(wsum)


def second_moment_stderr(pr, pi, w, mr, mi, wsum):
    """Entrywise delta-method standard errors of the normalized moments.

    ``mr``/``mi`` are the already-normalized moment estimates.  For entry
    (m, n) and stream x_i the error is sqrt(sum_i (w_i (x_i - mean))^2) / W,
    computed separately for the real and imaginary parts.
    """
    n_samples, dim = pr.shape
    sr = np.empty((dim, dim))
    si = np.empty((dim, dim))
    for m in range(dim):
        for n in range(dim):
            xr = pr[:, m] * pr[:, n] + pi[:, m] * pi[:, n]
            xi = pi[:, m] * pr[:, n] - pr[:, m] * pi[:, n]
            gr = w * (xr - mr[m, n])
            gi = w * (xi - mi[m, n])
            sr[m, n] = np.sqrt(pairwise_sum(gr * gr)) / wsum
            si[m, n] = np.sqrt(pairwise_sum(gi * gi)) / wsum
    return sr, si


def weighted_mean_stderr(x, w):
    """Self-normalized weighted mean of a real stream and its standard error."""
    wsum = float(pairwise_sum(np.ascontiguousarray(w)))
    mean = float(pairwise_sum(w * x)) / wsum
    g = w * (x - mean)
    se = float(np.sqrt(pairwise_sum(g * g))) / wsum
    return mean, se
