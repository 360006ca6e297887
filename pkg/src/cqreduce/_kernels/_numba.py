"""Numba twins of the kernels in ``_numpy.py``.

Same floating-point operations in the same association order (split
real/imag arithmetic, adjacent-pairs reduction tree), compiled with strict
IEEE semantics (no fastmath), so outputs are bit-identical to the numpy
backend.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _fold(buf, m):
    # In-place adjacent-pairs tree over buf[:m]; mirrors _numpy.pairwise_sum.
    while m > 1:
        k = m // 2
        for i in range(k):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if m & 1:
            buf[k] = buf[m - 1]
            m = k + 1
        else:
            m = k
    return buf[0]


@njit(cache=True)
def quadratic_forms(pr, pi, ar, ai):
    n_samples, dim = pr.shape
    out_r = np.empty(n_samples)
    out_i = np.empty(n_samples)
    br = np.empty(dim * dim)
    bi = np.empty(dim * dim)
    for s in range(n_samples):
        k = 0
        for n in range(dim):
            for m in range(dim):
                cr = pr[s, n] * ar[n, m] + pi[s, n] * ai[n, m]
                ci = pr[s, n] * ai[n, m] - pi[s, n] * ar[n, m]
                br[k] = cr * pr[s, m] - ci * pi[s, m]
                bi[k] = cr * pi[s, m] + ci * pr[s, m]
                k += 1
        out_r[s] = _fold(br, dim * dim)
        out_i[s] = _fold(bi, dim * dim)
    return out_r, out_i


@njit(cache=True)
def weighted_second_moment(pr, pi, w):
    n_samples, dim = pr.shape
    mr = np.zeros((dim, dim))
    mi = np.zeros((dim, dim))
    buf = np.empty(n_samples)
    for m in range(dim):
        for n in range(m, dim):
            for s in range(n_samples):
                buf[s] = w[s] * (pr[s, m] * pr[s, n] + pi[s, m] * pi[s, n])
            fr = _fold(buf, n_samples)
            for s in range(n_samples):
                buf[s] = w[s] * (pi[s, m] * pr[s, n] - pr[s, m] * pi[s, n])
            fi = _fold(buf, n_samples)
            mr[m, n] = fr
            mi[m, n] = fi
            mr[n, m] = fr
            mi[n, m] = -fi
    for s in range(n_samples):
        buf[s] = w[s]
    wsum = _fold(buf, n_samples)
    return mr, mi, float(wsum)


@njit(cache=True)
def second_moment_stderr(pr, pi, w, mr, mi, wsum):
    n_samples, dim = pr.shape
    sr = np.empty((dim, dim))
    si = np.empty((dim, dim))
    buf = np.empty(n_samples)
    for m in range(dim):
        for n in range(dim):
            for s in range(n_samples):
                xr = pr[s, m] * pr[s, n] + pi[s, m] * pi[s, n]
                g = w[s] * (xr - mr[m, n])
                buf[s] = g * g
            sr[m, n] = np.sqrt(_fold(buf, n_samples)) / wsum
            for s in range(n_samples):
                xi = pi[s, m] * pr[s, n] - pr[s, m] * pi[s, n]
                g = w[s] * (xi - mi[m, n])
                buf[s] = g * g
            si[m, n] = np.sqrt(_fold(buf, n_samples)) / wsum
    return sr, si


@njit(cache=True)
def weighted_mean_stderr(x, w):
    n_samples = x.shape[0]
    buf = np.empty(n_samples)
    for s in range(n_samples):
        buf[s] = w[s]
    wsum = _fold(buf, n_samples)
    for s in range(n_samples):
        buf[s] = w[s] * x[s]
    mean = _fold(buf, n_samples) / wsum
    for s in range(n_samples):
        g = w[s] * (x[s] - mean)
        buf[s] = g * g
    se = np.sqrt(_fold(buf, n_samples)) / wsum
    return mean, se
