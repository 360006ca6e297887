"""Benchmark the numba kernels against their pure-numpy twins.

Run with ``python -m cqreduce.benchmark``.  Besides timing, each pair is
checked for bit-identical output, which is the property that lets the
backend be swapped without touching any report.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from ._kernels import _numpy as np_impl
from .sphere import _draw_uniform_points


def _inputs(samples: int, dim: int, seed: int):
    points = _draw_uniform_points(dim, seed, samples)
    rng = np.random.default_rng(seed + 1)
    weights = rng.random(samples)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    a = (a + a.conj().T) / 2
    pr = np.ascontiguousarray(points.real)
    pi = np.ascontiguousarray(points.imag)
    return pr, pi, weights, np.ascontiguousarray(a.real), np.ascontiguousarray(a.imag)


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _equal(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    try:
        from ._kernels import _numba as nb_impl
    except ImportError:
        print("numba is not importable; nothing to compare", file=sys.stderr)
        return 1

    pr, pi, w, ar, ai = _inputs(args.samples, args.dim, args.seed)
    mr, mi, wsum = np_impl.weighted_second_moment(pr, pi, w)
    nmr, nmi = mr / wsum, mi / wsum
    forms_re, _ = np_impl.quadratic_forms(pr, pi, ar, ai)

    cases = [
        ("quadratic_forms", (pr, pi, ar, ai)),
        ("weighted_second_moment", (pr, pi, w)),
        ("second_moment_stderr", (pr, pi, w, nmr, nmi, wsum)),
        ("weighted_mean_stderr", (forms_re, w)),
    ]

    print(f"samples={args.samples} dim={args.dim} (best of {args.repeat})")
    print(f"{'kernel':<26}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}  identical")
    for name, kernel_args in cases:
        np_fn = getattr(np_impl, name)
        nb_fn = getattr(nb_impl, name)
        nb_fn(*kernel_args)  # JIT warmup
        t_np = _time(np_fn, *kernel_args, repeat=args.repeat)
        t_nb = _time(nb_fn, *kernel_args, repeat=args.repeat)
        same = _equal(np_fn(*kernel_args), nb_fn(*kernel_args))
        print(
            f"{name:<26}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.2f}  {same}"
        )
        if not same:
            print(f"backend mismatch in {name}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
