"""Compare the numba kernels with their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is warmed up
once per backend (so JIT compilation is not timed), results are checked for
equality, and the best of several repeats is reported.
"""

import argparse
import time

import numpy as np

from crystal_ktheory import _kernels, linalg
from crystal_ktheory.lattice import cyclotomic_lattice


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def smith_case(m, k, l):
    """The relation matrix σ - I of the generator acting on Λ^l, with the
    smallest prime of m as the local prime."""
    L = cyclotomic_lattice(m, k)
    sigma = linalg.exterior_power(L.action, l)
    p = min(f for f in range(2, m + 1) if m % f == 0)
    return np.array(linalg.matsub(sigma, linalg.identity(len(sigma))), dtype=np.int64), p


def cycle_case(size, seed):
    rng = np.random.default_rng(seed)
    return rng.permutation(size).astype(np.int64)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args(argv)

    rows = []
    for m, k, l in ((5, 2, 4), (7, 2, 5), (9, 2, 5)):
        a, p = smith_case(m, k, l)
        for backend in ("numba", "numpy"):
            _kernels.local_smith_valuations(a[:4, :4], p, 3, backend=backend)
        t_nb, r_nb = best_of(lambda: _kernels.local_smith_valuations(a, p, 3, backend="numba"), args.repeats)
        t_np, r_np = best_of(lambda: _kernels.local_smith_valuations(a, p, 3, backend="numpy"), args.repeats)
        assert np.array_equal(r_nb, r_np)
        rows.append((f"local_smith {a.shape[0]}x{a.shape[1]} mod {p}^3", t_nb, t_np))

    for size in (10**4, 10**5, 10**6):
        perm = cycle_case(size, size)
        for backend in ("numba", "numpy"):
            _kernels.count_cycles(np.arange(10), backend=backend)
        t_nb, r_nb = best_of(lambda: _kernels.count_cycles(perm, backend="numba"), args.repeats)
        t_np, r_np = best_of(lambda: _kernels.count_cycles(perm, backend="numpy"), args.repeats)
        assert r_nb == r_np
        rows.append((f"count_cycles n={size}", t_nb, t_np))

    print(f"{'kernel':<36} {'numba [ms]':>11} {'numpy [ms]':>11} {'speedup':>8}")
    for name, t_nb, t_np in rows:
        print(f"{name:<36} {1e3 * t_nb:>11.2f} {1e3 * t_np:>11.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
