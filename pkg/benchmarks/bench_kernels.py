"""Benchmark the compiled kernels against the pure-Python fallback.

Run as `python3 benchmarks/bench_kernels.py`.  Workloads mirror the hot paths:
character products (monomial-dict multiply with normal form) sized like wedge
powers of the weight-one systems, and integer matrix ranks sized like the
per-weight differential blocks.
"""

from __future__ import annotations

import random
import sys
import time

from higgscalc import _kernels_py

try:
    from higgscalc import _kernels

    HAVE_COMPILED = True
except ImportError:
    _kernels = None
    HAVE_COMPILED = False


def character_workload(n, nterms, seed=1):
    rng = random.Random(seed)
    out = {}
    while len(out) < nterms:
        xs = tuple(rng.randrange(0, 5) for _ in range(n))
        c = min(xs)
        key = (tuple(e - c for e in xs), rng.randrange(-6, 7))
        out[key] = rng.randrange(1, 5)
    return out


def matrix_workload(size, seed=2):
    rng = random.Random(seed)
    return [[rng.randrange(-9, 10) for _ in range(size)] for _ in range(size)]


def _time(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def run(repeat=5, sizes=(40, 80)):
    lines = []
    n = 3
    for nterms in sizes:
        a = character_workload(n, nterms, seed=nterms)
        b = character_workload(n, nterms, seed=nterms + 1)
        t_py = _time(lambda: _kernels_py.mul_terms(a, b, n), repeat)
        row = f"mul_terms {nterms}x{nterms} terms: python {t_py * 1e3:8.3f} ms"
        if HAVE_COMPILED:
            t_cy = _time(lambda: _kernels.mul_terms(a, b, n), repeat)
            assert _kernels.mul_terms(a, b, n) == _kernels_py.mul_terms(a, b, n)
            row += f", compiled {t_cy * 1e3:8.3f} ms, speedup {t_py / t_cy:5.2f}x"
        lines.append(row)
    for size in sizes:
        m = matrix_workload(size, seed=size)
        t_py = _time(lambda: _kernels_py.int_row_reduce_rank([r[:] for r in m], size), repeat)
        row = f"rank {size}x{size}: python {t_py * 1e3:8.3f} ms"
        if HAVE_COMPILED:
            t_cy = _time(lambda: _kernels.int_row_reduce_rank([r[:] for r in m], size), repeat)
            assert _kernels.int_row_reduce_rank(
                [r[:] for r in m], size
            ) == _kernels_py.int_row_reduce_rank([r[:] for r in m], size)
            row += f", compiled {t_cy * 1e3:8.3f} ms, speedup {t_py / t_cy:5.2f}x"
        lines.append(row)
    if not HAVE_COMPILED:
        lines.append("compiled backend not built; showing the fallback only")
    return "\n".join(lines)


if __name__ == "__main__":
    repeat = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    print(f"backend selected at import: {__import__('higgscalc.kernels', fromlist=['BACKEND']).BACKEND}")
    print(run(repeat=repeat))
