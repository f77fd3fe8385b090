"""Backend selection for the hot kernels.

Imports the compiled extension when present, otherwise the pure-Python
implementations.  Set HIGGSCALC_PURE=1 to force the fallback.  Both backends
are value-identical; `benchmarks/bench_kernels.py` compares their speed and
`tests/test_kernels.py` pins their agreement.
"""

import os

from . import _kernels_py

if os.environ.get("HIGGSCALC_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND


def normalize_monomial(xs, l, n):
    if _impl is _kernels_py:
        return _kernels_py.normalize_monomial(xs, l, n)
    try:
        return _impl.normalize_monomial(xs, l, n)
    except OverflowError:
        return _kernels_py.normalize_monomial(xs, l, n)


def mul_terms(terms_a, terms_b, n):
    if _impl is _kernels_py:
        return _kernels_py.mul_terms(terms_a, terms_b, n)
    try:
        return _impl.mul_terms(terms_a, terms_b, n)
    except OverflowError:
        return _kernels_py.mul_terms(terms_a, terms_b, n)


def int_row_reduce_rank(rows, ncols):
    if _impl is _kernels_py:
        return _kernels_py.int_row_reduce_rank(rows, ncols)
    return _impl.int_row_reduce_rank(rows, ncols)
