# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels: monomial-dict products and integer matrix rank.

Exponents are packed into C long arrays (they stay tiny in practice; the
wrappers in higgscalc.kernels fall back to the pure-Python path on overflow).
Multiplicities and matrix entries remain Python ints, so counts never lose
arbitrary precision.
"""

import array as _array

from cpython.list cimport PyList_GET_ITEM

BACKEND = "cython"


def normalize_monomial(xs, l, n):
    cdef long c, e
    c = xs[0]
    for e in xs:
        if e < c:
            c = e
    if c == 0:
        return xs, l
    return tuple(e - c for e in xs), l + (n + 1) * c


def mul_terms(dict terms_a, dict terms_b, int n):
    cdef Py_ssize_t na = len(terms_a)
    cdef Py_ssize_t nb = len(terms_b)
    if na == 0 or nb == 0:
        return {}

    cdef Py_ssize_t i, j, k
    cdef long shift = n + 1
    cdef long c, l

    a_keys = list(terms_a.keys())
    b_keys = list(terms_b.keys())
    a_mults = [terms_a[key] for key in a_keys]
    b_mults = [terms_b[key] for key in b_keys]

    # Flattening raises OverflowError for exponents beyond C long; the wrapper
    # retries on the pure path in that case.
    xa_flat = _array.array("l")
    la_flat = _array.array("l")
    for key in a_keys:
        xa_flat.extend(key[0])
        la_flat.append(key[1])
    xb_flat = _array.array("l")
    lb_flat = _array.array("l")
    for key in b_keys:
        xb_flat.extend(key[0])
        lb_flat.append(key[1])

    cdef long[::1] xa_buf = xa_flat
    cdef long[::1] xb_buf = xb_flat
    cdef long[::1] la_buf = la_flat
    cdef long[::1] lb_buf = lb_flat
    cdef long[::1] scratch = _array.array("l", bytes(8 * n))

    cdef dict out = {}
    for i in range(na):
        ma = a_mults[i]
        for j in range(nb):
            c = xa_buf[i * n] + xb_buf[j * n]
            for k in range(n):
                scratch[k] = xa_buf[i * n + k] + xb_buf[j * n + k]
                if scratch[k] < c:
                    c = scratch[k]
            l = la_buf[i] + lb_buf[j]
            if c:
                for k in range(n):
                    scratch[k] -= c
                l += shift * c
            key = (tuple(scratch), l)
            m = out.get(key)
            if m is None:
                out[key] = ma * b_mults[j]
            else:
                m = m + ma * b_mults[j]
                if m == 0:
                    del out[key]
                else:
                    out[key] = m
    return out


def int_row_reduce_rank(list rows, Py_ssize_t ncols):
    """Bareiss elimination on Python-int rows (entries can be huge)."""
    cdef list m = [list(row_) for row_ in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t rank = 0, col, r, c, piv
    prev = 1
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if (<list>PyList_GET_ITEM(m, r))[col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        top = <list>PyList_GET_ITEM(m, rank)
        p = top[col]
        for r in range(rank + 1, nrows):
            row = <list>PyList_GET_ITEM(m, r)
            v = row[col]
            for c in range(col, ncols):
                row[c] = (p * row[c] - v * top[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
