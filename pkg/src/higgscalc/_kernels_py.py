"""Pure-Python reference implementations of the hot kernels.

Same contracts as the compiled module `higgscalc._kernels`; see
`higgscalc.kernels` for the backend selection.  Multiplicities are arbitrary
precision throughout.
"""

BACKEND = "python"


def normalize_monomial(xs, l, n):
    """Return the (x, l) pair in normal form: min exponent 0, det traded for L."""
    c = min(xs)
    if c == 0:
        return xs, l
    return tuple(e - c for e in xs), l + (n + 1) * c


def mul_terms(terms_a, terms_b, n):
    """Multiply two characters given as {(xtuple, l): mult} dicts.

    Returns a new dict in normal form with zero entries dropped.
    """
    out = {}
    shift = n + 1
    for (xa, la), ma in terms_a.items():
        for (xb, lb), mb in terms_b.items():
            xs = tuple(p + q for p, q in zip(xa, xb))
            l = la + lb
            c = min(xs)
            if c:
                xs = tuple(e - c for e in xs)
                l += shift * c
            key = (xs, l)
            m = out.get(key, 0) + ma * mb
            if m:
                out[key] = m
            elif key in out:
                del out[key]
    return out


def int_row_reduce_rank(rows, ncols):
    """Rank of an integer matrix via fraction-free (Bareiss) elimination.

    `rows` is a list of lists of ints; it is consumed (copies are made).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            v = m[r][col]
            row = m[r]
            top = m[rank]
            for c in range(col, ncols):
                row[c] = (p * row[c] - v * top[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
