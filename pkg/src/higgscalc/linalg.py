"""Exact linear algebra over the rationals.

Vectors are tuples of Fractions (or ints), matrices are lists of row vectors.
Subspaces are always stored as reduced row-echelon bases, which makes every
subspace representation canonical: equal spans give equal bases, so downstream
output is deterministic no matter how a subspace was produced.

Ranks of integer matrices go through the Bareiss kernel backend; everything
else is plain Gauss-Jordan over Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from . import kernels

Vector = Tuple[Fraction, ...]


def _clear_row(row: Sequence) -> List[int]:
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    if den == 1:
        return [int(v) for v in row]
    return [int(v * den) for v in row]


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    """Rank of a matrix given as rows; denominators are cleared per row."""
    cleaned = [_clear_row(r) for r in rows if any(r)]
    if not cleaned:
        return 0
    return kernels.int_row_reduce_rank(cleaned, ncols)


def rref(rows: Iterable[Sequence], ncols: int) -> List[Vector]:
    """Reduced row echelon basis of the row span (canonical)."""
    m = [[Fraction(v) for v in r] for r in rows if any(r)]
    basis: List[List[Fraction]] = []
    pivots: List[int] = []
    for row in m:
        for b, p in zip(basis, pivots):
            if row[p]:
                c = row[p]
                for j in range(ncols):
                    row[j] -= c * b[j]
        piv = next((j for j in range(ncols) if row[j]), None)
        if piv is None:
            continue
        c = row[piv]
        row = [v / c for v in row]
        # Back-substitute into the existing basis.
        for b in basis:
            if b[piv]:
                c = b[piv]
                for j in range(ncols):
                    b[j] -= c * row[j]
        basis.append(row)
        pivots.append(piv)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order]


def pivot_columns(basis: Sequence[Vector], ncols: int) -> List[int]:
    """Pivot column of each row of an RREF basis."""
    out = []
    for row in basis:
        out.append(next(j for j in range(ncols) if row[j]))
    return out


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """RREF basis of the kernel of the matrix (rows act on column vectors)."""
    basis = rref(rows, ncols)
    pivots = pivot_columns(basis, ncols)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(basis, pivots):
            vec[p] = -row[f]
        out.append(tuple(vec))
    return rref(out, ncols)


def residual(vec: Sequence, basis: Sequence[Vector], pivots: Sequence[int]) -> Vector:
    """Reduce vec against an RREF basis; zero iff vec lies in the span."""
    v = [Fraction(x) for x in vec]
    for row, p in zip(basis, pivots):
        if v[p]:
            c = v[p]
            for j in range(len(v)):
                v[j] -= c * row[j]
    return tuple(v)


def in_span(vec: Sequence, basis: Sequence[Vector], ncols: int) -> bool:
    pivots = pivot_columns(basis, ncols)
    return not any(residual(vec, basis, pivots))


def intersect(a: Sequence[Vector], b: Sequence[Vector], ncols: int) -> List[Vector]:
    """RREF basis of the intersection of two row spans."""
    if not a or not b:
        return []
    # Kernel of (c_a, c_b) -> sum(c_a . a) - sum(c_b . b), read off the a-part.
    stacked_cols = len(a) + len(b)
    rows = []
    for j in range(ncols):
        rows.append([a[i][j] for i in range(len(a))] + [-b[i][j] for i in range(len(b))])
    combos = nullspace(rows, stacked_cols)
    vecs = []
    for combo in combos:
        vec = [Fraction(0)] * ncols
        for i in range(len(a)):
            if combo[i]:
                for j in range(ncols):
                    vec[j] += combo[i] * a[i][j]
        vecs.append(vec)
    return rref(vecs, ncols)


def preimage(matrix_cols, source_dim: int, subspace: Sequence[Vector], target_dim: int) -> List[Vector]:
    """RREF basis of {x : Mx in span(subspace)}.

    `matrix_cols[j]` is the image of source basis vector j as a sparse dict
    {target_index: value}.
    """
    basis = list(subspace)
    pivots = pivot_columns(basis, target_dim) if basis else []
    rows = []
    for j in range(source_dim):
        col = matrix_cols[j]
        dense = [Fraction(0)] * target_dim
        for r, v in col.items():
            dense[r] = Fraction(v)
        rows.append(residual(dense, basis, pivots) if basis else tuple(dense))
    # Kernel of x -> residual(Mx): rows indexed by source basis, transpose.
    mat = [[rows[j][t] for j in range(source_dim)] for t in range(target_dim)]
    return nullspace(mat, source_dim)
