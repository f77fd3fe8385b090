"""Exact symmetric-function calculus for the frame group of the log cotangent
bundle, twisted by integer powers of the line bundle L.

A weight monomial is a pair (x, l): an n-tuple of torus exponents and one
L-exponent, kept in normal form with respect to the determinant relation
det = L^(n+1): the minimum torus exponent is always zero, any common shift c
being traded for (n+1)*c on the L side.  A Character is a finitely supported
integer combination of such monomials.

Schur characters are generated by semistandard tableau enumeration (exact and
directly checkable against the hook-content dimension count), symmetric and
exterior powers by the power-sum recurrences, and decomposition into the Schur
basis by greedy subtraction at the lexicographically maximal monomial, which
is dominance-compatible and therefore terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, Tuple

from . import kernels
from .errors import (
    DimensionMismatchError,
    MalformedLabelError,
    NonCanonicalLabelError,
    NotARepresentationError,
)

Monomial = Tuple[Tuple[int, ...], int]


def normalize(xs: Iterable[int], l: int, n: int) -> Monomial:
    """Normal form of a weight monomial: min torus exponent 0, det traded for L."""
    xs = tuple(xs)
    if len(xs) != n:
        raise DimensionMismatchError(f"expected {n} torus exponents, got {len(xs)}")
    return kernels.normalize_monomial(xs, l, n)


@dataclass(frozen=True)
class Character:
    """Finitely supported weight-multiplicity function in normal form.

    terms maps (x-exponent tuple, L-exponent) to a nonzero integer
    multiplicity; zero entries are never stored.
    """

    n: int
    terms: Tuple[Tuple[Monomial, int], ...]

    @staticmethod
    def from_dict(n: int, terms: Dict[Monomial, int]) -> "Character":
        cleaned = {key: m for key, m in terms.items() if m}
        return Character(n, tuple(sorted(cleaned.items())))

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def total(self) -> int:
        """Total multiplicity (the dimension of what the character counts)."""
        return sum(m for _, m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Character") -> "Character":
        self._check(other)
        out = self.as_dict()
        for key, m in other.terms:
            out[key] = out.get(key, 0) + m
        return Character.from_dict(self.n, out)

    def __sub__(self, other: "Character") -> "Character":
        self._check(other)
        out = self.as_dict()
        for key, m in other.terms:
            out[key] = out.get(key, 0) - m
        return Character.from_dict(self.n, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return Character.from_dict(self.n, {k: m * other for k, m in self.terms})
        self._check(other)
        prod = kernels.mul_terms(self.as_dict(), other.as_dict(), self.n)
        return Character.from_dict(self.n, prod)

    __rmul__ = __mul__

    def twist(self, e: int) -> "Character":
        """Multiply by the e-th power of the L variable."""
        return Character.from_dict(self.n, {(xs, l + e): m for (xs, l), m in self.terms})

    def scale_exponents(self, k: int) -> "Character":
        """Power-sum substitution: every exponent (torus and L) times k."""
        out: Dict[Monomial, int] = {}
        for (xs, l), m in self.terms:
            key = normalize((e * k for e in xs), l * k, self.n)
            out[key] = out.get(key, 0) + m
        return Character.from_dict(self.n, out)

    def dual(self) -> "Character":
        """Invert every monomial (character of the dual space)."""
        out: Dict[Monomial, int] = {}
        for (xs, l), m in self.terms:
            key = normalize((-e for e in xs), -l, self.n)
            out[key] = out.get(key, 0) + m
        return Character.from_dict(self.n, out)

    def permuted(self, perm: Tuple[int, ...]) -> "Character":
        """Apply a permutation to the torus variables (symmetry check helper)."""
        out: Dict[Monomial, int] = {}
        for (xs, l), m in self.terms:
            key = normalize((xs[perm[i]] for i in range(self.n)), l, self.n)
            out[key] = out.get(key, 0) + m
        return Character.from_dict(self.n, out)

    def _check(self, other: "Character") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"dimension mismatch: {self.n} vs {other.n}")


def unit_character(n: int) -> Character:
    return Character.from_dict(n, {((0,) * n, 0): 1})


def zero_character(n: int) -> Character:
    return Character.from_dict(n, {})


def line_character(n: int, e: int) -> Character:
    """Character of the e-th power of L."""
    return Character.from_dict(n, {((0,) * n, e): 1})


def _check_partition(lam, n):
    lam = tuple(lam)
    if len(lam) != n:
        raise MalformedLabelError(f"expected an {n}-tuple, got {lam}")
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise MalformedLabelError(f"weight {lam} is not weakly decreasing")
    return lam


def tableau_weights(lam: Tuple[int, ...], n: int):
    """Yield the content weight of every semistandard tableau of shape lam.

    Entries 1..n, rows weakly increasing, columns strictly increasing.  Rows
    are filled top to bottom; the constraint only couples vertically adjacent
    cells, so each row is generated against the previous row.
    """
    rows = [r for r in lam if r > 0]
    if not rows:
        yield (0,) * n
        return

    def fill_row(length, min_vals, start):
        # min_vals[i]: entry strictly greater than this (from the cell above).
        def rec(i, prev):
            if i == length:
                yield ()
                return
            lo = max(prev, min_vals[i] + 1)
            for v in range(lo, n + 1):
                for rest in rec(i + 1, v):
                    yield (v,) + rest

        yield from rec(0, start)

    def rec_rows(r, above):
        if r == len(rows):
            yield []
            return
        length = rows[r]
        min_vals = [above[i] if i < len(above) else 0 for i in range(length)]
        for row in fill_row(length, min_vals, 1):
            for rest in rec_rows(r + 1, row):
                yield [row] + rest

    for tab in rec_rows(0, []):
        weight = [0] * n
        for row in tab:
            for v in row:
                weight[v - 1] += 1
        yield tuple(weight)


def weyl_dimension(lam: Tuple[int, ...], n: int) -> int:
    """Dimension of the irreducible with highest weight lam (product formula)."""
    lam = _check_partition(lam, n)
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def schur_character(lam, l_twist: int, n: int) -> Character:
    """Schur polynomial of shape lam times the l_twist power of L.

    lam must be weakly decreasing with last entry zero (the canonical label
    form); the result is in normal form and its total multiplicity equals the
    Weyl dimension.
    """
    if n < 1:
        raise DimensionMismatchError("n must be positive")
    lam = _check_partition(lam, n)
    if lam[n - 1] != 0:
        raise NonCanonicalLabelError(
            f"label {lam} is not canonical: last entry must be 0 (got {lam[n - 1]})"
        )
    out: Dict[Monomial, int] = {}
    for weight in tableau_weights(lam, n):
        key = normalize(weight, l_twist, n)
        out[key] = out.get(key, 0) + 1
    chi = Character.from_dict(n, out)
    assert chi.total() == weyl_dimension(lam, n)
    return chi


def multiply(a: Character, b: Character) -> Character:
    """Tensor product at the character level."""
    return a * b


def sym_power(chi: Character, k: int) -> Character:
    """Character of the k-th symmetric power (Newton recurrence on h_k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = chi.n
    h = [unit_character(n)]
    p = [None] + [chi.scale_exponents(i) for i in range(1, k + 1)]
    for m in range(1, k + 1):
        acc = zero_character(n)
        for i in range(1, m + 1):
            acc = acc + p[i] * h[m - i]
        h.append(_divide(acc, m))
    return h[k]


def ext_power(chi: Character, k: int) -> Character:
    """Character of the k-th exterior power (alternating Newton recurrence)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = chi.n
    e = [unit_character(n)]
    p = [None] + [chi.scale_exponents(i) for i in range(1, k + 1)]
    for m in range(1, k + 1):
        acc = zero_character(n)
        sign = 1
        for i in range(1, m + 1):
            term = p[i] * e[m - i]
            acc = acc + (term if sign > 0 else term * -1)
            sign = -sign
        e.append(_divide(acc, m))
    return e[k]


def _divide(chi: Character, k: int) -> Character:
    out = {}
    for key, m in chi.terms:
        q, r = divmod(m, k)
        if r:
            raise NotARepresentationError(
                f"multiplicity {m} at {key} is not divisible by {k}"
            )
        out[key] = q
    return Character.from_dict(chi.n, out)


def leading_monomial(chi: Character) -> Monomial:
    """Lexicographically maximal x-part; ties broken by larger L-exponent."""
    return max((xs, l) for (xs, l), _ in chi.terms)


def decompose(chi: Character):
    """Decompose into the Schur basis by greedy leading-monomial subtraction.

    Returns a list of ((lam, l_twist), multiplicity) pairs in the order the
    algorithm peels them off.  Negative coefficients raise
    NotARepresentationError, reporting the offending label.
    """
    n = chi.n
    rest = chi
    found = []
    while not rest.is_zero():
        xs, l = leading_monomial(rest)
        if any(xs[i] < xs[i + 1] for i in range(n - 1)) or xs[n - 1] != 0:
            # A symmetric nonnegative character always leads with a canonical
            # dominant weight; anything else is not a representation.
            raise NotARepresentationError(
                f"leading monomial {xs} L^{l} is not a dominant canonical weight",
                label=(xs, l),
            )
        mult = dict(rest.terms)[(xs, l)]
        if mult < 0:
            raise NotARepresentationError(
                f"negative coefficient {mult} at label ({xs}, {l})",
                label=(xs, l),
                coefficient=mult,
            )
        found.append(((xs, l), mult))
        rest = rest - schur_character(xs, l, n) * mult
    return found


def sym_dimension(r: int, k: int) -> int:
    return comb(r + k - 1, k)


def ext_dimension(r: int, k: int) -> int:
    return comb(r, k)
