"""Canonical irreducible labels and formal bundles.

An IrrepLabel names one irreducible summand: a dominant weight for the frame
group of the log cotangent bundle (weakly decreasing n-tuple with last entry
zero) plus an integer L-twist.  The determinant relation det = L^(n+1) is
resolved by forcing the last entry to zero.  A FormalBundle is a finite
multiset of labels with positive multiplicities; it is the algebra in which
every reduced complex is expressed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .characters import (
    Character,
    schur_character,
    weyl_dimension,
    zero_character,
)
from .errors import DimensionMismatchError, MalformedLabelError, NotARepresentationError


@dataclass(frozen=True, order=True)
class IrrepLabel:
    lam: Tuple[int, ...]
    l_twist: int
    n: int

    def __post_init__(self):
        lam = self.lam
        if len(lam) != self.n:
            raise MalformedLabelError(f"weight {lam} does not have {self.n} entries")
        if any(lam[i] < lam[i + 1] for i in range(self.n - 1)):
            raise MalformedLabelError(f"weight {lam} is not weakly decreasing")
        if lam[self.n - 1] != 0:
            raise MalformedLabelError(f"label {lam} not canonical: last entry nonzero")

    def dimension(self) -> int:
        return weyl_dimension(self.lam, self.n)

    def character(self) -> Character:
        return schur_character(self.lam, self.l_twist, self.n)

    def dual(self) -> "IrrepLabel":
        flipped = tuple(-e for e in reversed(self.lam))
        return canonicalize(flipped, -self.l_twist, self.n)


def canonicalize(lam, l_twist: int, n: int) -> IrrepLabel:
    """Trade the common part of a weakly decreasing weight for an L-twist."""
    lam = tuple(lam)
    if len(lam) != n:
        raise MalformedLabelError(f"weight {lam} does not have {n} entries")
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise MalformedLabelError(f"weight {lam} is not weakly decreasing")
    c = lam[n - 1]
    return IrrepLabel(tuple(e - c for e in lam), l_twist + (n + 1) * c, n)


@dataclass(frozen=True)
class FormalBundle:
    """Multiset of irreducible labels, all over the same torus dimension n."""

    n: int
    entries: Tuple[Tuple[IrrepLabel, int], ...]

    @staticmethod
    def from_dict(n: int, entries: Dict[IrrepLabel, int]) -> "FormalBundle":
        for label, mult in entries.items():
            if label.n != n:
                raise DimensionMismatchError(f"label {label} has n={label.n}, not {n}")
            if mult < 0:
                raise NotARepresentationError(
                    f"negative multiplicity {mult} for {label}", label=label
                )
        cleaned = {lab: m for lab, m in entries.items() if m}
        return FormalBundle(n, tuple(sorted(cleaned.items())))

    @staticmethod
    def zero(n: int) -> "FormalBundle":
        return FormalBundle.from_dict(n, {})

    @staticmethod
    def single(lam, l_twist: int, n: int, mult: int = 1) -> "FormalBundle":
        return FormalBundle.from_dict(n, {canonicalize(lam, l_twist, n): mult})

    def as_dict(self) -> Dict[IrrepLabel, int]:
        return dict(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def rank(self) -> int:
        return sum(m * lab.dimension() for lab, m in self.entries)

    def character(self) -> Character:
        chi = zero_character(self.n)
        for lab, m in self.entries:
            chi = chi + lab.character() * m
        return chi

    def dual(self) -> "FormalBundle":
        out: Dict[IrrepLabel, int] = {}
        for lab, m in self.entries:
            d = lab.dual()
            out[d] = out.get(d, 0) + m
        return FormalBundle.from_dict(self.n, out)

    def __add__(self, other: "FormalBundle") -> "FormalBundle":
        if self.n != other.n:
            raise DimensionMismatchError("cannot add bundles of different dimension")
        out = self.as_dict()
        for lab, m in other.entries:
            out[lab] = out.get(lab, 0) + m
        return FormalBundle.from_dict(self.n, out)

    def __sub__(self, other: "FormalBundle") -> "FormalBundle":
        """Multiset difference; raises if any multiplicity would go negative."""
        if self.n != other.n:
            raise DimensionMismatchError("cannot subtract bundles of different dimension")
        out = self.as_dict()
        for lab, m in other.entries:
            out[lab] = out.get(lab, 0) - m
        return FormalBundle.from_dict(self.n, out)

    def scaled(self, k: int) -> "FormalBundle":
        return FormalBundle.from_dict(self.n, {lab: m * k for lab, m in self.entries})


def decompose_character(chi: Character) -> FormalBundle:
    """Unique multiset of labels whose summed Schur characters equal chi."""
    from .characters import decompose

    out: Dict[IrrepLabel, int] = {}
    for (lam, l), mult in decompose(chi):
        label = IrrepLabel(lam, l, chi.n)
        out[label] = out.get(label, 0) + mult
    return FormalBundle.from_dict(chi.n, out)


def trivial_label(n: int, l_twist: int = 0) -> IrrepLabel:
    return IrrepLabel((0,) * n, l_twist, n)


def omega_label(k: int, n: int, l_twist: int = 0) -> IrrepLabel:
    """Label of the k-th log-differential bundle (wedge of the generator)."""
    if not 0 <= k <= n:
        raise MalformedLabelError(f"no degree-{k} forms in dimension {n}")
    if k == n:
        return IrrepLabel((0,) * n, l_twist + n + 1, n)
    return IrrepLabel((1,) * k + (0,) * (n - k), l_twist, n)


def gamma_label(indices, n: int, l_twist: int = 0) -> IrrepLabel:
    """Highest-weight label with given successive differences.

    gamma_label((a1,...,a_{n-1})) has weight (a1+...+a_{n-1}, a2+..., ..., 0);
    shorter index tuples are zero-padded on the right.
    """
    indices = tuple(indices)
    if len(indices) > n - 1:
        raise MalformedLabelError(f"at most {n - 1} indices allowed, got {indices}")
    if any(a < 0 for a in indices):
        raise MalformedLabelError(f"indices must be nonnegative, got {indices}")
    padded = indices + (0,) * (n - 1 - len(indices))
    lam = tuple(sum(padded[i:]) for i in range(n - 1)) + (0,)
    return IrrepLabel(lam, l_twist, n)
