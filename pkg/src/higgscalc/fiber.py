"""Generic-fiber realizations: explicit bases and exact matrices.

Every bundle the engine manipulates is realized on the generic fiber as a
FiberSpace: an ordered basis whose vectors carry a normalized weight monomial,
a Hodge bigrade and a construction tag.  Maps between realizations are sparse
column dictionaries over exact rationals.  Basis orders are deterministic
(lexicographic in construction tags), so matrices, block decompositions and
serialized output are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .characters import Character, Monomial, normalize
from .errors import ResourceLimitError
from .labels import FormalBundle

DEFAULT_LIMIT = 5000

Bigrade = Tuple[int, int]


@dataclass(frozen=True)
class BasisVector:
    weight: Monomial
    bigrade: Bigrade
    tag: tuple


class FiberSpace:
    """Ordered basis of an exact fiber realization."""

    def __init__(self, n: int, vectors: Sequence[BasisVector]):
        self.n = n
        self.vectors = list(vectors)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def weight_census(self) -> Character:
        out: Dict[Monomial, int] = {}
        for v in self.vectors:
            out[v.weight] = out.get(v.weight, 0) + 1
        return Character.from_dict(self.n, out)

    def census_by_bigrade(self) -> Dict[Bigrade, Character]:
        grouped: Dict[Bigrade, Dict[Monomial, int]] = {}
        for v in self.vectors:
            d = grouped.setdefault(v.bigrade, {})
            d[v.weight] = d.get(v.weight, 0) + 1
        return {pq: Character.from_dict(self.n, d) for pq, d in sorted(grouped.items())}

    def blocks(self) -> Dict[Tuple[Bigrade, Monomial], List[int]]:
        """Indices grouped by (bigrade, weight); insertion order is canonical."""
        out: Dict[Tuple[Bigrade, Monomial], List[int]] = {}
        for i, v in enumerate(self.vectors):
            out.setdefault((v.bigrade, v.weight), []).append(i)
        return out


class SparseMap:
    """Linear map stored column-wise: cols[j] = {target index: value}."""

    def __init__(self, source_dim: int, target_dim: int, cols: Optional[List[Dict[int, Fraction]]] = None):
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.cols = cols if cols is not None else [{} for _ in range(source_dim)]

    def set(self, row: int, col: int, value) -> None:
        if value:
            self.cols[col][row] = self.cols[col].get(row, 0) + value
            if not self.cols[col][row]:
                del self.cols[col][row]

    def apply(self, vec: Sequence) -> List[Fraction]:
        out = [Fraction(0)] * self.target_dim
        for j, x in enumerate(vec):
            if x:
                for r, v in self.cols[j].items():
                    out[r] += x * v
        return out

    def compose(self, inner: "SparseMap") -> "SparseMap":
        """self o inner."""
        assert inner.target_dim == self.source_dim
        out = SparseMap(inner.source_dim, self.target_dim)
        for j, col in enumerate(inner.cols):
            acc: Dict[int, Fraction] = {}
            for mid, v in col.items():
                for r, w in self.cols[mid].items():
                    acc[r] = acc.get(r, 0) + v * w
            out.cols[j] = {r: v for r, v in acc.items() if v}
        return out

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def equal(self, other: "SparseMap") -> bool:
        if (self.source_dim, self.target_dim) != (other.source_dim, other.target_dim):
            return False
        for a, b in zip(self.cols, other.cols):
            if {r: v for r, v in a.items() if v} != {r: v for r, v in b.items() if v}:
                return False
        return True

    def rank(self) -> int:
        return self.rank_of_columns(range(self.source_dim))

    def rank_of_columns(self, columns) -> int:
        columns = list(columns)
        touched = sorted({r for j in columns for r in self.cols[j]})
        if not touched or not columns:
            return 0
        pos = {r: i for i, r in enumerate(touched)}
        rows = [[0] * len(columns) for _ in touched]
        for cj, j in enumerate(columns):
            for r, v in self.cols[j].items():
                rows[pos[r]][cj] = v
        return linalg.rank(rows, len(columns))

    def kernel_vectors(self) -> List[linalg.Vector]:
        """RREF basis of the kernel, as vectors over the source basis."""
        touched = sorted({r for col in self.cols for r in col})
        rows = [[self.cols[j].get(r, 0) for j in range(self.source_dim)] for r in touched]
        if not rows:
            rows = [[0] * self.source_dim]
        return linalg.nullspace(rows, self.source_dim)

    def image_vectors(self) -> List[linalg.Vector]:
        """RREF basis of the image, as vectors over the target basis."""
        dense = []
        for col in self.cols:
            if col:
                vec = [Fraction(0)] * self.target_dim
                for r, v in col.items():
                    vec[r] = Fraction(v)
                dense.append(vec)
        return linalg.rref(dense, self.target_dim)

    def triplets(self):
        """Deterministic sparse triplet view: (row, col, value)."""
        for j, col in enumerate(self.cols):
            for r in sorted(col):
                yield r, j, col[r]

    def dump(self) -> str:
        """Documented debug format: one 'row col numerator/denominator' per line."""
        lines = [f"{self.target_dim} {self.source_dim}"]
        for r, j, v in self.triplets():
            f = Fraction(v)
            lines.append(f"{r} {j} {f.numerator}/{f.denominator}")
        return "\n".join(lines)


def realize_bundle(bundle: FormalBundle, limit: int = DEFAULT_LIMIT) -> FiberSpace:
    """Realize a formal bundle as a bare fiber space (no Higgs structure).

    The basis census reproduces the bundle's character exactly: one vector per
    weight monomial per multiplicity, ordered by label then weight.
    """
    if bundle.rank() > limit:
        raise ResourceLimitError(f"rank {bundle.rank()} exceeds the limit {limit}")
    vectors = []
    for label, mult in bundle.entries:
        chi = label.character()
        for copy in range(mult):
            for key, m in chi.terms:
                for rep in range(m):
                    tag = (label.lam, label.l_twist, copy, key, rep)
                    vectors.append(BasisVector(key, (0, 0), tag))
    return FiberSpace(bundle.n, vectors)


def check_graded(vectors: Sequence[linalg.Vector], space: FiberSpace) -> Dict[Tuple[Bigrade, Monomial], List[linalg.Vector]]:
    """Split a subspace into (bigrade, weight) blocks, verifying gradedness.

    Returns per-block RREF bases.  Raises AssertionError if the span is not
    graded (which would indicate an engine bug: every subspace the engine
    produces is cut out by weight-homogeneous conditions).
    """
    dim = space.dimension
    whole = linalg.rref(vectors, dim)
    blocks = space.blocks()
    per_block: Dict[Tuple[Bigrade, Monomial], List[linalg.Vector]] = {}
    total = 0
    for key, idxs in blocks.items():
        idx_set = set(idxs)
        comps = []
        for vec in whole:
            comp = [vec[i] if i in idx_set else Fraction(0) for i in range(dim)]
            if any(comp):
                comps.append(comp)
        basis = linalg.rref(comps, dim)
        if basis:
            per_block[key] = basis
            total += len(basis)
    assert total == len(whole), "subspace is not weight graded"
    return per_block
