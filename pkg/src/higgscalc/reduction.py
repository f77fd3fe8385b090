"""Higgs complexes and their zero-differential reduction.

The Higgs complex of a system has term i equal to the system tensored with
the i-th wedge of the form slot, with differential wedge-with-theta.  Its
cohomology splits over (degree, Hodge bigrade, weight monomial) blocks; the
reduction assembles per-block kernel/image ranks into Characters, decomposes
them into labels, and checks the Euler identity against the source complex.
The output is the canonical zero-differential complex the displayed tables
are written in.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .characters import Character, normalize
from .errors import FlatnessError
from .fiber import BasisVector, Bigrade, FiberSpace, SparseMap
from .grammar import latex_bundle, print_bundle
from .labels import FormalBundle, decompose_character
from .systems import System

Monomial = Tuple[Tuple[int, ...], int]


class HiggsComplex:
    """Terms and exact differentials of the Higgs complex of a system."""

    def __init__(self, system: System, terms: List[FiberSpace], maps: List[SparseMap], provenance: str):
        self.system = system
        self.n = system.n
        self.terms = terms
        self.maps = maps  # maps[i]: terms[i] -> terms[i+1]
        self.provenance = provenance
        self._verify()

    def _verify(self) -> None:
        for i in range(len(self.maps) - 1):
            if not self.maps[i + 1].compose(self.maps[i]).is_zero():
                raise FlatnessError(f"d^2 is nonzero between degrees {i} and {i + 2}")

    @property
    def length(self) -> int:
        return len(self.terms)

    def term_ranks(self) -> List[int]:
        return [t.dimension for t in self.terms]

    def euler_character(self) -> Character:
        chi = Character.from_dict(self.n, {})
        sign = 1
        for term in self.terms:
            census = term.weight_census()
            chi = chi + (census if sign > 0 else census * -1)
            sign = -sign
        return chi

    def strand(self, p0: int) -> "HiggsComplex":
        """Restrict to the diagonal where source bigrade p equals p0 - degree."""
        terms = []
        maps = []
        keeps = []
        for i, term in enumerate(self.terms):
            keep = [k for k, v in enumerate(term.vectors) if v.bigrade[0] == p0 - i]
            keeps.append(keep)
            terms.append(FiberSpace(self.n, [term.vectors[k] for k in keep]))
        for i, mat in enumerate(self.maps):
            src, tgt = keeps[i], keeps[i + 1]
            tgt_pos = {k: t for t, k in enumerate(tgt)}
            out = SparseMap(len(src), len(tgt))
            for new_j, old_j in enumerate(src):
                for r, v in mat.cols[old_j].items():
                    if r in tgt_pos:
                        out.set(tgt_pos[r], new_j, v)
                    elif v:
                        raise FlatnessError("differential leaves the strand")
            maps.append(out)
        sub = _StrandComplex(self.system, terms, maps, f"{self.provenance}[p0={p0}]")
        return sub


class _StrandComplex(HiggsComplex):
    """A direct-summand strand; skips re-verification of d^2 (inherited)."""

    def __init__(self, system, terms, maps, provenance):
        self.system = system
        self.n = system.n
        self.terms = terms
        self.maps = maps
        self.provenance = provenance


def higgs_complex(system: System, provenance: Optional[str] = None) -> HiggsComplex:
    """Assemble the full complex: term i is the system tensor wedge-i forms."""
    n = system.n
    base = system.space.vectors
    terms: List[FiberSpace] = []
    indexes: List[Dict[tuple, int]] = []
    for i in range(n + 1):
        vectors = []
        index = {}
        for b, vec in enumerate(base):
            for S in combinations(range(1, n + 1), i):
                xs = list(vec.weight[0])
                for s in S:
                    xs[s - 1] += 1
                weight = normalize(xs, vec.weight[1], n)
                index[(b, S)] = len(vectors)
                vectors.append(BasisVector(weight, vec.bigrade, (vec.tag, S)))
        terms.append(FiberSpace(n, vectors))
        indexes.append(index)
    maps: List[SparseMap] = []
    for i in range(n):
        mat = SparseMap(terms[i].dimension, terms[i + 1].dimension)
        for (b, S), col in indexes[i].items():
            for j in range(1, n + 1):
                if j in S:
                    continue
                t = sum(1 for s in S if s < j)
                sign = 1 if t % 2 == 0 else -1
                merged = tuple(sorted(S + (j,)))
                for r, v in system.nmats[j - 1].cols[b].items():
                    mat.set(indexes[i + 1][(r, merged)], col, sign * v)
        maps.append(mat)
    return HiggsComplex(system, terms, maps, provenance or system.provenance)


# ---------------------------------------------------------------------------
# block cohomology


def _block_ranks(complex_: HiggsComplex, i: int) -> Dict[Tuple[Bigrade, Monomial], int]:
    """Cohomology dimension of every (bigrade, weight) block at degree i."""
    term = complex_.terms[i]
    blocks = term.blocks()
    out_map = complex_.maps[i] if i < len(complex_.maps) else None
    in_map = complex_.maps[i - 1] if i > 0 else None
    in_blocks = complex_.terms[i - 1].blocks() if i > 0 else {}
    result: Dict[Tuple[Bigrade, Monomial], int] = {}
    for key, idxs in blocks.items():
        (p, q), weight = key
        dim = len(idxs)
        rank_out = out_map.rank_of_columns(idxs) if out_map is not None else 0
        rank_in = 0
        if in_map is not None:
            pre = in_blocks.get(((p + 1, q - 1), weight))
            if pre:
                rank_in = in_map.rank_of_columns(pre)
        coh = dim - rank_out - rank_in
        if coh < 0:
            raise FlatnessError("negative block cohomology; engine bug")
        if coh:
            result[key] = coh
    return result


def cohomology_characters(
    complex_: HiggsComplex, i: int, threads: int = 1
) -> Dict[Bigrade, Character]:
    """Per-bigrade cohomology characters at degree i (exact ranks per block)."""
    ranks = _block_ranks_parallel(complex_, i, threads)
    grouped: Dict[Bigrade, Dict[Monomial, int]] = {}
    for ((p, q), weight), dim in ranks.items():
        grouped.setdefault((p, q), {})[weight] = dim
    return {
        pq: Character.from_dict(complex_.n, d) for pq, d in sorted(grouped.items())
    }


def _block_ranks_parallel(complex_, i, threads):
    if threads <= 1:
        return _block_ranks(complex_, i)
    term = complex_.terms[i]
    blocks = sorted(term.blocks().items())
    out_map = complex_.maps[i] if i < len(complex_.maps) else None
    in_map = complex_.maps[i - 1] if i > 0 else None
    in_blocks = complex_.terms[i - 1].blocks() if i > 0 else {}

    def work(item):
        key, idxs = item
        (p, q), weight = key
        rank_out = out_map.rank_of_columns(idxs) if out_map is not None else 0
        rank_in = 0
        if in_map is not None:
            pre = in_blocks.get(((p + 1, q - 1), weight))
            if pre:
                rank_in = in_map.rank_of_columns(pre)
        return key, len(idxs) - rank_out - rank_in

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(work, blocks))
    out = {}
    for key, dim in results:
        if dim < 0:
            raise FlatnessError("negative block cohomology; engine bug")
        if dim:
            out[key] = dim
    return out


def block_rank_consistency(complex_: HiggsComplex) -> bool:
    """Global ranks agree with the sums of per-block ranks, for every map."""
    for i, mat in enumerate(complex_.maps):
        total = mat.rank()
        per_block = 0
        for key, idxs in complex_.terms[i].blocks().items():
            per_block += mat.rank_of_columns(idxs)
        if total != per_block:
            return False
    return True


# ---------------------------------------------------------------------------
# reduced complexes


@dataclass
class ReducedComplex:
    """Zero-differential normal form: labels per degree and Hodge bigrade."""

    n: int
    per_degree: Dict[int, Dict[Bigrade, FormalBundle]]
    provenance: str
    euler_checked: bool = False
    source: Optional[HiggsComplex] = field(default=None, repr=False)

    def degree(self, i: int) -> FormalBundle:
        total = FormalBundle.zero(self.n)
        for bundle in self.per_degree.get(i, {}).values():
            total = total + bundle
        return total

    def degrees(self) -> List[int]:
        return sorted(self.per_degree)

    def summands(self):
        for i in sorted(self.per_degree):
            for pq in sorted(self.per_degree[i]):
                bundle = self.per_degree[i][pq]
                if not bundle.is_zero():
                    yield i, pq, bundle

    def euler_character(self) -> Character:
        chi = Character.from_dict(self.n, {})
        for i in sorted(self.per_degree):
            for bundle in self.per_degree[i].values():
                term = bundle.character()
                chi = chi + (term if i % 2 == 0 else term * -1)
        return chi

    def to_json_dict(self) -> dict:
        degrees = []
        for i in sorted(self.per_degree):
            pieces = []
            for (p, q) in sorted(self.per_degree[i]):
                bundle = self.per_degree[i][(p, q)]
                for label, mult in bundle.entries:
                    pieces.append(
                        {
                            "p": p,
                            "q": q,
                            "lambda": list(label.lam),
                            "lTwist": label.l_twist,
                            "multiplicity": mult,
                            "rankPerSummand": label.dimension(),
                        }
                    )
            degrees.append({"i": i, "pieces": pieces})
        return {
            "dimension": self.n,
            "expression": self.provenance,
            "degrees": degrees,
            "eulerChecked": self.euler_checked,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"reduced complex of {self.provenance} (n={self.n})"]
        for i in sorted(self.per_degree):
            bundle = self.degree(i)
            lines.append(f"  degree {i}: {print_bundle(bundle)}")
        return "\n".join(lines)

    def to_latex(self) -> str:
        chunks = []
        for i in sorted(self.per_degree):
            bundle = self.degree(i)
            chunks.append(latex_bundle(bundle) if not bundle.is_zero() else "0")
        body = r" \buildrel 0 \over \longrightarrow ".join(chunks)
        return f"$$\n{body}\n$$"


def reduce_complex(complex_: HiggsComplex, threads: int = 1) -> ReducedComplex:
    """Cohomology of the complex, decomposed into labels per degree/bigrade."""
    per_degree: Dict[int, Dict[Bigrade, FormalBundle]] = {}
    for i in range(complex_.length):
        chars = cohomology_characters(complex_, i, threads=threads)
        per_degree[i] = {
            pq: decompose_character(chi) for pq, chi in chars.items() if not chi.is_zero()
        }
    reduced = ReducedComplex(complex_.n, per_degree, complex_.provenance, source=complex_)
    discrepancy = euler_check(complex_, reduced)
    if discrepancy:
        raise FlatnessError(f"Euler identity failed: {discrepancy}")
    reduced.euler_checked = True
    return reduced


def euler_check(complex_: HiggsComplex, reduced: ReducedComplex) -> Dict[Monomial, int]:
    """Per-weight discrepancy between the complex and reduced Euler characters.

    Empty means the identity holds; a nonempty map is a fatal engine bug
    (or a deliberately corrupted fixture).
    """
    diff = complex_.euler_character() - reduced.euler_character()
    return {key: m for key, m in diff.terms}


def zero_complex_from_reduced(reduced: ReducedComplex) -> HiggsComplex:
    """Lift a reduced complex back to a complex with zero differentials."""
    from .fiber import realize_bundle
    from .systems import unitary

    n = reduced.n
    degrees = reduced.degrees()
    top = max(degrees) if degrees else 0
    terms = []
    for i in range(top + 1):
        vectors = []
        for (p, q), bundle in sorted(reduced.per_degree.get(i, {}).items()):
            for v in realize_bundle(bundle).vectors:
                vectors.append(BasisVector(v.weight, (p, q), (i,) + v.tag))
        terms.append(FiberSpace(n, vectors))
    maps = [
        SparseMap(terms[i].dimension, terms[i + 1].dimension) for i in range(top)
    ]
    carrier = unitary(0, n)
    return HiggsComplex(carrier, terms, maps, f"lifted({reduced.provenance})")
