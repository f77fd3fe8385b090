"""Higgs systems: bigraded bundles with an equivariant Higgs map.

A System holds a fiber realization (FiberSpace) together with the n component
matrices N_1..N_n of the Higgs map (theta = sum N_i tensor omega_i, where
omega_i runs over the frame of the log cotangent bundle).  Flatness
theta wedge theta = 0 is equivalent to the N_i commuting pairwise and is
checked on every construction; theta shifts the Hodge bigrade by (-1,+1) and
the weight by the omega_i weight, also checked.

All derived systems (tensor, symmetric and wedge powers, duals, primitive
parts, sub- and quotient systems) extend theta by the Leibniz rule on the
fiber realization, so later rank and cohomology computations are honest matrix
computations rather than case distinctions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .characters import Character, normalize
from .errors import (
    DimensionMismatchError,
    FlatnessError,
    LefschetzError,
    NotASubsystemError,
    ResourceLimitError,
    WrongWeightError,
)
from .fiber import (
    DEFAULT_LIMIT,
    BasisVector,
    Bigrade,
    FiberSpace,
    SparseMap,
    check_graded,
)
from .labels import FormalBundle, decompose_character

Vector = linalg.Vector


def _unit_weight(i: int, n: int):
    xs = [0] * n
    xs[i] = 1
    return tuple(xs)


class System:
    """Bigraded Higgs system with an exact fiber realization."""

    def __init__(
        self,
        n: int,
        space: FiberSpace,
        nmats: Sequence[SparseMap],
        weight: Optional[int],
        provenance: str,
        swap: Optional[SparseMap] = None,
        wedge_base: Optional[Tuple["System", int]] = None,
        sv_power: Optional[Tuple[str, int]] = None,
        regular_weight: Optional[bool] = None,
        check: bool = True,
    ):
        self.n = n
        self.space = space
        self.nmats = list(nmats)
        self.weight = weight
        self.provenance = provenance
        self.swap = swap
        self.wedge_base = wedge_base
        self.sv_power = sv_power
        self.regular_weight = regular_weight
        self._pieces: Optional[Dict[Bigrade, FormalBundle]] = None
        if check:
            self._check_structure()

    # -- invariants ------------------------------------------------------

    def _check_structure(self) -> None:
        vecs = self.space.vectors
        for i, mat in enumerate(self.nmats):
            for j, col in enumerate(mat.cols):
                src = vecs[j]
                for r in col:
                    tgt = vecs[r]
                    if (src.bigrade[0] - 1, src.bigrade[1] + 1) != tgt.bigrade:
                        raise FlatnessError(
                            f"N_{i + 1} violates the (-1,+1) bigrade shift at {src.tag}"
                        )
                    xs = list(src.weight[0])
                    xs[i] -= 1
                    if normalize(xs, src.weight[1], self.n) != tgt.weight:
                        raise FlatnessError(
                            f"N_{i + 1} violates weight homogeneity at {src.tag}"
                        )
        for i in range(self.n):
            for j in range(i + 1, self.n):
                ab = self.nmats[i].compose(self.nmats[j])
                ba = self.nmats[j].compose(self.nmats[i])
                if not ab.equal(ba):
                    raise FlatnessError("theta wedge theta is nonzero")

    # -- derived data ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def pieces(self) -> Dict[Bigrade, FormalBundle]:
        if self._pieces is None:
            self._pieces = {
                pq: decompose_character(chi)
                for pq, chi in self.space.census_by_bigrade().items()
            }
        return self._pieces

    def piece(self, p: int, q: int) -> FormalBundle:
        return self.pieces().get((p, q), FormalBundle.zero(self.n))

    def rank(self) -> int:
        return self.dimension

    def character(self) -> Character:
        return self.space.weight_census()

    def theta_rank(self) -> int:
        """Rank of theta as a map into fiber tensor the form slot."""
        stacked = SparseMap(self.dimension, self.dimension * self.n)
        for i, mat in enumerate(self.nmats):
            for r, j, v in mat.triplets():
                stacked.set(i * self.dimension + r, j, v)
        return stacked.rank()

    def residue_kernel(self, direction: int):
        """Kernel of the residue component along one coordinate (1-based)."""
        if not 1 <= direction <= self.n:
            raise DimensionMismatchError(f"direction must be in 1..{self.n}")
        vectors = self.nmats[direction - 1].kernel_vectors()
        return Subspace(self, vectors)


# ---------------------------------------------------------------------------
# generators


def uniformizing(n: int) -> System:
    """The weight-one system generated by the log cotangent bundle.

    Pieces: (1,0) the log cotangent bundle twisted by L^-1, (0,1) the line
    L^-1; theta identifies the (1,0) piece with the (0,1) piece tensored with
    the form slot.
    """
    if n < 1:
        raise DimensionMismatchError("n must be positive")
    vectors = [
        BasisVector(normalize(_unit_weight(i, n), -1, n), (1, 0), ("E1", "w", i + 1))
        for i in range(n)
    ]
    vectors.append(BasisVector(normalize((0,) * n, -1, n), (0, 1), ("E1", "v")))
    space = FiberSpace(n, vectors)
    nmats = []
    for i in range(n):
        mat = SparseMap(n + 1, n + 1)
        mat.set(n, i, Fraction(1))
        nmats.append(mat)
    return System(
        n, space, nmats, weight=1, provenance="E1", sv_power=("V1", 1), regular_weight=False
    )


def dual_uniformizing(n: int) -> System:
    """The dual generator: L in bidegree (1,0), top-but-one forms in (0,1)."""
    if n < 1:
        raise DimensionMismatchError("n must be positive")
    vectors = [BasisVector(normalize((0,) * n, 1, n), (1, 0), ("E2", "u"))]
    for i in range(n):
        xs = tuple(0 if j == i else 1 for j in range(n))
        vectors.append(BasisVector(normalize(xs, -n, n), (0, 1), ("E2", "f", i + 1)))
    space = FiberSpace(n, vectors)
    nmats = []
    for i in range(n):
        mat = SparseMap(n + 1, n + 1)
        sign = 1 if (n - 1 - i) % 2 == 0 else -1
        mat.set(1 + i, 0, Fraction(sign))
        nmats.append(mat)
    return System(
        n, space, nmats, weight=1, provenance="E2", sv_power=("V2", 1), regular_weight=False
    )


def unitary(r: int, n: int) -> System:
    """Rank-r system with zero Higgs map (unitary summand)."""
    vectors = [
        BasisVector(normalize((0,) * n, 0, n), (0, 0), ("U", j + 1)) for j in range(r)
    ]
    space = FiberSpace(n, vectors)
    nmats = [SparseMap(r, r) for _ in range(n)]
    return System(n, space, nmats, weight=0, provenance=f"U({r})")


def lift_bundle(bundle: FormalBundle, provenance: str, limit: int = DEFAULT_LIMIT) -> System:
    """Lift a formal bundle to a system with zero Higgs map at bigrade (0,0)."""
    from .fiber import realize_bundle

    space = realize_bundle(bundle, limit)
    nmats = [SparseMap(space.dimension, space.dimension) for _ in range(bundle.n)]
    return System(bundle.n, space, nmats, weight=0, provenance=provenance)


# ---------------------------------------------------------------------------
# functors


def direct_sum(a: System, b: System, provenance: Optional[str] = None) -> System:
    if a.n != b.n:
        raise DimensionMismatchError("direct sum of systems over different n")
    n = a.n
    vectors = a.space.vectors + b.space.vectors
    dim = len(vectors)
    nmats = []
    for i in range(n):
        mat = SparseMap(dim, dim)
        for r, j, v in a.nmats[i].triplets():
            mat.set(r, j, v)
        off = a.dimension
        for r, j, v in b.nmats[i].triplets():
            mat.set(off + r, off + j, v)
        nmats.append(mat)
    weight = a.weight if a.weight == b.weight else None
    return System(
        n,
        FiberSpace(n, vectors),
        nmats,
        weight,
        provenance or f"{a.provenance} (+) {b.provenance}",
    )


def standard_v(n: int) -> System:
    """Direct sum of the two generators, with the conjugation swap attached."""
    e1 = uniformizing(n)
    e2 = dual_uniformizing(n)
    v = direct_sum(e1, e2, provenance="V")
    dim = v.dimension
    swap = SparseMap(dim, dim)
    # e_i <-> f_i and v <-> u; E2 sits at offset n+1, f_i at offset n+2.
    for i in range(n):
        swap.set(n + 2 + i, i, Fraction(1))
        swap.set(i, n + 2 + i, Fraction(1))
    swap.set(n + 1, n, Fraction(1))
    swap.set(n, n + 1, Fraction(1))
    v.swap = swap
    return v


def tensor(a: System, b: System, provenance: Optional[str] = None, limit: int = DEFAULT_LIMIT) -> System:
    if a.n != b.n:
        raise DimensionMismatchError("tensor of systems over different n")
    n = a.n
    if a.dimension * b.dimension > limit:
        raise ResourceLimitError(
            f"tensor rank {a.dimension * b.dimension} exceeds the limit {limit}"
        )
    pairs = [(x, y) for x in range(a.dimension) for y in range(b.dimension)]
    index = {pair: k for k, pair in enumerate(pairs)}
    vectors = []
    for x, y in pairs:
        va, vb = a.space.vectors[x], b.space.vectors[y]
        weight = normalize(
            tuple(s + t for s, t in zip(va.weight[0], vb.weight[0])),
            va.weight[1] + vb.weight[1],
            n,
        )
        bigrade = (va.bigrade[0] + vb.bigrade[0], va.bigrade[1] + vb.bigrade[1])
        vectors.append(BasisVector(weight, bigrade, (va.tag, vb.tag)))
    nmats = []
    for i in range(n):
        mat = SparseMap(len(pairs), len(pairs))
        for (x, y), k in index.items():
            for r, v in a.nmats[i].cols[x].items():
                mat.set(index[(r, y)], k, v)
            for r, v in b.nmats[i].cols[y].items():
                mat.set(index[(x, r)], k, v)
        nmats.append(mat)
    weight = None
    if a.weight is not None and b.weight is not None:
        weight = a.weight + b.weight
    return System(
        n,
        FiberSpace(n, vectors),
        nmats,
        weight,
        provenance or f"{a.provenance} (x) {b.provenance}",
    )


def _word_weight(word, vecs, n):
    xs = [0] * n
    l = 0
    p = q = 0
    for idx in word:
        v = vecs[idx]
        for t in range(n):
            xs[t] += v.weight[0][t]
        l += v.weight[1]
        p += v.bigrade[0]
        q += v.bigrade[1]
    return normalize(xs, l, n), (p, q)


def sym(h: System, k: int, provenance: Optional[str] = None, limit: int = DEFAULT_LIMIT) -> System:
    """Symmetric power; theta extends as a derivation on monomials."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = h.n
    from math import comb

    if comb(h.dimension + k - 1, k) > limit:
        raise ResourceLimitError("symmetric power exceeds the rank limit")
    words = list(combinations_with_replacement(range(h.dimension), k))
    index = {w: i for i, w in enumerate(words)}
    vecs = h.space.vectors
    vectors = []
    for w in words:
        weight, bigrade = _word_weight(w, vecs, n)
        vectors.append(BasisVector(weight, bigrade, ("sym",) + tuple(vecs[i].tag for i in w)))
    nmats = []
    for i in range(n):
        mat = SparseMap(len(words), len(words))
        for w, col in index.items():
            for t in range(k):
                for r, v in h.nmats[i].cols[w[t]].items():
                    new = tuple(sorted(w[:t] + (r,) + w[t + 1 :]))
                    mat.set(index[new], col, v)
        nmats.append(mat)
    weight = None if h.weight is None else h.weight * k
    sv = None
    regular = None
    if h.sv_power is not None and h.sv_power[1] == 1:
        sv = (h.sv_power[0], k)
        regular = False
    return System(
        n,
        FiberSpace(n, vectors),
        nmats,
        weight,
        provenance or f"S^{k}({h.provenance})",
        sv_power=sv,
        regular_weight=regular,
    )


def wedge(h: System, k: int, provenance: Optional[str] = None, limit: int = DEFAULT_LIMIT) -> System:
    """Exterior power; theta extends as a signed derivation on wedge words."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = h.n
    from math import comb

    if comb(h.dimension, k) > limit:
        raise ResourceLimitError("wedge power exceeds the rank limit")
    words = list(combinations(range(h.dimension), k))
    index = {w: i for i, w in enumerate(words)}
    vecs = h.space.vectors
    vectors = []
    for w in words:
        weight, bigrade = _word_weight(w, vecs, n)
        vectors.append(BasisVector(weight, bigrade, ("wedge",) + tuple(vecs[i].tag for i in w)))
    nmats = []
    for i in range(n):
        mat = SparseMap(len(words), len(words))
        for w, col in index.items():
            for t in range(k):
                for r, v in h.nmats[i].cols[w[t]].items():
                    others = w[:t] + w[t + 1 :]
                    if r in others:
                        continue
                    pos = sum(1 for o in others if o < r)
                    sign = 1 if (t + pos) % 2 == 0 else -1
                    new = tuple(sorted(others + (r,)))
                    mat.set(index[new], col, sign * v)
        nmats.append(mat)
    weight = None if h.weight is None else h.weight * k
    swap = None
    if h.swap is not None:
        swap = _extend_swap_to_wedge(h.swap, words, index)
    base = (h, k) if h.weight == 1 else None
    return System(
        n,
        FiberSpace(n, vectors),
        nmats,
        weight,
        provenance or f"Wedge^{k}({h.provenance})",
        swap=swap,
        wedge_base=base,
    )


def _extend_swap_to_wedge(swap: SparseMap, words, index) -> SparseMap:
    out = SparseMap(len(words), len(words))
    for w, col in index.items():
        # The base swap is a (signed) permutation; apply it entrywise.
        images = []
        coeff = Fraction(1)
        for idx in w:
            col_map = swap.cols[idx]
            assert len(col_map) == 1, "swap must be a signed permutation"
            (r, v), = col_map.items()
            images.append(r)
            coeff *= v
        if len(set(images)) < len(images):
            continue
        sign = _sort_sign(images)
        out.set(index[tuple(sorted(images))], col, coeff * sign)
    return out


def _sort_sign(seq) -> int:
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def dual_system(h: System, provenance: Optional[str] = None) -> System:
    """Dual system, regraded so a weight-w system dualizes to weight w."""
    if h.weight is None:
        raise WrongWeightError("dual needs a weight-homogeneous system")
    n = h.n
    w = h.weight
    vecs = h.space.vectors
    vectors = []
    for v in vecs:
        weight = normalize(tuple(-e for e in v.weight[0]), -v.weight[1], n)
        bigrade = (w - v.bigrade[0], w - v.bigrade[1])
        vectors.append(BasisVector(weight, bigrade, ("dual", v.tag)))
    nmats = []
    for i in range(n):
        mat = SparseMap(len(vecs), len(vecs))
        for r, j, v in h.nmats[i].triplets():
            mat.set(j, r, -v)
        nmats.append(mat)
    return System(
        n,
        FiberSpace(n, vectors),
        nmats,
        w,
        provenance or f"Dual({h.provenance})",
    )


def end0(h: System, provenance: Optional[str] = None, limit: int = DEFAULT_LIMIT) -> System:
    """Trace-free endomorphisms: End modulo the line spanned by the identity."""
    full = tensor(h, dual_system(h), provenance="End", limit=limit)
    dim_h = h.dimension
    identity = [Fraction(0)] * full.dimension
    for a in range(dim_h):
        identity[a * dim_h + a] = Fraction(1)
    sub = Subspace(full, [tuple(identity)])
    out = quotient_system(full, sub, provenance=provenance or f"End0({h.provenance})")
    if h.sv_power in (("V1", 1), ("V2", 1)):
        out.regular_weight = True
    return out


# ---------------------------------------------------------------------------
# subspaces, sub- and quotient systems


class Subspace:
    """Weight-graded subspace of a system's fiber, stored per-block in RREF."""

    def __init__(self, ambient: System, vectors: Sequence[Sequence]):
        self.ambient = ambient
        dim = ambient.dimension
        cleaned = [tuple(Fraction(x) for x in vec) for vec in vectors]
        self.per_block = check_graded(cleaned, ambient.space) if cleaned else {}
        self.rows: List[Vector] = [row for _, rows in sorted(self.per_block.items()) for row in rows]

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def census_by_bigrade(self) -> Dict[Bigrade, Character]:
        grouped: Dict[Bigrade, Dict] = {}
        for (bigrade, weight), rows in self.per_block.items():
            d = grouped.setdefault(bigrade, {})
            d[weight] = d.get(weight, 0) + len(rows)
        return {pq: Character.from_dict(self.ambient.n, d) for pq, d in sorted(grouped.items())}

    def pieces(self) -> Dict[Bigrade, FormalBundle]:
        return {
            pq: decompose_character(chi) for pq, chi in self.census_by_bigrade().items()
        }

    def piece(self, p: int, q: int) -> FormalBundle:
        return self.pieces().get((p, q), FormalBundle.zero(self.ambient.n))

    def weight_census(self) -> Character:
        out: Dict = {}
        for (_, weight), rows in self.per_block.items():
            out[weight] = out.get(weight, 0) + len(rows)
        return Character.from_dict(self.ambient.n, out)

    def contains(self, other: "Subspace") -> bool:
        dim = self.ambient.dimension
        return all(linalg.in_span(vec, self.rows, dim) for vec in other.rows)

    def is_theta_stable(self) -> bool:
        dim = self.ambient.dimension
        pivots = linalg.pivot_columns(self.rows, dim) if self.rows else []
        for mat in self.ambient.nmats:
            for row in self.rows:
                image = mat.apply(row)
                if any(linalg.residual(image, self.rows, pivots)):
                    return False
        return True


def theta_kernel(h: System, bigrade: Bigrade) -> Subspace:
    """Kernel of theta restricted to one bigraded piece, as a subspace."""
    dim = h.dimension
    idxs = [i for i, v in enumerate(h.space.vectors) if v.bigrade == bigrade]
    if not idxs:
        return Subspace(h, [])
    # Stack the restricted N_i matrices in the piece's own coordinates.
    touched = sorted(
        {(i, r) for i, mat in enumerate(h.nmats) for j in idxs for r in mat.cols[j]}
    )
    rows = [[h.nmats[i].cols[j].get(r, 0) for j in idxs] for (i, r) in touched]
    local = linalg.nullspace(rows, len(idxs)) if rows else [
        tuple(Fraction(1) if t == s else Fraction(0) for t in range(len(idxs)))
        for s in range(len(idxs))
    ]
    kernel = []
    for vec in local:
        full = [Fraction(0)] * dim
        for t, j in enumerate(idxs):
            full[j] = vec[t]
        kernel.append(tuple(full))
    return Subspace(h, kernel)


def zero_subspace(h: System) -> Subspace:
    return Subspace(h, [])


def full_subspace(h: System) -> Subspace:
    dim = h.dimension
    rows = [tuple(Fraction(1) if t == j else Fraction(0) for t in range(dim)) for j in range(dim)]
    return Subspace(h, rows)


def sub_system(h: System, sub: Subspace, provenance: Optional[str] = None) -> System:
    """Realize a theta-stable subspace as a system of its own."""
    if not sub.is_theta_stable():
        raise NotASubsystemError("subspace is not theta stable")
    n = h.n
    rows = sub.rows
    dim = h.dimension
    vectors = []
    keys = []
    for key, block_rows in sorted(sub.per_block.items()):
        for r, row in enumerate(block_rows):
            (p, q), weight = key
            vectors.append(BasisVector(weight, (p, q), ("sub", key, r)))
            keys.append(row)
    pivots = linalg.pivot_columns(keys, dim) if keys else []
    nmats = []
    for mat in h.nmats:
        out = SparseMap(len(keys), len(keys))
        for j, row in enumerate(keys):
            image = mat.apply(row)
            coords = _coords_in_rref(image, keys, pivots)
            for r, v in coords.items():
                out.set(r, j, v)
        nmats.append(out)
    return System(
        n,
        FiberSpace(n, vectors),
        nmats,
        h.weight,
        provenance or f"sub({h.provenance})",
    )


def _coords_in_rref(vec, rows, pivots) -> Dict[int, Fraction]:
    """Coordinates of vec in an RREF basis (vec must lie in the span)."""
    coords = {}
    v = [Fraction(x) for x in vec]
    for idx, (row, p) in enumerate(zip(rows, pivots)):
        c = v[p]
        if c:
            coords[idx] = c
            for t in range(len(v)):
                v[t] -= c * row[t]
    if any(v):
        raise NotASubsystemError("vector left the subspace during induction")
    return coords


def quotient_system(h: System, sub: Subspace, provenance: Optional[str] = None) -> System:
    """Quotient by a theta-stable subspace, with the induced Higgs map."""
    if sub.ambient is not h:
        # Allow subspaces rebuilt for an equal ambient; dimensions must agree.
        if sub.ambient.dimension != h.dimension:
            raise NotASubsystemError("subspace lives in a different ambient system")
    if sub.is_zero():
        return System(
            h.n,
            h.space,
            h.nmats,
            h.weight,
            provenance or h.provenance,
            swap=h.swap,
            wedge_base=h.wedge_base,
            check=False,
        )
    if not sub.is_theta_stable():
        raise NotASubsystemError("subspace is not theta stable")
    n = h.n
    dim = h.dimension
    rows = sub.rows
    pivots = linalg.pivot_columns(rows, dim)
    pivot_set = set(pivots)
    keep = [i for i in range(dim) if i not in pivot_set]
    pos = {i: t for t, i in enumerate(keep)}
    vecs = h.space.vectors
    vectors = [vecs[i] for i in keep]

    def project(raw) -> Dict[int, Fraction]:
        red = linalg.residual(raw, rows, pivots)
        return {pos[i]: red[i] for i in keep if red[i]}

    nmats = []
    for mat in h.nmats:
        out = SparseMap(len(keep), len(keep))
        for t, i in enumerate(keep):
            raw = [Fraction(0)] * dim
            for r, v in mat.cols[i].items():
                raw[r] = Fraction(v)
            for r, v in project(raw).items():
                out.set(r, t, v)
        nmats.append(out)
    swap = None
    if h.swap is not None:
        stable = all(
            linalg.in_span(h.swap.apply(row), rows, dim) for row in rows
        )
        if stable:
            swap = SparseMap(len(keep), len(keep))
            for t, i in enumerate(keep):
                raw = [Fraction(0)] * dim
                for r, v in h.swap.cols[i].items():
                    raw[r] = Fraction(v)
                for r, v in project(raw).items():
                    swap.set(r, t, v)
    return System(
        h.n,
        FiberSpace(n, vectors),
        nmats,
        h.weight,
        provenance or f"{h.provenance}/sub",
        swap=swap,
        wedge_base=h.wedge_base,
    )


# ---------------------------------------------------------------------------
# polarization and primitive parts


def polarization_vector(v: System) -> Dict[Tuple[int, int], Fraction]:
    """The invariant two-form of the standard weight-one sum, as a wedge word map.

    Returns {(i, j): coefficient} over sorted index pairs of the V basis.  The
    form is theta-closed and swaps sign under the conjugation involution.
    """
    n = v.n
    out: Dict[Tuple[int, int], Fraction] = {}
    # Basis layout from standard_v: e_1..e_n, v, u, f_1..f_n.
    for i in range(n):
        sign = 1 if (n - 1 - i) % 2 == 0 else -1
        out[(i, n + 2 + i)] = Fraction(-sign)
    out[(n, n + 1)] = Fraction(1)
    return out


def _wedge_word_multiply(word_a, coeff_a, word_b, coeff_b):
    merged = word_a + word_b
    if len(set(merged)) < len(merged):
        return None
    sign = _sort_sign(list(merged))
    return tuple(sorted(merged)), coeff_a * coeff_b * sign


def _omega_power(omega: Dict[Tuple[int, int], Fraction], j: int) -> Dict[tuple, Fraction]:
    acc: Dict[tuple, Fraction] = {(): Fraction(1)}
    for _ in range(j):
        new: Dict[tuple, Fraction] = {}
        for word, c in acc.items():
            for pair, d in omega.items():
                res = _wedge_word_multiply(word, c, pair, d)
                if res is None:
                    continue
                w, val = res
                new[w] = new.get(w, 0) + val
                if not new[w]:
                    del new[w]
        acc = new
    return acc


def primitive_part(h: System, provenance: Optional[str] = None) -> System:
    """Cokernel of the polarization-power inclusion into a wedge power.

    For weight w at most n+1 this is the cokernel of a single wedge with the
    invariant two-form; past the middle weight the smallest power of the form
    that still embeds is used, which matches the displayed tables.  Negative
    multiplicities in the formal subtraction raise LefschetzError.
    """
    if h.wedge_base is None:
        raise WrongWeightError("primitive parts require a wedge power of a weight-one system")
    base, k = h.wedge_base
    if base.weight != 1:
        raise WrongWeightError("primitive parts require a weight-one base system")
    n = h.n
    w = k
    if w > 2 * (n + 1):
        raise WrongWeightError("weight beyond the top of the wedge algebra")
    j = 1 if w <= n + 1 else w - n
    if w - 2 * j < 0:
        return System(
            n, h.space, h.nmats, h.weight, provenance or f"pr({h.provenance})",
            swap=h.swap, wedge_base=h.wedge_base, check=False,
        )
    omega = polarization_vector(base)
    omega_j = _omega_power(omega, j)
    source_words = list(combinations(range(base.dimension), w - 2 * j))
    target_index = {word: t for t, word in enumerate(combinations(range(base.dimension), w))}
    image_vectors = []
    for word in source_words:
        vec = [Fraction(0)] * h.dimension
        hit = False
        for oword, c in omega_j.items():
            res = _wedge_word_multiply(oword, c, word, Fraction(1))
            if res is None:
                continue
            target, val = res
            vec[target_index[target]] += val
            hit = True
        if hit and any(vec):
            image_vectors.append(tuple(vec))
    sub = Subspace(h, image_vectors)
    _check_lefschetz_subtraction(h, base, w, j, sub)
    return quotient_system(h, sub, provenance=provenance or f"pr({h.provenance})")


def _check_lefschetz_subtraction(h: System, base: System, w: int, j: int, sub: Subspace) -> None:
    """The formal subtraction piece(p,q) - piece(p-j,q-j) must be nonnegative
    and must agree with the actual image of the polarization power (so the
    embedding really is injective)."""
    n = h.n
    ambient = h.space.census_by_bigrade()
    source: Dict[Bigrade, Dict] = {}
    vecs = base.space.vectors
    for word in combinations(range(base.dimension), w - 2 * j):
        weight, (p, q) = _word_weight(word, vecs, n)
        d = source.setdefault((p + j, q + j), {})
        d[weight] = d.get(weight, 0) + 1
    image = sub.census_by_bigrade()
    for pq, d in source.items():
        chi = Character.from_dict(n, d)
        have = ambient.get(pq)
        if have is None:
            raise LefschetzError(f"polarization image falls outside the system at {pq}")
        diff = have - chi
        if any(m < 0 for _, m in diff.terms):
            raise LefschetzError(f"negative multiplicity at bigrade {pq}")
        if image.get(pq, Character.from_dict(n, {})) != chi:
            raise LefschetzError(
                f"polarization power is not injective into bigrade {pq}"
            )


# ---------------------------------------------------------------------------
# maximal sub-systems


def maximal_sub_system(
    h: System,
    constraints: Dict[Bigrade, Subspace],
    conjugation_closed: bool = False,
) -> Subspace:
    """Greatest theta-stable subspace inside the given per-bigrade constraints.

    Iterates constraint intersection, theta-stability closure and (optionally)
    closure under the conjugation swap to the greatest fixed point.
    """
    if conjugation_closed and h.swap is None:
        raise WrongWeightError("system carries no conjugation swap")
    dim = h.dimension
    constrained = set(constraints)
    # Start space: full at unconstrained bigrades, the given subspaces at
    # constrained ones (constraint rows outside their bigrade are ignored).
    keep = []
    for i, vec in enumerate(h.space.vectors):
        if vec.bigrade not in constrained:
            keep.append(tuple(Fraction(1) if t == i else Fraction(0) for t in range(dim)))
    for pq, sub in constraints.items():
        idxs = {i for i, v in enumerate(h.space.vectors) if v.bigrade == pq}
        for row in sub.rows:
            if all(i in idxs or not x for i, x in enumerate(row)):
                keep.append(row)
    rows = linalg.rref(keep, dim)

    def dim_of(r):
        return len(r)

    while True:
        before = dim_of(rows)
        for mat in h.nmats:
            pre = linalg.preimage(mat.cols, dim, rows, dim)
            rows = linalg.intersect(rows, pre, dim)
            if not rows:
                break
        if rows and conjugation_closed:
            swapped = linalg.rref([h.swap.apply(row) for row in rows], dim)
            rows = linalg.intersect(rows, swapped, dim)
        if dim_of(rows) == before:
            break
    return Subspace(h, rows)
