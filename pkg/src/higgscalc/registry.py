"""Pinned regression registry: published display data and known diffs.

Each entry stores a published zero-differential display or bundle table as
label data, together with the engine configuration that recomputes it.  The
verify runner compares computed against published and reports three outcomes:
exact match, known discrepancy (the published form differs from the computed
truth in a recorded, explained way), or unexpected diff (a failure).

The known discrepancies all stem from one bookkeeping pattern in the published
tables: tensor identities of the form (sym square) x (generator) and
(generator) x (wedge square) acquire an extra determinant-twist summand in
three variables, and the top arrow out of the (1,3) piece was treated as zero.
The engine computes the true decompositions and records the deltas here
instead of suppressing them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .fiber import Bigrade
from .grammar import print_bundle
from .labels import FormalBundle
from .reduction import HiggsComplex, ReducedComplex, higgs_complex, reduce_complex
from .systems import (
    System,
    Subspace,
    dual_uniformizing,
    end0,
    maximal_sub_system,
    primitive_part,
    quotient_system,
    standard_v,
    sym,
    theta_kernel,
    uniformizing,
    wedge,
)

Lab = Tuple[Tuple[int, ...], int, int]  # (lambda, l_twist, multiplicity)


def _bundle(n: int, labs: List[Lab]) -> FormalBundle:
    out = FormalBundle.zero(n)
    for lam, twist, mult in labs:
        out = out + FormalBundle.single(lam, twist, n, mult)
    return out


@dataclass
class Diff:
    location: str
    computed: str
    published: str


@dataclass
class EntryResult:
    entry_id: str
    status: str  # "exact", "known-diff", "diff"
    diffs: List[Diff] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# published display data
#
# Formats: reduced displays are {degree: [labels]}, tables are
# {(p, q): [labels]}.  known_diffs lists (location, note) pairs that the
# comparison is allowed (and expected) to find.


@dataclass
class ReducedEntry:
    entry_id: str
    n: int
    build: Callable[[], HiggsComplex]
    published: Dict[int, List[Lab]]
    known_diffs: Dict[int, str] = field(default_factory=dict)

    def check(self) -> EntryResult:
        reduced = reduce_complex(self.build())
        diffs = []
        notes = []
        degrees = sorted(set(self.published) | set(reduced.per_degree))
        for i in degrees:
            computed = reduced.degree(i)
            published = _bundle(self.n, self.published.get(i, []))
            if computed != published:
                diffs.append(
                    Diff(f"degree {i}", print_bundle(computed), print_bundle(published))
                )
                if i in self.known_diffs:
                    notes.append(f"degree {i}: {self.known_diffs[i]}")
        if not diffs:
            return EntryResult(self.entry_id, "exact")
        if {d.location for d in diffs} == {f"degree {i}" for i in self.known_diffs}:
            return EntryResult(self.entry_id, "known-diff", diffs, notes)
        return EntryResult(self.entry_id, "diff", diffs, notes)


@dataclass
class TableEntry:
    entry_id: str
    n: int
    build: Callable[[], Dict[Bigrade, FormalBundle]]
    published: Dict[Bigrade, List[Lab]]
    known_diffs: Dict[Bigrade, str] = field(default_factory=dict)

    def check(self) -> EntryResult:
        computed_table = self.build()
        diffs = []
        notes = []
        for pq, labs in sorted(self.published.items()):
            computed = computed_table.get(pq, FormalBundle.zero(self.n))
            published = _bundle(self.n, labs)
            if computed != published:
                diffs.append(Diff(f"bigrade {pq}", print_bundle(computed), print_bundle(published)))
                if pq in self.known_diffs:
                    notes.append(f"bigrade {pq}: {self.known_diffs[pq]}")
        if not diffs:
            return EntryResult(self.entry_id, "exact")
        if {d.location for d in diffs} == {f"bigrade {pq}" for pq in self.known_diffs}:
            return EntryResult(self.entry_id, "known-diff", diffs, notes)
        return EntryResult(self.entry_id, "diff", diffs, notes)


# -- system builders (cached: several entries share the big wedge systems) ----

_cache: Dict[Tuple[str, int], object] = {}


def _cached(key: str, n: int, builder: Callable[[], object]):
    if (key, n) not in _cache:
        _cache[(key, n)] = builder()
    return _cache[(key, n)]


def _pr_wedge(n: int, k: int) -> System:
    return _cached(
        f"prwedge{k}", n, lambda: primitive_part(wedge(standard_v(n), k))
    )


def abelian_type_sub(h: System) -> Subspace:
    """Largest conjugation-closed subspace killed by the Higgs map.

    Configuration used for the published maximal sub-systems: the per-bigrade
    constraint is the theta kernel at every bigrade, so theta vanishes on the
    result and closure reduces to the conjugation intersection.
    """
    constraints = {pq: theta_kernel(h, pq) for pq in h.space.census_by_bigrade()}
    return maximal_sub_system(h, constraints, conjugation_closed=True)


def _genus3_quotient() -> System:
    def build():
        pr3 = _pr_wedge(2, 3)
        sub = abelian_type_sub(pr3)
        return quotient_system(pr3, sub, provenance="pr(Wedge^3(V))/ab")

    return _cached("genus3quot", 2, build)


def _genus4_quotient() -> System:
    def build():
        pr4 = _pr_wedge(3, 4)
        sub = abelian_type_sub(pr4)
        return quotient_system(pr4, sub, provenance="pr(Wedge^4(V))/ab")

    return _cached("genus4quot", 3, build)


# ---------------------------------------------------------------------------
# named strand configurations


STRANDS: Dict[Tuple[str, int], Tuple[Callable[[], System], int]] = {
    ("A", 2): (lambda: _pr_wedge(2, 3), 2),
    ("B", 2): (lambda: _pr_wedge(2, 3), 3),
    ("Aprime", 2): (_genus3_quotient, 2),
    ("A", 3): (lambda: _pr_wedge(3, 5), 2),
    ("B", 3): (lambda: _pr_wedge(3, 5), 3),
    ("C", 3): (lambda: _pr_wedge(3, 4), 3),
    ("Cprime", 3): (_genus4_quotient, 3),
}


def named_strand(name: str, n: int) -> HiggsComplex:
    key = (name, n)
    if key not in STRANDS:
        known = ", ".join(sorted(f"{k[0]}@n={k[1]}" for k in STRANDS))
        from .errors import EvalError

        raise EvalError(f"unknown named complex {name!r} at n={n}; known: {known}")
    builder, p0 = STRANDS[key]
    return higgs_complex(builder()).strand(p0)


# ---------------------------------------------------------------------------
# the registry itself


def _entries() -> List[object]:
    entries: List[object] = []

    # Surface reductions (five systems plus two strands).
    entries.append(
        ReducedEntry(
            "surface/E1",
            2,
            lambda: higgs_complex(uniformizing(2)),
            {
                0: [((0, 0), -1, 1)],
                1: [((2, 0), -1, 1)],
                2: [((1, 0), 2, 1)],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/E2",
            2,
            lambda: higgs_complex(dual_uniformizing(2)),
            {
                0: [((1, 0), -2, 1)],
                1: [((2, 0), -2, 1)],
                2: [((0, 0), 4, 1)],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/End0V1",
            2,
            lambda: higgs_complex(end0(uniformizing(2))),
            {
                0: [((1, 0), -3, 1)],
                1: [((3, 0), -3, 1)],
                2: [((1, 0), 3, 1)],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/S2E1",
            2,
            lambda: higgs_complex(sym(uniformizing(2), 2)),
            {
                0: [((0, 0), -2, 1)],
                1: [((3, 0), -2, 1)],
                2: [((2, 0), 1, 1)],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/S2E2",
            2,
            lambda: higgs_complex(sym(dual_uniformizing(2), 2)),
            {
                0: [((2, 0), -4, 1)],
                1: [((3, 0), -4, 1)],
                2: [((0, 0), 5, 1)],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/strandA",
            2,
            lambda: named_strand("A", 2),
            {
                0: [((0, 0), 0, 1)],
                1: [((1, 0), 0, 1), ((3, 0), -4, 1)],
                2: [],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/strandB",
            2,
            lambda: named_strand("B", 2),
            {
                0: [],
                1: [((1, 0), 0, 1), ((3, 0), -2, 1)],
                2: [((0, 0), 3, 1)],
            },
        )
    )
    entries.append(
        ReducedEntry(
            "surface/strandAprime",
            2,
            lambda: named_strand("Aprime", 2),
            {0: [], 1: [((3, 0), -4, 1)], 2: []},
        )
    )

    # Surface primitive table and maximal sub-system.
    entries.append(
        TableEntry(
            "surface/pr3-table",
            2,
            lambda: _pr_wedge(2, 3).pieces(),
            {
                (3, 0): [((0, 0), 2, 1)],
                (2, 1): [((0, 0), 0, 1), ((1, 0), -1, 1), ((2, 0), -2, 1)],
                (1, 2): [((0, 0), 0, 1), ((1, 0), -2, 1), ((2, 0), -4, 1)],
                (0, 3): [((0, 0), -2, 1)],
            },
        )
    )
    entries.append(
        TableEntry(
            "surface/E_ab",
            2,
            lambda: abelian_type_sub(_pr_wedge(2, 3)).pieces(),
            {
                (2, 1): [((0, 0), 0, 1)],
                (1, 2): [((0, 0), 0, 1)],
                (3, 0): [],
                (0, 3): [],
            },
        )
    )

    # Higher-dimension symmetric-power theorems, k = 1..3.
    for k in (1, 2, 3):
        entries.append(
            ReducedEntry(
                f"n3/S{k}E1",
                3,
                lambda k=k: higgs_complex(sym(uniformizing(3), k)),
                {
                    0: [((0, 0, 0), -k, 1)],
                    1: [((k + 1, 0, 0), -k, 1)],
                    2: [((k + 1, 1, 0), -k, 1)],
                    3: [((k, 0, 0), 4 - k, 1)],
                },
            )
        )
        entries.append(
            ReducedEntry(
                f"n3/S{k}E2",
                3,
                lambda k=k: higgs_complex(sym(dual_uniformizing(3), k)),
                {
                    0: [((k, k, 0), -3 * k, 1)],
                    1: [((k + 1, k, 0), -3 * k, 1)],
                    2: [((k + 1, k + 1, 0), -3 * k, 1)],
                    3: [((0, 0, 0), k + 4, 1)],
                },
            )
        )

    # Wedge tables in dimension three.
    entries.append(
        TableEntry(
            "n3/pr4-table",
            3,
            lambda: _pr_wedge(3, 4).pieces(),
            {
                (4, 0): [((0, 0, 0), 2, 1)],
                (3, 1): [((0, 0, 0), 0, 1), ((1, 1, 0), -2, 1), ((2, 2, 0), -4, 1)],
                # Published form carries an extra trivial summand: the tensor
                # of the generator with its wedge square was printed as a sum
                # without removing the determinant part already consumed by
                # the polarization image.
                (2, 2): [
                    ((0, 0, 0), 0, 1),
                    ((2, 1, 0), -4, 1),
                    ((2, 0, 0), -2, 1),
                    ((2, 2, 0), -6, 1),
                ],
                (1, 3): [((0, 0, 0), 0, 1), ((1, 0, 0), -2, 1), ((2, 0, 0), -4, 1)],
                (0, 4): [((0, 0, 0), -2, 1)],
            },
            known_diffs={
                (2, 2): "published table keeps the determinant summand of the"
                " generator-times-wedge-square tensor; the polarization image"
                " already contains it"
            },
        )
    )
    entries.append(
        TableEntry(
            "n3/pr5-table",
            3,
            lambda: _pr_wedge(3, 5).pieces(),
            {
                (3, 2): [
                    ((1, 1, 0), -3, 1),
                    ((2, 2, 0), -5, 1),
                    ((1, 0, 0), -1, 1),
                    ((2, 1, 0), -3, 1),
                ],
                (2, 3): [
                    ((2, 1, 0), -5, 1),
                    ((2, 0, 0), -3, 1),
                    ((1, 1, 0), -3, 1),
                    ((1, 0, 0), -1, 1),
                ],
                (1, 4): [((1, 0, 0), -3, 1), ((0, 0, 0), -1, 1)],
            },
        )
    )
    entries.append(
        TableEntry(
            "n3/E_ab4",
            3,
            lambda: abelian_type_sub(
                _cached("wedge4", 3, lambda: wedge(standard_v(3), 4))
            ).pieces(),
            {
                (3, 1): [((0, 0, 0), 0, 1)],
                (2, 2): [((0, 0, 0), 0, 1)],
                (1, 3): [((0, 0, 0), 0, 1)],
                (4, 0): [],
                (0, 4): [],
            },
        )
    )
    entries.append(
        TableEntry(
            "n3/E_ab5",
            3,
            lambda: maximal_sub_system(
                _pr_wedge(3, 5),
                {(2, 3): theta_kernel(_pr_wedge(3, 5), (2, 3))},
                conjugation_closed=True,
            ).pieces(),
            {(2, 3): [], (3, 2): [], (1, 4): [], (4, 1): []},
        )
    )
    entries.append(
        TableEntry(
            "n3/strandA-kernel",
            3,
            lambda: theta_kernel(_pr_wedge(3, 5), (2, 3)).pieces(),
            {(2, 3): [((2, 1, 0), -5, 1)]},
        )
    )

    # Genus-4 strands.
    entries.append(
        ReducedEntry(
            "n3/strandB",
            3,
            lambda: named_strand("B", 3),
            # Published degree 1 carries an extra line-bundle summand from
            # reading the sym-square-times-generator identity in three
            # variables without the determinant correction.
            {
                0: [((1, 1, 0), -3, 1)],
                1: [
                    ((3, 1, 0), -5, 1),
                    ((0, 0, 0), 1, 1),
                    ((3, 0, 0), -3, 1),
                    ((2, 0, 0), -1, 1),
                ],
                2: [],
                3: [],
            },
            known_diffs={
                1: "published display includes an extra L summand; the"
                " three-variable sym-times-generator identity contributes a"
                " determinant twist the printed reduction kept"
            },
        )
    )
    entries.append(
        ReducedEntry(
            "n3/strandC",
            3,
            lambda: named_strand("C", 3),
            {
                0: [((0, 0, 0), 0, 1)],
                1: [((1, 0, 0), 0, 1), ((3, 0, 0), -2, 1), ((3, 2, 0), -6, 1)],
                2: [((1, 1, 0), 0, 1)],
                3: [((0, 0, 0), 2, 1)],
            },
            known_diffs={
                1: "the extra generator summand propagates from the trivial"
                " summand the published (2,2) table kept",
                3: "the arrow from the (1,3) piece onto the top piece is"
                " surjective on the fiber, so nothing survives in degree 3",
            },
        )
    )
    entries.append(
        ReducedEntry(
            "n3/strandCprime",
            3,
            lambda: named_strand("Cprime", 3),
            {
                0: [],
                1: [((3, 0, 0), -2, 1), ((3, 2, 0), 2, 1)],
                2: [],
                3: [((0, 0, 0), 2, 1)],
            },
            known_diffs={
                1: "published quotient display twists the width-two summand by"
                " L^2 while the unquotiented display and the computation give"
                " L^-6",
                3: "same surjective top arrow as in the unquotiented strand",
            },
        )
    )
    return entries


def run_registry() -> List[EntryResult]:
    """Check every pinned entry; deterministic order."""
    return [entry.check() for entry in _entries()]


def registry_report(results: List[EntryResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"[{r.status:>10}] {r.entry_id}")
        for d in r.diffs:
            lines.append(f"    {d.location}: computed {d.computed}")
            lines.append(f"    {' ' * len(d.location)}  published {d.published}")
        for note in r.notes:
            lines.append(f"    note: {note}")
    counts = {}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    lines.append(f"summary: {summary}")
    return "\n".join(lines)
