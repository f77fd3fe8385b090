"""Statement layer: square-integrability brackets, axioms, and rule chains.

A reduced complex only names bundles; what the theory concludes about them
lives here.  Every degree-one cohomology contribution is sandwiched between an
inner subject (forms twisted by minus the boundary divisor) and an outer
subject (forms without log poles); rules attach vanishing or non-vanishing
facts to subjects, each carrying an explicit derivation chain that bottoms out
in named axioms.  Nothing is concluded silently: the default axiom set is
empty, and enabling an axiom never removes a previously derived statement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EvalError, NotRegularWeightError, WrongWeightError
from .grammar import print_bundle
from .labels import FormalBundle, IrrepLabel
from .reduction import ReducedComplex

# Divisor-twist flags: log poles (the raw label), minus-boundary twist, or
# plain forms (no log poles); "exact" marks degrees where the bracket is an
# equality rather than a sandwich.
LOG, MINUS_D, PLAIN = "log", "minusD", "plain"

AXIOM_NAMES = ("nefBig", "saperRegular", "kazdanSmall", "fullRange")

_ALIASES = {
    "nefbig": "nefBig",
    "saper": "saperRegular",
    "saperregular": "saperRegular",
    "kazdan": "kazdanSmall",
    "kazdansmall": "kazdanSmall",
    "fullrange": "fullRange",
}


@dataclass(frozen=True)
class AxiomSet:
    nef_big: bool = False
    saper_regular: bool = False
    kazdan_small: bool = False
    full_range: bool = False

    @staticmethod
    def from_names(names: Sequence[str]) -> "AxiomSet":
        flags = {}
        for raw in names:
            name = _ALIASES.get(raw.strip().lower())
            if name is None:
                raise EvalError(f"unknown axiom {raw!r}; known: {', '.join(AXIOM_NAMES)}")
            flags[name] = True
        return AxiomSet(
            nef_big=flags.get("nefBig", False),
            saper_regular=flags.get("saperRegular", False),
            kazdan_small=flags.get("kazdanSmall", False),
            full_range=flags.get("fullRange", False),
        )

    def active(self) -> List[str]:
        out = []
        if self.nef_big:
            out.append("nefBig")
        if self.saper_regular:
            out.append("saperRegular")
        if self.kazdan_small:
            out.append("kazdanSmall")
        if self.full_range:
            out.append("fullRange")
        return out


@dataclass(frozen=True)
class Subject:
    """A cohomology group the rules can talk about."""

    bundle: FormalBundle
    twist: str  # LOG / MINUS_D / PLAIN
    degree: int  # sheaf cohomology degree (0 or 1 here)
    bigrade: Tuple[int, int]

    def describe(self) -> str:
        twist = {LOG: "", MINUS_D: "(-D)", PLAIN: "[no log]"}[self.twist]
        return f"H^{self.degree}({print_bundle(self.bundle)}{twist})"

    def key(self):
        return (self.degree, self.bigrade, self.twist, self.bundle.entries)


@dataclass(frozen=True)
class ChainLink:
    rule: str
    citation: str


@dataclass(frozen=True)
class Statement:
    kind: str  # H0-vanishing / H1-vanishing / IH-vanishing / non-vanishing
    subject_expr: str
    status: str  # derived / axiom / asserted / open
    chain: Tuple[ChainLink, ...] = ()
    subject: Optional[Subject] = None

    def to_json_dict(self) -> dict:
        sub: Dict[str, object] = {"expr": self.subject_expr}
        if self.subject is not None:
            sub["twist"] = self.subject.twist
            sub["degree"] = self.subject.degree
            sub["bigrade"] = list(self.subject.bigrade)
        return {
            "kind": self.kind,
            "subject": sub,
            "status": self.status,
            "chain": [{"rule": l.rule, "citation": l.citation} for l in self.chain],
        }


STATUS_ORDER = {"derived": 3, "axiom": 3, "asserted": 2, "open": 1}


# ---------------------------------------------------------------------------
# twist brackets


@dataclass(frozen=True)
class TwistBracket:
    """Sandwich around one square-integrable cohomology contribution.

    inner and outer carry the same labels; only the divisor-twist flag
    differs (minus-boundary inside, plain forms outside).
    """

    inner: Subject
    outer: Subject


@dataclass
class AnnotatedComplex:
    reduced: ReducedComplex
    brackets: List[TwistBracket]
    exact_subjects: List[Subject]
    h1_inner: List[Subject]
    h1_outer: List[Subject]
    degree0_subjects: List[Subject]


def _label_summands(reduced: ReducedComplex):
    """Yield one isotypic summand at a time: (degree, bigrade, single bundle)."""
    for i, pq, bundle in reduced.summands():
        for label, mult in bundle.entries:
            yield i, pq, FormalBundle.from_dict(reduced.n, {label: mult})


def twist_bracket(reduced: ReducedComplex) -> AnnotatedComplex:
    """Attach the square-integrability sandwich to a reduced complex.

    Degree-zero and top-degree terms are exact (no sandwich); every summand
    contributing to the first hypercohomology gets an inner (-D) and an outer
    (plain-forms) subject with identical labels.
    """
    n = reduced.n
    degrees = reduced.degrees()
    top = max(degrees) if degrees else 0
    brackets: List[TwistBracket] = []
    exact: List[Subject] = []
    h1_inner: List[Subject] = []
    h1_outer: List[Subject] = []
    degree0: List[Subject] = []
    for i, pq, bundle in _label_summands(reduced):
        if i == 0:
            # Exact in degree zero; contributes H^0 and H^1 groups.
            s0 = Subject(bundle, LOG, 0, pq)
            s1 = Subject(bundle, LOG, 1, pq)
            exact.extend([s0, s1])
            degree0.append(s0)
            h1_inner.append(Subject(bundle, MINUS_D, 1, pq))
            h1_outer.append(Subject(bundle, PLAIN, 1, pq))
            continue
        inner = Subject(bundle, MINUS_D, 0, pq)
        outer = Subject(bundle, PLAIN, 0, pq)
        if 0 < i < top or top == 0:
            brackets.append(TwistBracket(inner, outer))
        else:
            # Top degree: the square-integrable sheaf is exactly the
            # plain-forms twist.
            exact.append(outer)
        if i == 1:
            h1_inner.append(inner)
            h1_outer.append(outer)
    return AnnotatedComplex(reduced, brackets, exact, h1_inner, h1_outer, degree0)


# ---------------------------------------------------------------------------
# the constructive symmetric-power route


def saper_derive(a: int, b: int, n_override: Optional[int] = None) -> Statement:
    """Vanishing for the symmetric (a+b+1)-tensor from a regular-weight system.

    The weight-(a,b) irreducible has regular highest weight exactly when both
    indices are positive; its first intersection cohomology vanishes (axiom),
    and the degree-one survivor of its Higgs complex is a symmetric tensor
    twisted by L^-(a+2b), so that section group must vanish.
    """
    if a < 1 or b < 1:
        raise NotRegularWeightError(
            f"weight ({a},{b}) is not regular; both indices must be positive"
        )
    n_sym = a + b + 1
    m = a + 2 * b
    chain = (
        ChainLink(
            "regular-weight-ih1",
            f"axiom saperRegular applied to the irreducible with weight ({a},{b})",
        ),
        ChainLink(
            "degree-one-survivor",
            f"the symmetric {n_sym}-tensor twisted by L^-{m} survives to degree one",
        ),
    )
    expr = f"H^0(S^{n_sym}(Omega1)(-D) (x) L^-{m})"
    return Statement("H0-vanishing", expr, "derived", chain)


def derivable_pair(n_sym: int, m: int) -> Optional[Tuple[int, int]]:
    """Indices (a,b) with a+b+1 = n_sym and a+2b = m, both positive, if any."""
    b = m - n_sym + 1
    a = 2 * n_sym - m - 2
    if a >= 1 and b >= 1:
        return (a, b)
    return None


@dataclass(frozen=True)
class CoverageEntry:
    n_sym: int
    m: int
    status: str  # derived / asserted / open
    witness: Optional[Tuple[int, int]]


def coverage_report(max_n: int, max_m: int, axioms: AxiomSet = AxiomSet()) -> List[CoverageEntry]:
    """Status of the symmetric-power vanishing for 3 <= n <= m in range."""
    if max_n < 3 or max_m < 3:
        raise EvalError("coverage bounds must be at least 3")
    out = []
    for n_sym in range(3, max_n + 1):
        for m in range(n_sym, max_m + 1):
            pair = derivable_pair(n_sym, m)
            if pair is not None:
                out.append(CoverageEntry(n_sym, m, "derived", pair))
            elif axioms.full_range:
                out.append(CoverageEntry(n_sym, m, "asserted", None))
            else:
                out.append(CoverageEntry(n_sym, m, "open", None))
    return out


# ---------------------------------------------------------------------------
# rule application


def _is_negative_line(bundle: FormalBundle) -> Optional[int]:
    entries = bundle.as_dict()
    if len(entries) != 1:
        return None
    (label, _), = entries.items()
    if any(label.lam):
        return None
    return label.l_twist if label.l_twist < 0 else None


def _sym_twist_shape(bundle: FormalBundle) -> Optional[Tuple[int, int]]:
    """Match a single summand S^k(generator) (x) L^-m; returns (k, m)."""
    entries = bundle.as_dict()
    if len(entries) != 1:
        return None
    (label, _), = entries.items()
    lam = label.lam
    if lam[0] >= 1 and all(v == 0 for v in lam[1:]) and label.l_twist < 0:
        return (lam[0], -label.l_twist)
    return None


def apply_rules(annotated: AnnotatedComplex, axioms: AxiomSet) -> List[Statement]:
    """Mark subjects vanishing / non-vanishing / open under the active axioms.

    The implication order of the bracket is preserved: outer vanishing implies
    the square-integrable (intersection) vanishing, which implies the inner
    vanishing; the engine never jumps from outer to inner directly.
    """
    system = annotated.reduced.source.system if annotated.reduced.source else None
    statements: Dict[tuple, Statement] = {}

    def emit(st: Statement) -> None:
        key = (st.kind, st.subject_expr)
        old = statements.get(key)
        if old is None or STATUS_ORDER[st.status] > STATUS_ORDER[old.status]:
            statements[key] = st

    # Rule: negative powers of the nef-and-big line bundle have no sections
    # and no first cohomology.
    if axioms.nef_big:
        for subject in annotated.exact_subjects + [b.inner for b in annotated.brackets]:
            e = _is_negative_line(subject.bundle)
            if e is None:
                continue
            kind = "H0-vanishing" if subject.degree == 0 else "H1-vanishing"
            emit(
                Statement(
                    kind,
                    subject.describe(),
                    "derived",
                    (ChainLink("nef-big-negative-power", f"axiom nefBig on L^{e}"),),
                    subject,
                )
            )

    # Rule: constructive symmetric-power vanishings attach to inner subjects.
    if axioms.saper_regular:
        for subject in annotated.h1_inner:
            shape = _sym_twist_shape(subject.bundle)
            if shape is None:
                continue
            k, m = shape
            pair = derivable_pair(k, m)
            if pair is None:
                continue
            st = saper_derive(*pair)
            emit(Statement("H0-vanishing", subject.describe(), "derived", st.chain, subject))

    # Rule: the asserted full range covers every S^k twist with m >= k >= 3.
    if axioms.full_range:
        for subject in annotated.h1_inner:
            shape = _sym_twist_shape(subject.bundle)
            if shape is None:
                continue
            k, m = shape
            if m >= k >= 3:
                emit(
                    Statement(
                        "H0-vanishing",
                        subject.describe(),
                        "asserted",
                        (
                            ChainLink(
                                "asserted-full-range",
                                f"axiom fullRange for the pair (n,m)=({k},{m})",
                            ),
                        ),
                        subject,
                    )
                )

    # Rule: regular-weight systems have vanishing first intersection
    # cohomology; route outer => IH => inner.
    ih_vanishes = None
    if axioms.saper_regular and system is not None and system.regular_weight:
        ih_vanishes = Statement(
            "IH-vanishing",
            f"IH^1({system.provenance})",
            "derived",
            (ChainLink("regular-weight-ih1", "axiom saperRegular on the system"),),
        )
        emit(ih_vanishes)

    # Implication: all outer vanishing => IH vanishing.
    outer_sts = []
    for subject in annotated.h1_outer:
        key = ("H0-vanishing" if subject.degree == 0 else "H1-vanishing", subject.describe())
        st = statements.get(key)
        if st is None:
            outer_sts = None
            break
        outer_sts.append(st)
    if outer_sts and ih_vanishes is None and system is not None:
        ih_vanishes = Statement(
            "IH-vanishing",
            f"IH^1({system.provenance})",
            "derived",
            tuple(
                ChainLink("outer-implies-ih", st.subject_expr) for st in outer_sts
            ),
        )
        emit(ih_vanishes)

    # Implication: IH vanishing => every inner subject vanishes.
    if ih_vanishes is not None:
        for subject in annotated.h1_inner:
            kind = "H0-vanishing" if subject.degree == 0 else "H1-vanishing"
            emit(
                Statement(
                    kind,
                    subject.describe(),
                    "derived",
                    ih_vanishes.chain + (ChainLink("ih-implies-inner", ih_vanishes.subject_expr),),
                    subject,
                )
            )

    # Rule: non-vanishing for small monodromy groups, attached by subject
    # matching on the degree-one survivor of the symmetric powers.
    if axioms.kazdan_small and system is not None and system.sv_power is not None:
        name, k = system.sv_power
        if k >= 1:
            emit(
                Statement(
                    "non-vanishing",
                    f"IH^1({system.provenance})",
                    "derived",
                    (
                        ChainLink(
                            "small-group-nonvanishing",
                            f"axiom kazdanSmall on the symmetric power k={k} of {name}",
                        ),
                    ),
                )
            )

    # Everything bracketed but not decided is reported open.
    for bracket in annotated.brackets:
        for subject in (bracket.inner, bracket.outer):
            kind = "H0-vanishing" if subject.degree == 0 else "H1-vanishing"
            key = (kind, subject.describe())
            if key not in statements:
                emit(Statement(kind, subject.describe(), "open", (), subject))

    return sorted(statements.values(), key=lambda s: (s.kind, s.subject_expr))


# ---------------------------------------------------------------------------
# the extension-class criterion


def nori_check(annotated: AnnotatedComplex, d: int, axioms: AxiomSet) -> Statement:
    """Check the two extension-class hypotheses on a reduced complex.

    For a weight 2d-1 system: (1) no surviving degree-zero summand at
    filtration level at least d, and (2) every degree-one summand at
    filtration level d carries a vanishing statement.  The filtration level of
    a degree-i summand with source bigrade (p,q) is p+i.  Weight 2d-2 input
    checks the degree-two analogue.
    """
    reduced = annotated.reduced
    weight = None
    if reduced.source is not None:
        weight = reduced.source.system.weight
    if weight is None:
        pts = [p + q for _, (p, q), _ in reduced.summands()]
        weight = pts[0] if pts else None
    if weight not in (2 * d - 1, 2 * d - 2):
        raise WrongWeightError(
            f"system weight {weight} matches neither 2d-1 nor 2d-2 for d={d}"
        )
    statements = apply_rules(annotated, axioms)
    by_subject = {}
    for st in statements:
        if st.subject is not None:
            by_subject[(st.kind, st.subject.key())] = st
    target_degree = 1 if weight == 2 * d - 1 else 2
    evidence: List[ChainLink] = []
    ok = True

    # Hypothesis (1): F^d of the degree-zero sections vanish.
    for i, (p, q), bundle in _label_summands(reduced):
        if i == 0 and p >= d:
            ok = False
            evidence.append(
                ChainLink("h0-level-survivor", f"degree-0 summand {print_bundle(bundle)} at level {p}")
            )
    if all(not (i == 0 and p >= d) for i, (p, q), _ in _label_summands(reduced)):
        evidence.append(ChainLink("h0-empty", f"no degree-0 summand at level >= {d}"))

    # Hypothesis (2): the level-d graded piece of the target cohomology is zero.
    for i, (p, q), bundle in _label_summands(reduced):
        level = p + i
        if level != d or i > target_degree:
            continue
        if i < target_degree:
            # Contributes through higher sheaf cohomology of a lower degree
            # term; only the negative-line rule can kill it.
            subject = Subject(bundle, LOG, target_degree - i, (p, q))
            kind = "H1-vanishing" if target_degree - i == 1 else "H0-vanishing"
            st = by_subject.get((kind, subject.key()))
            if st is None or st.status == "open":
                ok = False
                evidence.append(
                    ChainLink(
                        "graded-piece-open",
                        f"degree-{i} summand {print_bundle(bundle)} needs H^{target_degree - i} vanishing",
                    )
                )
            else:
                evidence.extend(st.chain)
        else:
            subject = Subject(bundle, MINUS_D, 0, (p, q))
            st = by_subject.get(("H0-vanishing", subject.key()))
            if st is None or st.status == "open":
                ok = False
                evidence.append(
                    ChainLink(
                        "graded-piece-open",
                        f"degree-{i} summand {print_bundle(bundle)} lacks a section-vanishing statement",
                    )
                )
            else:
                evidence.extend(st.chain)
                if st.status == "asserted":
                    evidence.append(
                        ChainLink("asserted-dependency", "conclusion depends on axiom fullRange")
                    )
    empty_levels = [
        i
        for i in range(target_degree + 1)
        if all(
            not (j == i and p + j == d)
            for j, (p, q), _ in _label_summands(reduced)
        )
    ]
    for i in empty_levels:
        evidence.append(ChainLink("degree-empty", f"no level-{d} summand in degree {i}"))

    return Statement(
        "extension-class-nontrivial" if ok else "extension-class-open",
        f"extension class of {reduced.provenance} at level d={d}",
        "derived" if ok else "open",
        tuple(evidence),
    )


# ---------------------------------------------------------------------------
# reports


def statements_to_json(statements: Sequence[Statement], axioms: AxiomSet) -> str:
    return json.dumps(
        {
            "axioms": axioms.active(),
            "statements": [st.to_json_dict() for st in statements],
        },
        indent=2,
    )


def coverage_to_text(entries: Sequence[CoverageEntry], axioms: AxiomSet, chains: bool = False) -> str:
    lines = [f"axioms: {', '.join(axioms.active()) or '(none)'}"]
    for e in entries:
        line = f"n={e.n_sym} m={e.m}: {e.status}"
        if e.witness:
            line += f" via (a,b)={e.witness}"
            if chains:
                st = saper_derive(*e.witness)
                line += " [" + "; ".join(l.citation for l in st.chain) + "]"
        lines.append(line)
    return "\n".join(lines)


def coverage_to_json(entries: Sequence[CoverageEntry], axioms: AxiomSet) -> str:
    return json.dumps(
        {
            "axioms": axioms.active(),
            "entries": [
                {
                    "n": e.n_sym,
                    "m": e.m,
                    "status": e.status,
                    "witness": list(e.witness) if e.witness else None,
                }
                for e in entries
            ],
        },
        indent=2,
    )
