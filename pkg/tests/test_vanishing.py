import json

import pytest

from higgscalc.errors import EvalError, NotRegularWeightError, WrongWeightError
from higgscalc.reduction import higgs_complex, reduce_complex
from higgscalc.registry import _genus3_quotient, named_strand
from higgscalc.systems import dual_uniformizing, end0, sym, unitary, uniformizing
from higgscalc.vanishing import (
    AxiomSet,
    apply_rules,
    coverage_report,
    derivable_pair,
    nori_check,
    saper_derive,
    statements_to_json,
    twist_bracket,
)

ALL = AxiomSet(nef_big=True, saper_regular=True, kazdan_small=True, full_range=True)


def annotated(system):
    return twist_bracket(reduce_complex(higgs_complex(system)))


class TestTwistBracket:
    def test_e1_degree_one_sandwich(self):
        ann = annotated(uniformizing(2))
        inner = {s.describe() for s in ann.h1_inner}
        outer = {s.describe() for s in ann.h1_outer}
        assert "H^0(S^2(Omega1) (x) L^-1(-D))" in inner
        assert "H^0(S^2(Omega1) (x) L^-1[no log])" in outer
        # Degree-zero terms contribute their first cohomology to the sandwich.
        assert "H^1(L^-1(-D))" in inner

    def test_bracket_labels_match(self):
        ann = annotated(dual_uniformizing(2))
        for bracket in ann.brackets:
            assert bracket.inner.bundle == bracket.outer.bundle
            assert bracket.inner.twist == "minusD"
            assert bracket.outer.twist == "plain"

    def test_unitary_system_brackets(self):
        ann = annotated(unitary(2, 2))
        assert ann.reduced.degree(0).rank() == 2


class TestSaperDerive:
    def test_weil_rigidity_pair(self):
        st = saper_derive(1, 1)
        assert st.kind == "H0-vanishing"
        assert st.subject_expr == "H^0(S^3(Omega1)(-D) (x) L^-3)"
        assert st.status == "derived"
        assert st.chain[0].rule == "regular-weight-ih1"

    def test_arithmetic(self):
        assert "S^4" in saper_derive(2, 1).subject_expr
        assert "L^-4" in saper_derive(2, 1).subject_expr
        assert "S^4" in saper_derive(1, 2).subject_expr
        assert "L^-5" in saper_derive(1, 2).subject_expr

    @pytest.mark.parametrize("a,b", [(0, 1), (1, 0), (0, 0)])
    def test_regularity_guard(self, a, b):
        with pytest.raises(NotRegularWeightError):
            saper_derive(a, b)


class TestCoverage:
    def test_brute_force_agreement(self):
        # Exhaustive (a,b) enumeration is the oracle for derivability.
        reachable = set()
        for a in range(1, 40):
            for b in range(1, 40):
                reachable.add((a + b + 1, a + 2 * b))
        for e in coverage_report(8, 12):
            assert (e.status == "derived") == ((e.n_sym, e.m) in reachable)
            if e.witness:
                a, b = e.witness
                assert a + b + 1 == e.n_sym and a + 2 * b == e.m

    def test_derived_set_is_the_band(self):
        derived = {
            (e.n_sym, e.m) for e in coverage_report(6, 8) if e.status == "derived"
        }
        assert derived == {
            (n, m) for n in range(3, 7) for m in range(n, 9) if n <= m <= 2 * n - 3
        }

    def test_specific_pairs(self):
        entries = {(e.n_sym, e.m): e for e in coverage_report(4, 5)}
        assert entries[(3, 3)].status == "derived"
        assert entries[(3, 3)].witness == (1, 1)
        assert entries[(3, 4)].status == "open"
        assert entries[(4, 5)].status == "derived"
        assert entries[(4, 5)].witness == (1, 2)

    def test_full_range_asserts_the_rest(self):
        entries = coverage_report(6, 8, AxiomSet(full_range=True))
        assert all(e.status in ("derived", "asserted") for e in entries)

    def test_n3_derives_only_m3(self):
        derived = [e.m for e in coverage_report(3, 12) if e.status == "derived"]
        assert derived == [3]

    def test_bounds_guard(self):
        with pytest.raises(EvalError):
            coverage_report(2, 8)


class TestApplyRules:
    def test_e1_nonvanishing_under_kazdan(self):
        sts = apply_rules(annotated(uniformizing(2)), AxiomSet(kazdan_small=True))
        kinds = {(s.kind, s.status) for s in sts}
        assert ("non-vanishing", "derived") in kinds

    def test_end0_square_integrable_conclusions(self):
        sts = apply_rules(
            annotated(end0(uniformizing(2))), AxiomSet(saper_regular=True)
        )
        by_expr = {(s.kind, s.subject_expr): s for s in sts}
        assert by_expr[("H0-vanishing", "H^0(S^3(Omega1) (x) L^-3(-D))")].status == "derived"
        assert by_expr[("H1-vanishing", "H^1(Omega1 (x) L^-3(-D))")].status == "derived"
        assert by_expr[("IH-vanishing", "IH^1(End0(E1))")].status == "derived"

    def test_degree_zero_line_under_nef_big(self):
        sts = apply_rules(annotated(sym(uniformizing(2), 2)), AxiomSet(nef_big=True))
        by_expr = {(s.kind, s.subject_expr): s.status for s in sts}
        assert by_expr[("H0-vanishing", "H^0(L^-2)")] == "derived"
        assert by_expr[("H1-vanishing", "H^1(L^-2)")] == "derived"

    def test_monotone_in_axioms(self):
        ann = annotated(end0(uniformizing(2)))
        axiom_sets = [
            AxiomSet(),
            AxiomSet(nef_big=True),
            AxiomSet(nef_big=True, saper_regular=True),
            ALL,
        ]
        seen = set()
        for ax in axiom_sets:
            decided = {
                (s.kind, s.subject_expr)
                for s in apply_rules(ann, ax)
                if s.status != "open"
            }
            assert seen <= decided
            seen = decided

    def test_derivation_chains_replay(self):
        # Every non-open statement carries a chain that bottoms out in axioms.
        for system in (uniformizing(2), end0(uniformizing(2))):
            for st in apply_rules(annotated(system), ALL):
                if st.status != "open":
                    assert st.chain

    def test_axiom_aliases(self):
        ax = AxiomSet.from_names(["saper", "nefBig", "fullRange", "kazdan"])
        assert ax == ALL
        with pytest.raises(EvalError):
            AxiomSet.from_names(["frobenius"])


class TestNoriCheck:
    def test_genus3_positive_with_full_range(self):
        ann = twist_bracket(reduce_complex(higgs_complex(_genus3_quotient())))
        st = nori_check(ann, 2, AxiomSet(nef_big=True, saper_regular=True, full_range=True))
        assert st.kind == "extension-class-nontrivial"
        assert st.status == "derived"
        rules = [l.rule for l in st.chain]
        assert "asserted-dependency" in rules  # depends on the full-range axiom

    def test_genus3_open_without_axioms(self):
        ann = twist_bracket(reduce_complex(higgs_complex(_genus3_quotient())))
        st = nori_check(ann, 2, AxiomSet())
        assert st.kind == "extension-class-open"
        assert any(l.rule == "graded-piece-open" for l in st.chain)

    def test_cprime_evidence_includes_degree_two_emptiness(self):
        ann = twist_bracket(reduce_complex(named_strand("Cprime", 3)))
        st = nori_check(ann, 3, ALL)
        assert any(
            l.rule == "degree-empty" and "degree 2" in l.citation for l in st.chain
        )

    def test_wrong_weight_guard(self):
        ann = annotated(uniformizing(2))
        with pytest.raises(WrongWeightError):
            nori_check(ann, 2, ALL)


class TestStatementJson:
    def test_schema(self):
        sts = apply_rules(annotated(uniformizing(2)), ALL)
        payload = json.loads(statements_to_json(sts, ALL))
        assert payload["axioms"] == ["nefBig", "saperRegular", "kazdanSmall", "fullRange"]
        for st in payload["statements"]:
            assert set(st) == {"kind", "subject", "status", "chain"}
            assert "expr" in st["subject"]
            for link in st["chain"]:
                assert set(link) == {"rule", "citation"}
