import json

import pytest

from higgscalc.errors import EvalError, FlatnessError
from higgscalc.labels import FormalBundle
from higgscalc.reduction import (
    ReducedComplex,
    euler_check,
    higgs_complex,
    reduce_complex,
    zero_complex_from_reduced,
)
from higgscalc.registry import named_strand
from higgscalc.systems import dual_uniformizing, end0, sym, uniformizing


def B(n, *labs):
    out = FormalBundle.zero(n)
    for lam, tw, mult in labs:
        out = out + FormalBundle.single(lam, tw, n, mult)
    return out


class TestSurfaceReductions:
    def test_e1(self):
        r = reduce_complex(higgs_complex(uniformizing(2)))
        assert r.degree(0) == B(2, ((0, 0), -1, 1))
        assert r.degree(1) == B(2, ((2, 0), -1, 1))
        # The top term collapses to the twisted generator after canonicalizing.
        assert r.degree(2) == B(2, ((1, 0), 2, 1))

    def test_end0(self):
        r = reduce_complex(higgs_complex(end0(uniformizing(2))))
        assert r.degree(0) == B(2, ((1, 0), -3, 1))
        assert r.degree(1) == B(2, ((3, 0), -3, 1))
        assert r.degree(2) == B(2, ((1, 0), 3, 1))

    def test_s2e2(self):
        r = reduce_complex(higgs_complex(sym(dual_uniformizing(2), 2)))
        assert r.degree(0) == B(2, ((2, 0), -4, 1))
        assert r.degree(1) == B(2, ((3, 0), -4, 1))
        assert r.degree(2) == B(2, ((0, 0), 5, 1))


class TestHigherReductions:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_sym_e1_shape(self, k):
        r = reduce_complex(higgs_complex(sym(uniformizing(3), k)))
        assert r.degree(0) == B(3, ((0, 0, 0), -k, 1))
        assert r.degree(1) == B(3, ((k + 1, 0, 0), -k, 1))
        assert r.degree(2) == B(3, ((k + 1, 1, 0), -k, 1))
        assert r.degree(3) == B(3, ((k, 0, 0), 4 - k, 1))

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_sym_e2_shape(self, k):
        r = reduce_complex(higgs_complex(sym(dual_uniformizing(3), k)))
        assert r.degree(0) == B(3, ((k, k, 0), -3 * k, 1))
        assert r.degree(1) == B(3, ((k + 1, k, 0), -3 * k, 1))
        assert r.degree(2) == B(3, ((k + 1, k + 1, 0), -3 * k, 1))
        assert r.degree(3) == B(3, ((0, 0, 0), k + 4, 1))

    def test_degree_zero_is_theta_kernel_line(self):
        for k in (1, 2, 3):
            r = reduce_complex(higgs_complex(sym(uniformizing(3), k)))
            assert r.degree(0) == B(3, ((0, 0, 0), -k, 1))


class TestNamedStrands:
    def test_strand_a_surface(self):
        r = reduce_complex(named_strand("A", 2))
        assert r.degree(0) == B(2, ((0, 0), 0, 1))
        assert r.degree(1) == B(2, ((1, 0), 0, 1), ((3, 0), -4, 1))
        assert r.degree(2).is_zero()

    def test_strand_b_surface(self):
        r = reduce_complex(named_strand("B", 2))
        assert r.degree(0).is_zero()
        assert r.degree(1) == B(2, ((1, 0), 0, 1), ((3, 0), -2, 1))
        assert r.degree(2) == B(2, ((0, 0), 3, 1))

    def test_strand_aprime(self):
        r = reduce_complex(named_strand("Aprime", 2))
        assert r.degree(0).is_zero()
        assert r.degree(1) == B(2, ((3, 0), -4, 1))
        assert r.degree(2).is_zero()

    def test_strand_cprime(self):
        r = reduce_complex(named_strand("Cprime", 3))
        assert r.degree(0).is_zero()
        assert r.degree(1) == B(3, ((3, 0, 0), -2, 1), ((3, 2, 0), -6, 1))
        assert r.degree(2).is_zero()
        assert r.degree(3).is_zero()

    def test_unknown_name(self):
        with pytest.raises(EvalError):
            named_strand("Z", 2)
        with pytest.raises(EvalError):
            named_strand("Cprime", 2)


class TestEulerCheck:
    def test_clean_pass(self):
        c = higgs_complex(dual_uniformizing(2))
        r = reduce_complex(c)
        assert r.euler_checked
        assert euler_check(c, r) == {}

    def test_corrupted_reduced_complex_detected(self):
        c = higgs_complex(uniformizing(2))
        r = reduce_complex(c)
        corrupted = ReducedComplex(
            r.n,
            {
                **r.per_degree,
                1: {(1, 0): B(2, ((3, 0), -1, 1))},
            },
            r.provenance,
        )
        assert euler_check(c, corrupted) != {}


class TestIdempotence:
    def test_rereducing_zero_differential_complex(self):
        r = reduce_complex(higgs_complex(sym(uniformizing(2), 2)))
        lifted = zero_complex_from_reduced(r)
        again = reduce_complex(lifted)
        for i in r.degrees():
            assert again.per_degree.get(i, {}) == r.per_degree.get(i, {})


class TestSerialization:
    def test_json_schema(self):
        r = reduce_complex(higgs_complex(uniformizing(2)))
        payload = json.loads(r.to_json())
        assert set(payload) == {"dimension", "expression", "degrees", "eulerChecked"}
        assert payload["dimension"] == 2
        assert payload["eulerChecked"] is True
        deg1 = payload["degrees"][1]
        assert deg1["i"] == 1
        assert deg1["pieces"] == [
            {
                "p": 1,
                "q": 0,
                "lambda": [2, 0],
                "lTwist": -1,
                "multiplicity": 1,
                "rankPerSummand": 3,
            }
        ]

    def test_json_deterministic(self):
        a = reduce_complex(higgs_complex(sym(uniformizing(2), 2))).to_json()
        b = reduce_complex(higgs_complex(sym(uniformizing(2), 2))).to_json()
        assert a == b

    def test_latex(self):
        r = reduce_complex(higgs_complex(uniformizing(2)))
        tex = r.to_latex()
        assert r"S^{2}\Omega^{1}_{\overline{X}}(\log D) \otimes L^{-1}" in tex
        assert r"\buildrel 0 \over" in tex
