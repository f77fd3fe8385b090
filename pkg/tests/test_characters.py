import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higgscalc.characters import (
    Character,
    decompose,
    ext_power,
    leading_monomial,
    line_character,
    multiply,
    normalize,
    schur_character,
    sym_power,
    unit_character,
    weyl_dimension,
)
from higgscalc.errors import (
    DimensionMismatchError,
    MalformedLabelError,
    NonCanonicalLabelError,
    NotARepresentationError,
)

from oracles import brute_ext, brute_sym, hook_content_dimension


def W(n):
    return schur_character((1,) + (0,) * (n - 1), 0, n)


def wedge2(n):
    return ext_power(W(n), 2)


class TestNormalForm:
    def test_positive_shift(self):
        assert normalize((2, 1), -1, 2) == ((1, 0), 2)

    def test_negative_entries(self):
        assert normalize((0, -1), 0, 2) == ((1, 0), -3)

    def test_already_normal(self):
        assert normalize((3, 0, 1), 5, 3) == ((3, 0, 1), 5)


class TestSchurCharacter:
    def test_standard_n2(self):
        chi = schur_character((1, 0), 0, 2)
        assert chi.as_dict() == {((1, 0), 0): 1, ((0, 1), 0): 1}

    def test_e2_n3(self):
        chi = schur_character((1, 1, 0), 0, 3)
        assert chi.as_dict() == {
            ((1, 1, 0), 0): 1,
            ((1, 0, 1), 0): 1,
            ((0, 1, 1), 0): 1,
        }

    def test_sym2_n2_normal_form(self):
        # x1*x2 is the determinant, traded for L^3.
        chi = schur_character((2, 0), 0, 2)
        assert chi.as_dict() == {((2, 0), 0): 1, ((0, 2), 0): 1, ((0, 0), 3): 1}

    def test_rejects_non_monotone(self):
        with pytest.raises(MalformedLabelError):
            schur_character((1, 2), 0, 2)

    def test_rejects_non_canonical(self):
        with pytest.raises(NonCanonicalLabelError):
            schur_character((2, 1), 0, 2)

    @pytest.mark.parametrize(
        "lam,n",
        [
            ((0, 0), 2),
            ((3, 0), 2),
            ((2, 1, 0), 3),
            ((3, 1, 0), 3),
            ((2, 2, 0), 3),
            ((4, 2, 1, 0), 4),
        ],
    )
    def test_total_multiplicity_is_weyl_dimension(self, lam, n):
        assert schur_character(lam, 0, n).total() == hook_content_dimension(lam, n)
        assert weyl_dimension(lam, n) == hook_content_dimension(lam, n)


class TestMultiply:
    def test_total_multiplicity(self):
        chi = multiply(W(2), W(2))
        assert chi.total() == 4

    def test_s2_times_w_n2(self):
        # S^2 x W = S^3 + W * L^3 in two variables.
        lhs = multiply(sym_power(W(2), 2), W(2))
        rhs = schur_character((3, 0), 0, 2) + schur_character((1, 0), 3, 2)
        assert lhs == rhs

    def test_s2_times_wedge2_n3(self):
        # S^2 W x Wedge^2 W = Gamma_{2,1}(W) + W * L^4 in three variables.
        lhs = multiply(sym_power(W(3), 2), wedge2(3))
        rhs = schur_character((3, 1, 0), 0, 3) + schur_character((1, 0, 0), 4, 3)
        assert lhs == rhs

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            multiply(W(2), W(3))


class TestSymExtPowers:
    def test_sym3_standard(self):
        assert sym_power(W(2), 3) == schur_character((3, 0), 0, 2)
        assert sym_power(W(2), 3).total() == 4

    def test_sym0_is_unit(self):
        assert sym_power(W(3), 0) == unit_character(3)

    def test_sym2_rank3_total(self):
        e1_fiber = W(2).twist(-1) + line_character(2, -1)
        assert e1_fiber.total() == 3
        assert sym_power(e1_fiber, 2).total() == 6

    def test_sym2_of_wedge2_n3(self):
        assert sym_power(wedge2(3), 2) == schur_character((2, 2, 0), 0, 3)

    def test_ext2_standard_n2_is_det(self):
        assert ext_power(W(2), 2) == line_character(2, 3)

    def test_ext2_of_wedge2_n3(self):
        # Wedge^2 Wedge^2 W = W * det W.
        assert ext_power(wedge2(3), 2) == schur_character((1, 0, 0), 4, 3)

    def test_ext_beyond_dimension_vanishes(self):
        assert ext_power(W(3), 4).is_zero()

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_against_brute_force(self, k):
        cases = [
            W(2),
            W(3),
            wedge2(3),
            W(2).twist(-1) + line_character(2, -1),
            schur_character((2, 0), 0, 2) + line_character(2, 1),
            schur_character((2, 1, 0), 0, 3),
        ]
        for chi in cases:
            assert chi.total() <= 10
            assert sym_power(chi, k) == brute_sym(chi, k)
            assert ext_power(chi, k) == brute_ext(chi, k)

    def test_tensor_square_splits(self):
        # chi^2 = S^2 + Wedge^2 exactly, for several characters.
        for chi in [W(2), W(3), wedge2(3), W(2).twist(2) + line_character(2, -1)]:
            assert multiply(chi, chi) == sym_power(chi, 2) + ext_power(chi, 2)


class TestDecompose:
    def test_w_squared_n3(self):
        found = dict(decompose(multiply(W(3), W(3))))
        assert found == {((2, 0, 0), 0): 1, ((1, 1, 0), 0): 1}

    def test_s2_times_w_n3(self):
        # Cross-check dimension 18 = 10 + 8.
        found = dict(decompose(multiply(sym_power(W(3), 2), W(3))))
        assert found == {((3, 0, 0), 0): 1, ((2, 1, 0), 0): 1}
        assert weyl_dimension((3, 0, 0), 3) == 10
        assert weyl_dimension((2, 1, 0), 3) == 8

    def test_w_times_s2wedge2_n3(self):
        chi = multiply(W(3), sym_power(wedge2(3), 2))
        found = dict(decompose(chi))
        assert found == {((3, 2, 0), 0): 1, ((1, 1, 0), 4): 1}

    def test_round_trip(self):
        labels = [((2, 1, 0), -3), ((1, 0, 0), 2), ((0, 0, 0), 0), ((3, 3, 0), 1)]
        for lam, l in labels:
            assert decompose(schur_character(lam, l, 3)) == [((lam, l), 1)]

    def test_negative_reported(self):
        bad = schur_character((1, 0), 0, 2) - schur_character((2, 0), 0, 2)
        with pytest.raises(NotARepresentationError) as err:
            decompose(bad)
        assert err.value.coefficient == -1

    def test_dimension_additivity(self):
        chi = multiply(multiply(W(3), W(3)), W(3))
        total = sum(
            m * weyl_dimension(lam, 3) for (lam, _), m in decompose(chi)
        )
        assert total == chi.total() == 27


small_exponents = st.integers(min_value=-2, max_value=3)


@st.composite
def characters(draw, n):
    nterms = draw(st.integers(min_value=1, max_value=4))
    terms = {}
    for _ in range(nterms):
        xs = tuple(draw(small_exponents) for _ in range(n))
        l = draw(small_exponents)
        key = normalize(xs, l, n)
        terms[key] = terms.get(key, 0) + draw(st.integers(min_value=1, max_value=2))
    return Character.from_dict(n, terms)


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(characters(3), characters(3))
    def test_product_total_is_product_of_totals(self, a, b):
        assert multiply(a, b).total() == a.total() * b.total()

    @settings(max_examples=25, deadline=None)
    @given(characters(3))
    def test_permutation_invariance_of_operations(self, chi):
        # Permuting the torus variables of the input permutes (here: fixes)
        # the symmetric outputs.
        for perm in itertools.permutations(range(3)):
            permuted = chi.permuted(perm)
            assert multiply(chi, chi).permuted(perm) == multiply(permuted, permuted)
            assert sym_power(chi, 2).permuted(perm) == sym_power(permuted, 2)
            assert ext_power(chi, 2).permuted(perm) == ext_power(permuted, 2)

    def test_symmetric_inputs_give_symmetric_outputs(self):
        for chi in [W(3), wedge2(3), sym_power(W(3), 2) + line_character(3, -2)]:
            for out in [multiply(chi, chi), sym_power(chi, 3), ext_power(chi, 2)]:
                for perm in itertools.permutations(range(3)):
                    assert out.permuted(perm) == out

    def test_symmetric_character_decompose_permutation_fixed(self):
        chi = multiply(sym_power(W(3), 2), wedge2(3))
        for perm in itertools.permutations(range(3)):
            assert chi.permuted(perm) == chi

    def test_leading_monomial_order(self):
        chi = schur_character((2, 0), 0, 2) + schur_character((2, 0), 5, 2)
        assert leading_monomial(chi) == ((2, 0), 5)
