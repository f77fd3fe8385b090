import pytest

from higgscalc.errors import (
    LefschetzError,
    NotASubsystemError,
    ResourceLimitError,
    WrongWeightError,
)
from higgscalc.labels import FormalBundle, IrrepLabel
from higgscalc.systems import (
    Subspace,
    direct_sum,
    dual_system,
    dual_uniformizing,
    end0,
    full_subspace,
    lift_bundle,
    maximal_sub_system,
    polarization_vector,
    primitive_part,
    quotient_system,
    standard_v,
    sub_system,
    sym,
    tensor,
    theta_kernel,
    unitary,
    uniformizing,
    wedge,
    zero_subspace,
)


def B(n, *labs):
    out = FormalBundle.zero(n)
    for lam, tw, mult in labs:
        out = out + FormalBundle.single(lam, tw, n, mult)
    return out


class TestGenerators:
    def test_uniformizing_n2(self):
        e1 = uniformizing(2)
        assert e1.pieces() == {
            (1, 0): B(2, ((1, 0), -1, 1)),
            (0, 1): B(2, ((0, 0), -1, 1)),
        }
        assert e1.rank() == 3

    def test_uniformizing_rank_n3(self):
        assert uniformizing(3).rank() == 4

    def test_uniformizing_n1(self):
        e1 = uniformizing(1)
        assert e1.rank() == 2
        assert e1.theta_rank() == 1

    def test_dual_uniformizing_n2(self):
        e2 = dual_uniformizing(2)
        assert e2.pieces() == {
            (1, 0): B(2, ((0, 0), 1, 1)),
            (0, 1): B(2, ((1, 0), -2, 1)),
        }

    def test_dual_uniformizing_n3(self):
        e2 = dual_uniformizing(3)
        assert e2.pieces() == {
            (1, 0): B(3, ((0, 0, 0), 1, 1)),
            (0, 1): B(3, ((1, 1, 0), -3, 1)),
        }

    def test_duality_of_characters(self):
        for n in (1, 2, 3):
            assert dual_uniformizing(n).character() == uniformizing(n).character().dual()

    def test_unitary(self):
        u = unitary(3, 2)
        assert u.rank() == 3
        assert u.theta_rank() == 0
        assert u.pieces() == {(0, 0): B(2, ((0, 0), 0, 3))}


class TestFunctors:
    def test_tensor_e1_e2_middle_piece(self):
        prod = tensor(uniformizing(2), dual_uniformizing(2))
        assert prod.piece(1, 1) == B(2, ((2, 0), -3, 1), ((0, 0), 0, 2))

    def test_wedge_cube_piece(self):
        v = standard_v(2)
        l3 = wedge(v, 3)
        # O + 2 copies of the twisted generator + the generator square.
        assert l3.piece(2, 1) == B(
            2, ((0, 0), 0, 1), ((1, 0), -1, 2), ((2, 0), -2, 1), ((0, 0), 1, 1)
        )

    def test_sym_square_top_piece(self):
        s = sym(uniformizing(2), 2)
        assert s.piece(2, 0) == B(2, ((2, 0), -2, 1))

    def test_sym_plus_wedge_equals_tensor(self):
        for h in (uniformizing(2), dual_uniformizing(2)):
            square = tensor(h, h)
            chi = sym(h, 2).character() + wedge(h, 2).character()
            assert chi == square.character()

    def test_dual_system_is_weight_regraded(self):
        d = dual_system(uniformizing(2))
        assert d.character() == dual_uniformizing(2).character()
        assert set(d.pieces()) == {(1, 0), (0, 1)}

    def test_dual_needs_homogeneous_weight(self):
        mixed = direct_sum(unitary(1, 2), uniformizing(2))
        with pytest.raises(WrongWeightError):
            dual_system(mixed)

    def test_end0_removes_one_trivial_summand(self):
        e = end0(uniformizing(2))
        assert e.rank() == 8
        assert e.piece(1, 1) == B(2, ((2, 0), -3, 1), ((0, 0), 0, 1))
        assert e.regular_weight is True

    def test_tensor_limit(self):
        with pytest.raises(ResourceLimitError):
            tensor(uniformizing(3), uniformizing(3), limit=10)

    def test_lift_bundle_has_zero_theta(self):
        b = B(2, ((2, 0), -1, 1), ((0, 0), 3, 2))
        s = lift_bundle(b, "lifted")
        assert s.theta_rank() == 0
        assert s.piece(0, 0) == b


class TestPrimitivePart:
    def test_surface_cube(self):
        pr3 = primitive_part(wedge(standard_v(2), 3))
        assert pr3.piece(2, 1) == B(2, ((0, 0), 0, 1), ((1, 0), -1, 1), ((2, 0), -2, 1))
        assert pr3.piece(0, 3) == B(2, ((0, 0), -2, 1))
        assert pr3.piece(3, 0) == B(2, ((0, 0), 2, 1))

    def test_top_corner_n3(self):
        pr4 = primitive_part(wedge(standard_v(3), 4))
        assert pr4.piece(0, 4) == B(3, ((0, 0, 0), -2, 1))

    def test_lefschetz_image_reconstructs(self):
        v = standard_v(2)
        l3 = wedge(v, 3)
        pr3 = primitive_part(l3)
        l1 = wedge(v, 1)
        for (p, q), chi in l3.space.census_by_bigrade().items():
            pr_chi = pr3.space.census_by_bigrade().get((p, q))
            im_chi = l1.space.census_by_bigrade().get((p - 1, q - 1))
            total = pr_chi if pr_chi is not None else None
            if im_chi is not None:
                total = im_chi if total is None else total + im_chi
            assert total == chi

    def test_rejects_non_wedge(self):
        with pytest.raises(WrongWeightError):
            primitive_part(sym(uniformizing(2), 2))

    def test_polarization_is_theta_closed(self):
        v = standard_v(2)
        l2 = wedge(v, 2)
        words = {w.tag: i for i, w in enumerate(l2.space.vectors)}
        vec = [0] * l2.dimension
        base_tags = [b.tag for b in v.space.vectors]
        for (i, j), c in polarization_vector(v).items():
            tag = ("wedge", base_tags[i], base_tags[j])
            vec[words[tag]] = c
        for mat in l2.nmats:
            assert not any(mat.apply(vec))


class TestSubQuotient:
    def test_theta_kernel_surface(self):
        pr3 = primitive_part(wedge(standard_v(2), 3))
        k = theta_kernel(pr3, (1, 2))
        assert k.pieces() == {(1, 2): B(2, ((0, 0), 0, 1), ((2, 0), -4, 1))}

    def test_quotient_by_zero_is_identity(self):
        h = uniformizing(2)
        q = quotient_system(h, zero_subspace(h))
        assert q.pieces() == h.pieces()

    def test_quotient_needs_theta_stability(self):
        h = uniformizing(2)
        # The (1,0) piece alone is not theta stable (theta maps it to (0,1)).
        vec = tuple(1 if i == 0 else 0 for i in range(h.dimension))
        with pytest.raises(NotASubsystemError):
            quotient_system(h, Subspace(h, [vec]))

    def test_sub_system_realizes_kernel(self):
        h = uniformizing(2)
        k = h.residue_kernel(1)
        sub = sub_system(h, k)
        assert sub.rank() == 2
        assert sub.theta_rank() == 1  # the second residue direction still acts

    def test_genus3_quotient_pieces(self):
        pr3 = primitive_part(wedge(standard_v(2), 3))
        k = theta_kernel(pr3, (1, 2))
        eab = maximal_sub_system(pr3, {(1, 2): k}, conjugation_closed=True)
        f = quotient_system(pr3, eab)
        assert f.piece(3, 0) == B(2, ((0, 0), 2, 1))
        assert f.piece(0, 3) == B(2, ((0, 0), -2, 1))
        assert f.piece(2, 1) == B(2, ((1, 0), -1, 1), ((2, 0), -2, 1))
        assert f.piece(1, 2) == B(2, ((1, 0), -2, 1), ((2, 0), -4, 1))


class TestMaximalSubSystem:
    def test_surface_abelian_part(self):
        pr3 = primitive_part(wedge(standard_v(2), 3))
        k = theta_kernel(pr3, (1, 2))
        eab = maximal_sub_system(pr3, {(1, 2): k}, conjugation_closed=True)
        assert eab.pieces() == {
            (1, 2): B(2, ((0, 0), 0, 1)),
            (2, 1): B(2, ((0, 0), 0, 1)),
        }

    def test_result_is_theta_stable_and_conjugation_closed(self):
        pr3 = primitive_part(wedge(standard_v(2), 3))
        k = theta_kernel(pr3, (1, 2))
        eab = maximal_sub_system(pr3, {(1, 2): k}, conjugation_closed=True)
        assert eab.is_theta_stable()
        from higgscalc import linalg

        dim = pr3.dimension
        for row in eab.rows:
            assert linalg.in_span(pr3.swap.apply(row), eab.rows, dim)

    def test_zero_constraints_give_zero(self):
        pr3 = primitive_part(wedge(standard_v(2), 3))
        cons = {pq: zero_subspace(pr3) for pq in pr3.pieces()}
        assert maximal_sub_system(pr3, cons, conjugation_closed=True).is_zero()

    def test_unconstrained_is_everything(self):
        h = uniformizing(2)
        sub = maximal_sub_system(h, {}, conjugation_closed=False)
        assert sub.dimension == h.dimension

    def test_needs_swap_for_conjugation(self):
        with pytest.raises(WrongWeightError):
            maximal_sub_system(uniformizing(2), {}, conjugation_closed=True)

    def test_genus4_abelian_type(self):
        from higgscalc.registry import abelian_type_sub

        l4 = wedge(standard_v(3), 4)
        eab = abelian_type_sub(l4)
        assert eab.pieces() == {
            (3, 1): B(3, ((0, 0, 0), 0, 1)),
            (2, 2): B(3, ((0, 0, 0), 0, 1)),
            (1, 3): B(3, ((0, 0, 0), 0, 1)),
        }


class TestFullSubspace:
    def test_round_trip(self):
        h = uniformizing(3)
        assert full_subspace(h).dimension == 4
        assert full_subspace(h).weight_census() == h.character()
