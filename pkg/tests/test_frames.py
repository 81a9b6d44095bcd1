from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from milnorframes import algebra as alg
from milnorframes import frames as fr
from milnorframes import linalg as la
from milnorframes.algebra import LieAlgebra
from milnorframes.errors import NotPositiveDefinite, PreconditionError
from milnorframes.geometry import InnerProduct, MetricLieAlgebra
from milnorframes.milnor import MilnorData, build_cyclic, h3, h4

from .strategies import (
    matrices,
    nonzero_rationals,
    positive_rationals,
    rationals,
    spd_matrices,
    three_dim_algebras,
    vectors,
)

H3H3 = alg.direct_sum(h3(), h3())
# the a = b = c = 1 frame: [f2, f4] = f1, [f3, f4] = f1 + f2
ABC = LieAlgebra.from_brackets(4, [(2, 4, 1, 1), (3, 4, 1, 1), (3, 4, 2, 1)])


def metric(g, gram=None):
    return MetricLieAlgebra(g, InnerProduct.identity(g.dim) if gram is None else InnerProduct(la.mat(gram)))


def pullback(gram, t):
    return la.matmul(la.matmul(la.transpose(t), gram), t)


@st.composite
def h4_automorphisms(draw):
    s, u = draw(nonzero_rationals), draw(nonzero_rationals)
    # X1 -> s X1, X2 -> u X2 fixes the constants after X3 -> s u X3, X4 -> s u^2 X4
    d = la.diag([s, u, s * u, s * u * u])
    ad = alg.ad_of(h4(), (draw(rationals), 0, draw(rationals), draw(rationals)))
    inner = la.mat_add(la.mat_add(la.identity(4), ad), la.mat_scale(Fraction(1, 2), la.matmul(ad, ad)))
    return la.matmul(d, inner)


class TestCross:
    def test_identity(self):
        m = metric(alg.abelian(3))
        assert fr.cross_product(m, la.unit(3, 0), la.unit(3, 1)) == la.unit(3, 2)
        assert fr.cross_product(m, la.unit(3, 1), la.unit(3, 0), orientation=-1) == la.unit(3, 2)

    def test_scaled(self):
        m = metric(alg.abelian(3), la.diag([1, 1, 4]))
        assert fr.cross_product(m, la.unit(3, 0), la.unit(3, 1)) == (0, 0, Fraction(1, 2))

    @given(vectors(3))
    def test_self(self, x):
        assert la.is_zero(fr.cross_product(metric(alg.abelian(3)), x, x))

    @given(spd_matrices(3), vectors(3), vectors(3))
    def test_norm_identity(self, gram, x, y):
        # A A^T with triangular A has a square determinant, so this stays exact
        m = metric(alg.abelian(3), gram)
        z = fr.cross_product(m, x, y)
        g = m.metric
        assert g(z, z) == g(x, x) * g(y, y) - g(x, y) ** 2
        assert g(z, x) == 0 and g(z, y) == 0

    def test_needs_dim_three(self):
        with pytest.raises(ValueError):
            fr.cross_product(metric(h4()), la.unit(4, 0), la.unit(4, 1))


class TestLOperator:
    def test_h3(self):
        lop = fr.l_operator(metric(h3()))
        assert lop.matrix == la.diag([0, 0, 1])
        assert lop.self_adjoint

    def test_abelian(self):
        assert fr.l_operator(metric(alg.abelian(3))).matrix == la.zeros(3)

    def test_non_unimodular(self):
        g = LieAlgebra.from_brackets(3, [(1, 2, 2, 1)])
        assert not fr.l_operator(metric(g)).self_adjoint

    def test_not_a_lie_algebra(self):
        with pytest.raises(PreconditionError):
            fr.l_operator(metric(LieAlgebra.from_brackets(3, [(1, 2, 3, 1), (1, 3, 1, 1)])))

    @given(three_dim_algebras(), spd_matrices(3), matrices(3))
    def test_self_adjoint_iff_unimodular(self, g, gram, t):
        assert alg.is_lie_algebra(g)
        if la.det(t) != 0:
            g = alg.change_of_basis(g, t)
        assert fr.l_operator(metric(g, gram)).self_adjoint == alg.is_unimodular(g)

    @given(three_dim_algebras(), spd_matrices(3), vectors(3), vectors(3))
    def test_bracket_is_l_of_cross(self, g, gram, x, y):
        m = metric(g, gram)
        lop = fr.l_operator(m)
        assert la.matvec(lop.matrix, fr.cross_product(m, x, y)) == alg.bracket(g, x, y)


class TestMilnorFrame3d:
    def test_h3(self):
        res = fr.milnor_frame_3d(metric(h3()))
        assert sorted(res.lambdas) == pytest.approx([0, 0, 1])

    def test_abelian(self):
        assert fr.milnor_frame_3d(metric(alg.abelian(3))).lambdas == pytest.approx((0, 0, 0))

    def test_h3_rescaled(self):
        res = fr.milnor_frame_3d(metric(h3(), la.diag([1, 1, 9])))
        assert sorted(res.lambdas) == pytest.approx([0, 0, 3])

    def test_non_unimodular_rejected(self):
        with pytest.raises(PreconditionError):
            fr.milnor_frame_3d(metric(LieAlgebra.from_brackets(3, [(1, 2, 2, 1)])))

    @given(three_dim_algebras(unimodular=True), spd_matrices(3), matrices(3))
    def test_residual(self, g, gram, t):
        if la.det(t) != 0:
            g = alg.change_of_basis(g, t)
        res = fr.milnor_frame_3d(metric(g, gram))
        assert res.residual <= 1e-9
        lop = np.array(fr.l_operator(metric(g, gram)).matrix, dtype=float)
        assert sorted(res.lambdas) == pytest.approx(sorted(np.linalg.eigvals(lop).real), abs=1e-7)


class TestH4:
    def test_identity(self):
        assert fr.h4_has_orthonormal_milnor(metric(h4()))
        c = fr.h4_canonical_constants(metric(h4()))
        assert (c.a, c.b, c.c) == (1, 0, 1)

    def test_abc_frame(self):
        assert not fr.h4_has_orthonormal_milnor(metric(ABC))

    def test_counterexample_gram(self):
        gram = la.mat_add(la.identity(4), la.mat_scale(Fraction(1, 10), la.mat(
            [[0, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]])))
        m = metric(h4(), gram)
        assert fr.h4_b_numerator(m) != 0
        assert not fr.h4_canonical_constants(m).b_is_zero

    def test_wrong_algebra(self):
        with pytest.raises(PreconditionError):
            fr.h4_has_orthonormal_milnor(metric(alg.direct_sum(h3(), alg.abelian(1))))

    @given(st.tuples(*[positive_rationals] * 4))
    def test_diagonal_metrics(self, q):
        m = metric(h4(), la.diag(q))
        assert fr.h4_has_orthonormal_milnor(m)
        assert fr.h4_orthonormal_milnor_frame(m).residual <= 1e-9

    @given(spd_matrices(4), h4_automorphisms())
    def test_invariant_under_automorphisms(self, gram, t):
        assert alg.is_automorphism(h4(), t)
        before = fr.h4_has_orthonormal_milnor(metric(h4(), gram))
        after = fr.h4_has_orthonormal_milnor(metric(h4(), pullback(gram, t)))
        assert before == after

    @given(st.tuples(*[positive_rationals] * 4), h4_automorphisms())
    def test_constructive_frame_on_isometric_metrics(self, q, t):
        m = metric(h4(), pullback(la.diag(q), t))
        assert fr.h4_has_orthonormal_milnor(m)
        w = fr.h4_orthonormal_milnor_frame(m)
        assert w.residual <= 1e-9
        assert w.lambdas[0] == w.lambdas[1] == 0 and w.lambdas[2] > 0 and w.lambdas[3] > 0

    @given(spd_matrices(4))
    def test_canonical_signs(self, gram):
        c = fr.h4_canonical_constants(metric(h4(), gram))
        assert c.a > 0 and c.c > 0
        assert c.b_is_zero == fr.h4_has_orthonormal_milnor(metric(h4(), gram))

    @given(spd_matrices(4))
    def test_no_frame_when_b_nonzero(self, gram):
        m = metric(h4(), gram)
        if not fr.h4_has_orthonormal_milnor(m):
            with pytest.raises(PreconditionError):
                fr.h4_orthonormal_milnor_frame(m)


class TestH3H3:
    @pytest.mark.parametrize("eps", [Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(9, 10)])
    def test_perturbed(self, eps):
        obs = fr.h3h3_obstruction(metric(H3H3, fr.counterexample_metric("h3h3", eps).gram))
        assert obs.value == eps and obs.obstructed and obs.conclusive

    def test_identity_inconclusive(self):
        obs = fr.h3h3_obstruction(metric(H3H3))
        assert obs.value == 0 and not obs.obstructed and not obs.conclusive

    @given(spd_matrices(3), spd_matrices(3))
    def test_block_diagonal(self, a, b):
        gram = [list(r) + [0] * 3 for r in a] + [[0] * 3 + list(r) for r in b]
        assert not fr.h3h3_obstruction(metric(H3H3, gram)).obstructed

    def test_wrong_shape(self):
        with pytest.raises(PreconditionError):
            fr.h3h3_obstruction(metric(alg.direct_sum(h4(), alg.abelian(2))))

    def test_explicit_pairs(self):
        m = metric(H3H3, fr.counterexample_metric("h3h3", Fraction(1, 4)).gram)
        assert fr.h3h3_obstruction(m, [(4, 5), (1, 2)]).value == Fraction(1, 4)
        with pytest.raises(PreconditionError):
            fr.h3h3_obstruction(m, [(1, 3), (4, 5)])


class TestH3Abelian:
    @given(spd_matrices(5))
    def test_frame_exists_for_every_metric(self, gram):
        g = build_cyclic(MilnorData((0, 0, 1, 0, 0)))
        w = fr.h3_abelian_orthonormal_milnor_frame(metric(g, gram))
        assert w.residual <= 1e-9
        assert w.lambdas[2] > 0

    def test_wrong_algebra(self):
        with pytest.raises(PreconditionError):
            fr.h3_abelian_orthonormal_milnor_frame(metric(h4()))


class TestCounterexamples:
    def test_h3h3(self):
        ip = fr.counterexample_metric("h3h3", Fraction(1, 10))
        assert ip.gram[2][5] == ip.gram[5][2] == Fraction(1, 10)
        assert la.leading_minors(ip.gram)[-1] == Fraction(99, 100)

    def test_h3h3_degenerate(self):
        with pytest.raises(NotPositiveDefinite):
            fr.counterexample_metric("h3h3", 1)

    @pytest.mark.parametrize("eps", [0, -1])
    def test_non_positive_epsilon(self, eps):
        with pytest.raises(ValueError):
            fr.counterexample_metric("h4", eps)

    def test_h4(self):
        ip = fr.counterexample_metric("h4", Fraction(1, 10))
        assert not fr.h4_has_orthonormal_milnor(metric(h4(), ip.gram))
        assert fr.h4_b_numerator(metric(h4(), ip.gram)) == Fraction(1, 10)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            fr.counterexample_metric("h5", Fraction(1, 10))
