from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from milnorframes import algebra as alg
from milnorframes import linalg as la
from milnorframes.algebra import LieAlgebra
from milnorframes.errors import PreconditionError
from milnorframes.geometry import FrameConstants, ricci_orthonormal
from milnorframes.milnor import MilnorData, build_cyclic, h3, h4, milnor_algebra
from milnorframes.soliton import (
    derivation_space,
    h4_blocks_balanced,
    is_derivation,
    milnor_ricci,
    milnor_soliton_criterion,
    nilsoliton_solve,
)

from . import oracles
from .strategies import nonzero_rationals, rational_orthogonal, valid_milnor

ABC = LieAlgebra.from_brackets(4, [(2, 4, 1, 1), (3, 4, 1, 1), (3, 4, 2, 1)])


def sympy_der_dim(g):
    """dim Der(g) from a symbolic D and the Leibniz rule."""
    n = g.dim
    d = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"d{i}{j}"))
    c = lambda i, j: sympy.Matrix([sympy.Rational(str(v)) for v in g.basis_bracket(i + 1, j + 1)])
    e = [sympy.eye(n)[:, i] for i in range(n)]

    def br(x, y):
        out = sympy.zeros(n, 1)
        for i in range(n):
            for j in range(n):
                if x[i] != 0 and y[j] != 0:
                    out += x[i] * y[j] * c(i, j)
        return out

    eqs = []
    for i in range(n):
        for j in range(i + 1, n):
            eqs.extend(d * c(i, j) - br(d * e[i], e[j]) - br(e[i], d * e[j]))
    eqs = [q for q in eqs if q != 0]
    if not eqs:
        return n * n
    a, _ = sympy.linear_eq_to_matrix(eqs, list(d))
    return n * n - a.rank()


def flat(m):
    return [x for row in m for x in row]


def contains(space, m):
    return la.in_span(la.span([flat(b) for b in space], len(flat(m))), flat(m))


class TestDerivations:
    def test_h3(self):
        der = derivation_space(h3())
        assert len(der) == 6
        assert contains(der, la.diag([1, 1, 2]))

    def test_h4(self):
        der = derivation_space(h4())
        assert len(der) == sympy_der_dim(h4())
        assert contains(der, la.diag([2, 1, 3, 4]))

    def test_abelian(self):
        assert len(derivation_space(alg.abelian(3))) == 9

    @pytest.mark.parametrize("g", [h3(), h4(), ABC, build_cyclic(MilnorData((1, 1, 1))),
                                   build_cyclic(MilnorData((0, 0, 1, 0, 0, 2, 0)))])
    def test_dimension_matches_sympy(self, g):
        assert len(derivation_space(g)) == sympy_der_dim(g)

    def test_is_derivation(self):
        assert is_derivation(h3(), la.diag([1, 1, 2]))
        assert not is_derivation(h4(), la.identity(4))
        assert is_derivation(ABC, la.zeros(4))

    @given(valid_milnor(max_n=6))
    def test_basis_elements_are_derivations(self, d):
        g = build_cyclic(d)
        assert all(is_derivation(g, m) for m in derivation_space(g))


class TestSolve:
    @given(nonzero_rationals)
    def test_h3(self, l3):
        g = build_cyclic(MilnorData((0, 0, l3)))
        cert = nilsoliton_solve(oracles.ricci_h3(l3), g)
        assert cert.is_soliton and cert.exact
        assert cert.c == -Fraction(3, 2) * l3 ** 2
        assert cert.D == la.mat_scale(l3 ** 2, la.diag([1, 1, 2]))

    @given(nonzero_rationals, st.sampled_from([1, -1]))
    def test_h4_balanced(self, l3, sign):
        g = build_cyclic(MilnorData((0, 0, l3, sign * l3)))
        cert = nilsoliton_solve(oracles.ricci_h4(l3, sign * l3), g)
        assert cert.is_soliton
        # 2 Ric = -3 l^2 I + l^2 diag(2, 1, 3, 4)
        assert 2 * cert.c == -3 * l3 ** 2
        assert la.mat_scale(2, cert.D) == la.mat_scale(l3 ** 2, la.diag([2, 1, 3, 4]))

    @given(nonzero_rationals, nonzero_rationals)
    def test_h4_unbalanced(self, l3, l4):
        g = build_cyclic(MilnorData((0, 0, l3, l4)))
        cert = nilsoliton_solve(oracles.ricci_h4(l3, l4), g)
        assert cert.is_soliton == (abs(l3) == abs(l4))
        if not cert.is_soliton:
            assert cert.residual > 0

    def test_non_soliton_example(self):
        twice = la.mat([[2, 1, 0, 0], [1, 0, -1, 0], [0, -1, -2, 0], [0, 0, 0, -3]])
        r = ricci_orthonormal(FrameConstants.from_algebra(ABC))
        assert la.mat_scale(2, r) == twice
        assert oracles.sympy_charpoly(twice) == [1, 3, -6, -18, 0]
        assert not nilsoliton_solve(r, ABC).is_soliton

    def test_abelian_picks_minimal_norm(self):
        cert = nilsoliton_solve(la.zeros(3), alg.abelian(3))
        assert cert.is_soliton and cert.c == 0 and cert.D == la.zeros(3)

    def test_not_nilpotent(self):
        with pytest.raises(PreconditionError):
            nilsoliton_solve(la.zeros(3), build_cyclic(MilnorData((1, 1, 1))))

    def test_asymmetric(self):
        with pytest.raises(ValueError):
            nilsoliton_solve(la.mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), h3())

    @given(rational_orthogonal(4), nonzero_rationals, nonzero_rationals)
    def test_orthogonal_frame_change(self, q, l3, l4):
        g = build_cyclic(MilnorData((0, 0, l3, l4)))
        r = oracles.ricci_h4(l3, l4)
        moved = nilsoliton_solve(la.matmul(la.matmul(la.transpose(q), la.mat(r)), q), alg.change_of_basis(g, q))
        assert moved.is_soliton == nilsoliton_solve(r, g).is_soliton

    @given(nonzero_rationals, nonzero_rationals)
    def test_float_path_agrees(self, l3, l4):
        g = build_cyclic(MilnorData((0, 0, l3, l4)))
        r = oracles.ricci_h4(l3, l4)
        exact = nilsoliton_solve(r, g)
        approx = nilsoliton_solve([[float(x) for x in row] for row in r], g)
        assert not approx.exact
        assert approx.is_soliton == exact.is_soliton
        if exact.is_soliton:
            assert approx.c == pytest.approx(float(exact.c))
            assert np.allclose(approx.D, np.array(exact.D, dtype=float))


def test_four_equation_system():
    """The diagonal Leibniz system on h4 is solvable iff l4^2 = l3^2."""
    l3, l4, c, d1, d2 = sympy.symbols("l3 l4 c d1 d2")
    eqs = [
        sympy.Eq(-l3 ** 2, c + d1),
        sympy.Eq(-l3 ** 2 - l4 ** 2, c + d2),
        sympy.Eq(l3 ** 2 - l4 ** 2, c + d1 + d2),
        sympy.Eq(l4 ** 2, c + d1 + 2 * d2),
    ]
    sol = sympy.solve(eqs[:3], [c, d1, d2], dict=True)[0]
    residual = sympy.factor(eqs[3].lhs - eqs[3].rhs.subs(sol))
    assert residual == sympy.factor(-3 * (l3 - l4) * (l3 + l4))
    assert {k: v.subs(l4, l3) for k, v in sol.items()} == {c: -3 * l3 ** 2, d1: 2 * l3 ** 2, d2: l3 ** 2}


class TestMilnorCriterion:
    @pytest.mark.parametrize("lam,expected", [
        ((0, 0, 1, 1), True),
        ((0, 0, 1, 2), False),
        ((0, 0, 1, 0, 0, 0), True),
        ((0, 0, 1, 1, 0, 0, 1), True),
        ((0, 0, 2, -2), True),
    ])
    def test_examples(self, lam, expected):
        assert milnor_soliton_criterion(MilnorData(lam)) is expected

    def test_per_block_rule_is_not_enough(self):
        # balanced h4 blocks, yet the two h3 blocks force different c
        d = MilnorData((0, 0, 1, 0, 0, 2))
        assert h4_blocks_balanced(d)
        assert not milnor_soliton_criterion(d)
        assert not nilsoliton_solve(milnor_ricci(d), milnor_algebra(d)).is_soliton

    @given(valid_milnor(max_n=6))
    def test_agrees_with_solver(self, d):
        cert = nilsoliton_solve(milnor_ricci(d), build_cyclic(d))
        assert milnor_soliton_criterion(d) == cert.is_soliton
