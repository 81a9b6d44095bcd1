"""Hypothesis strategies for exact rational objects."""
from fractions import Fraction

from hypothesis import assume, strategies as st

from milnorframes import algebra as alg
from milnorframes import linalg as la
from milnorframes.milnor import MilnorData, build_cyclic

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero_rationals = rationals.filter(lambda q: q != 0)
positive_rationals = st.fractions(min_value=Fraction(1, 6), max_value=4, max_denominator=6)


def vectors(n):
    return st.tuples(*[rationals] * n)


def matrices(n, m=None):
    return st.tuples(*[vectors(m or n)] * n)


@st.composite
def spd_matrices(draw, n):
    """A A^T with A lower triangular and a positive diagonal."""
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            a[i][j] = draw(rationals)
        a[i][i] = draw(positive_rationals)
    a = la.mat(a)
    return la.matmul(a, la.transpose(a))


@st.composite
def rational_orthogonal(draw, n):
    """Cayley transform (I - S)(I + S)^-1 of a rational skew matrix."""
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s[i][j] = draw(rationals)
            s[j][i] = -s[i][j]
    s = la.mat(s)
    eye = la.identity(n)
    return la.matmul(la.mat_sub(eye, s), la.inverse(la.mat_add(eye, s)))



def levi_civita(i, j, k):
    return (i - j) * (j - k) * (k - i) // 2


def bianchi_algebra(n, a):
    """c^k_ij = eps_ijl n[l][k] + delta_jk a_i - delta_ik a_j (0-based inputs).

    Jacobi holds iff n a = 0; unimodular iff a = 0.
    """
    from milnorframes.algebra import LieAlgebra

    struct = {}
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(3):
                v = sum(levi_civita(i, j, l) * n[l][k] for l in range(3))
                v += (a[i] if j == k else 0) - (a[j] if i == k else 0)
                struct[(i + 1, j + 1, k + 1)] = v
    return LieAlgebra(3, struct)


def _cross(x, y):
    return (x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0])


@st.composite
def three_dim_algebras(draw, unimodular=None):
    """Random 3-dimensional rational Lie algebras in Bianchi form."""
    if unimodular is None:
        unimodular = draw(st.booleans())
    if unimodular:
        a = (0, 0, 0)
        n = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                n[i][j] = n[j][i] = draw(rationals)
    else:
        a = draw(st.tuples(rationals, rationals, rationals).filter(lambda v: any(v)))
        n = [[Fraction(0)] * 3 for _ in range(3)]
        for _ in range(2):
            w = _cross(a, draw(st.tuples(rationals, rationals, rationals)))
            mu = draw(rationals)
            for i in range(3):
                for j in range(3):
                    n[i][j] += mu * w[i] * w[j]
    return bianchi_algebra(n, a)


@st.composite
def valid_milnor(draw, min_n=4, max_n=8):
    """Jacobi-valid constants: a binary pattern with rational values on its support."""
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    d = MilnorData(tuple(int(b) for b in bits))
    assume(not alg.jacobi_defect(build_cyclic(d)))
    values = [draw(nonzero_rationals) if b else 0 for b in bits]
    return MilnorData(tuple(values))
