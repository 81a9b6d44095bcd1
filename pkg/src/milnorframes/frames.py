"""Existence of orthonormal Milnor frames.

Three situations are handled: 3-dimensional unimodular algebras (the
L-operator and its eigenframe), h4 (decided exactly by one structure
constant of a canonical flag-adapted frame) and h3 + h3 (a necessary
condition on the metric).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt
from typing import Literal, Sequence

import mpmath
import numpy as np

from . import algebra as alg
from . import linalg as la
from .algebra import LieAlgebra
from .errors import NotPositiveDefinite, PreconditionError
from .geometry import (
    DEFAULT_TOL,
    InnerProduct,
    MetricLieAlgebra,
    flag_adapted_basis,
    frame_constants,
    is_positive_definite,
)
from .linalg import Matrix, Vector
from .milnor import MilnorData, build_cyclic

# --- three dimensions ------------------------------------------------------

_DPS = 60
_BITS = 190


def _euclid_cross(x: Sequence, y: Sequence) -> tuple:
    return (
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    )


def _require_dim3(m: MetricLieAlgebra) -> None:
    if m.dim != 3:
        raise ValueError("the metric cross product needs dimension 3")


def cross_direction(m: MetricLieAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    """G^{-1}(x cross y): the cross product up to the factor sqrt(det G)."""
    _require_dim3(m)
    return la.matvec(la.inverse(m.metric.gram), _euclid_cross(la.vec(x), la.vec(y)))


def cross_product(m: MetricLieAlgebra, x: Sequence[Fraction], y: Sequence[Fraction], orientation: int = 1):
    """Metric cross product X ^ Y for the orientation of the declared basis.

    g(X ^ Y, Z) = orientation * vol_g(X, Y, Z).  Exact when det G is a
    rational square, floats otherwise.
    """
    direction = cross_direction(m, x, y)
    s = la.rational_sqrt(la.det(m.metric.gram))
    if s is not None:
        return la.scale(orientation * s, direction)
    sf = orientation * sqrt(float(la.det(m.metric.gram)))
    return tuple(sf * float(v) for v in direction)


@dataclass(frozen=True)
class LOperator:
    """L with [X, Y] = L(X ^ Y); ``self_adjoint`` is decided exactly."""

    matrix: tuple
    orientation: int
    self_adjoint: bool


def l_operator(m: MetricLieAlgebra, orientation: int = 1) -> LOperator:
    _require_dim3(m)
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    g = m.algebra
    if alg.jacobi_defect(g):
        raise PreconditionError("not a Lie algebra")
    gram = m.metric.gram
    # e2^e3, e3^e1, e1^e2 are the columns of orientation * sqrt(det G) * G^{-1}
    brackets = la.transpose((g.basis_bracket(2, 3), g.basis_bracket(3, 1), g.basis_bracket(1, 2)))
    bg = la.matmul(brackets, gram)
    self_adjoint = la.is_symmetric(la.matmul(gram, bg))
    s = la.rational_sqrt(la.det(gram))
    if s is not None:
        matrix = la.mat_scale(Fraction(orientation) / s, bg)
    else:
        sf = orientation * sqrt(float(la.det(gram)))
        matrix = tuple(tuple(float(v) / sf for v in row) for row in bg)
    return LOperator(matrix, orientation, self_adjoint)


@dataclass(frozen=True)
class MilnorFrameWitness:
    """An orthonormal Milnor frame and how well it satisfies the relations.

    Irrational frames are stored as rational approximations (about 190
    significant bits); ``residual`` is then computed exactly for the stored
    frame, so it bounds the error of what is returned rather than of some
    nearby float computation.
    """

    frame: tuple
    lambdas: tuple
    residual: float

    @property
    def exact(self) -> bool:
        return self.residual == 0

    def as_floats(self) -> "MilnorFrameWitness":
        return MilnorFrameWitness(
            tuple(tuple(float(x) for x in v) for v in self.frame),
            tuple(float(x) for x in self.lambdas),
            self.residual,
        )


def milnor_residual(m: MetricLieAlgebra, frame: Sequence[Sequence], lambdas: Sequence) -> float:
    """max |<[X_i,X_j],X_k> - Milnor value| together with orthonormality error.

    Exact when frame and lambdas are rational.
    """
    n = m.dim
    fc = frame_constants(m, frame)
    if fc.exact and all(isinstance(x, (Fraction, int)) for x in lambdas):
        target = {}
        for i in range(n):
            j, k = (i + 1) % n, (i + 2) % n
            target[i, j, k] = Fraction(lambdas[k])
            target[j, i, k] = -Fraction(lambdas[k])
        worst = max(abs(fc.alpha[i][j][k] - target.get((i, j, k), 0))
                    for i in range(n) for j in range(n) for k in range(n))
        fr = [la.vec(v) for v in frame]
        for i in range(n):
            for j in range(i, n):
                worst = max(worst, abs(m.metric(fr[i], fr[j]) - (i == j)))
        return float(worst)
    a = np.array([[[float(x) for x in r] for r in p] for p in fc.alpha])
    target = np.zeros((n, n, n))
    for i in range(n):
        j, k = (i + 1) % n, (i + 2) % n
        target[i, j, k] = float(lambdas[k])
        target[j, i, k] = -float(lambdas[k])
    f = np.array([[float(x) for x in v] for v in frame])
    gram = la.to_float_matrix(m.metric.gram)
    orth = np.max(np.abs(f @ gram @ f.T - np.eye(n)))
    return float(max(np.max(np.abs(a - target)), orth))


def _checked(m: MetricLieAlgebra, frame, lambdas, tol: float) -> MilnorFrameWitness:
    res = milnor_residual(m, frame, lambdas)
    if res > tol:
        raise ArithmeticError(f"Milnor frame residual {res:.3g} exceeds {tol}")
    return MilnorFrameWitness(tuple(tuple(v) for v in frame), tuple(lambdas), res)


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _from_mp(x) -> Fraction:
    """The binary rational held by an mpf, exactly."""
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** exp


def milnor_frame_3d(m: MetricLieAlgebra, tol: float = DEFAULT_TOL) -> MilnorFrameWitness:
    """Orthonormal eigenframe of L: [X1,X2] = l3 X3, [X2,X3] = l1 X1, [X3,X1] = l2 X2.

    The eigenproblem is solved in 60-digit arithmetic; see
    :class:`MilnorFrameWitness` for how the result is stored and checked.
    """
    lop = l_operator(m)
    if not lop.self_adjoint:
        raise PreconditionError("L is not self-adjoint: the algebra is not unimodular")
    g, gram = m.algebra, m.metric.gram
    brackets = la.transpose((g.basis_bracket(2, 3), g.basis_bracket(3, 1), g.basis_bracket(1, 2)))
    bg = la.matmul(brackets, gram)
    with mpmath.workdps(_DPS):
        G = mpmath.matrix([[_mp(x) for x in row] for row in gram])
        L = mpmath.matrix([[_mp(x) for x in row] for row in bg]) / mpmath.sqrt(_mp(la.det(gram)))
        C = mpmath.cholesky(G)
        Ct_inv = mpmath.inverse(C.T)
        S = C.T * L * Ct_inv
        S = (S + S.T) / 2
        w, u = mpmath.eigsy(S)
        order = sorted(range(3), key=lambda i: w[i])
        F = Ct_inv * u
        cols = [[_from_mp(F[r, i]) for r in range(3)] for i in order]
        w = [_from_mp(w[i]) for i in order]
    if la.det(la.transpose(cols)) < 0:
        cols[2] = [-x for x in cols[2]]
    return _checked(m, cols, (w[0], w[1], w[2]), tol)


def _sqrt(q: Fraction) -> Fraction:
    """sqrt(q) for q > 0: exact for rational squares, else to about 2^-190 relative."""
    r = la.rational_sqrt(q)
    if r is not None:
        return r
    p, d = q.numerator, q.denominator
    k = max(0, _BITS - (p * d).bit_length() // 2 + 2)
    return Fraction(isqrt(p * d << (2 * k)), d << k)


# --- h4 --------------------------------------------------------------------


def _require_h4(g: LieAlgebra) -> None:
    if g.dim != 4 or alg.lower_central_series(g).dims != (4, 2, 1, 0):
        raise PreconditionError("algebra is not isomorphic to h4")


def h4_flag(g: LieAlgebra) -> list[Matrix]:
    """g^2 < [g, g] < centralizer([g, g]), all exact."""
    _require_h4(g)
    series = alg.lower_central_series(g)
    derived = series.terms[1]
    flag = [series.terms[2], derived, alg.centralizer(g, derived)]
    if [len(f) for f in flag] != [1, 2, 3]:
        raise AssertionError("degenerate h4 flag")
    return flag


def h4_flag_basis(m: MetricLieAlgebra) -> list[Vector]:
    """Exact orthogonal v1..v4 adapted to the canonical h4 flag."""
    return flag_adapted_basis(m, h4_flag(m.algebra))


def h4_b_numerator(m: MetricLieAlgebra) -> Fraction:
    """g([v3, v4], v1); vanishes exactly when the constant b does."""
    v = h4_flag_basis(m)
    return m.metric(alg.bracket(m.algebra, v[2], v[3]), v[0])


def h4_has_orthonormal_milnor(m: MetricLieAlgebra) -> bool:
    return h4_b_numerator(m) == 0


@dataclass(frozen=True)
class CanonicalH4Constants:
    """[F2,F4] = a F1, [F3,F4] = b F1 + c F2 in an orthonormal frame, a, c > 0.

    ``frame`` is rational; when ``exact`` is false it approximates the
    irrational frame and a, b, c are floats.
    """

    a: float | Fraction
    b: float | Fraction
    c: float | Fraction
    b_is_zero: bool  # decided exactly
    frame: tuple
    exact: bool


def h4_canonical_constants(m: MetricLieAlgebra, tol: float = DEFAULT_TOL) -> CanonicalH4Constants:
    """(a, b, c) with [F2,F4] = a F1, [F3,F4] = b F1 + c F2 in the flag frame.

    The vanishing pattern is checked exactly on the unnormalized flag vectors;
    only the final division by the norms can introduce floats.
    """
    g = m.algebra
    vs = h4_flag_basis(m)

    def num(i, j, k):
        return m.metric(alg.bracket(g, vs[i - 1], vs[j - 1]), vs[k - 1])

    allowed = {(2, 4, 1), (3, 4, 1), (3, 4, 2)}
    for i in range(1, 5):
        for j in range(i + 1, 5):
            for k in range(1, 5):
                if (i, j, k) not in allowed and num(i, j, k) != 0:
                    raise AssertionError(f"unexpected constant at {(i, j, k)}")
    # orient F1, F3 so that a, c > 0
    if num(2, 4, 1) < 0:
        vs[0] = la.scale(-1, vs[0])
    if num(3, 4, 2) < 0:
        vs[2] = la.scale(-1, vs[2])
    norms2 = [m.metric(v, v) for v in vs]
    exact = all(la.rational_sqrt(q) is not None for q in norms2)
    roots = [_sqrt(q) for q in norms2]

    def const(i, j, k):
        value = num(i, j, k) / (roots[i - 1] * roots[j - 1] * roots[k - 1])
        return value if exact else float(value)

    a, b, c = const(2, 4, 1), const(3, 4, 1), const(3, 4, 2)
    if not a > 0 or not c > 0:
        raise AssertionError("canonical constants must have a, c > 0")
    frame = tuple(la.scale(1 / r, v) for v, r in zip(vs, roots))
    b_zero = num(3, 4, 1) == 0
    return CanonicalH4Constants(a, b, c, b_zero, frame, exact)


def h4_orthonormal_milnor_frame(m: MetricLieAlgebra, tol: float = DEFAULT_TOL) -> MilnorFrameWitness:
    """Build the orthonormal Milnor frame promised when b = 0.

    With the canonical frame F: X1 = F3, X2 = F4, X3 = F2, X4 = -F1 gives
    [X1,X2] = c X3 and [X2,X3] = a X4.
    """
    k = h4_canonical_constants(m, tol)
    if not k.b_is_zero:
        raise PreconditionError("b != 0: no orthonormal Milnor frame exists")
    f1, f2, f3, f4 = k.frame
    frame = (f3, f4, f2, la.scale(-1, f1))
    if k.exact:
        lambdas = (Fraction(0), Fraction(0), k.c, k.a)
    else:
        alpha = frame_constants(m, frame).alpha
        lambdas = (Fraction(0), Fraction(0), alpha[0][1][2], alpha[1][2][3])
    return _checked(m, frame, lambdas, tol)


def h3_abelian_orthonormal_milnor_frame(m: MetricLieAlgebra, tol: float = DEFAULT_TOL) -> MilnorFrameWitness:
    """Orthonormal Milnor frame for any metric on h3 + abelian.

    X1, X2 span the g-complement of the centre, X3 is the unit vector along
    [X1, X2] and the rest completes an orthonormal basis of the centre.
    """
    g = m.algebra
    n = g.dim
    derived = alg.derived_subalgebra(g)
    centre = alg.center(g)
    if len(derived) != 1 or len(centre) != n - 2 or not la.is_subspace(derived, centre):
        raise PreconditionError("algebra is not h3 + abelian")
    vs = flag_adapted_basis(m, [derived, centre])  # derived, rest of centre, complement
    basis = [la.scale(1 / _sqrt(m.metric(v, v)), v) for v in vs]
    e3, rest, (e1, e2) = basis[0], basis[1:n - 2], basis[n - 2:]
    lam = m.metric(alg.bracket(g, e1, e2), e3)
    if lam < 0:
        e2 = la.scale(-1, e2)
        lam = -lam
    lambdas = (Fraction(0), Fraction(0), lam) + (Fraction(0),) * (n - 3)
    return _checked(m, [e1, e2, e3, *rest], lambdas, tol)


# --- h3 + h3 ---------------------------------------------------------------


@dataclass(frozen=True)
class H3H3Obstruction:
    """g(U3, V3) and whether it rules out an orthonormal Milnor frame.

    ``obstructed=False`` is inconclusive: vanishing is only necessary.
    """

    value: Fraction
    obstructed: bool

    @property
    def conclusive(self) -> bool:
        return self.obstructed


def _h3h3_pairs(g: LieAlgebra) -> list[tuple[int, int]]:
    pairs = sorted({(i, j) for (i, j, _k) in g.structure})
    if g.dim != 6 or len(pairs) != 2:
        raise PreconditionError("expected h3 + h3 with two nonzero basis brackets")
    (a, b), (c, d) = pairs
    u3, v3 = g.basis_bracket(a, b), g.basis_bracket(c, d)
    supp_u = [k + 1 for k, x in enumerate(u3) if x]
    supp_v = [k + 1 for k, x in enumerate(v3) if x]
    idx = [a, b, c, d] + supp_u + supp_v
    if len(supp_u) != 1 or len(supp_v) != 1 or sorted(idx) != list(range(1, 7)):
        raise PreconditionError("declared basis is not an h3 + h3 Milnor basis")
    return pairs


def h3h3_obstruction(
    m: MetricLieAlgebra, pairs: Sequence[tuple[int, int]] | None = None
) -> H3H3Obstruction:
    """Value g(U3, V3) with U3 = [U1, U2], V3 = [V1, V2].

    ``pairs`` gives (U1, U2) and (V1, V2) as basis labels in Milnor order; by
    default the two nonzero brackets of the declared basis are used with the
    smaller label first.
    """
    g = m.algebra
    found = _h3h3_pairs(g)
    if pairs is None:
        pairs = found
    elif sorted(tuple(sorted(p)) for p in pairs) != found:
        raise PreconditionError("pairs do not match the nonzero brackets")
    (a, b), (c, d) = pairs
    value = m.metric(g.basis_bracket(a, b), g.basis_bracket(c, d))
    return H3H3Obstruction(value, value != 0)


# --- counterexamples -------------------------------------------------------


def _perturbed(n: int, i: int, j: int, eps: Fraction) -> Matrix:
    rows = [list(r) for r in la.identity(n)]
    rows[i - 1][j - 1] = rows[j - 1][i - 1] = eps
    return la.mat(rows)


def counterexample_metric(kind: Literal["h4", "h3h3"], eps) -> InnerProduct:
    """Metric on the normalized Milnor basis with no orthonormal Milnor frame.

    h3h3: I + eps (E36 + E63).  h4: I + eps (E13 + E31), or another single
    off-diagonal perturbation if that one happened to keep b = 0.
    """
    eps = la.to_fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if kind == "h3h3":
        gram = _perturbed(6, 3, 6, eps)
        if not is_positive_definite(gram):
            raise NotPositiveDefinite(f"epsilon {eps} makes the metric degenerate or indefinite")
        return InnerProduct(gram)
    if kind == "h4":
        g = build_cyclic(MilnorData((0, 0, 1, 1)))
        candidates = [(1, 3)] + [(i, j) for i in range(1, 5) for j in range(i + 1, 5) if (i, j) != (1, 3)]
        for i, j in candidates:
            gram = _perturbed(4, i, j, eps)
            if not is_positive_definite(gram):
                raise NotPositiveDefinite(f"epsilon {eps} makes the metric degenerate or indefinite")
            metric = InnerProduct(gram)
            if not h4_has_orthonormal_milnor(MetricLieAlgebra(g, metric)):
                return metric
        raise AssertionError("no single off-diagonal perturbation gives b != 0")
    raise ValueError(f"unknown kind {kind!r}")
