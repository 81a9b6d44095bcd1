"""Inner products, orthonormal frames and curvature of metric Lie algebras.

Curvature is computed from the frame constants
``alpha[i][j][k] = <[e_i, e_j], e_k>`` of an orthonormal frame.  When the
frame can be normalised without square roots (every flag vector has a
rational norm) all output is exact; otherwise floats are used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import NamedTuple, Sequence

import numpy as np

from . import algebra as alg
from . import linalg as la
from .algebra import LieAlgebra
from .errors import InexactError, NotPositiveDefinite, PreconditionError
from .linalg import Matrix, Vector

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class InnerProduct:
    gram: Matrix

    def __post_init__(self):
        gram = la.mat(self.gram)
        object.__setattr__(self, "gram", gram)
        if any(len(r) != len(gram) for r in gram):
            raise ValueError("Gram matrix must be square")
        if not la.is_symmetric(gram):
            raise ValueError("Gram matrix is not symmetric")
        if not is_positive_definite(gram):
            raise NotPositiveDefinite("Gram matrix is not positive definite")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def __call__(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return la.bilinear(self.gram, u, v)

    def scaled(self, s) -> "InnerProduct":
        return InnerProduct(la.mat_scale(la.to_fraction(s), self.gram))

    @classmethod
    def identity(cls, n: int) -> "InnerProduct":
        return cls(la.identity(n))


def is_positive_definite(gram: Matrix) -> bool:
    """Sylvester's criterion on exact leading principal minors."""
    return all(m > 0 for m in la.leading_minors(gram))


@dataclass(frozen=True)
class MetricLieAlgebra:
    algebra: LieAlgebra
    metric: InnerProduct

    def __post_init__(self):
        if self.algebra.dim != self.metric.dim:
            raise ValueError("algebra and metric dimensions differ")

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True)
class FrameConstants:
    """``alpha[i][j][k] = <[e_i, e_j], e_k>`` (0-based storage).

    Entries are Fractions when ``exact`` is true, floats otherwise.
    """

    alpha: tuple
    exact: bool

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def a(self, i: int, j: int, k: int):
        """alpha_ijk with 1-based labels."""
        return self.alpha[i - 1][j - 1][k - 1]

    @classmethod
    def from_algebra(cls, g: LieAlgebra) -> "FrameConstants":
        """Constants of the declared basis, taken to be orthonormal."""
        n = g.dim
        alpha = tuple(
            tuple(tuple(g.c(i, j, k) for k in range(1, n + 1)) for j in range(1, n + 1))
            for i in range(1, n + 1)
        )
        return cls(alpha, True)

    def to_algebra(self) -> LieAlgebra:
        """The Lie algebra written in this frame (exact frames only)."""
        if not self.exact:
            raise InexactError("frame constants are floating point")
        n = self.dim
        struct = {
            (i + 1, j + 1, k + 1): self.alpha[i][j][k]
            for i in range(n) for j in range(i + 1, n) for k in range(n)
        }
        return LieAlgebra(n, struct)

    def array(self) -> np.ndarray:
        return np.array([[[float(x) for x in row] for row in plane] for plane in self.alpha])


def flag_adapted_basis(m: MetricLieAlgebra, flag: Sequence[Matrix]) -> list[Vector]:
    """Exact, unnormalised Gram-Schmidt along a flag of subspaces.

    Returns pairwise g-orthogonal v_1..v_n such that the first dim(F_k) of them
    span F_k for every member of the flag.  The whole space is appended if the
    flag does not end with it.
    """
    n = m.dim
    g = m.metric
    levels = [la.span(f, n) for f in flag]
    if not levels or len(levels[-1]) < n:
        levels.append(la.identity(n))
    prev: Matrix = ()
    for lvl in levels:
        if not la.is_subspace(prev, lvl) or len(lvl) < len(prev):
            raise ValueError("flag is not nested")
        prev = lvl
    out: list[Vector] = []
    for lvl in levels:
        for w in lvl:
            v = w
            for u in out:
                v = la.sub(v, la.scale(g(v, u) / g(u, u), u))
            if not la.is_zero(v):
                out.append(v)
    return out


def frame_constants(m: MetricLieAlgebra, frame: Sequence[Sequence]) -> FrameConstants:
    """alpha for an explicit frame (exact when every entry is rational)."""
    exact = all(isinstance(x, (Fraction, int)) for v in frame for x in v)
    n = m.dim
    if exact:
        fr = [la.vec(v) for v in frame]
        alpha = tuple(
            tuple(tuple(m.metric(alg.bracket(m.algebra, fr[i], fr[j]), fr[k]) for k in range(n))
                  for j in range(n))
            for i in range(n)
        )
        return FrameConstants(alpha, True)
    c = structure_array(m.algebra)
    f = np.array([[float(x) for x in v] for v in frame])
    gram = la.to_float_matrix(m.metric.gram)
    # [f_i, f_j] in coordinates: sum_ab f_ia f_jb c_ab.
    br = np.einsum("ia,jb,abk->ijk", f, f, c)
    alpha = np.einsum("ijk,kl,ml->ijm", br, gram, f)
    return FrameConstants(_nested(alpha), False)


def structure_array(g: LieAlgebra) -> np.ndarray:
    n = g.dim
    c = np.zeros((n, n, n))
    for (i, j, k), v in g.structure.items():
        c[i - 1, j - 1, k - 1] = float(v)
        c[j - 1, i - 1, k - 1] = -float(v)
    return c


def _nested(a: np.ndarray) -> tuple:
    return tuple(tuple(tuple(float(x) for x in row) for row in plane) for plane in a)


def orthonormal_frame(m: MetricLieAlgebra, tol: float = DEFAULT_TOL, exact: bool = False):
    """Normalised Gram-Schmidt frame of the coordinate flag and its constants.

    Returns ``(frame, FrameConstants)``.  The frame is exact when every
    g(v_i, v_i) is a rational square; otherwise it is floating point, unless
    ``exact`` is set, in which case :class:`InexactError` is raised.
    """
    n = m.dim
    coord_flag = [la.identity(n)[:k] for k in range(1, n + 1)]
    vs = flag_adapted_basis(m, coord_flag)
    norms2 = [m.metric(v, v) for v in vs]
    roots = [la.rational_sqrt(q) for q in norms2]
    if all(r is not None for r in roots):
        frame = [la.scale(1 / r, v) for v, r in zip(vs, roots)]
        return frame, frame_constants(m, frame)
    if exact:
        raise InexactError("orthonormal frame needs square roots for this metric")
    norms = [sqrt(float(q)) for q in norms2]
    frame = [tuple(float(x) / nv for x in v) for v, nv in zip(vs, norms)]
    # exact numerators over float norms keeps the constants accurate
    alpha = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            b = alg.bracket(m.algebra, vs[i], vs[j])
            for k in range(n):
                num = m.metric(b, vs[k])
                if num:
                    alpha[i, j, k] = float(num) / (norms[i] * norms[j] * norms[k])
    gram = la.to_float_matrix(m.metric.gram)
    f = np.array(frame)
    err = np.max(np.abs(f @ gram @ f.T - np.eye(n)))
    if err > tol:
        raise ArithmeticError(f"frame orthonormality error {err:.3g} exceeds {tol}")
    return frame, FrameConstants(_nested(alpha), False)


def sectional_curvature(fc: FrameConstants, i: int, j: int):
    """Sectional curvature of the plane spanned by frame vectors e_i, e_j."""
    if i == j:
        raise ValueError("sectional curvature needs two distinct frame vectors")
    n = fc.dim
    a = fc.alpha
    i, j = i - 1, j - 1
    total = Fraction(0) if fc.exact else 0.0
    for k in range(n):
        aijk, ajki, akij = a[i][j][k], a[j][k][i], a[k][i][j]
        total += (
            aijk * (-aijk + ajki + akij) / 2
            - (aijk - ajki + akij) * (aijk + ajki - akij) / 4
            - a[k][i][i] * a[k][j][j]
        )
    return total


def sectional_table(fc: FrameConstants) -> tuple:
    """All kappa(e_i, e_j) with zeros on the diagonal."""
    n = fc.dim
    zero = Fraction(0) if fc.exact else 0.0
    return tuple(
        tuple(zero if i == j else sectional_curvature(fc, i, j) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )


def frame_killing(fc: FrameConstants) -> tuple:
    n = fc.dim
    a = fc.alpha
    zero = Fraction(0) if fc.exact else 0.0
    return tuple(
        tuple(sum((a[i][k][l] * a[j][l][k] for k in range(n) for l in range(n)
                   if a[i][k][l] and a[j][l][k]), zero)
              for j in range(n))
        for i in range(n)
    )


def is_frame_unimodular(fc: FrameConstants, tol: float = DEFAULT_TOL) -> bool:
    n = fc.dim
    for i in range(n):
        tr = sum(fc.alpha[i][k][k] for k in range(n))
        if (tr != 0) if fc.exact else (abs(tr) > tol):
            return False
    return True


def ricci_orthonormal(fc: FrameConstants, killing=None, tol: float = DEFAULT_TOL) -> tuple:
    """Ricci matrix in the orthonormal frame of a unimodular metric Lie algebra.

    Ric_ij = -1/2 sum_kl a_ikl a_jkl + 1/4 sum_kl a_kli a_klj - 1/2 B_ij,
    with B the Killing form in the same frame (computed if not given).
    """
    if not is_frame_unimodular(fc, tol):
        raise PreconditionError("Ricci formula requires a unimodular algebra")
    n = fc.dim
    a = fc.alpha
    b = frame_killing(fc) if killing is None else killing
    zero = Fraction(0) if fc.exact else 0.0
    ric = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            # skipping zeros matters: exact alpha is mostly zeros
            s1 = sum((a[i][k][l] * a[j][k][l] for k in range(n) for l in range(n)
                      if a[i][k][l] and a[j][k][l]), zero)
            s2 = sum((a[k][l][i] * a[k][l][j] for k in range(n) for l in range(n)
                      if a[k][l][i] and a[k][l][j]), zero)
            v = -s1 / 2 + s2 / 4 - b[i][j] / 2
            ric[i][j] = ric[j][i] = v
    return tuple(tuple(r) for r in ric)


class Signature(NamedTuple):
    negative: int
    zero: int
    positive: int

    def symbol(self) -> str:
        return "(" + ",".join(["-"] * self.negative + ["0"] * self.zero + ["+"] * self.positive) + ")"


def _sign_changes(coeffs: Sequence[Fraction]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature_from_charpoly(coeffs: Sequence[Fraction]) -> Signature:
    """Descartes' rule, exact for polynomials with only real roots."""
    n = len(coeffs) - 1
    zero = 0
    while zero < n and coeffs[n - zero] == 0:
        zero += 1
    pos = _sign_changes(coeffs)
    neg = _sign_changes([c * (-1) ** (n - k) for k, c in enumerate(coeffs)])
    if pos + neg + zero != n:
        raise ArithmeticError("polynomial has non-real roots")
    return Signature(neg, zero, pos)


def ricci_signature(r, tol: float = DEFAULT_TOL) -> Signature:
    """(negative, zero, positive) eigenvalue counts of a symmetric matrix."""
    if all(isinstance(x, (Fraction, int)) for row in r for x in row):
        a = la.mat(r)
        if not la.is_symmetric(a):
            raise ValueError("signature needs a symmetric matrix")
        return signature_from_charpoly(la.charpoly(a))
    w = np.linalg.eigvalsh(np.array(r, dtype=float))
    return Signature(int(np.sum(w < -tol)), int(np.sum(np.abs(w) <= tol)), int(np.sum(w > tol)))


def metric_ricci(m: MetricLieAlgebra, tol: float = DEFAULT_TOL, exact: bool = False):
    """(frame, constants, Ricci matrix) for the coordinate-flag frame."""
    frame, fc = orthonormal_frame(m, tol, exact)
    return frame, fc, ricci_orthonormal(fc, tol=tol)
