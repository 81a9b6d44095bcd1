"""Derivations and the Ricci nilsoliton condition Ric = c I + D."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from . import algebra as alg
from . import linalg as la
from .algebra import LieAlgebra
from .errors import PreconditionError
from .geometry import DEFAULT_TOL, FrameConstants, ricci_orthonormal, structure_array
from .linalg import Matrix
from .milnor import MilnorData, block_lambdas, decompose, milnor_algebra


def _derivation_rows(c, n: int, zero) -> list[list]:
    """Linear equations on D (flattened row-major) for the Leibniz rule.

    ``c[i][j][k]`` is c^k_ij (0-based, antisymmetric in i, j).  Column
    ``a*n + b`` holds D[a][b], the X_a component of D X_b.
    """
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [zero] * (n * n)
                for m in range(n):
                    if c[i][j][m]:
                        row[k * n + m] += c[i][j][m]
                for a in range(n):
                    if c[a][j][k]:
                        row[a * n + i] -= c[a][j][k]
                    if c[i][a][k]:
                        row[a * n + j] -= c[i][a][k]
                if any(row):
                    rows.append(row)
    return rows


def _dense_structure(g: LieAlgebra) -> list:
    n = g.dim
    return [[[g.c(i, j, k) for k in range(1, n + 1)] for j in range(1, n + 1)] for i in range(1, n + 1)]


def _unflatten(v: Sequence, n: int) -> tuple:
    return tuple(tuple(v[a * n + b] for b in range(n)) for a in range(n))


def derivation_space(g: LieAlgebra) -> list[Matrix]:
    """Exact basis of Der(g)."""
    n = g.dim
    rows = _derivation_rows(_dense_structure(g), n, Fraction(0))
    return [_unflatten(v, n) for v in la.nullspace(rows, n * n)]


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    n = g.dim
    d = la.mat(d)
    cols = la.transpose(d)  # cols[i] = D X_i
    e = [la.unit(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.matvec(d, alg.bracket(g, e[i], e[j]))
            rhs = la.add(alg.bracket(g, cols[i], e[j]), alg.bracket(g, e[i], cols[j]))
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class SolitonCertificate:
    """Witness for (or against) Ric = c I + D with D a derivation.

    When ``is_soliton`` is false, (c, D) is the least-squares closest pair and
    ``residual`` is the Frobenius distance of Ric from R I + Der.
    """

    is_soliton: bool
    c: Fraction | float
    D: tuple
    residual: Fraction | float
    exact: bool


def _is_exact(r) -> bool:
    return all(isinstance(x, (Fraction, int)) for row in r for x in row)


def nilsoliton_solve(r, g: LieAlgebra | FrameConstants, tol: float = DEFAULT_TOL) -> SolitonCertificate:
    """Decide whether the symmetric matrix ``r`` lies in R I + Der(g).

    ``r`` and ``g`` must be written in the same basis.  Rational input is
    decided exactly; otherwise by least squares with threshold ``tol``.
    Only the abelian case leaves c undetermined; there c minimises
    c^2 + |r - c I|^2.
    """
    if isinstance(g, FrameConstants):
        if g.exact:
            g = g.to_algebra()
        else:
            return _solve_float(np.array(r, dtype=float), structure_array_from_frame(g), tol)
    n = g.dim
    if not alg.lower_central_series(g).nilpotent:
        raise PreconditionError("nilsoliton test needs a nilpotent algebra")
    if not _is_exact(r):
        return _solve_float(np.array(r, dtype=float), structure_array(g), tol)
    r = la.mat(r)
    if not la.is_symmetric(r):
        raise ValueError("Ricci matrix must be symmetric")
    der = derivation_space(g)
    eye = la.identity(n)
    cols = [eye] + der
    a = [[m[p][q] for m in cols] for p in range(n) for q in range(n)]
    b = [r[p][q] for p in range(n) for q in range(n)]
    x = la.solve(a, b)
    if x is not None:
        if is_derivation(g, eye):
            c = la.trace(r) / (n + 1)
        else:
            c = x[0]
        d = la.mat_sub(r, la.mat_scale(c, eye))
        return SolitonCertificate(True, c, d, Fraction(0), True)
    # normal equations: exact least squares
    at = la.transpose(tuple(tuple(row) for row in a))
    x = la.solve(la.matmul(at, tuple(tuple(row) for row in a)), la.matvec(at, b))
    d = _unflatten([sum((xi * col[p][q] for xi, col in zip(x[1:], der)), Fraction(0))
                    for p in range(n) for q in range(n)], n)
    diff = la.mat_sub(la.mat_sub(r, la.mat_scale(x[0], eye)), d)
    res2 = sum((v * v for row in diff for v in row), Fraction(0))
    return SolitonCertificate(False, x[0], d, sqrt(res2), True)


def structure_array_from_frame(fc: FrameConstants) -> np.ndarray:
    return fc.array()


def _solve_float(r: np.ndarray, c: np.ndarray, tol: float) -> SolitonCertificate:
    n = r.shape[0]
    rows = np.array(_derivation_rows(c.tolist(), n, 0.0), dtype=float).reshape(-1, n * n)
    if rows.size:
        _, s, vt = np.linalg.svd(rows)
        rank = int(np.sum(s > tol * max(1.0, s[0])))
        der = vt[rank:]
    else:
        der = np.eye(n * n)
    a = np.column_stack([np.eye(n).ravel()] + [v for v in der])
    x, *_ = np.linalg.lstsq(a, r.ravel(), rcond=None)
    fit = a @ x
    residual = float(np.linalg.norm(r.ravel() - fit))
    cval = float(x[0])
    d = (fit - cval * np.eye(n).ravel()).reshape(n, n)
    d_t = tuple(tuple(float(v) for v in row) for row in d)
    return SolitonCertificate(residual <= tol, cval, d_t, residual, False)


# --- Milnor frames ---------------------------------------------------------


def milnor_ricci(d: MilnorData) -> Matrix:
    """Exact Ricci matrix when the Milnor frame itself is orthonormal."""
    return ricci_orthonormal(FrameConstants.from_algebra(milnor_algebra(d)))


def h4_blocks_balanced(d: MilnorData) -> bool:
    """|l_{i+2}| = |l_{i+3}| on every h4 block.

    This is the per-block condition; for a single nonabelian block (or
    normalized constants) it decides the nilsoliton question by itself.
    """
    dec = decompose(d)
    return all(abs(lc) == abs(ld) for lc, ld in (block_lambdas(d, s) for s in dec.blocks("h4")))


def milnor_soliton_criterion(d: MilnorData) -> bool:
    """Nilsoliton test for an orthonormal Milnor frame, read off the constants.

    Each h3 block with constant l forces c = -3 l^2 / 2, and an h4 block with
    |l3| = |l4| = l forces the same value, so all blocks must share one |l|.
    Equivalently: h4 blocks are balanced and every nonzero |l_i| is equal.
    """
    if not h4_blocks_balanced(d):
        return False
    sizes = {abs(v) for v in d.lambdas if v != 0}
    return len(sizes) <= 1
