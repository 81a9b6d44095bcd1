"""Dense linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of row
tuples.  Everything here is exact; the float counterparts live next to the
code that needs them.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(token: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q`` with ``q > 0``."""
    m = _RATIONAL.match(token.strip())
    if m is None:
        raise ValueError(f"not a rational: {token!r}")
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise ValueError(f"zero denominator: {token!r}")
    return Fraction(int(m.group(1)), q)


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((ZERO,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    """Coordinate vector e_i (0-based)."""
    return tuple(ONE if k == i else ZERO for k in range(n))


def diag(values: Sequence) -> Matrix:
    vals = vec(values)
    n = len(vals)
    return tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in v)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(c: Fraction, a: Matrix) -> Matrix:
    return tuple(scale(c, r) for r in a)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def bilinear(gram: Matrix, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return dot(u, matvec(gram, v))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form. Returns (nonzero rows, pivot columns)."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : a x = 0}, one free variable set to 1 per basis vector."""
    if ncols is None:
        ncols = len(a[0])
    red, pivots = rref(a) if a else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """One exact solution of a x = b (free variables zero), or None."""
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def solve_min_norm(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """Minimal Euclidean-norm exact solution of a x = b, or None."""
    if solve(a, b) is None:
        return None
    # x = A_r^T (A_r A_r^T)^{-1} b_r over a maximal independent row subset
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    keep: list[int] = []
    for i in range(len(a)):
        if rank([a[k] for k in keep + [i]]) == len(keep) + 1:
            keep.append(i)
    if not keep:
        return (ZERO,) * len(a[0])
    ar = tuple(tuple(a[i]) for i in keep)
    br = tuple(aug[i][-1] for i in keep)
    y = matvec(inverse(matmul(ar, transpose(ar))), br)
    return matvec(transpose(ar), y)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def det(a: Matrix) -> Fraction:
    m = [list(r) for r in a]
    n = len(m)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def leading_minors(a: Matrix) -> list[Fraction]:
    return [det(tuple(row[:k] for row in a[:k])) for k in range(1, len(a) + 1)]


def span(vectors: Iterable[Sequence[Fraction]], n: int) -> Matrix:
    """Canonical basis (RREF rows) of the span; the zero space is ``()``."""
    rows = [tuple(v) for v in vectors]
    if not rows:
        return ()
    red, _ = rref(rows)
    return tuple(tuple(r) for r in red)


def in_span(basis: Matrix, v: Sequence[Fraction]) -> bool:
    if is_zero(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [tuple(v)]) == len(basis)


def is_subspace(small: Matrix, big: Matrix) -> bool:
    return all(in_span(big, v) for v in small)


def charpoly(a: Matrix) -> list[Fraction]:
    """Coefficients of det(xI - a), leading first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [ONE]
    m = zeros(n)
    eye = identity(n)
    for k in range(1, n + 1):
        m = mat_add(matmul(a, m), mat_scale(coeffs[-1], eye))
        coeffs.append(-trace(matmul(a, m)) / k)
    return coeffs


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root if q is the square of a rational, else None."""
    if q < 0:
        return None
    p, d = q.numerator, q.denominator
    rp, rd = isqrt(p), isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def to_float_matrix(a: Matrix):
    import numpy as np

    return np.array([[float(x) for x in row] for row in a], dtype=float)
