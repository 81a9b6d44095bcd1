"""Lie algebras given by structure constants over the rationals.

Basis labels are 1-based (X_1 ... X_n) everywhere in the public API; vectors
and matrices are plain 0-based tuples of coordinates.  ``c^k_ij`` is stored
only for i < j, so antisymmetry holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .linalg import Matrix, Vector, ZERO


@dataclass(frozen=True)
class LieAlgebra:
    """Structure tensor ``[X_i, X_j] = sum_k c^k_ij X_k`` with exact entries.

    ``structure`` maps ``(i, j, k)`` with ``1 <= i < j <= dim`` to c^k_ij.
    Zero entries are dropped on construction.  No Jacobi check is done here;
    see :func:`jacobi_defect`.
    """

    dim: int
    structure: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        clean: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), value in self.structure.items():
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise ValueError(f"bad structure key {(i, j, k)} for dim {self.dim}")
            value = la.to_fraction(value)
            if value != 0:
                clean[(i, j, k)] = value
        object.__setattr__(self, "structure", dict(sorted(clean.items())))

    @classmethod
    def from_brackets(cls, dim: int, entries: Iterable[tuple[int, int, int, object]]) -> "LieAlgebra":
        """Accumulate ``(i, j, k, value)`` entries; (j, i) pairs are negated."""
        acc: dict[tuple[int, int, int], Fraction] = {}
        for i, j, k, value in entries:
            value = la.to_fraction(value)
            if i == j:
                raise ValueError("[X_i, X_i] is always zero")
            if i > j:
                i, j, value = j, i, -value
            acc[(i, j, k)] = acc.get((i, j, k), ZERO) + value
        return cls(dim, acc)

    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return ZERO
        if i > j:
            return -self.structure.get((j, i, k), ZERO)
        return self.structure.get((i, j, k), ZERO)

    def basis_bracket(self, i: int, j: int) -> Vector:
        return tuple(self.c(i, j, k) for k in range(1, self.dim + 1))

    @property
    def is_abelian(self) -> bool:
        return not self.structure


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


def _check_vec(g: LieAlgebra, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != g.dim:
            raise ValueError(f"vector of length {len(v)} in a {g.dim}-dimensional algebra")


def bracket(g: LieAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    _check_vec(g, x, y)
    out = [ZERO] * g.dim
    for (i, j, k), c in g.structure.items():
        coef = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
        if coef:
            out[k - 1] += coef * c
    return tuple(out)


def ad_matrix(g: LieAlgebra, i: int) -> Matrix:
    """Matrix of ``x -> [X_i, x]``; column j is [X_i, X_j]."""
    if not 1 <= i <= g.dim:
        raise IndexError(f"basis index {i} out of range 1..{g.dim}")
    cols = [g.basis_bracket(i, j) for j in range(1, g.dim + 1)]
    return la.transpose(tuple(cols))


def ad_of(g: LieAlgebra, x: Sequence[Fraction]) -> Matrix:
    _check_vec(g, x)
    cols = [bracket(g, x, la.unit(g.dim, j)) for j in range(g.dim)]
    return la.transpose(tuple(cols))


def jacobi_defect(g: LieAlgebra) -> list[tuple[int, int, int, Vector]]:
    """Triples i < j < k whose cyclic Jacobi sum is nonzero, with that sum."""
    n = g.dim
    e = [la.unit(n, i) for i in range(n)]
    out = []
    for i, j, k in combinations(range(1, n + 1), 3):
        x, y, z = e[i - 1], e[j - 1], e[k - 1]
        total = la.add(
            la.add(bracket(g, x, bracket(g, y, z)), bracket(g, y, bracket(g, z, x))),
            bracket(g, z, bracket(g, x, y)),
        )
        if not la.is_zero(total):
            out.append((i, j, k, total))
    return out


def is_lie_algebra(g: LieAlgebra) -> bool:
    return not jacobi_defect(g)


def is_unimodular(g: LieAlgebra) -> bool:
    return all(la.trace(ad_matrix(g, i)) == 0 for i in range(1, g.dim + 1))


def killing_form(g: LieAlgebra) -> Matrix:
    ads = [ad_matrix(g, i) for i in range(1, g.dim + 1)]
    return tuple(tuple(la.trace(la.matmul(a, b)) for b in ads) for a in ads)


# --- subspaces -------------------------------------------------------------


def full_space(g: LieAlgebra) -> Matrix:
    return la.identity(g.dim)


def bracket_span(g: LieAlgebra, u: Matrix, v: Matrix) -> Matrix:
    """[U, V] = span of brackets of basis vectors."""
    return la.span((bracket(g, a, b) for a in u for b in v), g.dim)


def derived_subalgebra(g: LieAlgebra) -> Matrix:
    full = full_space(g)
    return bracket_span(g, full, full)


@dataclass(frozen=True)
class CentralSeries:
    """Terms g^0 = g, g^{m+1} = [g, g^m] until they stop shrinking."""

    terms: tuple[Matrix, ...]
    step: int | None  # None: stabilised at a nonzero subspace

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.terms)

    @property
    def nilpotent(self) -> bool:
        return self.step is not None


def lower_central_series(g: LieAlgebra) -> CentralSeries:
    full = full_space(g)
    terms = [full]
    while terms[-1]:
        nxt = bracket_span(g, full, terms[-1])
        if len(nxt) == len(terms[-1]):
            return CentralSeries(tuple(terms), None)
        terms.append(nxt)
    return CentralSeries(tuple(terms), len(terms) - 1)


def centralizer(g: LieAlgebra, subspace: Matrix) -> Matrix:
    """{x : [x, s] = 0 for every s in subspace}."""
    n = g.dim
    if not subspace:
        return full_space(g)
    rows = []
    for s in subspace:
        rows.extend(ad_of(g, s))
    return la.span(la.nullspace(rows, n), n)


def center(g: LieAlgebra) -> Matrix:
    return centralizer(g, full_space(g))


def is_ideal(g: LieAlgebra, subspace: Matrix) -> bool:
    return la.is_subspace(bracket_span(g, full_space(g), subspace), subspace)


def is_subalgebra(g: LieAlgebra, subspace: Matrix) -> bool:
    return la.is_subspace(bracket_span(g, subspace, subspace), subspace)


def coordinate_span(g: LieAlgebra, indices: Iterable[int]) -> Matrix:
    return la.span((la.unit(g.dim, i - 1) for i in indices), g.dim)


def direct_sum(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    """g1 on X_1..X_p, g2 on X_{p+1}..X_{p+q}."""
    p = g1.dim
    struct = dict(g1.structure)
    for (i, j, k), v in g2.structure.items():
        struct[(i + p, j + p, k + p)] = v
    return LieAlgebra(p + g2.dim, struct)


def change_of_basis(g: LieAlgebra, t: Matrix) -> LieAlgebra:
    """Structure constants in the basis Y_j = sum_i t[i][j] X_i (columns of t)."""
    n = g.dim
    if len(t) != n or any(len(r) != n for r in t):
        raise ValueError("basis change must be n x n")
    t_inv = la.inverse(t)
    cols = la.transpose(t)
    struct = {}
    for a, b in combinations(range(n), 2):
        coords = la.matvec(t_inv, bracket(g, cols[a], cols[b]))
        for k, v in enumerate(coords):
            if v:
                struct[(a + 1, b + 1, k + 1)] = v
    return LieAlgebra(n, struct)


def permutation_matrix(order: Sequence[int]) -> Matrix:
    """Columns are X_{order[0]}, X_{order[1]}, ... (1-based labels)."""
    n = len(order)
    return la.transpose(tuple(la.unit(n, i - 1) for i in order))


def is_automorphism(g: LieAlgebra, t: Matrix) -> bool:
    return la.det(t) != 0 and change_of_basis(g, t) == g


def restrict(g: LieAlgebra, indices: Sequence[int]) -> LieAlgebra:
    """Subalgebra on the coordinate vectors X_{indices[0]}, ... relabelled 1, 2, ...."""
    pos = {label: p for p, label in enumerate(indices, start=1)}
    if len(pos) != len(indices):
        raise ValueError("repeated index")
    struct = {}
    for (i, j, k), v in g.structure.items():
        if i in pos and j in pos:
            if k not in pos:
                raise ValueError(f"span of {tuple(indices)} is not a subalgebra")
            a, b = pos[i], pos[j]
            struct[(a, b, pos[k]) if a < b else (b, a, pos[k])] = v if a < b else -v
    return LieAlgebra(len(indices), struct)
