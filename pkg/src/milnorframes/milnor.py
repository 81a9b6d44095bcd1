"""Lie algebras with Milnor frames.

A Milnor frame X_1..X_n with constants l_1..l_n has
``[X_i, X_{i+1}] = l_{i+2} X_{i+2}`` (indices mod n) and every other basis
bracket zero.  For n >= 4 such an algebra splits as copies of h3, h4 and an
abelian summand; :func:`decompose` reads that splitting off the pattern of
nonzero constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from . import algebra as alg
from . import linalg as la
from .algebra import LieAlgebra
from .errors import PreconditionError
from .linalg import Matrix


class GeneralThreeDimensional(PreconditionError):
    """n = 3 with two or three nonzero constants (e.g. su(2), e(2), sl(2)).

    The splitting into h3/h4/abelian pieces only concerns n >= 4 and the
    single-constant 3-dimensional case, so these are reported, not split.
    """


@dataclass(frozen=True)
class MilnorData:
    """Constants l_1..l_n and an optional permutation (image list, 1-based).

    ``sigma=None`` means the cycle (1 2 ... n).
    """

    lambdas: tuple[Fraction, ...]
    sigma: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "lambdas", la.vec(self.lambdas))
        if self.sigma is not None:
            sigma = tuple(int(s) for s in self.sigma)
            if sorted(sigma) != list(range(1, len(self.lambdas) + 1)):
                raise ValueError(f"sigma {sigma} is not a permutation of 1..{len(self.lambdas)}")
            if sigma == default_cycle(len(sigma)):
                sigma = None
            object.__setattr__(self, "sigma", sigma)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def lam(self, i: int) -> Fraction:
        """l_i with the index taken mod n."""
        return self.lambdas[(i - 1) % self.n]

    @property
    def is_normalized(self) -> bool:
        return all(v in (0, 1) for v in self.lambdas)


def default_cycle(n: int) -> tuple[int, ...]:
    return tuple(range(2, n + 1)) + (1,)


def wrap(i: int, n: int) -> int:
    return (i - 1) % n + 1


def build_cyclic(d: MilnorData) -> LieAlgebra:
    if d.sigma is not None:
        raise ValueError("build_cyclic needs the default cycle; use build_general")
    n = d.n
    if n < 3:
        raise ValueError("Milnor frames need n >= 3")
    entries = [(i, wrap(i + 1, n), wrap(i + 2, n), d.lam(i + 2)) for i in range(1, n + 1)]
    return LieAlgebra.from_brackets(n, entries)


def adjacent_product_check(d: MilnorData) -> list[int]:
    """Indices i with l_i * l_{i+2} != 0.

    Empty is necessary for the Jacobi identity when n >= 4.  For n = 3 the
    list is still computed but carries no such meaning.
    """
    return [i for i in range(1, d.n + 1) if d.lam(i) * d.lam(i + 2) != 0]


@dataclass(frozen=True)
class CycleSplit:
    """Disjoint cycles of sigma (each in orbit order) and its fixed points."""

    cycles: tuple[tuple[int, ...], ...]
    fixed: tuple[int, ...]


def cycle_decomposition(sigma: Sequence[int]) -> CycleSplit:
    n = len(sigma)
    seen = set()
    cycles, fixed = [], []
    for start in range(1, n + 1):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        j = sigma[start - 1]
        while j != start:
            orbit.append(j)
            seen.add(j)
            j = sigma[j - 1]
        if len(orbit) == 1:
            fixed.append(start)
        else:
            cycles.append(tuple(orbit))
    return CycleSplit(tuple(cycles), tuple(fixed))


def build_general(d: MilnorData) -> tuple[LieAlgebra, CycleSplit]:
    """``[X_i, X_sigma(i)] = l_{sigma^2(i)} X_{sigma^2(i)}`` for any sigma.

    Every cycle carries its own cyclic Milnor frame; fixed points are central.
    A 2-cycle (a b) would demand [X_a, X_b] = l_a X_a and [X_b, X_a] = l_b X_b
    at once, so it is rejected rather than guessed at.
    """
    n = d.n
    if n < 3:
        raise ValueError("Milnor frames need n >= 3")
    sigma = d.sigma or default_cycle(n)
    split = cycle_decomposition(sigma)
    for cyc in split.cycles:
        if len(cyc) == 2:
            raise PreconditionError(f"2-cycle {cyc} in sigma does not define a Milnor bracket")
    entries = []
    for i in range(1, n + 1):
        j = sigma[i - 1]
        if j == i:
            continue
        k = sigma[j - 1]
        entries.append((i, j, k, d.lambdas[k - 1]))
    return LieAlgebra.from_brackets(n, entries), split


def milnor_algebra(d: MilnorData) -> LieAlgebra:
    return build_cyclic(d) if d.sigma is None else build_general(d)[0]


def shift(d: MilnorData, ell: int) -> MilnorData:
    """Relabel X_i -> X_{i+ell}; the new constants are l'_i = l_{i-ell}."""
    if d.sigma is not None:
        raise ValueError("shift is defined for the default cycle")
    return MilnorData(tuple(d.lam(i - ell) for i in range(1, d.n + 1)))


# --- decomposition ---------------------------------------------------------

Kind = Literal["h3", "h4", "abelian"]


@dataclass(frozen=True)
class Summand:
    kind: Kind
    indices: tuple[int, ...]  # Milnor order for h3/h4 blocks, sorted for abelian


@dataclass(frozen=True)
class Decomposition:
    summands: tuple[Summand, ...]
    normalized: bool

    def blocks(self, kind: Kind) -> list[Summand]:
        return [s for s in self.summands if s.kind == kind]

    @property
    def shape(self) -> tuple[int, int, int]:
        """(# h3, # h4, abelian dimension)."""
        ab = sum(len(s.indices) for s in self.blocks("abelian"))
        return len(self.blocks("h3")), len(self.blocks("h4")), ab

    def label(self) -> str:
        parts = [f"{s.kind}{{{','.join(map(str, s.indices))}}}" for s in self.summands]
        return " + ".join(parts) if parts else "0"


def _decompose_cyclic(d: MilnorData) -> list[Summand]:
    n = d.n
    nz = [d.lam(i) != 0 for i in range(1, n + 1)]
    if n == 3:
        count = sum(nz)
        if count == 0:
            return [Summand("abelian", (1, 2, 3))]
        if count > 1:
            raise GeneralThreeDimensional(
                f"3-dimensional Milnor data {tuple(map(str, d.lambdas))} with {count} nonzero constants"
            )
        k = nz.index(True) + 1
        return [Summand("h3", (wrap(k - 2, 3), wrap(k - 1, 3), k))]

    g = build_cyclic(d)
    if alg.jacobi_defect(g):
        raise PreconditionError("Milnor data does not satisfy the Jacobi identity")
    used: set[int] = set()
    out = []
    for i in range(1, n + 1):
        if not nz[i - 1] or nz[(i - 2) % n]:
            continue
        if nz[i % n]:
            block = tuple(wrap(i + s, n) for s in (-2, -1, 0, 1))
            kind: Kind = "h4"
        else:
            block = tuple(wrap(i + s, n) for s in (-2, -1, 0))
            kind = "h3"
        if used.intersection(block):
            raise PreconditionError(f"overlapping blocks at index {i}")
        used.update(block)
        out.append(Summand(kind, block))
    rest = tuple(i for i in range(1, n + 1) if i not in used)
    # every nonzero constant must sit on the last slot(s) of some block
    for i in range(1, n + 1):
        if nz[i - 1] and not any(i in s.indices[2:] for s in out):
            raise PreconditionError(f"constant l_{i} is not covered by any block")
    if rest:
        out.append(Summand("abelian", rest))
    for s in out:
        if not alg.is_ideal(g, alg.coordinate_span(g, s.indices)):
            raise AssertionError(f"block {s} is not an ideal")
    return out


def decompose(d: MilnorData) -> Decomposition:
    """Split into h3, h4 and abelian summands read off the constants.

    Blocks are listed by the index i of their first nonzero constant (with
    l_{i-1} = 0), the abelian remainder last.  A general sigma is first
    split into its cycles, each handled as a cyclic frame of its own.
    """
    if d.sigma is None:
        summands = _decompose_cyclic(d)
        return Decomposition(_merge_abelian(summands), d.is_normalized)

    _, split = build_general(d)
    summands = [Summand("abelian", split.fixed)] if split.fixed else []
    keyed = []
    for cyc in split.cycles:
        sub = MilnorData(tuple(d.lambdas[j - 1] for j in cyc))
        for s in _decompose_cyclic(sub):
            mapped = tuple(cyc[i - 1] for i in s.indices)
            if s.kind == "abelian":
                summands.append(Summand("abelian", mapped))
            else:
                keyed.append(Summand(s.kind, mapped))
    keyed.sort(key=lambda s: s.indices[2])
    return Decomposition(_merge_abelian(keyed + summands), d.is_normalized)


def _merge_abelian(summands: list[Summand]) -> tuple[Summand, ...]:
    blocks = [s for s in summands if s.kind != "abelian"]
    rest = sorted(i for s in summands if s.kind == "abelian" for i in s.indices)
    if rest:
        blocks.append(Summand("abelian", tuple(rest)))
    return tuple(blocks)


def block_lambdas(d: MilnorData, s: Summand) -> tuple[Fraction, ...]:
    """Nonzero constants of a block: (l_c,) for h3, (l_c, l_d) for h4."""
    if s.kind == "abelian":
        return ()
    return tuple(d.lambdas[i - 1] for i in s.indices[2:])


def normalize(d: MilnorData) -> tuple[MilnorData, Matrix]:
    """Rescale to constants in {0, 1}.

    Returns the normalized data and the diagonal basis change T (columns are
    the new basis vectors) with ``change_of_basis(g, T) == g_normalized``.
    For an h4 block (a, b, c, d): Y_c = l_c X_c and Y_d = l_c l_d X_d.
    """
    dec = decompose(d)
    scales = [Fraction(1)] * d.n
    for s in dec.summands:
        if s.kind == "h3":
            scales[s.indices[2] - 1] = d.lambdas[s.indices[2] - 1]
        elif s.kind == "h4":
            lc = d.lambdas[s.indices[2] - 1]
            ld = d.lambdas[s.indices[3] - 1]
            scales[s.indices[2] - 1] = lc
            scales[s.indices[3] - 1] = lc * ld
    new = MilnorData(tuple(Fraction(int(v != 0)) for v in d.lambdas), d.sigma)
    return new, la.diag(scales)


def h3() -> LieAlgebra:
    return build_cyclic(MilnorData((0, 0, 1)))


def h4() -> LieAlgebra:
    return build_cyclic(MilnorData((0, 0, 1, 1)))


def all_binary(n: int):
    """Every MilnorData with constants in {0, 1}^n, in lexicographic order."""
    from itertools import product

    for bits in product((0, 1), repeat=n):
        yield MilnorData(bits)
