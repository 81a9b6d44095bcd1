"""Reading and writing the line-oriented algebra file format.

::

    # comments and blank lines are ignored
    dim 4
    milnor 0 0 1 1          # or: bracket i j k p/q  (c^k_ij += p/q, i < j)
    sigma 2 3 4 1           # optional, image list, milnor files only
    metric                  # optional, followed by n rows of n rationals
    1 0 0 0
    ...
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import LieAlgebra
from .geometry import InnerProduct, is_positive_definite
from .linalg import Matrix
from .milnor import MilnorData, milnor_algebra


class ParseError(ValueError):
    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        where = f"line {lineno}" if lineno is not None else "end of file"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class AlgebraFile:
    dim: int
    milnor: tuple[Fraction, ...] | None = None
    sigma: tuple[int, ...] | None = None
    brackets: tuple[tuple[int, int, int, Fraction], ...] = ()
    metric: Matrix | None = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def source(self) -> str:
        return "milnor" if self.milnor is not None else "brackets"

    def milnor_data(self) -> MilnorData | None:
        if self.milnor is None:
            return None
        return MilnorData(self.milnor, self.sigma)

    def algebra(self) -> LieAlgebra:
        if self.milnor is not None:
            return milnor_algebra(self.milnor_data())
        return LieAlgebra.from_brackets(self.dim, self.brackets)

    def inner_product(self) -> InnerProduct:
        """The declared metric; raises NotPositiveDefinite if it is not one."""
        if self.metric is None:
            return InnerProduct.identity(self.dim)
        return InnerProduct(self.metric)


def _rational(token: str, lineno: int) -> Fraction:
    try:
        return la.parse_rational(token)
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from None


def _int(token: str, lineno: int, what: str) -> int:
    if not token.lstrip("-").isdigit():
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}")
    return int(token)


def _index(token: str, lineno: int, n: int) -> int:
    i = _int(token, lineno, "basis index")
    if not 1 <= i <= n:
        raise ParseError(lineno, f"basis index {i} out of range 1..{n}")
    return i


def parse(text: str | bytes) -> AlgebraFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(None, f"input is not UTF-8 ({exc.reason})") from None
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((lineno, body))

    dim = None
    milnor = sigma = metric = None
    sigma_line = None
    brackets: list[tuple[int, int, int, Fraction]] = []
    pos = 0
    while pos < len(lines):
        lineno, (key, *args) = lines[pos]
        pos += 1
        if key == "dim":
            if dim is not None:
                raise ParseError(lineno, "duplicate dim")
            if len(args) != 1:
                raise ParseError(lineno, "dim takes exactly one value")
            dim = _int(args[0], lineno, "dim")
            if dim < 1:
                raise ParseError(lineno, "dim must be positive")
            continue
        if dim is None:
            raise ParseError(lineno, f"{key!r} before dim")
        if key == "milnor":
            if milnor is not None:
                raise ParseError(lineno, "duplicate milnor line")
            if brackets:
                raise ParseError(lineno, "milnor and bracket sections are exclusive")
            if len(args) != dim:
                raise ParseError(lineno, f"milnor needs {dim} constants, got {len(args)}")
            if dim < 3:
                raise ParseError(lineno, "Milnor frames need dim >= 3")
            milnor = tuple(_rational(t, lineno) for t in args)
        elif key == "sigma":
            if sigma is not None:
                raise ParseError(lineno, "duplicate sigma line")
            if len(args) != dim:
                raise ParseError(lineno, f"sigma needs {dim} entries, got {len(args)}")
            sigma = tuple(_index(t, lineno, dim) for t in args)
            if sorted(sigma) != list(range(1, dim + 1)):
                raise ParseError(lineno, "sigma is not a permutation")
            sigma_line = lineno
        elif key == "bracket":
            if milnor is not None:
                raise ParseError(lineno, "milnor and bracket sections are exclusive")
            if len(args) != 4:
                raise ParseError(lineno, "bracket takes i j k p/q")
            i, j, k = (_index(t, lineno, dim) for t in args[:3])
            if i >= j:
                raise ParseError(lineno, f"bracket needs i < j, got {i} {j}")
            brackets.append((i, j, k, _rational(args[3], lineno)))
        elif key == "metric":
            if metric is not None:
                raise ParseError(lineno, "duplicate metric")
            if args:
                raise ParseError(lineno, "metric rows go on the following lines")
            rows = []
            for _ in range(dim):
                if pos >= len(lines):
                    raise ParseError(None, f"metric needs {dim} rows, got {len(rows)}")
                row_no, row = lines[pos]
                pos += 1
                if len(row) != dim:
                    raise ParseError(row_no, f"metric row needs {dim} entries, got {len(row)}")
                rows.append(tuple(_rational(t, row_no) for t in row))
            metric = tuple(rows)
            if not la.is_symmetric(metric):
                raise ParseError(lineno, "metric is not symmetric")
        else:
            raise ParseError(lineno, f"unknown keyword {key!r}")

    if dim is None:
        raise ParseError(None, "missing dim")
    if milnor is None and not brackets:
        raise ParseError(None, "need a milnor line or bracket lines")
    if sigma is not None and milnor is None:
        raise ParseError(sigma_line, "sigma only applies to milnor data")
    warnings = []
    if metric is not None and not is_positive_definite(metric):
        warnings.append("metric is not positive definite")
    return AlgebraFile(dim, milnor, sigma, tuple(brackets), metric, tuple(warnings))


def parse_file(path) -> AlgebraFile:
    with open(path, "rb") as fh:
        return parse(fh.read())


def format_algebra_file(
    milnor: Sequence[Fraction], metric: Matrix | None = None, comments: Sequence[str] = ()
) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"dim {len(milnor)}")
    out.append("milnor " + " ".join(str(la.to_fraction(v)) for v in milnor))
    if metric is not None:
        out.append("metric")
        out.extend(" ".join(str(v) for v in row) for row in metric)
    return "\n".join(out) + "\n"
