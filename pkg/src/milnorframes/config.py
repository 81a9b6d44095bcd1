"""Numeric settings shared by the library entry points and the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import DEFAULT_TOL


@dataclass(frozen=True)
class NumericConfig:
    """``tol`` thresholds every floating point decision.

    ``exact`` forbids the float fallback: commands that would need an
    irrational square root raise (or omit the irrational part) instead.
    """

    tol: float = DEFAULT_TOL
    exact: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise ValueError(f"tolerance must be positive and finite, got {self.tol}")
