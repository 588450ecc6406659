"""Empirical densities #{0 < n <= X : a_t(n) = 0 mod p^j} / X."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .raduseller import SeriesGuardError, max_series
from .tcore import tcore_series

DEFAULT_CHECKPOINTS = (100, 1_000, 10_000, 20_000)


@dataclass(frozen=True)
class DensityTable:
    t: int
    modulus: int
    checkpoints: tuple[int, ...]
    numerators: tuple[int, ...]

    @property
    def densities(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, X) for k, X in zip(self.numerators, self.checkpoints))

    def density_at(self, X: int) -> Fraction:
        return self.densities[self.checkpoints.index(X)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "modulus", "X", "numerator", "denominator"])
        for X, k in zip(self.checkpoints, self.numerators):
            w.writerow([self.t, self.modulus, X, k, X])
        return buf.getvalue()


def measure_density(t: int, p: int, j: int,
                    checkpoints: Sequence[int] = DEFAULT_CHECKPOINTS) -> DensityTable:
    """One mod-p^j pass over a_t(1..X_max); n = 0 is excluded."""
    if j < 1 or p < 2:
        raise ValueError("need a prime p and j >= 1")
    pts = tuple(sorted(set(int(x) for x in checkpoints)))
    if not pts or pts[0] < 1:
        raise ValueError("checkpoints must be positive")
    if pts[-1] + 1 > max_series():
        raise SeriesGuardError(f"X={pts[-1]} exceeds series guard {max_series()}")
    u = p**j
    series = tcore_series(t, pts[-1] + 1, u)
    hits = np.cumsum(series.coeffs[1:] == 0)
    return DensityTable(t, u, pts, tuple(int(hits[X - 1]) for X in pts))
