"""Rational weight systems for collapsing sums of shifted power kernels.

For each degree m >= 1 the weights w_1, ..., w_m are the unique exact
solution of a unit-upper-triangular linear system whose matrix entries
come from the generalized Bernoulli family:

    b(j, l) = (-1)^(l-j) B(l-j, l) / (l-j)!        for 1 <= j <= l,

with right-hand side (0, ..., 0, -s_m) and parity-dependent constant

    s_m = (-1)^((m-1)/2) (m-1)!    for odd m,
    s_m = (-1)^((m+2)/2) (m-1)!    for even m.

Row j of the system reads  sum_{l=j}^{m} b(j, l) w_l = rhs_j, and
b(l, l) = 1 makes back-substitution exact and division-free apart from
Fraction arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bernoulli import default_table
from .exact import ExactRational, factorial

__all__ = [
    "coeff_b",
    "d_coefficients",
    "s_constant",
    "TriangularSystem",
    "triangular_system",
    "WeightVector",
    "solve_weights",
]


def coeff_b(j: int, l: int) -> ExactRational:
    """Matrix entry b(j, l); defined for 1 <= j <= l."""
    if not 1 <= j <= l:
        raise ValueError(f"coeff_b requires 1 <= j <= l, got j={j}, l={l}")
    k = l - j
    sign = -1 if k & 1 else 1
    return sign * default_table().value(k, l) / factorial(k)


def d_coefficients(l: int) -> list[ExactRational]:
    """Descending-power coefficient row [b(l, l), b(l-1, l), ..., b(1, l)].

    First and last entries are always 1; for l <= 7 the row times
    (l-1)! is a classical pattern of positive integers.
    """
    if l < 1:
        raise ValueError(f"order l must be >= 1, got {l}")
    return [coeff_b(j, l) for j in range(l, 0, -1)]


def s_constant(m: int) -> ExactRational:
    """Alternating factorial constant on the right-hand side."""
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    if m % 2 == 1:
        sign = -1 if ((m - 1) // 2) & 1 else 1
    else:
        sign = -1 if ((m + 2) // 2) & 1 else 1
    return Fraction(sign * factorial(m - 1))


@dataclass(frozen=True)
class TriangularSystem:
    """Upper-triangular system matrix for degree m, keyed by (j, l)."""

    m: int
    entries: dict[tuple[int, int], ExactRational]

    def entry(self, j: int, l: int) -> ExactRational:
        return self.entries[(j, l)]


def triangular_system(m: int) -> TriangularSystem:
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    # touch the deepest column first so the shared table grows once
    default_table().value(m - 1, m)
    entries = {(j, l): coeff_b(j, l) for l in range(1, m + 1) for j in range(1, l + 1)}
    return TriangularSystem(m, entries)


@dataclass(frozen=True)
class WeightVector:
    """Solved weights for degree m; ``weights[i]`` is w_{i+1}."""

    m: int
    s_m: ExactRational
    weights: tuple[ExactRational, ...]

    def weight(self, l: int) -> ExactRational:
        if not 1 <= l <= self.m:
            raise ValueError(f"weight index must be in 1..{self.m}, got {l}")
        return self.weights[l - 1]


@lru_cache(maxsize=None)
def solve_weights(m: int) -> WeightVector:
    """Back-substitute the triangular system for degree m.

    The diagonal is identically 1, so w_m = rhs_m = -s_m and each
    earlier weight is rhs_j minus the already-known tail of its row.
    """
    system = triangular_system(m)
    s_m = s_constant(m)
    w: list[ExactRational] = [Fraction(0)] * (m + 1)  # 1-based
    w[m] = -s_m
    for j in range(m - 1, 0, -1):
        tail = sum(
            (system.entry(j, l) * w[l] for l in range(j + 1, m + 1)), Fraction(0)
        )
        w[j] = -tail
    return WeightVector(m, s_m, tuple(w[1:]))
