"""Partial-fraction structure of symmetric exponential sums and the
rational coefficients that pair with the inverse-asech integrals.

For order l >= 1 the symmetric sum e^((1-l)u) + e^((3-l)u) + ... +
e^((l-1)u), divided by (e^u + e^-u)^l, collapses onto odd negative
powers of y = e^u + e^-u:

    sum_{p=0}^{l-1} e^((2p+1-l)u) / y^l  =  sum_{j=1}^{ceil(l/2)} q(j, l) / y^(2j-1)

with integer coefficients q(j, l) given by the recursion

    q(1, l) = 1,
    q(j, l) = 1 - sum_{k=1}^{j-1} C(l+1-2k, j-k) q(k, l).

The tau coefficients then mix a weight system into these integers:

    tau(j, m) = -(2^(m-1) / ((m-1)! (2^m - 1)))
                * sum_{l=2j-1}^{m} w_l q(j, l) / 4^(j-1),

and for odd m = 2n+1 the top coefficient admits the shortcut

    tau(n+1, 2n+1) = -w_m q(n+1, m) / ((2n)! (2^m - 1)),

which this module cross-checks against the general formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .exact import ExactRational, binomial, factorial
from .weights import solve_weights

__all__ = [
    "q_coeff",
    "partial_fraction_residual",
    "tau",
    "tau_top",
    "TauTable",
    "tau_row",
]


def _ceil_half(l: int) -> int:
    return (l + 1) // 2


@lru_cache(maxsize=None)
def _q_row(l: int) -> tuple[int, ...]:
    if l < 1:
        raise ValueError(f"order l must be >= 1, got {l}")
    row: list[int] = [1]
    for j in range(2, _ceil_half(l) + 1):
        acc = 1
        for k in range(1, j):
            # upper index l+1-2k >= 2 throughout the recursion domain
            acc -= binomial(l + 1 - 2 * k, j - k) * row[k - 1]
        row.append(acc)
    return tuple(row)


def q_coeff(j: int, l: int) -> int:
    """Integer partial-fraction coefficient q(j, l), 1 <= j <= ceil(l/2)."""
    if l < 1:
        raise ValueError(f"order l must be >= 1, got {l}")
    if not 1 <= j <= _ceil_half(l):
        raise ValueError(
            f"index j must be in 1..ceil(l/2) = 1..{_ceil_half(l)}, got {j}"
        )
    return _q_row(l)[j - 1]


def partial_fraction_residual(l: int, u) -> mp.mpf:
    """|direct sum - staircase expansion| at the point u > 0.

    Evaluated at the ambient mpmath precision; both sides are computed
    from scratch, so the residual measures the exactness of the q
    integers rather than quadrature behavior.
    """
    if l < 1:
        raise ValueError(f"order l must be >= 1, got {l}")
    u = mp.mpf(u)
    if u <= 0:
        raise ValueError("residual check requires u > 0")
    y = mp.exp(u) + mp.exp(-u)
    step = mp.exp(2 * u)
    term = mp.exp((1 - l) * u)
    direct = mp.mpf(0)
    for _ in range(l):
        direct += term
        term *= step
    direct /= y**l
    expanded = mp.mpf(0)
    for j in range(1, _ceil_half(l) + 1):
        expanded += q_coeff(j, l) / y ** (2 * j - 1)
    return abs(direct - expanded)


@lru_cache(maxsize=None)
def tau(j: int, m: int) -> ExactRational:
    """Rational coefficient tau(j, m) for odd m >= 3 and 1 <= j <= (m+1)/2."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"degree m must be odd and >= 3, got {m}")
    if not 1 <= j <= _ceil_half(m):
        raise ValueError(
            f"index j must be in 1..{_ceil_half(m)} for m={m}, got {j}"
        )
    wv = solve_weights(m)
    mix = sum(
        (wv.weight(l) * q_coeff(j, l) for l in range(2 * j - 1, m + 1)),
        Fraction(0),
    )
    front = -Fraction(2 ** (m - 1), factorial(m - 1) * (2**m - 1))
    return front * mix / Fraction(4 ** (j - 1))


def tau_top(n: int) -> ExactRational:
    """tau(n+1, 2n+1) via the closed shortcut, double-checked.

    Only the l = m term of the mixing sum survives at the top index,
    which collapses the general formula to a three-factor product.  The
    shortcut and the general path must agree exactly; a mismatch would
    mean the recursion domain or the weight solve drifted, so it is
    treated as an internal error rather than a return value.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = 2 * n + 1
    wv = solve_weights(m)
    shortcut = Fraction(
        -wv.weight(m) * q_coeff(n + 1, m),
        factorial(2 * n) * (2**m - 1),
    )
    general = tau(n + 1, m)
    if shortcut != general:
        raise ArithmeticError(
            f"tau top mismatch at n={n}: shortcut {shortcut} vs general {general}"
        )
    return shortcut


@dataclass(frozen=True)
class TauTable:
    """All tau coefficients of one odd degree, keyed by their index j."""

    m: int
    taus: dict[int, ExactRational]

    def tau(self, j: int) -> ExactRational:
        return self.taus[j]


def tau_row(m: int) -> TauTable:
    """tau(j, m) for the quadrature-relevant range 2 <= j <= (m+1)/2."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"degree m must be odd and >= 3, got {m}")
    return TauTable(m, {j: tau(j, m) for j in range(2, _ceil_half(m) + 1)})
