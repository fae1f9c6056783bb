from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaodd.exact import binomial
from zetaodd.hyperbolic import (
    partial_fraction_residual,
    q_coeff,
    tau,
    tau_row,
    tau_top,
)


class TestQCoefficients:
    def test_leading_is_one(self):
        for l in range(1, 30):
            assert q_coeff(1, l) == 1

    @pytest.mark.parametrize(
        "l,row",
        [
            (3, (1, -1)),
            (4, (1, -2)),
            (5, (1, -3, 1)),
            (8, (1, -6, 10, -4)),
            (10, (1, -8, 21, -20, 5)),
            (15, (1, -13, 66, -165, 210, -126, 28, -1)),
        ],
    )
    def test_known_rows(self, l, row):
        top = (l + 1) // 2
        assert tuple(q_coeff(j, l) for j in range(1, top + 1)) == row

    def test_chebyshev_closed_form(self):
        # the recursion reproduces the classical alternating-binomial
        # coefficients of the Chebyshev-style expansion in powers of y
        for l in range(1, 41):
            for j in range(1, (l + 1) // 2 + 1):
                expected = (-1) ** (j - 1) * binomial(l - j, j - 1)
                assert q_coeff(j, l) == expected

    def test_domain(self):
        with pytest.raises(ValueError):
            q_coeff(0, 5)
        with pytest.raises(ValueError):
            q_coeff(4, 5)  # ceil(5/2) = 3
        with pytest.raises(ValueError):
            q_coeff(1, 0)


class TestPartialFractions:
    @pytest.mark.parametrize("l", [1, 2, 3, 5, 8, 12])
    @pytest.mark.parametrize("u", ["0.3", "1.0", "2.7"])
    def test_residual_negligible(self, l, u):
        with mp.workdps(40):
            assert partial_fraction_residual(l, mp.mpf(u)) < mp.mpf("1e-30")

    @given(st.integers(1, 12), st.floats(0.05, 3.5))
    @settings(max_examples=60)
    def test_residual_negligible_random(self, l, u):
        with mp.workdps(40):
            assert partial_fraction_residual(l, u) < mp.mpf("1e-28")

    def test_domain(self):
        with pytest.raises(ValueError):
            partial_fraction_residual(0, 1.0)
        with pytest.raises(ValueError):
            partial_fraction_residual(3, 0)


class TestTau:
    def test_first_coefficient(self):
        assert tau(2, 3) == Fraction(1, 7)

    @pytest.mark.parametrize(
        "m,expected",
        [
            (5, {2: Fraction(-1, 93), 3: Fraction(1, 31)}),
            (7, {2: Fraction(2, 5715), 3: Fraction(-2, 381), 4: Fraction(1, 127)}),
            (
                9,
                {
                    2: Fraction(-1, 160965),
                    3: Fraction(1, 2555),
                    4: Fraction(-1, 511),
                    5: Fraction(1, 511),
                },
            ),
        ],
    )
    def test_rows(self, m, expected):
        assert tau_row(m).taus == expected

    def test_top_matches_general_route(self):
        for n in range(1, 11):
            assert tau_top(n) == tau(n + 1, 2 * n + 1)

    def test_top_values(self):
        # the observed pattern 1/(2^m - 1); the scan treats each value
        # as a fresh exact computation, not as this formula
        for n in range(1, 9):
            assert tau_top(n) == Fraction(1, 2 ** (2 * n + 1) - 1)

    def test_domain(self):
        with pytest.raises(ValueError):
            tau(2, 4)
        with pytest.raises(ValueError):
            tau(2, 1)
        with pytest.raises(ValueError):
            tau(6, 9)  # ceil(9/2) = 5
        with pytest.raises(ValueError):
            tau_row(6)
        with pytest.raises(ValueError):
            tau_top(0)

    def test_row_covers_quadrature_range(self):
        row = tau_row(11)
        assert sorted(row.taus) == [2, 3, 4, 5, 6]
        assert row.tau(6) == tau(6, 11)
