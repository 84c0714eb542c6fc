"""Cauchy transforms, root bounds, and matching polynomials."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffc import (
    ParameterError,
    QuadScalar,
    RatPoly,
    cauchy_transform,
    char_poly,
    check_asym_bound,
    check_sym_bound,
    bip_matching_nontrivial_poly,
    inverse_cauchy,
    matching_grid,
    matching_nontrivial_poly,
    max_root_bracket,
    mfold_root_bound_table,
    ramanujan_bound,
)
from support import grid_matrix, real_rooted_st


def poly(*descending):
    return RatPoly.from_coeffs([Fraction(c) for c in reversed(descending)])


class TestCauchyTransform:
    @pytest.mark.parametrize("d", [1, 2, 5])
    def test_pure_power(self, d):
        assert cauchy_transform(RatPoly.x_power(d), Fraction(2)) == Fraction(1, 2)

    def test_two_symmetric_roots(self):
        assert cauchy_transform(poly(1, 0, -1), Fraction(2)) == Fraction(2, 3)

    def test_partial_fraction_sum(self):
        p = RatPoly.from_roots([1, 1, -1, -1, -1])
        assert cauchy_transform(p, Fraction(3)) == Fraction(7, 20)


class TestInverseCauchy:
    def test_pure_power(self):
        assert abs(inverse_cauchy(RatPoly.x_power(3), Fraction(1, 2)) - 2.0) < 1e-9

    def test_two_symmetric_roots(self):
        assert abs(inverse_cauchy(poly(1, 0, -1), Fraction(2, 3)) - 2.0) < 1e-9

    @given(real_rooted_st(max_degree=4))
    def test_large_weight_approaches_the_top_root(self, p):
        lo, hi = max_root_bracket(p, Fraction(1, 2 ** 20))
        val = inverse_cauchy(p, Fraction(10 ** 6))
        assert float(lo) < val < float(hi) + 1e-4


class TestBoundReports:
    @pytest.mark.parametrize("w", [Fraction(1, 4), Fraction(1), Fraction(4)])
    def test_pure_powers_meet_with_equality(self, w):
        report = check_sym_bound(RatPoly.x_power(3), RatPoly.x_power(3), 3, w)
        assert report.passed
        assert abs(report.margin) < 1e-9

    def test_shifted_identity_meets_with_equality(self):
        one = RatPoly.from_roots([1, 1])
        report = check_sym_bound(one, one, 2, Fraction(1))
        assert report.passed
        assert report.lhs == pytest.approx(3.0, abs=1e-9)
        assert report.rhs == pytest.approx(3.0, abs=1e-9)

    def test_asym_ones(self):
        ones = RatPoly.from_roots([1, 1, 1, 1])
        report = check_asym_bound(ones, ones, 4, Fraction(1))
        assert report.passed
        assert report.margin >= -1e-9

    @given(real_rooted_st(max_degree=4), real_rooted_st(max_degree=4))
    def test_sym_margin_is_never_negative(self, p, q):
        d = max(p.degree, q.degree)
        report = check_sym_bound(p, q, d, Fraction(1))
        assert report.passed


class TestMatchingPolynomials:
    def test_smallest_cases(self):
        assert matching_nontrivial_poly(2) == poly(1, 1)
        assert matching_nontrivial_poly(4) == RatPoly.from_roots([1, -1, -1])
        assert bip_matching_nontrivial_poly(2) == poly(1, -1)
        assert bip_matching_nontrivial_poly(5) == RatPoly.from_roots([1, 1, 1, 1])

    @pytest.mark.parametrize("d", [2, 4, 6])
    def test_restoring_the_trivial_root_gives_a_matching_spectrum(self, d):
        full = matching_nontrivial_poly(d) * poly(1, -1)
        assert full == char_poly(grid_matrix(matching_grid(d)))

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_square_substitution_gives_the_dilation_spectrum(self, d):
        squared = bip_matching_nontrivial_poly(d).substitute_square()
        assert squared == RatPoly.from_roots([1, -1] * (d - 1))

    def test_odd_side_is_rejected_for_plain_matchings(self):
        with pytest.raises(ParameterError):
            matching_nontrivial_poly(3)


class TestRamanujanBound:
    def test_known_values(self):
        assert ramanujan_bound(2) == Fraction(2)
        assert str(ramanujan_bound(3)) == "2*sqrt(2)"
        assert ramanujan_bound(5) == Fraction(4)

    def test_degree_one_is_rejected(self):
        with pytest.raises(ParameterError):
            ramanujan_bound(1)

    def test_float_value(self):
        assert float(ramanujan_bound(3)) == pytest.approx(2.8284271247461903)


class TestBoundTable:
    def test_first_interesting_cell(self):
        (row,) = mfold_root_bound_table([3], [4], "sym")
        assert row.below_bound
        assert row.bound == QuadScalar.sqrt_int(8)
        assert row.bracket_hi < row.bound

    def test_both_modes_stay_below_the_bound(self):
        rows = mfold_root_bound_table([3, 4], [4, 6], "sym")
        rows += mfold_root_bound_table([3, 4], [4, 6], "asym")
        assert len(rows) == 8
        assert all(r.below_bound for r in rows)

    def test_degenerate_degree_two_fold(self):
        rows = mfold_root_bound_table([2], [2, 4], "sym")
        assert all(r.below_bound for r in rows)
        assert all(r.bound == 2 for r in rows)

    def test_growth_in_d_is_reported(self):
        rows = mfold_root_bound_table([3], [4, 8, 12], "sym")
        tops = [r.bracket_hi for r in rows]
        assert tops == sorted(tops)
