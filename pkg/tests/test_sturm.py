"""Exact root counting, bracketing, and interlacing."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from ffc import (
    QuadScalar,
    RatPoly,
    cauchy_root_bound,
    compare_max_roots,
    count_roots_in,
    count_roots_in_mult,
    interlaces,
    is_real_rooted,
    isolate_real_roots,
    max_root_bracket,
    root_multiplicity_at,
)
from support import fractions_st, real_rooted_st


def poly(*descending):
    return RatPoly.from_coeffs([Fraction(c) for c in reversed(descending)])


class TestCountRoots:
    def test_open_interval_containing_both_roots(self):
        assert count_roots_in(poly(1, 0, -2), Fraction(-2), Fraction(2), open_interval=True) == 2

    def test_open_interval_with_roots_at_endpoints(self):
        root2 = QuadScalar.sqrt_int(2)
        assert count_roots_in(poly(1, 0, -2), -root2, root2, open_interval=True) == 0

    def test_closed_interval_with_roots_at_endpoints(self):
        root2 = QuadScalar.sqrt_int(2)
        assert count_roots_in(poly(1, 0, -2), -root2, root2) == 2

    def test_multiplicity_weighted_count(self):
        p = RatPoly.from_roots([1, 1, -1, -1, -1])
        assert count_roots_in_mult(p, Fraction(-2), Fraction(2)) == 5
        assert count_roots_in_mult(p, Fraction(-1), Fraction(2), open_interval=True) == 2
        assert count_roots_in(p, Fraction(-2), Fraction(2)) == 2

    @given(st.lists(fractions_st(), min_size=1, max_size=5))
    def test_every_root_is_counted(self, roots):
        p = RatPoly.from_roots(roots)
        lo = min(roots) - 1
        hi = max(roots) + 1
        assert count_roots_in_mult(p, lo, hi) == p.degree
        assert count_roots_in(p, lo, hi) == len(set(roots))


class TestMultiplicity:
    def test_known_multiplicities(self):
        p = RatPoly.from_roots([1, 1, -1, -1, -1])
        assert root_multiplicity_at(p, Fraction(1)) == 2
        assert root_multiplicity_at(p, Fraction(-1)) == 3
        assert root_multiplicity_at(p, Fraction(0)) == 0


class TestMaxRootBracket:
    def test_simple_quadratic(self):
        lo, hi = max_root_bracket(poly(1, 0, -1), Fraction(1, 100))
        assert lo < 1 <= hi
        assert hi - lo <= Fraction(1, 100)

    def test_shifted_roots(self):
        lo, hi = max_root_bracket(RatPoly.from_roots([3, -5]), Fraction(1, 100))
        assert lo < 3 <= hi

    def test_repeated_roots(self):
        p = RatPoly.from_roots([1, 1, -1, -1, -1])
        lo, hi = max_root_bracket(p, Fraction(1, 1024))
        assert lo < 1 <= hi

    @given(st.lists(fractions_st(), min_size=1, max_size=5))
    def test_bracket_contains_exactly_the_top_root(self, roots):
        p = RatPoly.from_roots(roots)
        lo, hi = max_root_bracket(p)
        assert count_roots_in(p, lo, hi) >= 1
        beyond = hi + cauchy_root_bound(p) + 1
        assert count_roots_in(p, hi, beyond, open_interval=True) == 0
        assert lo < max(roots) <= hi


class TestRealRootedness:
    def test_examples(self):
        assert is_real_rooted(poly(1, 0, -1))
        assert not is_real_rooted(poly(1, 0, 1))
        assert is_real_rooted(RatPoly.from_roots([1, 1, 1]))

    @given(real_rooted_st())
    def test_products_of_linear_factors(self, p):
        assert is_real_rooted(p)


class TestInterlacing:
    def test_examples(self):
        assert interlaces(poly(1, 0), poly(1, 0, -1))
        assert not interlaces(poly(1, -5), poly(1, 0, -1))

    @given(real_rooted_st(min_degree=2))
    def test_derivative_interlaces(self, p):
        assert interlaces(p.derivative(), p)


class TestCompareMaxRoots:
    def test_orders_by_largest_root(self):
        assert compare_max_roots(poly(1, 0, -2), poly(1, 0, -3)) == -1
        assert compare_max_roots(poly(1, 0, -3), poly(1, 0, -2)) == 1

    def test_multiplicity_does_not_matter(self):
        assert compare_max_roots(RatPoly.from_roots([1, 1, 1]), poly(1, -1)) == 0

    @given(real_rooted_st(), real_rooted_st())
    def test_antisymmetry(self, p, q):
        assert compare_max_roots(p, q) == -compare_max_roots(q, p)


class TestIsolation:
    def test_brackets_separate_distinct_roots(self):
        p = RatPoly.from_roots([0, 1, 1, Fraction(5, 2)])
        brackets = isolate_real_roots(p)
        assert len(brackets) == 3
        for lo, hi in brackets:
            assert count_roots_in(p, lo, hi) == 1
