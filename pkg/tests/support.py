"""Shared strategies and helpers for the tests."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from ffc import RatMatrix, RatPoly


def fractions_st(max_num: int = 6, max_den: int = 4):
    """Rationals with small numerators and denominators."""
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def real_rooted_st(min_degree: int = 1, max_degree: int = 5):
    """Monic real-rooted polynomials built from explicit rational roots."""
    return st.lists(
        fractions_st(), min_size=min_degree, max_size=max_degree
    ).map(RatPoly.from_roots)


def nonneg_rooted_st(min_degree: int = 1, max_degree: int = 5):
    """Monic polynomials whose roots are all nonnegative rationals."""
    return st.lists(
        fractions_st().map(abs), min_size=min_degree, max_size=max_degree
    ).map(RatPoly.from_roots)


def grid_matrix(grid) -> RatMatrix:
    return RatMatrix.from_rows(
        tuple(tuple(Fraction(v) for v in row) for row in grid)
    )


def symmetric_grid_st(d: int, span: int = 4):
    """Symmetric integer matrices of side d."""
    n_free = d * (d + 1) // 2

    def build(vals):
        it = iter(vals)
        grid = [[0] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                v = next(it)
                grid[i][j] = v
                grid[j][i] = v
        return grid_matrix(grid)

    return st.lists(
        st.integers(min_value=-span, max_value=span),
        min_size=n_free,
        max_size=n_free,
    ).map(build)
