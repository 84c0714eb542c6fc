"""Exact rational matrices and characteristic polynomials.

Characteristic polynomials come from the Faddeev-LeVerrier recurrence, which
needs only ring operations plus divisions that are guaranteed exact.  Integer
matrices (the common case in permutation enumerations) run on a plain-int
fast path; everything else runs on Fractions.  Both paths are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ContractError, ParameterError
from .poly import RatPoly, _as_fraction


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix stored as a tuple of row tuples."""

    rows: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RatMatrix":
        built = tuple(tuple(_as_fraction(v) for v in row) for row in rows)
        if not built:
            raise ParameterError("matrix needs at least one row")
        width = len(built[0])
        if any(len(r) != width for r in built):
            raise ParameterError("ragged rows")
        return cls(built)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "RatMatrix":
        m = n if m is None else m
        return cls.from_rows([[0] * m for _ in range(n)])

    # -- shape and scalars ----------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        n = self.nrows
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(n)
            for j in range(i + 1, n)
        )

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ParameterError("trace needs a square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows)))

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ParameterError("shape mismatch in matrix addition")
        return RatMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ParameterError("shape mismatch in matrix product")
        cols = other.transpose().rows
        return RatMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                for row in self.rows
            )
        )

    def scale(self, c) -> "RatMatrix":
        c = _as_fraction(c)
        return RatMatrix(tuple(tuple(c * v for v in row) for row in self.rows))

    # -- structure probes --------------------------------------------------------

    def int_rows(self) -> Optional[list[list[int]]]:
        """Plain-int copy when every entry is an integer, else None."""
        out = []
        for row in self.rows:
            cur = []
            for v in row:
                if v.denominator != 1:
                    return None
                cur.append(v.numerator)
            out.append(cur)
        return out

    def constant_row_sum(self) -> Optional[Fraction]:
        sums = {sum(row, Fraction(0)) for row in self.rows}
        return sums.pop() if len(sums) == 1 else None

    def constant_doubly_regular_sum(self) -> Optional[Fraction]:
        """Common row-and-column sum, or None if none exists."""
        s = self.constant_row_sum()
        if s is None:
            return None
        t = self.transpose().constant_row_sum()
        return s if s == t else None

    def rank(self) -> int:
        """Exact rank via Gaussian elimination over the rationals."""
        work = [list(row) for row in self.rows]
        nr, nc = len(work), len(work[0])
        rank, pivot_row = 0, 0
        for col in range(nc):
            pivot = next(
                (r for r in range(pivot_row, nr) if work[r][col] != 0), None
            )
            if pivot is None:
                continue
            work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
            inv = 1 / work[pivot_row][col]
            for r in range(pivot_row + 1, nr):
                f = work[r][col] * inv
                if f:
                    for c in range(col, nc):
                        work[r][c] -= f * work[pivot_row][c]
            pivot_row += 1
            rank += 1
            if pivot_row == nr:
                break
        return rank


def dilation(m: RatMatrix) -> RatMatrix:
    """Symmetric block matrix [[0, M], [M^T, 0]]."""
    nr, nc = m.nrows, m.ncols
    zero = Fraction(0)
    top = tuple(
        tuple(zero for _ in range(nr)) + m.rows[i] for i in range(nr)
    )
    mt = m.transpose()
    bottom = tuple(
        mt.rows[j] + tuple(zero for _ in range(nc)) for j in range(nc)
    )
    return RatMatrix(top + bottom)


# -- characteristic polynomials ---------------------------------------------


def charpoly_int_coeffs(rows: list[list[int]]) -> tuple[int, ...]:
    """Ascending coefficients of det(xI - A) for an integer matrix A."""
    n = len(rows)
    c = [0] * (n + 1)
    c[n] = 1
    work = [[0] * n for _ in range(n)]
    rng = range(n)
    for k in range(1, n + 1):
        # work <- A @ work + c[n-k+1] * I
        if k == 1:
            nxt = [[c[n] if i == j else 0 for j in rng] for i in rng]
        else:
            cols = list(zip(*work))
            nxt = [
                [
                    sum(a * b for a, b in zip(row, cols[j]))
                    for j in rng
                ]
                for row in rows
            ]
            add = c[n - k + 1]
            for i in rng:
                nxt[i][i] += add
        work = nxt
        t = sum(
            rows[i][j] * work[j][i] for i in rng for j in rng
        )
        if t % k:
            raise ContractError("Faddeev-LeVerrier trace division not exact")
        c[n - k] = -(t // k)
    return tuple(c)


def charpoly_fraction_coeffs(rows) -> tuple[Fraction, ...]:
    n = len(rows)
    c: list[Fraction] = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    work = [[Fraction(0)] * n for _ in range(n)]
    rng = range(n)
    for k in range(1, n + 1):
        if k == 1:
            nxt = [[c[n] if i == j else Fraction(0) for j in rng] for i in rng]
        else:
            cols = list(zip(*work))
            nxt = [
                [
                    sum((a * b for a, b in zip(row, cols[j])), Fraction(0))
                    for j in rng
                ]
                for row in rows
            ]
            add = c[n - k + 1]
            for i in rng:
                nxt[i][i] += add
        work = nxt
        t = sum(
            (rows[i][j] * work[j][i] for i in rng for j in rng), Fraction(0)
        )
        c[n - k] = -t / k
    return tuple(c)


def char_poly(m: RatMatrix) -> RatPoly:
    """Monic characteristic polynomial det(xI - M), exactly."""
    if not m.is_square:
        raise ParameterError("characteristic polynomial needs a square matrix")
    ints = m.int_rows()
    if ints is not None:
        return RatPoly.from_coeffs(charpoly_int_coeffs(ints))
    return RatPoly(charpoly_fraction_coeffs(m.rows))
