"""Finite additive convolutions of polynomials at a fixed level d.

Both convolutions are bilinear in the signed coefficient vectors defined by

    p(x) = sum_{i=0}^{d} x**(d-i) * (-1)**i * a_i,

so polynomials of degree below d embed with leading zero entries.  The
symmetric convolution weights the product a_i * b_j by

    W(d, i, j) = (d-i)! (d-j)! / (d! (d-i-j)!),

and the asymmetric convolution by W(d, i, j)**2.  These closed forms are not
taken on faith here: the test suite accepts them only after exact agreement
with independent permutation-enumeration averages on random instances (see
the quadrature module), plus the classical identities they must satisfy
(unit element x**d, the derivative identity against x**(d-1) (x-d), and the
degree-1 asymmetric case).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ParameterError
from .poly import RatPoly


@dataclass(frozen=True)
class SignedCoeffs:
    """Signed coefficient vector of a polynomial at level d."""

    level: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        if self.level < 0 or len(self.a) != self.level + 1:
            raise ParameterError("signed coefficient vector has wrong length")

    @classmethod
    def from_poly(cls, p: RatPoly, d: int) -> "SignedCoeffs":
        if p.degree > d:
            raise ParameterError(f"degree {p.degree} exceeds level {d}")
        a = tuple(
            (-1) ** i * p.coeff(d - i) for i in range(d + 1)
        )
        return cls(level=d, a=a)

    def to_poly(self) -> RatPoly:
        d = self.level
        return RatPoly.from_coeffs(
            [(-1) ** (d - k) * self.a[d - k] for k in range(d + 1)]
        )


def _check_level(p: RatPoly, q: RatPoly, d: int) -> None:
    if d < 1:
        raise ParameterError("convolution level must be at least 1")
    if p.degree > d or q.degree > d:
        raise ParameterError("input degree exceeds convolution level")


def _convolve(p: RatPoly, q: RatPoly, d: int, squared: bool) -> RatPoly:
    _check_level(p, q, d)
    ap = SignedCoeffs.from_poly(p, d).a
    aq = SignedCoeffs.from_poly(q, d).a
    fact = [factorial(k) for k in range(d + 1)]
    out = []
    for k in range(d + 1):
        c = Fraction(0)
        for i in range(k + 1):
            j = k - i
            if ap[i] == 0 or aq[j] == 0:
                continue
            w = Fraction(fact[d - i] * fact[d - j], fact[d] * fact[d - k])
            if squared:
                w *= w
            c += w * ap[i] * aq[j]
        out.append(c)
    return SignedCoeffs(level=d, a=tuple(out)).to_poly()


def sym_convolve(p: RatPoly, q: RatPoly, d: int) -> RatPoly:
    """Symmetric additive convolution of p and q at level d."""
    return _convolve(p, q, d, squared=False)


def asym_convolve(p: RatPoly, q: RatPoly, d: int) -> RatPoly:
    """Asymmetric (square-weighted) additive convolution at level d."""
    return _convolve(p, q, d, squared=True)


def _m_fold(p: RatPoly, m: int, d: int, squared: bool) -> RatPoly:
    if m < 1:
        raise ParameterError("fold count must be at least 1")
    _check_level(p, p, d)
    acc = p
    for _ in range(m - 1):
        acc = _convolve(acc, p, d, squared)
    return acc


def m_fold_sym(p: RatPoly, m: int, d: int) -> RatPoly:
    """p convolved with itself m times symmetrically (m = 1 returns p)."""
    return _m_fold(p, m, d, squared=False)


def m_fold_asym(p: RatPoly, m: int, d: int) -> RatPoly:
    """p convolved with itself m times asymmetrically (m = 1 returns p)."""
    return _m_fold(p, m, d, squared=True)
