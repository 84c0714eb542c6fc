"""Exact univariate polynomials over the rationals.

Coefficients are ``fractions.Fraction`` values stored in ascending order of
degree with no trailing zeros, so equal polynomials compare equal and hash
alike.  Everything here is exact; no floating point enters any computation.
The zero polynomial has degree -1 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from .errors import ContractError, ParameterError


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int) or isinstance(v, str):
        return Fraction(v)
    raise ParameterError(f"exact coefficient expected, got {type(v).__name__}")


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    last = len(coeffs)
    while last > 0 and coeffs[last - 1] == 0:
        last -= 1
    return tuple(coeffs[:last])


@dataclass(frozen=True)
class RatPoly:
    """Immutable rational-coefficient polynomial, ascending coefficients."""

    coeffs: tuple[Fraction, ...]

    # -- construction ------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "RatPoly":
        return cls(_trim([_as_fraction(c) for c in coeffs]))

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def one(cls) -> "RatPoly":
        return cls((Fraction(1),))

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def x_power(cls, n: int) -> "RatPoly":
        if n < 0:
            raise ParameterError("x_power needs n >= 0")
        return cls(tuple(Fraction(0) for _ in range(n)) + (Fraction(1),))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RatPoly":
        """Monic polynomial with the given rational roots (with repetition)."""
        p = cls.one()
        for r in roots:
            p = p * cls((-_as_fraction(r), Fraction(1)))
        return p

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if self.is_zero:
            raise ParameterError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> Fraction:
        """Coefficient of x**k (zero beyond the stored length)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(_trim(out))

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        if not isinstance(other, RatPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return RatPoly(_trim(out))

    def __rmul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        return NotImplemented

    def scale(self, c: Fraction) -> "RatPoly":
        c = _as_fraction(c)
        if c == 0:
            return RatPoly.zero()
        return RatPoly(tuple(a * c for a in self.coeffs))

    def monic(self) -> "RatPoly":
        if self.is_zero:
            raise ParameterError("cannot normalize the zero polynomial")
        return self.scale(1 / self.lead)

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        den = other.coeffs
        dd = len(den) - 1
        inv_lead = 1 / den[-1]
        quo = [Fraction(0)] * max(0, len(rem) - dd)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c == 0:
                continue
            f = c * inv_lead
            quo[top - dd] = f
            rem[top] = Fraction(0)
            for j in range(dd):
                rem[top - dd + j] -= f * den[j]
        return RatPoly(_trim(quo)), RatPoly(_trim(rem))

    def div_exact(self, other: "RatPoly") -> "RatPoly":
        """Quotient self/other, raising ContractError on nonzero remainder."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ContractError("expected exact polynomial division")
        return q

    # -- calculus and substitutions -----------------------------------------

    def derivative(self) -> "RatPoly":
        if len(self.coeffs) <= 1:
            return RatPoly.zero()
        return RatPoly(
            tuple(self.coeffs[k] * k for k in range(1, len(self.coeffs)))
        )

    def substitute_square(self) -> "RatPoly":
        """Return s with s(x) = p(x**2): coefficients interleaved with zeros."""
        if self.is_zero:
            return self
        out = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return RatPoly(_trim(out))

    def __call__(self, x):
        """Horner evaluation; works for Fraction, int, and quadratic scalars."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- presentation --------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


# -- gcd and square-free structure -------------------------------------------


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic greatest common divisor over the rationals."""
    if a.is_zero and b.is_zero:
        raise ParameterError("gcd(0, 0) is undefined")
    while not b.is_zero:
        _, r = divmod(a, b)
        a, b = b, r
    return a.monic() if a.degree > 0 else RatPoly.one()


def squarefree_part(p: RatPoly) -> RatPoly:
    """Monic polynomial with the same roots as p, all simple."""
    if p.is_zero:
        raise ParameterError("zero polynomial has no square-free part")
    if p.degree == 0:
        return RatPoly.one()
    g = poly_gcd(p, p.derivative())
    return p.div_exact(g).monic()


def squarefree_decomposition(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun decomposition: pairs (factor, multiplicity) with the factors monic,
    square-free, pairwise coprime, and p = lead * prod(factor**multiplicity).
    """
    if p.is_zero:
        raise ParameterError("zero polynomial has no square-free decomposition")
    f = p.monic()
    if f.degree == 0:
        return []
    fp = f.derivative()
    g = poly_gcd(f, fp)
    if g.degree == 0:
        return [(f, 1)]
    out: list[tuple[RatPoly, int]] = []
    c = f.div_exact(g)
    d = fp.div_exact(g) - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c.div_exact(a)
        d = d.div_exact(a) - c.derivative()
        i += 1
    return out


def cauchy_root_bound(p: RatPoly) -> Fraction:
    """Rational B with every real root of p in [-B, B]."""
    if p.is_zero or p.degree == 0:
        raise ParameterError("root bound needs a nonconstant polynomial")
    lead = abs(p.lead)
    biggest = max(abs(c) for c in p.coeffs[:-1])
    return 1 + biggest / lead


def to_primitive_int(p: RatPoly) -> tuple[int, ...]:
    """Integer-coefficient polynomial equal to a positive multiple of p.

    Clears denominators and divides by the content; the positive scaling
    preserves every sign, which is all root counting needs.
    """
    if p.is_zero:
        return ()
    denom_lcm = 1
    for c in p.coeffs:
        denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in p.coeffs]
    content = 0
    for v in ints:
        content = int_gcd(content, abs(v))
    return tuple(v // content for v in ints)
