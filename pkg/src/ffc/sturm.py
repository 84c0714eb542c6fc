"""Exact real-root counting, isolation, brackets, and interlacing checks.

The sign machinery never touches floating point.  A chain is built from the
square-free part of the input polynomial; each element is stored as a
primitive integer coefficient vector that is a positive scalar multiple of
the textbook negated-remainder element, which leaves every sign variation
unchanged while keeping coefficient growth polynomial.

Sign variations are always evaluated just to the right of a point: the sign
of q(x + epsilon) for arbitrarily small positive epsilon is the first nonzero
entry of q(x), q'(x), q''(x), ...  With that convention the variation
difference between two points counts distinct roots in the half-open
interval (lo, hi] with no special-casing when an endpoint is itself a root
of the polynomial or of a chain element.

Endpoints may be rationals or QuadScalar values a + b*sqrt(r); their signs
are decided by integer arithmetic after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd, lcm as int_lcm

from .errors import ParameterError
from .poly import (
    RatPoly,
    cauchy_root_bound,
    squarefree_decomposition,
    squarefree_part,
    to_primitive_int,
)
from .quadfield import QuadScalar, as_quad


class _Inf:
    __slots__ = ("sign", "name")

    def __init__(self, sign: int, name: str):
        self.sign = sign
        self.name = name

    def __repr__(self) -> str:
        return self.name


NEG_INF = _Inf(-1, "-inf")
POS_INF = _Inf(+1, "+inf")


# -- integer polynomial helpers ------------------------------------------------


def _int_trim(c: list[int]) -> tuple[int, ...]:
    last = len(c)
    while last > 0 and c[last - 1] == 0:
        last -= 1
    return tuple(c[:last])


def _int_primitive(c: tuple[int, ...]) -> tuple[int, ...]:
    content = 0
    for v in c:
        content = int_gcd(content, abs(v))
    return tuple(v // content for v in c) if content > 1 else c


def _int_derivative(c: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(k * c[k] for k in range(1, len(c)))


def _signed_prem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Integer polynomial equal to a positive multiple of rem(a, b)."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    flips = 0
    while r and len(r) - 1 >= db:
        d = len(r) - 1
        coef = r[-1]
        if lb < 0:
            flips ^= 1
        r = [lb * v for v in r]
        shift = d - db
        for j in range(db + 1):
            r[shift + j] -= coef * b[j]
        r = list(_int_trim(r))
    if flips:
        r = [-v for v in r]
    return tuple(r)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _sign_pair(x: int, y: int, r: int) -> int:
    """Exact sign of x + y*sqrt(r) for integers x, y and square-free r."""
    if y == 0 or r == 0:
        return _sign(x)
    if x == 0:
        return _sign(y)
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    lhs, rhs = x * x, y * y * r
    if lhs == rhs:
        return 0
    if x > 0:
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


class _Point:
    """Endpoint in homogenized integer form: (u + v*sqrt(r)) / w."""

    __slots__ = ("u", "v", "w", "r", "quad")

    def __init__(self, value):
        q = as_quad(value)
        w = int_lcm(q.a.denominator, q.b.denominator)
        self.u = int(q.a * w)
        self.v = int(q.b * w)
        self.w = w
        self.r = q.r
        self.quad = q

    def sign_of(self, coeffs: tuple[int, ...]) -> int:
        """Exact sign of the integer polynomial at this point."""
        n = len(coeffs) - 1
        if n < 0:
            return 0
        wpow = [1] * (n + 1)
        for k in range(1, n + 1):
            wpow[k] = wpow[k - 1] * self.w
        x, y = coeffs[n], 0
        for k in range(n - 1, -1, -1):
            x, y = (
                x * self.u + y * self.v * self.r + coeffs[k] * wpow[n - k],
                x * self.v + y * self.u,
            )
        return _sign_pair(x, y, self.r)

    def sign_just_right(self, coeffs: tuple[int, ...]) -> int:
        """Sign of the polynomial at this point + epsilon, epsilon -> 0+."""
        cur = coeffs
        while cur:
            s = self.sign_of(cur)
            if s:
                return s
            cur = _int_derivative(cur)
        raise ParameterError("sign query on the zero polynomial")


def _point_lt(a, b) -> bool:
    if isinstance(a, _Inf) or isinstance(b, _Inf):
        asign = a.sign if isinstance(a, _Inf) else 0
        bsign = b.sign if isinstance(b, _Inf) else 0
        return asign < bsign
    return (as_quad(a) - as_quad(b)).sign() < 0


# -- the chain ------------------------------------------------------------------


@dataclass(frozen=True)
class SturmChain:
    """Normalized chain over the square-free part of a polynomial.

    ``elements`` holds primitive integer coefficient vectors; each is a
    positive scalar multiple of the classical chain element, so all sign
    variations agree with the textbook chain.
    """

    source: RatPoly
    elements: tuple[tuple[int, ...], ...]

    @property
    def polys(self) -> tuple[RatPoly, ...]:
        return tuple(RatPoly.from_coeffs(e) for e in self.elements)

    def variations_right(self, point) -> int:
        if isinstance(point, _Inf):
            signs = []
            for e in self.elements:
                lead = _sign(e[-1])
                deg = len(e) - 1
                signs.append(lead if point.sign > 0 else lead * (-1) ** deg)
        else:
            pt = point if isinstance(point, _Point) else _Point(point)
            signs = [pt.sign_just_right(e) for e in self.elements]
        flips = 0
        for prev, cur in zip(signs, signs[1:]):
            if prev * cur < 0:
                flips += 1
        return flips

    def count_half_open(self, lo, hi) -> int:
        """Distinct real roots of the source in (lo, hi]."""
        if not _point_lt(lo, hi):
            raise ParameterError("need lo < hi exactly")
        return self.variations_right(lo) - self.variations_right(hi)

    def count_all(self) -> int:
        return self.count_half_open(NEG_INF, POS_INF)

    def is_root(self, point) -> bool:
        pt = point if isinstance(point, _Point) else _Point(point)
        return pt.sign_of(self.elements[0]) == 0


@lru_cache(maxsize=512)
def _chain_from_coeffs(coeffs: tuple[Fraction, ...]) -> SturmChain:
    p = RatPoly(coeffs)
    sf = squarefree_part(p)
    f0 = to_primitive_int(sf)
    elements = [f0]
    if len(f0) > 1:
        f1 = _int_primitive(_int_trim(list(_int_derivative(f0))))
        elements.append(f1)
        while len(elements[-1]) > 1:
            nxt = _signed_prem(elements[-2], elements[-1])
            if not nxt:
                break
            elements.append(_int_primitive(tuple(-v for v in nxt)))
    return SturmChain(source=p, elements=tuple(elements))


def sturm_chain(p: RatPoly) -> SturmChain:
    if p.is_zero:
        raise ParameterError("zero polynomial has no Sturm chain")
    return _chain_from_coeffs(p.coeffs)


# -- public counting API ---------------------------------------------------------


def is_real_rooted(p: RatPoly) -> bool:
    """True when every complex root of p is real (degree-0 is vacuous)."""
    if p.is_zero:
        raise ParameterError("real-rootedness of the zero polynomial is undefined")
    if p.degree == 0:
        return True
    chain = sturm_chain(p)
    return chain.count_all() == len(chain.elements[0]) - 1


def count_roots_in(p: RatPoly, lo, hi, open_interval: bool = False) -> int:
    """Distinct real roots of p inside the interval from lo to hi.

    Endpoints may be rationals or QuadScalar values.  With
    ``open_interval=True`` the interval is (lo, hi), else [lo, hi];
    membership of roots at the endpoints is decided exactly.
    """
    chain = sturm_chain(p)
    n = chain.count_half_open(lo, hi)
    if open_interval:
        if not isinstance(hi, _Inf) and chain.is_root(hi):
            n -= 1
    else:
        if not isinstance(lo, _Inf) and chain.is_root(lo):
            n += 1
    return n


def count_roots_in_mult(p: RatPoly, lo, hi, open_interval: bool = False) -> int:
    """Real roots in the interval counted with multiplicity."""
    return sum(
        mult * count_roots_in(factor, lo, hi, open_interval)
        for factor, mult in squarefree_decomposition(p)
    )


def root_multiplicity_at(p: RatPoly, point) -> int:
    """Multiplicity of ``point`` as a root of p (0 if not a root)."""
    pt = _Point(point)
    return sum(
        mult
        for factor, mult in squarefree_decomposition(p)
        if pt.sign_of(to_primitive_int(factor)) == 0
    )


def max_root_bracket(p: RatPoly, width=Fraction(1, 1024)) -> tuple[Fraction, Fraction]:
    """Rational (lo, hi] with hi - lo <= width containing the largest real root."""
    width = Fraction(width)
    if width <= 0:
        raise ParameterError("bracket width must be positive")
    if p.is_zero or p.degree == 0:
        raise ParameterError("bracket needs a nonconstant polynomial")
    chain = sturm_chain(p)
    bound = cauchy_root_bound(p)
    lo, hi = -bound - 1, bound
    if chain.count_half_open(lo, hi) == 0:
        raise ParameterError("polynomial has no real roots")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if chain.count_half_open(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_real_roots(p: RatPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint half-open rational intervals (lo, hi], ascending, each
    containing exactly one distinct real root of p."""
    chain = sturm_chain(p)
    bound = cauchy_root_bound(p) if p.degree > 0 else Fraction(1)
    out: list[tuple[Fraction, Fraction]] = []

    def descend(lo: Fraction, hi: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        left = chain.count_half_open(lo, mid)
        descend(lo, mid, left)
        descend(mid, hi, count - left)

    lo0, hi0 = -bound - 1, bound
    descend(lo0, hi0, chain.count_half_open(lo0, hi0))
    return out


def _root_positions_with_mult(
    p: RatPoly, intervals: list[tuple[Fraction, Fraction]]
) -> list[int]:
    """Roots of p as indices into isolating intervals, repeated by multiplicity."""
    positions: list[int] = []
    for factor, mult in squarefree_decomposition(p):
        chain = sturm_chain(factor)
        for idx, (lo, hi) in enumerate(intervals):
            if chain.count_half_open(lo, hi):
                positions.extend([idx] * mult)
    positions.sort()
    return positions


def interlaces(g: RatPoly, f: RatPoly) -> bool:
    """True when the root multisets weakly alternate with f on the outside.

    Requires deg g = deg f - 1 and both real-rooted.  Shared roots are fine:
    the alternation inequalities are weak, so a common root never breaks the
    pattern by itself.
    """
    if f.is_zero or g.is_zero:
        raise ParameterError("interlacing needs nonzero polynomials")
    if g.degree != f.degree - 1:
        raise ParameterError("need deg g = deg f - 1")
    if not (is_real_rooted(f) and is_real_rooted(g)):
        raise ParameterError("interlacing needs real-rooted inputs")
    if g.degree == 0:
        return True
    intervals = isolate_real_roots(f * g)
    pos_f = _root_positions_with_mult(f, intervals)
    pos_g = _root_positions_with_mult(g, intervals)
    for j, b in enumerate(pos_g):
        if not (pos_f[j] <= b <= pos_f[j + 1]):
            return False
    return True


def compare_max_roots(p: RatPoly, q: RatPoly) -> int:
    """-1, 0, or +1 comparing the largest real roots of p and q, exactly."""
    for poly in (p, q):
        if poly.is_zero or poly.degree == 0:
            raise ParameterError("max-root comparison needs nonconstant inputs")
    sp, sq = squarefree_part(p), squarefree_part(q)
    s = squarefree_part(sp * sq)
    chain = sturm_chain(s)
    bound = cauchy_root_bound(s)
    lo, hi = -bound - 1, bound
    total = chain.count_half_open(lo, hi)
    if total == 0:
        raise ParameterError("max-root comparison needs real roots")
    while chain.count_half_open(lo, hi) > 1:
        mid = (lo + hi) / 2
        if chain.count_half_open(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    p_has = sturm_chain(sp).count_half_open(lo, hi) >= 1
    q_has = sturm_chain(sq).count_half_open(lo, hi) >= 1
    if p_has and q_has:
        return 0
    return 1 if p_has else -1
