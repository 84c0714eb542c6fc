"""Unions of random perfect matchings and exact Ramanujan certification.

A sample is a union of m perfect matchings: in nonbipartite mode the sum of
m permutation-conjugates of one fixed matching on d vertices, in bipartite
mode the sum of m permutation matchings across a (d, d) bipartition.  Edge
entries count multiplicity, so samples are multigraphs.

Certification is exact.  The characteristic polynomial is computed over the
rationals, the trivial eigenvalue m (and -m in bipartite mode) is divided
out once, and the remaining roots are located by Sturm counts against the
algebraic bound 2*sqrt(m-1).  A float eigensolver is provided as a cheap
pre-screen only; no verdict depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError, ParameterError
from .matrix import RatMatrix, char_poly, dilation
from .perms import Permutation, relabel_grid, uniform_permutation
from .poly import RatPoly
from .quadfield import QuadScalar, as_quad
from .rng import SplitMix64
from .sturm import count_roots_in_mult, root_multiplicity_at
from .transforms import ramanujan_bound

MODES = ("bipartite", "nonbipartite")

STRICT = "strictly-ramanujan"
WITH_BOUNDARY = "ramanujan-with-boundary"
NOT_RAMANUJAN = "not-ramanujan"


def matching_grid(d: int) -> list[list[int]]:
    """Adjacency grid of the fixed perfect matching pairing (2k, 2k+1)."""
    if d < 2 or d % 2:
        raise ParameterError("perfect matching needs an even vertex count")
    grid = [[0] * d for _ in range(d)]
    for k in range(d // 2):
        grid[2 * k][2 * k + 1] = 1
        grid[2 * k + 1][2 * k] = 1
    return grid


@dataclass(frozen=True)
class MatchingUnion:
    """Union of m perfect matchings, stored as the permutations that place them.

    Nonbipartite: d is the vertex count (even) and perm i conjugates the fixed
    matching, contributing P_i M P_i^T.  Bipartite: d is the per-side size and
    perm i is the matching from left vertex j to right vertex perm(j), so the
    graph has 2d vertices and biadjacency equal to the sum of the permutation
    matrices.
    """

    mode: str
    d: int
    m: int
    perms: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.mode == "nonbipartite" and (self.d < 2 or self.d % 2):
            raise ParameterError("nonbipartite mode needs an even vertex count")
        if self.mode == "bipartite" and self.d < 1:
            raise ParameterError("side size must be positive")
        if self.m < 1 or self.m != len(self.perms):
            raise ParameterError("need m >= 1 permutations")
        for p in self.perms:
            if p.degree != self.d:
                raise ParameterError("permutation degree does not match d")

    @property
    def n_vertices(self) -> int:
        return self.d if self.mode == "nonbipartite" else 2 * self.d

    def adjacency(self) -> RatMatrix:
        """Symmetric integer adjacency with entries counting parallel edges."""
        if self.mode == "nonbipartite":
            base = matching_grid(self.d)
            total = [[0] * self.d for _ in range(self.d)]
            for p in self.perms:
                placed = relabel_grid(base, p.image)
                for i in range(self.d):
                    row = placed[i]
                    out = total[i]
                    for j in range(self.d):
                        out[j] += row[j]
            return RatMatrix.from_rows(total)
        biadj = [[0] * self.d for _ in range(self.d)]
        for p in self.perms:
            for i, j in enumerate(p.image):
                biadj[j][i] += 1
        return dilation(RatMatrix.from_rows(biadj))


def sample_nonbipartite(d: int, m: int, rng: SplitMix64) -> MatchingUnion:
    """Union of m uniform conjugates of the fixed matching on d vertices."""
    if d < 2 or d % 2:
        raise ParameterError("vertex count must be even and at least 2")
    if m < 1:
        raise ParameterError("need at least one matching")
    perms = tuple(uniform_permutation(d, rng) for _ in range(m))
    return MatchingUnion("nonbipartite", d, m, perms)


def sample_bipartite(d: int, m: int, rng: SplitMix64) -> MatchingUnion:
    """Union of m uniform matchings across a (d, d) bipartition."""
    if d < 1:
        raise ParameterError("side size must be positive")
    if m < 1:
        raise ParameterError("need at least one matching")
    perms = tuple(uniform_permutation(d, rng) for _ in range(m))
    return MatchingUnion("bipartite", d, m, perms)


def deflate_trivial(p: RatPoly, m: int, bipartite: bool) -> RatPoly:
    """Divide out the trivial eigenvalue m once, and -m once in bipartite mode.

    Exactly one copy is removed, so a disconnected sample keeps its surplus
    eigenvalue m and fails certification honestly.
    """
    out = p
    roots = [Fraction(m), Fraction(-m)] if bipartite else [Fraction(m)]
    for r in roots:
        try:
            out = out.div_exact(RatPoly.from_roots([r]))
        except ContractError:
            raise ContractError(
                f"characteristic polynomial has no root at {r}; "
                "the graph is not regular of the claimed degree"
            ) from None
    return out


@dataclass(frozen=True)
class RamanujanCertificate:
    """Exact root-location record for one matching union.

    interior_count and boundary_count are multiplicity counts of the deflated
    polynomial's roots inside (-bound, bound) and at +-bound; together with
    the exterior remainder they account for every root.
    """

    mode: str
    d: int
    m: int
    char_poly: RatPoly
    deflated: RatPoly
    bound: QuadScalar
    interior_count: int
    boundary_count: int
    verdict: str

    @property
    def is_ramanujan(self) -> bool:
        """Nonstrict reading: boundary eigenvalues allowed."""
        return self.verdict in (STRICT, WITH_BOUNDARY)


def certify(g: MatchingUnion) -> RamanujanCertificate:
    """Certify whether all nontrivial eigenvalues lie within 2*sqrt(m-1).

    All counts are exact Sturm counts with endpoints in Q(sqrt(m-1)).
    Verdicts: strictly-ramanujan when every deflated root is interior,
    ramanujan-with-boundary when the rest sit exactly at the bound, else
    not-ramanujan.
    """
    cp = char_poly(g.adjacency())
    deflated = deflate_trivial(cp, g.m, g.mode == "bipartite")
    # m = 1 degenerates to bound 0; the general formula needs m >= 2
    bound = ramanujan_bound(g.m) if g.m >= 2 else as_quad(0)
    if deflated.degree == 0:
        interior = boundary = 0
    elif g.m == 1:
        interior = 0
        boundary = root_multiplicity_at(deflated, Fraction(0))
    else:
        interior = count_roots_in_mult(deflated, -bound, bound, open_interval=True)
        boundary = root_multiplicity_at(deflated, bound) + root_multiplicity_at(
            deflated, -bound
        )
    if interior == deflated.degree:
        verdict = STRICT
    elif boundary and interior + boundary == deflated.degree:
        verdict = WITH_BOUNDARY
    else:
        verdict = NOT_RAMANUJAN
    return RamanujanCertificate(
        mode=g.mode,
        d=g.d,
        m=g.m,
        char_poly=cp,
        deflated=deflated,
        bound=bound,
        interior_count=interior,
        boundary_count=boundary,
        verdict=verdict,
    )


def jacobi_eigenvalues(grid: list[list[float]], tol: float = 1e-10) -> list[float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    n = len(grid)
    a = [[float(x) for x in row] for row in grid]
    for _ in range(100):
        off = max(
            (abs(a[p][q]) for p in range(n) for q in range(p + 1, n)), default=0.0
        )
        if off < tol:
            break
        for p in range(n):
            for q in range(p + 1, n):
                if abs(a[p][q]) <= off * 1e-6:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                t = 1.0 / (abs(theta) + (theta * theta + 1.0) ** 0.5)
                if theta < 0:
                    t = -t
                c = 1.0 / (t * t + 1.0) ** 0.5
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    return sorted(a[i][i] for i in range(n))


def float_filter(g: MatchingUnion) -> float:
    """Approximate second-largest adjacency eigenvalue.

    Pre-screen only: callers may skip exact certification when this is far
    from the bound, and must never base a verdict on it.
    """
    rows = [[float(x) for x in row] for row in g.adjacency().rows]
    eigs = jacobi_eigenvalues(rows)
    return eigs[-2]
