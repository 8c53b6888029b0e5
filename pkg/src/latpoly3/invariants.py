"""Lattice invariants of 3-polytopes: index, width, h*-vector, empty tetrahedra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Optional, Sequence

from . import geom
from .geom import LatticePolytope3, Point3, det3, dot, sub
from .intlin import adjugate3, gcd_all, snf


class InconsistentInvariants(RuntimeError):
    """An identity that holds for every lattice polytope was violated."""


@dataclass(frozen=True)
class EmptyTetrahedron:
    vertices: tuple[Point3, Point3, Point3, Point3]
    volume: int


@dataclass(frozen=True)
class InvariantProfile:
    n: int
    n0: int
    V: int
    q: int
    w: int
    hstar: tuple[int, ...]


@dataclass(frozen=True)
class HStarLawReport:
    hstar: tuple[int, ...]
    index: int
    lower_bound: Optional[int]  # (q-1)(1+h1*) when q > 1, else None
    inequality_holds: Optional[bool]
    gaps: tuple[int, ...]


# -- sublattice index -------------------------------------------------------

def affine_lattice_index(points: Sequence[Sequence[int]]) -> int:
    """Index of the affine lattice spanned by integer points of full dimension.

    Product of the elementary divisors of the difference matrix.  Raises
    ValueError if the points do not affinely span their ambient space.
    """
    pts = [tuple(p) for p in points]
    d = len(pts[0])
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    if len(diffs) < d:
        raise ValueError("too few points to span")
    divs = snf(diffs).divisors
    if len(divs) < d or divs[d - 1] == 0:
        raise ValueError("points are not affinely spanning")
    return prod(divs[:d])


def index_by_determinants(points: Sequence[Point3]) -> int:
    """gcd of the volumes of all lattice tetrahedra spanned by the points."""
    pts = list(points)
    vols = [
        det3(sub(b, a), sub(c, a), sub(d, a))
        for a, b, c, d in itertools.combinations(pts, 4)
    ]
    return gcd_all(vols)


def sublattice_index(P: LatticePolytope3) -> int:
    return affine_lattice_index(P.lattice_points)


# -- lattice width ----------------------------------------------------------

def functional_width(f, points) -> int:
    vals = [dot(f, p) for p in points]
    return max(vals) - min(vals)


def _spread_triple(vertices):
    """Three independent vertex differences, picked greedily for large |det|."""
    diffs = [sub(b, a) for a, b in itertools.combinations(vertices, 2)]
    v1 = max(diffs, key=lambda v: (dot(v, v), v))
    v2 = max(diffs, key=lambda v: (dot(geom.cross(v1, v), geom.cross(v1, v)), v))
    v3 = max(diffs, key=lambda v: (abs(det3(v1, v2, v)), v))
    if det3(v1, v2, v3) == 0:
        raise geom.DimensionDeficient("vertices are not full-dimensional")
    return v1, v2, v3


def short_functionals(P: LatticePolytope3, bound: int) -> list[tuple[int, Point3]]:
    """All (width, f) with f nonzero, first nonzero coordinate positive and
    width of P along f at most bound, sorted.

    Such f satisfy |<f, v_j>| <= bound for three independent vertex
    differences v_j.  So g = M f lies in the cube [-bound, bound]^3, and
    f = M^{-1} g is kept whenever it is integral.
    """
    verts = P.vertices
    M = _spread_triple(verts)
    adj = adjugate3(M)  # M^{-1} = adj / det, rows of M are the v_j
    D = det3(*M)
    out = []
    rng = range(-bound, bound + 1)
    for g in itertools.product(rng, rng, rng):
        num = [dot(row, g) for row in adj]
        if any(c % D for c in num):
            continue
        f = tuple(c // D for c in num)
        if f == (0, 0, 0) or geom.normalize_sign(f) != f:
            continue
        w = functional_width(f, verts)
        if w <= bound:
            out.append((w, f))
    return sorted(out)


def width(P: LatticePolytope3) -> tuple[int, Point3]:
    """Lattice width and a primitive functional attaining it (the smallest
    such functional in lexicographic order after sign normalization).

    The upper bound comes from the coordinate functionals and the facet
    normals; the search in short_functionals certifies the minimum.
    """
    candidates = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + [f.normal for f in P.facets]
    W0 = min(functional_width(f, P.vertices) for f in candidates)
    return short_functionals(P, W0)[0]


# -- h*-vector --------------------------------------------------------------

def trim_zeros(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def hstar_from_params(n: int, n0: int, V: int) -> tuple[int, ...]:
    h = (1, n - 4, V + 3 - n0 - n, n0)
    if any(c < 0 for c in h):
        raise InconsistentInvariants(f"negative h* coefficient from (n, n0, V) = {(n, n0, V)}")
    return trim_zeros(h)


def hstar(P: LatticePolytope3) -> tuple[int, ...]:
    return hstar_from_params(
        P.size, len(geom.interior_lattice_points(P)), geom.normalized_volume(P)
    )


def ehrhart_counts(P: LatticePolytope3, tmax: int) -> list[int]:
    return [1] + [len(geom.points_in(P.facets, P.vertices, t)) for t in range(1, tmax + 1)]


def interpolate_cubic(counts: Sequence[int]):
    """Coefficients (c0..c3) of the cubic through (t, counts[t]), t = 0..3."""
    ts = range(4)
    coeffs = [Fraction(0)] * 4
    for i in ts:
        basis = [Fraction(1)]
        denom = 1
        for j in ts:
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= j * basis[k + 1]
            denom *= i - j
        for k in range(4):
            coeffs[k] += Fraction(counts[i], denom) * basis[k]
    return coeffs


def series_numerator(counts: Sequence[int], dim: int = 3) -> list[int]:
    """Coefficients of (1-z)^(dim+1) * sum counts[t] z^t, truncated at len(counts)."""
    out = []
    for j in range(len(counts)):
        out.append(sum((-1) ** i * comb(dim + 1, i) * counts[j - i] for i in range(min(j, dim + 1) + 1)))
    return out


def ehrhart_check(P: LatticePolytope3, tmax: int = 4) -> bool:
    """Compare hstar(P) with the numerator of the Ehrhart series obtained by
    counting lattice points in the dilations tP, t = 0..tmax."""
    if tmax < 3:
        raise ValueError("tmax must be at least 3")
    counts = ehrhart_counts(P, tmax)
    poly = interpolate_cubic(counts)
    if any(sum(c * t**k for k, c in enumerate(poly)) != counts[t] for t in range(tmax + 1)):
        return False
    # counts follow a cubic, so every coefficient beyond degree 3 vanishes
    numer = series_numerator(counts)
    return trim_zeros(numer[:4]) == hstar(P) and all(c == 0 for c in numer[4:])


# -- empty tetrahedra -------------------------------------------------------

def tetrahedron_lattice_points(a, b, c, d) -> list[Point3]:
    """Lattice points of conv(a, b, c, d) by direct enumeration."""
    verts = (a, b, c, d)
    facets = []
    for i in range(4):
        p, q, r = (verts[j] for j in range(4) if j != i)
        n = geom.cross(sub(q, p), sub(r, p))
        off = -dot(n, p)
        if dot(n, verts[i]) + off < 0:
            n, off = tuple(-x for x in n), -off
        facets.append(geom.Facet(n, off))
    return geom.points_in(facets, verts)


def empty_tetrahedra(P: LatticePolytope3) -> list[EmptyTetrahedron]:
    out = []
    for quad in itertools.combinations(P.lattice_points, 4):
        vol = abs(geom.orient(*quad))
        if vol == 0:
            continue
        if len(tetrahedron_lattice_points(*quad)) == 4:
            out.append(EmptyTetrahedron(quad, vol))
    return out


def verify_partition(P: LatticePolytope3) -> bool:
    """All empty tetrahedra have volume equal to the index and their volumes
    add up to the volume of P (so they tile P up to measure zero)."""
    q = sublattice_index(P)
    tets = empty_tetrahedra(P)
    return all(t.volume == q for t in tets) and sum(t.volume for t in tets) == geom.normalized_volume(P)


def has_unimodular_tetrahedron(P: LatticePolytope3) -> Optional[EmptyTetrahedron]:
    for quad in itertools.combinations(P.lattice_points, 4):
        if abs(geom.orient(*quad)) == 1:
            return EmptyTetrahedron(quad, 1)
    return None


def check_hstar_laws(P: LatticePolytope3) -> HStarLawReport:
    h = hstar(P)
    q = sublattice_index(P)
    gaps = tuple(i for i in range(len(h)) if h[i] == 0)
    if q == 1:
        return HStarLawReport(h, q, None, None, gaps)
    h1 = h[1] if len(h) > 1 else 0
    h2 = h[2] if len(h) > 2 else 0
    bound = (q - 1) * (1 + h1)
    return HStarLawReport(h, q, bound, h2 >= bound, gaps)


def profile(P: LatticePolytope3) -> InvariantProfile:
    n0 = len(geom.interior_lattice_points(P))
    V = geom.normalized_volume(P)
    return InvariantProfile(
        n=P.size,
        n0=n0,
        V=V,
        q=sublattice_index(P),
        w=width(P)[0],
        hstar=hstar_from_params(P.size, n0, V),
    )
