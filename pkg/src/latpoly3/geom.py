"""Exact geometry of lattice 3-polytopes.

Points are 3-tuples of ints.  All predicates are integer determinants; no
floating point is used anywhere.  All sorted outputs use the lexicographic
order on (x, y, z).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Sequence

from .intlin import hnf_left

Point3 = tuple[int, int, int]


class DimensionDeficient(ValueError):
    """The affine hull of the input has dimension < 3."""


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def add(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u, v, w) -> int:
    return dot(u, cross(v, w))


def orient(a, b, c, d) -> int:
    """Signed determinant of the edge vectors b-a, c-a, d-a."""
    return det3(sub(b, a), sub(c, a), sub(d, a))


def primitive(v):
    g = math.gcd(*v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def normalize_sign(v):
    """Make the first nonzero coordinate positive."""
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass(frozen=True, order=True)
class Facet:
    """Inequality <normal, p> + offset >= 0 with primitive inward normal."""

    normal: Point3
    offset: int

    def value(self, p) -> int:
        return dot(self.normal, p) + self.offset


@dataclass(frozen=True)
class LatticePolytope3:
    vertices: tuple[Point3, ...]
    facets: tuple[Facet, ...]
    lattice_points: tuple[Point3, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.lattice_points)

    def contains(self, p) -> bool:
        return all(f.value(p) >= 0 for f in self.facets)


@dataclass(frozen=True)
class SpikeDescriptor:
    direction: Point3
    chain: tuple[Point3, ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1


@dataclass(frozen=True)
class PointConfiguration2:
    points: tuple[tuple[int, int], ...]
    fiber_counts: dict

    @property
    def total(self) -> int:
        return sum(self.fiber_counts.values())


def _independent_quad(pts):
    """Indices of four affinely independent points, or None."""
    p0 = pts[0]
    for i in range(1, len(pts)):
        u = sub(pts[i], p0)
        if u == (0, 0, 0):
            continue
        for j in range(i + 1, len(pts)):
            n = cross(u, sub(pts[j], p0))
            if n == (0, 0, 0):
                continue
            for k in range(j + 1, len(pts)):
                if dot(n, sub(pts[k], p0)):
                    return 0, i, j, k
    return None


def affine_dimension(pts: Sequence[Point3]) -> int:
    pts = sorted(set(map(tuple, pts)))
    if len(pts) <= 1:
        return len(pts) - 1
    if _independent_quad(pts) is not None:
        return 3
    p0 = pts[0]
    diffs = [sub(p, p0) for p in pts[1:]]
    if any(cross(u, v) != (0, 0, 0) for u, v in itertools.combinations(diffs, 2)):
        return 2
    return 1


def _facet_planes(pts):
    planes = set()
    n = len(pts)
    for i, j, k in itertools.combinations(range(n), 3):
        a = pts[i]
        normal = cross(sub(pts[j], a), sub(pts[k], a))
        if normal == (0, 0, 0):
            continue
        normal = primitive(normal)
        off = -dot(normal, a)
        if (normal, off) in planes or ((-normal[0], -normal[1], -normal[2]), -off) in planes:
            continue
        pos = neg = False
        for p in pts:
            s = dot(normal, p) + off
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if neg:
            normal, off = (-normal[0], -normal[1], -normal[2]), -off
        planes.add((normal, off))
    return [Facet(nrm, off) for nrm, off in sorted(planes)]


def _rank(vectors) -> int:
    vs = [v for v in vectors if v != (0, 0, 0)]
    if not vs:
        return 0
    u = vs[0]
    planes = [cross(u, v) for v in vs[1:]]
    if all(c == (0, 0, 0) for c in planes):
        return 1
    if any(det3(u, v, w) for v, w in itertools.combinations(vs[1:], 2)):
        return 3
    return 2


def hull(pts: Iterable[Sequence[int]]) -> LatticePolytope3:
    """Convex hull of integer points in R^3.

    Facets are found by testing every plane through three input points for
    being supporting (all inputs are at most a few dozen points).  A hull
    point is a vertex iff the normals of the facets through it have rank 3.
    """
    pts = sorted({tuple(int(c) for c in p) for p in pts})
    if any(len(p) != 3 for p in pts):
        raise ValueError("points must have three coordinates")
    if len(pts) < 4 or _independent_quad(pts) is None:
        raise DimensionDeficient("points do not affinely span R^3")
    facets = _facet_planes(pts)
    vertices = tuple(
        p for p in pts if _rank([f.normal for f in facets if f.value(p) == 0]) == 3
    )
    return LatticePolytope3(vertices, tuple(facets), tuple(points_in(facets, vertices)))


def points_in(facets: Sequence[Facet], vertices: Sequence[Point3], t: int = 1) -> list[Point3]:
    """Lattice points of t*P, sorted, by column-wise z-intervals over the box."""
    lo = [t * min(v[c] for v in vertices) for c in range(3)]
    hi = [t * max(v[c] for v in vertices) for c in range(3)]
    zfac = [(f.normal, t * f.offset) for f in facets if f.normal[2] != 0]
    flat = [(f.normal, t * f.offset) for f in facets if f.normal[2] == 0]
    out = []
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            if any(nx * x + ny * y + off < 0 for (nx, ny, _), off in flat):
                continue
            zlo, zhi = lo[2], hi[2]
            for (nx, ny, nz), off in zfac:
                r = nx * x + ny * y + off
                if nz > 0:
                    zlo = max(zlo, -(r // nz))
                else:
                    zhi = min(zhi, r // -nz)
                if zlo > zhi:
                    break
            else:
                out.extend((x, y, z) for z in range(zlo, zhi + 1))
    return out


def lattice_points(P: LatticePolytope3) -> tuple[Point3, ...]:
    return P.lattice_points


def interior_lattice_points(P: LatticePolytope3) -> list[Point3]:
    return [p for p in P.lattice_points if all(f.value(p) > 0 for f in P.facets)]


def boundary_lattice_points(P: LatticePolytope3) -> list[Point3]:
    return [p for p in P.lattice_points if any(f.value(p) == 0 for f in P.facets)]


def facet_vertices_ccw(P: LatticePolytope3, facet: Facet) -> list[Point3]:
    """Vertices on a facet in cyclic order around its inward normal."""
    fv = [v for v in P.vertices if facet.value(v) == 0]
    w0 = fv[0]

    def cmp(a, b):
        s = dot(facet.normal, cross(sub(a, w0), sub(b, w0)))
        return -1 if s > 0 else (1 if s < 0 else 0)

    return [w0] + sorted(fv[1:], key=cmp_to_key(cmp))


def normalized_volume(P: LatticePolytope3) -> int:
    """Sum of |det| over the cone-from-vertex-0 triangulation of the facets."""
    v0 = P.vertices[0]
    total = 0
    for f in P.facets:
        if f.value(v0) == 0:
            continue
        ring = facet_vertices_ccw(P, f)
        w0 = ring[0]
        for a, b in zip(ring[1:], ring[2:]):
            total += abs(orient(v0, w0, a, b))
    return total


def remove_lattice_point(P: LatticePolytope3, v) -> LatticePolytope3:
    """conv(P ∩ Z^3 minus v); raises DimensionDeficient if it flattens."""
    v = tuple(v)
    if v not in set(P.lattice_points):
        raise ValueError(f"{v} is not a lattice point of the polytope")
    if v not in P.vertices:
        return P
    return hull(p for p in P.lattice_points if p != v)


def basis_completion(direction) -> tuple:
    """Unimodular U with U @ direction = e1 (direction must be primitive)."""
    d = tuple(int(c) for c in direction)
    if len(d) != 3 or math.gcd(*d) != 1:
        raise ValueError(f"direction {d} is not a primitive integer vector")
    return hnf_left([[d[0]], [d[1]], [d[2]]]).U


def project_along(P: LatticePolytope3, direction) -> PointConfiguration2:
    U = basis_completion(direction)
    counts = Counter((dot(U[1], p), dot(U[2], p)) for p in P.lattice_points)
    return PointConfiguration2(tuple(sorted(counts)), dict(counts))


def collinear_chains(points: Sequence[Point3]):
    """All maximal sets of >= 2 collinear points, keyed by (direction, first point)."""
    pts = sorted(points)
    seen = set()
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            d = normalize_sign(primitive(sub(q, p)))
            chain = tuple(r for r in pts if cross(sub(r, p), d) == (0, 0, 0))
            key = (d, chain[0])
            if key in seen:
                continue
            seen.add(key)
            yield d, chain


def find_spike(P: LatticePolytope3) -> SpikeDescriptor:
    """Longest collinear chain of lattice points; ties go to the smallest
    (direction, first point)."""
    best = None
    for d, chain in collinear_chains(P.lattice_points):
        key = (-len(chain), d, chain[0])
        if best is None or key < best[0]:
            best = (key, d, chain)
    _, d, chain = best
    return SpikeDescriptor(d, chain)
