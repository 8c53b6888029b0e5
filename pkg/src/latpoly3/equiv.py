"""Unimodular equivalence: canonical forms, isomorphism tests, explicit maps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import geom
from .geom import LatticePolytope3, Point3, dot, sub
from .intlin import Matrix, det, hnf_left, identity, inverse_unimodular, matmul


@dataclass(frozen=True)
class AffineUnimodularMap:
    """p -> A p + t with A an integer matrix of determinant +-1."""

    A: Matrix
    t: Point3 = (0, 0, 0)

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        if len(A) != 3 or any(len(r) != 3 for r in A):
            raise ValueError("A must be 3x3")
        if det(A) not in (1, -1):
            raise ValueError(f"matrix {A} is not unimodular")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))

    def __call__(self, p) -> Point3:
        A, t = self.A, self.t
        return tuple(dot(A[i], p) + t[i] for i in range(3))

    def compose(self, other: "AffineUnimodularMap") -> "AffineUnimodularMap":
        """self after other."""
        return AffineUnimodularMap(matmul(self.A, other.A), self(other.t))

    def inverse(self) -> "AffineUnimodularMap":
        Ai = inverse_unimodular(self.A)
        return AffineUnimodularMap(Ai, tuple(-dot(Ai[i], self.t) for i in range(3)))

    @classmethod
    def identity(cls) -> "AffineUnimodularMap":
        return cls(identity(3))


@dataclass(frozen=True)
class CanonicalForm:
    points: tuple[Point3, ...]

    @property
    def size(self) -> int:
        return len(self.points)


def apply_map(phi: AffineUnimodularMap, P: LatticePolytope3) -> LatticePolytope3:
    return geom.hull(phi(v) for v in P.vertices)


def _frames(P: LatticePolytope3):
    """Yield (candidate, v0, U) for every ordered vertex 4-tuple whose
    differences are independent; U puts them in left Hermite form."""
    verts = P.vertices
    pts = P.lattice_points
    for v0 in verts:
        others = [sub(v, v0) for v in verts if v != v0]
        shifted = [sub(p, v0) for p in pts]
        for d1, d2, d3 in itertools.permutations(others, 3):
            if geom.det3(d1, d2, d3) == 0:
                continue
            # columns d1, d2, d3
            D = ((d1[0], d2[0], d3[0]), (d1[1], d2[1], d3[1]), (d1[2], d2[2], d3[2]))
            U = hnf_left(D).U
            u0, u1, u2 = U
            cand = sorted(
                (
                    u0[0] * x + u0[1] * y + u0[2] * z,
                    u1[0] * x + u1[1] * y + u1[2] * z,
                    u2[0] * x + u2[1] * y + u2[2] * z,
                )
                for x, y, z in shifted
            )
            yield tuple(cand), v0, U


def _best_frame(P: LatticePolytope3):
    best = None
    for cand, v0, U in _frames(P):
        if best is None or cand < best[0]:
            best = (cand, v0, U)
    return best


def canonical_form(P: LatticePolytope3) -> CanonicalForm:
    """Lexicographically least normalized image of P's lattice points over
    all vertex frames; equal exactly for unimodularly equivalent polytopes."""
    return CanonicalForm(_best_frame(P)[0])


def are_isomorphic(P: LatticePolytope3, Q: LatticePolytope3) -> bool:
    if P.size != Q.size or len(P.vertices) != len(Q.vertices):
        return False
    return canonical_form(P) == canonical_form(Q)


def find_isomorphism(P: LatticePolytope3, Q: LatticePolytope3) -> Optional[AffineUnimodularMap]:
    """A unimodular map sending P's lattice points onto Q's, if one exists."""
    if P.size != Q.size or len(P.vertices) != len(Q.vertices):
        return None
    cp, v0, Up = _best_frame(P)
    cq, w0, Uq = _best_frame(Q)
    if cp != cq:
        return None
    # q = Uq^{-1} Up (p - v0) + w0
    A = matmul(inverse_unimodular(Uq), Up)
    Av0 = tuple(dot(A[i], v0) for i in range(3))
    phi = AffineUnimodularMap(A, sub(w0, Av0))
    assert sorted(map(phi, P.lattice_points)) == list(Q.lattice_points)
    return phi


def maps_onto(phi: AffineUnimodularMap, P: LatticePolytope3, Q: LatticePolytope3) -> bool:
    return sorted(map(phi, P.lattice_points)) == list(Q.lattice_points)


def random_unimodular(rng: random.Random, steps: int = 6, shift: int = 3) -> AffineUnimodularMap:
    """Product of random elementary integer row operations plus a translation."""
    A = [list(r) for r in identity(3)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(3), 2)
        if kind == 0:
            c = rng.choice((-2, -1, 1, 2))
            A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        elif kind == 1:
            A[i], A[j] = A[j], A[i]
        else:
            A[i] = [-a for a in A[i]]
    t = tuple(rng.randint(-shift, shift) for _ in range(3))
    return AffineUnimodularMap(A, t)


def map_from_rows(rows: Sequence[Sequence[int]], t=(0, 0, 0)) -> AffineUnimodularMap:
    return AffineUnimodularMap(tuple(tuple(r) for r in rows), tuple(t))
