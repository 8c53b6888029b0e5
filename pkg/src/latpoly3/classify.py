"""Decide where a lattice 3-polytope sits in the non-spanning classification.

Index one gives Spanning, width one gives WidthOne(p, q, a, b), and anything
else is looked up by canonical form among the families and the six sporadic
polytopes of its size.  A wide non-spanning polytope that matches none of
them is returned as ContradictsClassification rather than raised.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from . import catalog, equiv, geom, invariants
from .catalog import CatalogEntry
from .equiv import AffineUnimodularMap
from .geom import LatticePolytope3, dot, sub
from .intlin import hnf_left, inverse_unimodular
from .invariants import EmptyTetrahedron, InvariantProfile


class NotTwoSegments(ValueError):
    """A layer of a width-one polytope is not contained in a line."""


@dataclass(frozen=True)
class Spanning:
    has_unimodular_tetra: bool
    witness: Optional[EmptyTetrahedron]
    e51_match: Optional[str] = None
    kind = "spanning"


@dataclass(frozen=True)
class WidthOne:
    p: int
    q: int
    a: int
    b: int
    kind = "width-one"

    @property
    def entry(self) -> CatalogEntry:
        return CatalogEntry("T", (self.p, self.q, self.a, self.b))


@dataclass(frozen=True)
class Family:
    tag: str
    params: tuple[int, ...]
    isomorphism: AffineUnimodularMap
    kind = "family"

    @property
    def entry(self) -> CatalogEntry:
        return CatalogEntry(self.tag, self.params)


@dataclass(frozen=True)
class Exceptional:
    name: str
    isomorphism: AffineUnimodularMap
    kind = "exception"

    @property
    def entry(self) -> CatalogEntry:
        return CatalogEntry(self.name)


@dataclass(frozen=True)
class ContradictsClassification:
    reason: str
    kind = "contradicts-classification"


Verdict = Union[Spanning, WidthOne, Family, Exceptional, ContradictsClassification]


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    profile: InvariantProfile

    @property
    def label(self) -> Optional[CatalogEntry]:
        return getattr(self.verdict, "entry", None)


# -- width one --------------------------------------------------------------

def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _frame_for(f, u0, d0):
    """Unimodular A with A d0 = e1 and third row f (f(d0) = 0, f primitive)."""
    C = hnf_left([[f[0]], [f[1]], [f[2]]]).U        # C f = e1
    R = tuple(zip(*inverse_unimodular(C)))          # rows: f, r1, r2
    Rinv = inverse_unimodular((R[1], R[2], R[0]))   # columns k1, k2, w
    k1 = tuple(Rinv[i][0] for i in range(3))
    k2 = tuple(Rinv[i][1] for i in range(3))
    w = tuple(Rinv[i][2] for i in range(3))
    # d0 = alpha k1 + beta k2 (rows r1, r2 are dual to k1, k2)
    alpha, beta = dot(R[1], d0), dot(R[2], d0)
    g, x, y = _ext_gcd(alpha, beta)
    assert g == 1
    # alpha*x + beta*y = 1, so e = -y k1 + x k2 completes d0 in ker f
    e = tuple(-y * k1[i] + x * k2[i] for i in range(3))
    B = tuple(tuple(col[i] for col in (d0, e, w)) for i in range(3))
    return inverse_unimodular(B)


def _layer_chain(points):
    pts = sorted(points)
    if len(pts) < 2:
        raise NotTwoSegments("a layer holds a single lattice point")
    d = geom.primitive(sub(pts[-1], pts[0]))
    if any(geom.cross(sub(p, pts[0]), d) != (0, 0, 0) for p in pts):
        raise NotTwoSegments("a layer contains three non-collinear lattice points")
    return pts


def width1_candidates(P: LatticePolytope3) -> set[tuple[int, int, int, int]]:
    """(p, q, a, b) for every way of reading P as conv of two segments in
    consecutive lattice planes, over all width-one functionals."""
    out = set()
    for w, f in invariants.short_functionals(P, 1):
        for g in (f, tuple(-c for c in f)):
            lo = min(dot(g, p) for p in P.lattice_points)
            layer0 = _layer_chain([p for p in P.lattice_points if dot(g, p) == lo])
            layer1 = _layer_chain([p for p in P.lattice_points if dot(g, p) == lo + 1])
            a, b = len(layer0) - 1, len(layer1) - 1
            for u0, u_end in ((layer0[0], layer0[-1]), (layer0[-1], layer0[0])):
                A = _frame_for(g, u0, geom.primitive(sub(u_end, u0)))
                image = lambda p: tuple(dot(A[i], sub(p, u0)) for i in range(3))
                for u1, u1_end in ((layer1[0], layer1[-1]), (layer1[-1], layer1[0])):
                    x1, y1, _ = image(u1)
                    x2, y2, _ = image(u1_end)
                    dx, dy = (x2 - x1) // b, (y2 - y1) // b
                    q = abs(dy)
                    out.add((dx % q, q, a, b))
    return out


def _width1_label(cands):
    return min((c for c in cands if c[2] >= c[3]), key=lambda c: (c[0], -c[2]))


def extract_width1_params(P: LatticePolytope3) -> tuple[int, int, int, int]:
    """Normalized (p, q, a, b) with P isomorphic to T(p,q,a,b): a >= b and
    p in [0, q) as small as possible over all presentations."""
    if invariants.width(P)[0] != 1:
        raise ValueError("polytope does not have width one")
    if invariants.sublattice_index(P) == 1:
        raise ValueError("polytope is spanning; it has no T(p,q,a,b) form")
    return _width1_label(width1_candidates(P))


@lru_cache(maxsize=None)
def normalize_width1(p: int, q: int, a: int, b: int) -> tuple[int, int, int, int]:
    return _width1_label(width1_candidates(catalog.make(CatalogEntry("T", (p, q, a, b)))))


# -- main decision ----------------------------------------------------------

@lru_cache(maxsize=None)
def _lookup(n: int) -> dict:
    return {cf: e for e, cf in catalog.enumerate_nonspanning(n)}


@lru_cache(maxsize=None)
def _e51_forms() -> dict:
    return {catalog.canonical(CatalogEntry(t)): t for t in catalog.SPANNING_TAGS}


def classify(P: LatticePolytope3) -> ClassificationResult:
    prof = invariants.profile(P)
    if prof.q == 1:
        witness = invariants.has_unimodular_tetrahedron(P)
        if witness is not None:
            return ClassificationResult(Spanning(True, witness), prof)
        name = _e51_forms().get(equiv.canonical_form(P)) if prof.n == 5 else None
        if name is None:
            return ClassificationResult(ContradictsClassification(
                "spanning polytope without a unimodular tetrahedron"), prof)
        return ClassificationResult(Spanning(False, None, name), prof)
    if prof.w == 1:
        p, q, a, b = extract_width1_params(P)
        return ClassificationResult(WidthOne(p, q, a, b), prof)
    label = _lookup(prof.n).get(equiv.canonical_form(P))
    if label is None:
        return ClassificationResult(ContradictsClassification(
            f"width {prof.w}, index {prof.q}, size {prof.n}: no matching family or exception"), prof)
    phi = equiv.find_isomorphism(catalog.make(label), P)
    if label.tag in catalog.FAMILY_TAGS:
        return ClassificationResult(Family(label.tag, label.params, phi), prof)
    return ClassificationResult(Exceptional(label.tag, phi), prof)


# -- suite ------------------------------------------------------------------

@dataclass
class SuiteReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    per_size: dict = field(default_factory=dict)        # n -> {index: classes}
    exception_sizes: dict = field(default_factory=dict)  # name -> sizes seen

    @property
    def ok(self) -> bool:
        return not self.failures


def spanning_extension(P: LatticePolytope3) -> LatticePolytope3:
    """hull(P + x) for the first lattice point x near P (in a fixed order)
    that makes the result spanning."""
    lo = [min(v[c] for v in P.vertices) - 1 for c in range(3)]
    hi = [max(v[c] for v in P.vertices) + 1 for c in range(3)]
    for x in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if P.contains(x):
            continue
        Q = geom.hull(list(P.vertices) + [x])
        if invariants.sublattice_index(Q) == 1:
            return Q
    raise RuntimeError("no spanning extension in the enlarged box")


def catalog_entries(nmax: int, t_indices=(2, 3, 5)) -> list[CatalogEntry]:
    """Class labels of size <= nmax: families, exceptions, and width-one
    classes for the given indices."""
    out = []
    for n in range(4, nmax + 1):
        out += [e for e, _ in catalog.enumerate_nonspanning(n)]
        for q in t_indices:
            out += [e for e, _ in catalog.width_one_entries(n, q)]
    return out


def verify_classification_suite(nmax: int, scrambles: int = 1, seed: int = 0) -> SuiteReport:
    if nmax < 8:
        raise ValueError("nmax must be at least 8")
    rng = random.Random(seed)
    rep = SuiteReport()
    for e in catalog_entries(nmax):
        P = catalog.make(e)
        rep.checked += 1
        for _ in range(scrambles):
            Q = equiv.apply_map(equiv.random_unimodular(rng), P)
            res = classify(Q)
            if res.label != e:
                rep.failures.append(f"{e}: classified as {res.verdict}")
        q = invariants.sublattice_index(P)
        if e.tag != "T":
            rep.per_size.setdefault(e.size, {}).setdefault(q, 0)
            rep.per_size[e.size][q] += 1
        if e.tag in catalog.EXCEPTION_TAGS:
            rep.exception_sizes.setdefault(e.tag, []).append(e.size)
        if not invariants.verify_partition(P):
            rep.failures.append(f"{e}: empty tetrahedra do not partition it")
        S = spanning_extension(P)
        res = classify(S)
        if not (isinstance(res.verdict, Spanning) and res.verdict.witness is not None):
            rep.failures.append(f"{e}: spanning extension gave {res.verdict}")
    return rep
