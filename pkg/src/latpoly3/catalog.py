"""Constructors and enumeration for the non-spanning lattice 3-polytopes.

Width-one tetrahedra T(p,q,a,b), the four families F1..F4 around a vertical
segment ("spike"), the six sporadic non-spanning polytopes, and the two
spanning tetrahedra of size five without a unimodular tetrahedron.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import equiv, geom, invariants
from .equiv import CanonicalForm
from .geom import LatticePolytope3
from .intlin import gcd_all, snf

FAMILY_TAGS = ("F1", "F2", "F3", "F4")
EXCEPTION_TAGS = ("E55", "E63", "E72", "E821", "E822", "E823")
SPANNING_TAGS = ("E511", "E512")
TAGS = ("T",) + FAMILY_TAGS + EXCEPTION_TAGS + SPANNING_TAGS

_B = [(-1, -1, 0), (2, 0, 0), (1, 2, 0)]

NAMED_POINTS = {
    "E55": [(0, -2, 1), (1, 0, -1), (1, 1, 1), (-2, 1, -1)],
    "E63": [(1, 0, 0), (-1, -1, 0), (1, 2, 3), (-1, 1, -3)],
    "E72": _B + [(0, -1, 2)],
    "E821": _B + [(0, -1, 2), (0, 1, -2)],
    "E822": _B + [(0, -1, 2), (-2, -1, -2)],
    "E823": [(0, -1, -1), (2, 0, 2), (1, 2, -1), (-1, 1, 2)],
    "E511": [(1, 0, 0), (0, 0, 1), (2, 7, 1), (-1, -2, -1)],
    "E512": [(1, 0, 0), (0, 0, 1), (3, 7, 1), (-2, -3, -1)],
}

# points around the spike {(0,0,z) : a <= z <= b}
_AROUND = {
    "F1": [(-1, -1, 0), (2, -1, 1), (-1, 2, -1)],
    "F2": [(-1, -1, 1), (1, -1, 0), (-1, 1, 0)],
    "F4": [(-1, -1, 1), (1, -1, 0), (-1, 1, 0), (3, -1, -1)],
}

NAMED_SIZES = {"E55": 5, "E63": 6, "E72": 7, "E821": 8, "E822": 8, "E823": 8}
EXPECTED_INDEX = {"F1": 3, "F2": 2, "F3": 2, "F4": 2,
                  "E55": 5, "E63": 3, "E72": 2, "E821": 2, "E822": 2, "E823": 2}

_TAG_RANK = {t: i for i, t in enumerate(FAMILY_TAGS + EXCEPTION_TAGS)}


class ParamDomainError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CatalogEntry:
    tag: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        check_domain(self.tag, self.params)

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}({','.join(map(str, self.params))})"

    @property
    def size(self) -> int:
        t, p = self.tag, self.params
        if t == "T":
            return p[2] + p[3] + 2
        if t in ("F1", "F2"):
            return p[1] - p[0] + 4
        if t in ("F3", "F4"):
            return p[1] - p[0] + 5
        return NAMED_SIZES.get(t, 5)

    @property
    def oriented(self) -> bool:
        """Whether family parameters are in the preferred orientation
        (-a <= b, and -a <= b - k for F3)."""
        if self.tag in ("F1", "F2", "F4"):
            a, b = self.params
            return -a <= b
        if self.tag == "F3":
            a, b, k = self.params
            return -a <= b - k
        return True


def check_domain(tag: str, params: tuple[int, ...]) -> None:
    if tag not in TAGS:
        raise ParamDomainError(f"unknown tag {tag!r}")
    if tag == "T":
        if len(params) != 4:
            raise ParamDomainError("T takes (p, q, a, b)")
        p, q, a, b = params
        if not (0 <= p < q and math.gcd(p, q) == 1 and a >= 1 and b >= 1):
            raise ParamDomainError(f"T{params}: need 0 <= p < q, gcd(p,q) = 1, a, b >= 1")
    elif tag in ("F1", "F2", "F4"):
        if len(params) != 2:
            raise ParamDomainError(f"{tag} takes (a, b)")
        a, b = params
        if not a <= 0 < b:
            raise ParamDomainError(f"{tag}{params}: need a <= 0 < b")
        if tag == "F2" and (a, b) == (0, 1):
            raise ParamDomainError("F2(0,1) has width one and is excluded")
    elif tag == "F3":
        if len(params) != 3:
            raise ParamDomainError("F3 takes (a, b, k)")
        a, b, k = params
        if not (a <= 0 < b and 0 <= k <= b):
            raise ParamDomainError(f"F3{params}: need a <= 0 < b and 0 <= k <= b")
        if (a, b, k) == (0, 1, 1):
            raise ParamDomainError("F3(0,1,1) has width one and is excluded")
    elif params:
        raise ParamDomainError(f"{tag} takes no parameters")


def generators(entry: CatalogEntry) -> list[geom.Point3]:
    t, prm = entry.tag, entry.params
    if t == "T":
        p, q, a, b = prm
        return [(0, 0, 0), (a, 0, 0), (0, 0, 1), (b * p, b * q, 1)]
    if t in NAMED_POINTS:
        return list(NAMED_POINTS[t])
    a, b = prm[0], prm[1]
    spike = [(0, 0, a), (0, 0, b)]
    if t == "F3":
        k = prm[2]
        return spike + _AROUND["F2"] + [(1, 1, 2 * k - 1)]
    return spike + _AROUND[t]


@lru_cache(maxsize=None)
def make(entry: CatalogEntry) -> LatticePolytope3:
    return geom.hull(generators(entry))


def entry(tag: str, *params: int) -> CatalogEntry:
    return CatalogEntry(tag, tuple(params))


# -- enumeration ------------------------------------------------------------

def family_entries(n: int, tags=FAMILY_TAGS) -> list[CatalogEntry]:
    """Every admissible family parameter tuple of size n (with repetitions
    up to isomorphism)."""
    out = []
    for tag in tags:
        length = n - 4 if tag in ("F1", "F2") else n - 5  # b - a
        if length < 1:
            continue
        for a in range(1 - length, 1):
            b = a + length
            if tag == "F3":
                for k in range(b + 1):
                    if (a, b, k) != (0, 1, 1):
                        out.append(CatalogEntry(tag, (a, b, k)))
            elif (tag, a, b) != ("F2", 0, 1):
                out.append(CatalogEntry(tag, (a, b)))
    return out


def exception_entries(n: int) -> list[CatalogEntry]:
    return [CatalogEntry(t) for t in EXCEPTION_TAGS if NAMED_SIZES[t] == n]


@lru_cache(maxsize=None)
def canonical(entry: CatalogEntry) -> CanonicalForm:
    return equiv.canonical_form(make(entry))


def _label_key(e: CatalogEntry):
    return (_TAG_RANK[e.tag], not e.oriented, e.params)


def dedup(entries) -> list[tuple[CatalogEntry, CanonicalForm]]:
    """One (label, canonical form) per isomorphism class, label = preferred
    entry of the class; ordered by label."""
    classes: dict[CanonicalForm, CatalogEntry] = {}
    for e in entries:
        cf = canonical(e)
        if cf not in classes or _label_key(e) < _label_key(classes[cf]):
            classes[cf] = e
    return sorted(((e, cf) for cf, e in classes.items()), key=lambda x: _label_key(x[0]))


@lru_cache(maxsize=None)
def _nonspanning_wide(n: int) -> tuple:
    return tuple(dedup(family_entries(n) + exception_entries(n)))


def width_one_entries(n: int, q: int) -> list[tuple[CatalogEntry, tuple]]:
    """Width-one classes T(p,q,a,b) of size n for a fixed index q >= 2,
    labelled by their normalized parameters (a >= b, smallest p)."""
    from .classify import normalize_width1  # local import: classify builds on catalog

    labels = {}
    for a in range(1, n - 2):
        b = n - 2 - a
        for p in range(q):
            if math.gcd(p, q) == 1:
                lab = normalize_width1(p, q, a, b)
                labels[lab] = CatalogEntry("T", lab)
    return [(labels[k], k) for k in sorted(labels)]


def enumerate_nonspanning(n: int, q: Optional[int] = None) -> list:
    """Non-spanning polytopes of size n and width > 1, one per class, as
    (label, canonical form).  With q given, the width-one classes of index
    q are appended as (label, normalized parameters)."""
    if n < 4:
        raise ValueError("size must be at least 4")
    out = list(_nonspanning_wide(n))
    if q is not None:
        out += width_one_entries(n, q)
    return out


def index_counts(n: int) -> Counter:
    """Classes of size n and width > 1 by computed sublattice index."""
    return Counter(invariants.sublattice_index(make(e)) for e, _ in enumerate_nonspanning(n))


def count_closed_form(n: int, q: int) -> int:
    if n < 9:
        raise ValueError("closed forms hold for size n >= 9")
    if q < 2:
        raise ValueError("index must be at least 2")
    if q == 2:
        return (n - 3) * (n + 1) // 4
    if q == 3:
        return -(-(n - 3) // 2)
    return 0


def family_formula(tag: str, n: int) -> int:
    m = n - 3
    return {
        "F1": -(-m // 2),
        "F2": -(-m // 2),
        "F3": m * m // 4,
        "F4": m // 2,
    }[tag]


@dataclass
class FamilyCountRow:
    n: int
    enumerated: dict   # tag -> classes within the family
    formula: dict      # tag -> general-n formula
    total_index2: int  # classes over F2, F3, F4 together
    total_index3: int
    formula_index2: int
    formula_index3: int


def family_counts_table(nmax: int, nmin: int = 5) -> list[FamilyCountRow]:
    rows = []
    for n in range(nmin, nmax + 1):
        per = {t: len(dedup(family_entries(n, (t,)))) for t in FAMILY_TAGS}
        i2 = len(dedup(family_entries(n, ("F2", "F3", "F4"))))
        i3 = per["F1"]
        rows.append(FamilyCountRow(
            n=n,
            enumerated=per,
            formula={t: family_formula(t, n) for t in FAMILY_TAGS},
            total_index2=i2,
            total_index3=i3,
            formula_index2=(n - 3) * (n + 1) // 4,
            formula_index3=-(-(n - 3) // 2),
        ))
    return rows


# -- the 4-dimensional example ---------------------------------------------

DIM4_VERTICES = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (-2, -1, -1, 0), (1, 1, 1, 2)]


@dataclass(frozen=True)
class Dim4Report:
    minors: tuple[int, ...]        # nonzero |4x4 minors|, sorted descending
    gcd_of_minors: int
    index: int                     # via Smith form of the 6-point configuration
    elementary_divisors: tuple[int, ...]


def dim4_example() -> Dim4Report:
    """The lattice 4-simplex whose five vertices plus the origin are its lattice
    points; the origin sits inside the facet spanned by the first four."""
    from .intlin import det

    minors = []
    for skip in range(5):
        rows = [v for i, v in enumerate(DIM4_VERTICES) if i != skip]
        minors.append(abs(det(rows)))
    divs = snf(DIM4_VERTICES).divisors
    return Dim4Report(
        minors=tuple(sorted((m for m in minors if m), reverse=True)),
        gcd_of_minors=gcd_all(minors),
        index=math.prod(divs),
        elementary_divisors=divs,
    )
