"""Verification suites behind `latpoly3 verify`.

Each suite returns a list of Check records (name, expected, actual, ok).
Expected values are the published table entries and closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import catalog, classify, geom, invariants
from .catalog import CatalogEntry

# Lattice 3-polytopes of width > 1 by size (5..11) and sublattice index.
TABLE_INDEX_COUNTS = {
    2: (0, 2, 8, 14, 15, 19, 24),
    3: (1, 3, 2, 3, 3, 4, 4),
    5: (1, 0, 0, 0, 0, 0, 0),
}

# Classes inside each family by size (5..11); None marks an empty cell.
TABLE_FAMILY_COUNTS = {
    "F1": (1, 2, 2, 3, 3, 4, 4),
    "F2": (0, 2, 2, 3, 3, 4, 4),
    "F3": (None, 1, 4, 6, 9, 12, 16),
    "F4": (None, 1, 2, 2, 3, 3, 4),
    "index3": (1, 2, 2, 3, 3, 4, 4),
    "index2": (0, 2, 7, 11, 15, 19, 24),
}

EXCEPTION_HSTAR = {
    "E55": (1, 1, 17, 1),
    "E63": (1, 2, 19, 2),
    "E72": (1, 3, 10, 0),
    "E821": (1, 4, 20, 3),
    "E822": (1, 4, 20, 3),
    "E823": (1, 4, 21, 4),
}

E51_VOLUMES = {"E511": (2, 3, 5, 7), "E512": (3, 4, 5, 7)}


def expected_hstar(e: CatalogEntry) -> tuple[int, ...]:
    """Published h*-vector for a catalog entry, trailing zeros trimmed."""
    n = e.size
    if e.tag == "T":
        p, q, a, b = e.params
        h = (1, a + b - 2, a * b * q - a - b + 1, 0)
    elif e.tag == "F1":
        h = (1, n - 4, 7 * n - 28, n - 5)
    elif e.tag == "F2":
        h = (1, n - 4, 3 * n - 13, 0)
    elif e.tag in ("F3", "F4"):
        h = (1, n - 4, 6 * n - 31, n - 6)
    else:
        h = EXCEPTION_HSTAR[e.tag]
    return invariants.trim_zeros(h)


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def _nonspanning_entries(nmax: int, t_indices=(2, 3, 5)):
    return classify.catalog_entries(nmax, t_indices)


def suite_tables(nmax: int = 11, closed_max: int = 25) -> list[Check]:
    checks = []
    top = min(nmax, 11)
    for n in range(5, top + 1):
        counts = catalog.index_counts(n)
        for q, row in TABLE_INDEX_COUNTS.items():
            checks.append(Check(f"width>1 size {n} index {q}", row[n - 5], counts.get(q, 0)))
        extra = sorted(q for q in counts if q not in TABLE_INDEX_COUNTS)
        checks.append(Check(f"width>1 size {n} other indices", [], extra))
    for row in catalog.family_counts_table(top):
        for tag in catalog.FAMILY_TAGS:
            want = TABLE_FAMILY_COUNTS[tag][row.n - 5] or 0
            checks.append(Check(f"family {tag} size {row.n}", want, row.enumerated[tag]))
        checks.append(Check(f"families index 2 size {row.n}", TABLE_FAMILY_COUNTS["index2"][row.n - 5], row.total_index2))
        checks.append(Check(f"families index 3 size {row.n}", TABLE_FAMILY_COUNTS["index3"][row.n - 5], row.total_index3))
    for row in catalog.family_counts_table(closed_max, nmin=9):
        for q, total in ((2, row.total_index2), (3, row.total_index3)):
            checks.append(Check(f"closed form size {row.n} index {q}", catalog.count_closed_form(row.n, q), total))
        for tag in catalog.FAMILY_TAGS:
            checks.append(Check(f"family formula {tag} size {row.n}", row.formula[tag], row.enumerated[tag]))
    return checks


def suite_partition(nmax: int = 12) -> list[Check]:
    checks = []
    for e in _nonspanning_entries(nmax):
        P = catalog.make(e)
        q = invariants.sublattice_index(P)
        tets = invariants.empty_tetrahedra(P)
        checks.append(Check(f"{e} empty tetrahedra volumes", {q}, {t.volume for t in tets}))
        checks.append(Check(f"{e} volume sum", geom.normalized_volume(P), sum(t.volume for t in tets)))
    return checks


def suite_spanning(nmax: int = 12) -> list[Check]:
    checks = []
    for tag, vols in E51_VOLUMES.items():
        P = catalog.make(CatalogEntry(tag))
        checks.append(Check(f"{tag} index", 1, invariants.sublattice_index(P)))
        checks.append(Check(f"{tag} unimodular tetrahedron", None, invariants.has_unimodular_tetrahedron(P)))
        checks.append(Check(f"{tag} empty volumes", vols,
                            tuple(sorted(t.volume for t in invariants.empty_tetrahedra(P)))))
    for e in _nonspanning_entries(nmax):
        S = classify.spanning_extension(catalog.make(e))
        checks.append(Check(f"{e} + point has unimodular tetrahedron", True,
                            invariants.has_unimodular_tetrahedron(S) is not None))
    return checks


def suite_hstar(nmax: int = 12, tmax: int = 4) -> list[Check]:
    checks = []
    for e in _nonspanning_entries(nmax):
        P = catalog.make(e)
        h = invariants.hstar(P)
        checks.append(Check(f"{e} h*", expected_hstar(e), h))
        checks.append(Check(f"{e} Ehrhart dilations", True, invariants.ehrhart_check(P, tmax)))
        law = invariants.check_hstar_laws(P)
        checks.append(Check(f"{e} h2* >= (q-1)(1+h1*)", True, law.inequality_holds))
        empty = P.size == 4
        checks.append(Check(f"{e} gaps", (1,) if empty else (), law.gaps))
    return checks


def suite_dim4(nmax: int = 0) -> list[Check]:
    rep = catalog.dim4_example()
    return [
        Check("4-simplex nonzero minors", (4, 2, 2, 2), rep.minors),
        Check("4-simplex index", 2, rep.index),
        Check("4-simplex gcd of minors", rep.index, rep.gcd_of_minors),
    ]


def suite_classify(nmax: int = 12) -> list[Check]:
    rep = classify.verify_classification_suite(nmax)
    return [Check("classification round trip", [], rep.failures)]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "tables": suite_tables,
    "partition": suite_partition,
    "spanning": suite_spanning,
    "hstar": suite_hstar,
    "dim4": suite_dim4,
    "classify": suite_classify,
}
