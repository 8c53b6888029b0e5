import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpoly3 import geom, invariants as inv
from latpoly3.catalog import entry, make
from latpoly3.equiv import apply_map, random_unimodular
from latpoly3.geom import DimensionDeficient, hull

from conftest import small_catalog, unit_tetra

CAT = small_catalog(9)


def prism(k):
    return hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, k)])


def width_oracle(P, radius=4):
    """Brute force over all primitive functionals with small coordinates."""
    best = None
    for f in itertools.product(range(-radius, radius + 1), repeat=3):
        if f == (0, 0, 0):
            continue
        w = inv.functional_width(f, P.vertices)
        best = w if best is None else min(best, w)
    return best


def test_index_examples():
    assert inv.sublattice_index(unit_tetra()) == 1
    assert inv.sublattice_index(make(entry("T", 3, 5, 2, 2))) == 5
    assert inv.sublattice_index(make(entry("E823"))) == 2


@pytest.mark.parametrize("e", CAT, ids=str)
def test_index_matches_determinant_oracle(e):
    P = make(e)
    assert inv.sublattice_index(P) == inv.index_by_determinants(P.lattice_points)


def test_width_examples():
    assert inv.width(make(entry("T", 2, 5, 3, 1)))[0] == 1
    assert inv.width(make(entry("F2", 0, 2)))[0] == 2
    assert inv.width(make(entry("F1", 0, 4)))[0] == 3


@pytest.mark.parametrize("e", CAT, ids=str)
def test_width_matches_brute_force(e):
    P = make(e)
    w, f = inv.width(P)
    assert w == width_oracle(P)
    assert inv.functional_width(f, P.vertices) == w
    assert w == 1 if e.tag == "T" else w >= 2


def test_hstar_examples():
    assert inv.hstar(make(entry("E55"))) == (1, 1, 17, 1)
    assert inv.hstar(unit_tetra()) == (1,)
    for q in (2, 3, 5):
        assert inv.hstar(make(entry("T", 1, q, 1, 1))) == (1, 0, q - 1)
    for a, b, k in ((0, 2, 1), (-1, 3, 2), (0, 4, 0)):
        n = b - a + 5
        assert inv.hstar(make(entry("F3", a, b, k))) == (1, n - 4, 6 * n - 31, n - 6)


def test_hstar_negative_raises():
    with pytest.raises(inv.InconsistentInvariants):
        inv.hstar_from_params(5, 0, 1)


@pytest.mark.parametrize("e", CAT, ids=str)
def test_profile_consistency(e):
    prof = inv.profile(make(e))
    assert sum(prof.hstar) == prof.V
    assert prof.hstar[1] == prof.n - 4
    assert (prof.hstar + (0, 0, 0))[3] == prof.n0
    assert prof.V % prof.q == 0


def test_ehrhart_examples():
    assert inv.ehrhart_check(unit_tetra(), 4)
    from math import comb
    assert inv.ehrhart_counts(unit_tetra(), 4) == [comb(t + 3, 3) for t in range(5)]
    assert inv.ehrhart_check(make(entry("E63")), 4) and inv.hstar(make(entry("E63"))) == (1, 2, 19, 2)
    # F4(0,3) has size 8; the size-9 member F4(0,4) carries (1,5,23,3)
    assert inv.hstar(make(entry("F4", 0, 3))) == (1, 4, 17, 2)
    P = make(entry("F4", 0, 4))
    assert inv.hstar(P) == (1, 5, 23, 3) and inv.ehrhart_check(P, 4)
    with pytest.raises(ValueError):
        inv.ehrhart_check(P, 2)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_ehrhart_prism(k):
    P = prism(k)
    assert inv.hstar(P) == (1, 4 * k, 2 * k - 1)
    assert inv.ehrhart_check(P, 5)


def test_empty_tetrahedra_examples():
    t = inv.empty_tetrahedra(unit_tetra())
    assert len(t) == 1 and t[0].volume == 1
    vols = sorted(x.volume for x in inv.empty_tetrahedra(make(entry("E511"))))
    assert vols == [2, 3, 5, 7]
    assert {x.volume for x in inv.empty_tetrahedra(make(entry("T", 1, 2, 2, 1)))} == {2}


def test_tetrahedron_points_direct():
    assert len(inv.tetrahedron_lattice_points((0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2))) == 10


def test_partition_examples():
    P = make(entry("F1", 0, 2))
    assert inv.verify_partition(P)
    assert sum(t.volume for t in inv.empty_tetrahedra(P)) == 18 == geom.normalized_volume(P)
    assert inv.verify_partition(make(entry("E821")))
    assert isinstance(inv.verify_partition(prism(2)), bool)


@pytest.mark.parametrize("e", CAT, ids=str)
def test_partition_catalog(e):
    assert inv.verify_partition(make(e))


def test_unimodular_tetra():
    assert inv.has_unimodular_tetrahedron(unit_tetra()) is not None
    assert inv.has_unimodular_tetrahedron(make(entry("E511"))) is None
    assert inv.has_unimodular_tetrahedron(make(entry("E512"))) is None
    for q in (2, 3, 7):
        assert inv.has_unimodular_tetrahedron(make(entry("T", 1, q, 2, 1))) is None


def test_hstar_laws():
    r = inv.check_hstar_laws(make(entry("E55")))
    assert r.index == 5 and r.lower_bound == 8 and r.inequality_holds and r.gaps == ()
    r = inv.check_hstar_laws(make(entry("T", 1, 3, 1, 1)))
    assert r.hstar == (1, 0, 2) and r.gaps == (1,)
    r = inv.check_hstar_laws(prism(2))
    assert r.inequality_holds is None and r.gaps == ()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CAT), st.randoms(use_true_random=False))
def test_invariants_under_unimodular_maps(e, r):
    P = make(e)
    Q = apply_map(random_unimodular(r), P)
    assert inv.profile(Q) == inv.profile(P)


def deletions(P):
    for v in P.vertices:
        try:
            yield v, geom.remove_lattice_point(P, v)
        except DimensionDeficient:
            pass


@pytest.mark.parametrize("e", CAT, ids=str)
def test_index_divides_on_deletion(e):
    P = make(e)
    q = inv.sublattice_index(P)
    for v, Pv in deletions(P):
        assert inv.sublattice_index(Pv) % q == 0


@pytest.mark.parametrize("e", CAT, ids=str)
def test_index_preserved_on_deletion(e):
    # the catalog here is all non-spanning
    P = make(e)
    q = inv.sublattice_index(P)
    for v, Pv in deletions(P):
        assert inv.sublattice_index(Pv) == q


@pytest.mark.parametrize("e", CAT, ids=str)
def test_projection_index_divides(e):
    P = make(e)
    q = inv.sublattice_index(P)
    dirs = [(1, 0, 0), (0, 1, 0), (0, 0, 1), geom.find_spike(P).direction]
    for d in dirs:
        c = geom.project_along(P, d)
        assert q % inv.affine_lattice_index(c.points) == 0
