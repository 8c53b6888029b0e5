import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20261017)


def unit_tetra():
    from latpoly3.geom import hull
    return hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def small_catalog(nmax=9):
    """Family and exception labels plus a few width-one classes, size <= nmax."""
    from latpoly3.classify import catalog_entries
    return catalog_entries(nmax, (2, 3))
