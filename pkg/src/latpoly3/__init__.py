"""Exact invariants, unimodular equivalence and classification of
non-spanning lattice 3-polytopes."""

from .catalog import CatalogEntry, make
from .equiv import AffineUnimodularMap, are_isomorphic, canonical_form, find_isomorphism
from .geom import DimensionDeficient, LatticePolytope3, hull

__version__ = "0.1.0"

__all__ = [
    "AffineUnimodularMap", "CatalogEntry", "DimensionDeficient", "LatticePolytope3",
    "are_isomorphic", "canonical_form", "find_isomorphism", "hull", "make",
]
