"""Exact combinatorics of hyperplane arrangements: Orlik-Solomon algebras,
Aomoto complexes, mod-2 Betti numbers of double covers and Milnor fiber
eigenspaces."""

from __future__ import annotations

__version__ = "0.1.0"

from arrcover.arrangement import Arrangement, ArrangementError, cone, decone, parse, serialize
from arrcover.catalog import catalog_get, catalog_names
from arrcover.covers import (
    double_cover_mod2_betti,
    eigenspace_rank,
    find_admissible_weights,
    milnor_fiber_b1,
    two_torsion_certificate,
)
from arrcover.fields import F2, FieldContext, Matrix, Q, kernel_basis, rank, rref
from arrcover.kernels import BACKEND
from arrcover.os_algebra import aomoto, enumerate_cocycles_f2, express_in_basis, os_degree
from arrcover.poset import betti_numbers, build_poset, characteristic_polynomial, rank2_census

__all__ = [
    "Arrangement", "ArrangementError", "cone", "decone", "parse", "serialize",
    "catalog_get", "catalog_names",
    "double_cover_mod2_betti", "eigenspace_rank", "find_admissible_weights",
    "milnor_fiber_b1", "two_torsion_certificate",
    "F2", "FieldContext", "Matrix", "Q", "kernel_basis", "rank", "rref",
    "BACKEND",
    "aomoto", "enumerate_cocycles_f2", "express_in_basis", "os_degree",
    "betti_numbers", "build_poset", "characteristic_polynomial", "rank2_census",
]
