from __future__ import annotations

import pytest

from arrcover.arrangement import ArrangementError, cone, serialize
from arrcover.catalog import (
    BLUE,
    RED,
    CatalogError,
    catalog_get,
    catalog_names,
    entry,
    icosidodecahedral_A,
    icosidodecahedral_B,
    validate_icosidodecahedral,
)
from arrcover.covers import double_cover_mod2_betti, milnor_fiber_b1
from arrcover.fields import Q
from arrcover.os_algebra import poset_of
from arrcover.poset import betti_numbers, build_poset, find_isomorphism, rank2_census


def test_boolean_two():
    a = catalog_get("boolean:2")
    assert [h.form for h in a.hyperplanes] == [(1, 0, 0), (0, 1, 0)]
    assert a.field == Q


def test_icosidodecahedral_shape():
    a = catalog_get("icosidodecahedral")
    assert a.n == 16 and a.dim == 3 and a.central
    assert a.hyperplane(16).form == (0, 0, 1, 0)
    d = catalog_get("icosidodecahedral-decone-16")
    assert rank2_census(d).multiplicities() == {2, 4}


def test_decone_16_colouring():
    d = catalog_get("icosidodecahedral-decone-16")
    p = poset_of(d)
    for fl in p.by_codim(2):
        s = set(fl.members)
        assert (len(s), len(s & RED)) in {(2, 2), (4, 2)}
    # parallel triples: same direction, never meeting in the affine plane
    for first in (1, 3, 5, 7, 9):
        triple = [i for i in range(1, 16) if d.hyperplane(i).normal == d.hyperplane(first).normal]
        assert len(triple) == 3 and sum(1 for i in triple if i in BLUE) == 1


def test_decone_1_parallel_classes():
    cA = catalog_get("icosidodecahedral")
    d = catalog_get("icosidodecahedral-decone-1")
    label_to_index = {lab: i for i, lab in enumerate(d.labels, 1)}
    classes: dict[tuple, set[str]] = {}
    for h in d.hyperplanes:
        classes.setdefault(h.normal, set()).add(h.label)
    through_1 = {frozenset(str(i) for i in fl.members if i != 1) for fl in poset_of(cA).by_codim(2) if 1 in fl.members}
    assert {frozenset(c) for c in classes.values()} == through_1
    assert set(label_to_index) == {str(i) for i in range(2, 17)}
    assert betti_numbers(d) == [1, 15, 60]


def test_construction_determinism():
    assert serialize(icosidodecahedral_A()) == serialize(icosidodecahedral_A())
    assert serialize(icosidodecahedral_B()) == serialize(icosidodecahedral_B())
    for name in ["pencil:5", "generic:3", "braid:4"]:
        assert serialize(entry(name).build()) == serialize(entry(name).build())


def test_constructions_isomorphic_with_colours():
    pa, pb = build_poset(icosidodecahedral_A()), build_poset(icosidodecahedral_B())
    colour = {i: ("red" if i in RED else "blue") for i in range(1, 17)}
    sigma = find_isomorphism(pa, pb, colour, colour)
    assert sigma is not None
    assert all(colour[i] == colour[j] for i, j in sigma.items())


def test_validation_rejects_wrong_geometry():
    wrong = cone(catalog_get("generic:15"))
    with pytest.raises(ArrangementError, match="icosidodecahedral construction failed"):
        validate_icosidodecahedral(wrong)


def test_lookup_errors():
    with pytest.raises(CatalogError):
        catalog_get("dodecahedral")
    with pytest.raises(CatalogError):
        catalog_get("pencil:x")
    with pytest.raises(CatalogError):
        catalog_get("boolean:0")
    assert "icosidodecahedral" in catalog_names()
    assert catalog_get("ID") is catalog_get("ID")


@pytest.mark.parametrize("name", ["icosidodecahedral", "icosidodecahedral-decone-16", "icosidodecahedral-decone-1", "icosidodecahedral-B"])
def test_golden_values_rederived(name):
    e = entry(name)
    a = catalog_get(name)
    derive = {
        "n": lambda: a.n,
        "betti": lambda: betti_numbers(a),
        "milnor_b1": lambda: milnor_fiber_b1(a).b1,
        "h1_f2_all_ones": lambda: double_cover_mod2_betti(a, [1] * a.n).aomoto_h[1],
    }
    assert e.golden
    for key, (value, provenance) in e.golden.items():
        assert provenance in ("published", "derived")
        assert derive[key]() == value
