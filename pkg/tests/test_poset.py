from __future__ import annotations

from math import comb

import pytest

from arrcover.arrangement import Arrangement, cone
from arrcover.catalog import BLUE, RED, catalog_get
from arrcover.fields import Q
from arrcover.poset import (
    betti_numbers,
    build_poset,
    characteristic_polynomial,
    find_isomorphism,
    format_polynomial,
    rank2_census,
)

SMALL = ["boolean:2", "boolean:3", "pencil:3", "pencil:5", "generic:4", "braid:3", "braid:4"]


def test_boolean_flats():
    p = build_poset(catalog_get("boolean:2"))
    assert [f.members for f in p.flats] == [(), (1,), (2,), (1, 2)]
    assert p.mobius == [1, -1, -1, 1]
    assert betti_numbers(p) == [1, 2, 1]
    assert format_polynomial(characteristic_polynomial(p)) == "t^2 - 2t + 1"


def test_pencil():
    p = build_poset(catalog_get("pencil:3"))
    (top,) = p.by_codim(2)
    assert top.members == (1, 2, 3) and p.mobius_of(top) == 2
    assert betti_numbers(p) == [1, 3, 2]
    assert rank2_census(p).counts == {3: 1}


def test_braid_characteristic_polynomial():
    assert characteristic_polynomial(catalog_get("A3")) == [-6, 11, -6, 1]
    assert format_polynomial(characteristic_polynomial(catalog_get("A3"))) == "t^3 - 6t^2 + 11t - 6"


def test_empty_arrangement():
    a = Arrangement(3, (), Q)
    assert characteristic_polynomial(a) == [0, 0, 0, 1]
    assert betti_numbers(a) == [1, 0, 0, 0]


def test_generic_three_lines():
    assert rank2_census(catalog_get("generic:3")).counts == {2: 3}


def test_parallel_lines_excluded():
    a = Arrangement.from_forms(Q, 2, [(1, 0, 0), (1, 0, -1), (0, 1, 0)])
    p = build_poset(a)
    assert [f.members for f in p.by_codim(2)] == [(1, 3), (2, 3)]
    assert p.closure({1, 2}) is None
    assert betti_numbers(p) == [1, 3, 2]


@pytest.mark.parametrize("name", SMALL + ["icosidodecahedral", "icosidodecahedral-decone-16"])
def test_mobius_alternation_and_census_pairs(name):
    a = catalog_get(name)
    p = build_poset(a)
    for fl, m in zip(p.flats, p.mobius):
        assert (-1) ** fl.codim * m > 0
    assert p.flats[0].members == () and p.mobius[0] == 1
    assert sum(abs(m) for m in p.mobius) == sum(betti_numbers(p))
    pairs = sum(1 for i in range(1, a.n + 1) for j in range(i + 1, a.n + 1) if p.closure((i, j)) is not None)
    assert sum(comb(len(f), 2) for f in rank2_census(p).flats) == pairs


@pytest.mark.parametrize("name", [n for n in SMALL if not n.startswith("generic")])
def test_central_characteristic_vanishes_at_one(name):
    a = catalog_get(name)
    assert a.central
    assert sum(characteristic_polynomial(a)) == 0


@pytest.mark.parametrize("name", ["generic:4", "pencil:4", "boolean:2", "icosidodecahedral-decone-16", "icosidodecahedral-decone-1"])
def test_cone_factorization(name):
    a = catalog_get(name)
    b = betti_numbers(a) + [0]
    bc = betti_numbers(cone(a))
    assert bc == [b[k] + (b[k - 1] if k else 0) for k in range(len(bc))]


def test_icosidodecahedral_values():
    p = build_poset(catalog_get("icosidodecahedral"))
    assert betti_numbers(p) == [1, 16, 75, 60]
    assert rank2_census(p).counts == {2: 30, 4: 15}
    d = build_poset(catalog_get("icosidodecahedral-decone-16"))
    assert betti_numbers(d)[1] == 15
    for fl in rank2_census(d).flats:
        s = set(fl)
        if len(fl) == 2:
            assert s <= RED
        else:
            assert len(fl) == 4 and len(s & RED) == 2 and len(s & BLUE) == 2


def test_isomorphism_search():
    p = build_poset(catalog_get("braid:3"))
    assert find_isomorphism(p, p) is not None
    assert find_isomorphism(p, build_poset(catalog_get("boolean:3"))) is None
    assert find_isomorphism(build_poset(catalog_get("pencil:4")), build_poset(catalog_get("generic:4"))) is None
