from __future__ import annotations

from fractions import Fraction

import pytest

from arrcover.arrangement import Arrangement, cone
from arrcover.catalog import catalog_get
from arrcover.covers import (
    CERTIFIED,
    INCONCLUSIVE,
    SearchConfig,
    check_admissible,
    double_cover_mod2_betti,
    eigenspace_rank,
    find_admissible_weights,
    milnor_fiber_b1,
    two_torsion_certificate,
    weights_from_subset,
)
from arrcover.fields import Q
from arrcover.os_algebra import poset_of

ID = "icosidodecahedral"
half = Fraction(1, 2)
HALF_D8 = (half,) * 10 + (-half,) * 5 + (Fraction(-5, 2),)


@pytest.mark.parametrize(
    "name, b1",
    [("icosidodecahedral-decone-16", 16), ("pencil:4", 6), ("pencil:3", 3)],
)
def test_double_cover_examples(name, b1):
    a = catalog_get(name)
    rep = double_cover_mod2_betti(a, [1] * a.n)
    assert rep.mod2_betti[1] == b1
    assert rep.mod2_betti[0] == 1


def test_double_cover_rejects_zero():
    with pytest.raises(ValueError, match="w != 0"):
        double_cover_mod2_betti(catalog_get("pencil:3"), [0, 0, 0])


def test_double_cover_euler_doubles():
    a = catalog_get("pencil:4")
    chi = sum((-1) ** k * b for k, b in enumerate([1, 4, 3]))
    for mask in range(1, 16):
        rep = double_cover_mod2_betti(a, weights_from_subset(4, [i + 1 for i in range(4) if mask >> i & 1]))
        assert rep.mod2_betti[0] == 1
        assert sum((-1) ** k * b for k, b in enumerate(rep.mod2_betti)) == 2 * chi


def test_weights_from_subset():
    assert weights_from_subset(4, [1, 3]) == (1, 0, 1, 0)
    with pytest.raises(ValueError):
        weights_from_subset(2, [3])


def test_half_integer_weights_d8():
    cA = catalog_get(ID)
    aw = find_admissible_weights(cA, 8)
    assert aw.admissible and aw.entries == HALF_D8
    assert aw.shifts == (0,) * 10 + (-1,) * 5 + (-3,)
    assert check_admissible(cA, 8, HALF_D8) == []
    quads = [fl for fl in poset_of(cA).by_codim(2) if len(fl) == 4]
    assert {sum(HALF_D8[i - 1] for i in fl.members) for fl in quads} == {0, -2}
    assert eigenspace_rank(cA, aw) == 0


def test_naive_weights_d1():
    cA = catalog_get(ID)
    aw = find_admissible_weights(cA, 1)
    assert aw.source == "naive" and aw.admissible
    assert aw.entries == (Fraction(1, 16),) * 15 + (Fraction(-15, 16),)
    sums = {}
    for fl in poset_of(cA).by_codim(2):
        if len(fl) == 4:
            sums.setdefault(16 in fl.members, set()).add(sum(aw.entries[i - 1] for i in fl.members))
    assert sums == {False: {Fraction(1, 4)}, True: {Fraction(-3, 4)}}
    assert sum(aw.entries) == 0
    assert eigenspace_rank(cA, aw) == 0


def test_every_returned_vector_rechecks():
    for name in [ID, "pencil:4", "braid:3", "boolean:3"]:
        cA = catalog_get(name)
        for d in range(1, cA.n):
            aw = find_admissible_weights(cA, d)
            assert aw.admissible == (check_admissible(cA, d, aw.entries) == [])
            base = Fraction(d, cA.n)
            assert all((x - base).denominator == 1 for x in aw.entries)
            assert sum(aw.entries) == 0


def test_check_admissible_flags_violations():
    cA = catalog_get("pencil:4")
    bad = check_admissible(cA, 2, [Fraction(3, 2), Fraction(1, 2), Fraction(1, 2), Fraction(-5, 2)])
    assert ("P3", (1, 2, 3, 4), Fraction(0)) not in bad
    bad = check_admissible(cA, 2, [Fraction(1, 2)] * 4)
    assert [c for c, _, _ in bad] == ["P2", "P3"]


def test_eigenspace_rank_refuses_inadmissible():
    cA = catalog_get(ID)
    aw = find_admissible_weights(cA, 8, SearchConfig(range=0))
    assert not aw.admissible and aw.violations
    with pytest.raises(ValueError, match="not admissible"):
        eigenspace_rank(cA, aw)


def test_milnor_icosidodecahedral():
    rep = milnor_fiber_b1(catalog_get(ID))
    assert rep.b1 == 15
    assert [r.h1 for r in rep.rows] == [0] * 15
    assert rep.conjugate_symmetric


def test_generic_cone_has_trivial_monodromy():
    rep = milnor_fiber_b1(cone(catalog_get("generic:4")))
    assert [r.h1 for r in rep.rows] == [0] * 4 and rep.b1 == 4


def test_three_concurrent_lines():
    # cone of two parallel affine lines: three planes through a common line
    two_parallel = Arrangement.from_forms(Q, 1, [(1, 0), (1, -1)])
    rep = milnor_fiber_b1(cone(two_parallel))
    assert rep.b1_base == 2
    assert [r.h1 for r in rep.rows] == [1, 1]
    assert rep.b1 == 4


@pytest.mark.parametrize("m", [3, 4, 5])
def test_pencil_milnor_fiber(m):
    # F = {x^m - y^m = 1}-type curve: b1 = (m - 1)^2
    rep = milnor_fiber_b1(catalog_get(f"pencil:{m}"))
    assert rep.b1 == (m - 1) ** 2
    assert rep.conjugate_symmetric


def test_boolean_cone():
    rep = milnor_fiber_b1(catalog_get("boolean:3"))
    assert rep.b1 == 2 and all(r.h1 == 0 for r in rep.rows)


def test_eigenspace_symmetry_both_sides():
    rep = milnor_fiber_b1(catalog_get("braid:3"))
    h = [r.h1 for r in rep.rows]
    assert h == [0, 1, 0, 1, 0] and h == h[::-1]


def test_unknown_eigenspace_blocks_certificate():
    rep = two_torsion_certificate(catalog_get(ID), cfg=SearchConfig(range=0))
    assert rep.b1 is None and rep.b1_lower == 15
    assert rep.verdict == INCONCLUSIVE
    assert rep.failed == ["no_nontrivial_eigenspaces"]
    assert rep.to_json()["b1_range"] == [15, None]


def test_certificate_icosidodecahedral():
    rep = two_torsion_certificate(catalog_get(ID))
    assert rep.verdict == CERTIFIED
    assert rep.h1_f2 == rep.h1_f2_enumerated == 1
    assert rep.mod2_lower_bound == 16 and rep.b1 == 15
    assert rep.evidence_chain() == "b̄₁(F) ≥ 16 > 15 = b₁(F)"


def test_certificate_pencil_cone_fails_mod2_condition():
    rep = two_torsion_certificate(cone(catalog_get("pencil:3")))
    assert rep.verdict == INCONCLUSIVE
    assert "mod2_aomoto_h1_nonzero" in rep.failed and rep.h1_f2 == 0
    assert rep.conditions["order_power_of_two"]


def test_certificate_braid_fails_order():
    rep = two_torsion_certificate(catalog_get("A3"))
    assert rep.verdict == INCONCLUSIVE and "order_power_of_two" in rep.failed
