"""Double covers, Milnor fiber eigenspaces and the 2-torsion certificate.

* ``double_cover_mod2_betti``: ``b̄_k(M^w) = b_k(M) + h^k(A_F2, w∧)`` for ``w != 0``.
* ``find_admissible_weights`` / ``eigenspace_rank``: rational weights
  ``a_i ≡ d/(n+1) (mod 1)`` with zero sum and no positive-integer sum on a
  single hyperplane or a rank-2 flat of multiplicity >= 3; under these
  conditions the eigenvalue-``exp(2πi d/(n+1))`` part of ``H^1(F, C)`` equals
  the first Aomoto cohomology of the deconing with those weights.
* ``two_torsion_certificate``: when ``#cA`` is a power of two, the first
  double cover in the tower of the Milnor fiber has mod-2 first Betti number
  ``n + h^1`` and ``b̄_1(F)`` is at least that.  If every nontrivial
  eigenspace vanishes then ``b_1(F) = n`` and ``h^1 > 0`` forces 2-torsion in
  ``H_1(F, Z)`` by universal coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from arrcover.arrangement import Arrangement, ArrangementError, decone, from_mask, to_mask
from arrcover.fields import F2, Q
from arrcover.os_algebra import (
    MAX_ENUMERATION,
    aomoto,
    enumerate_cocycles_f2,
    poset_of,
)
from arrcover.poset import betti_numbers

__all__ = [
    "DoubleCoverReport",
    "AdmissibleWeights",
    "SearchConfig",
    "EigenRow",
    "MilnorReport",
    "double_cover_mod2_betti",
    "check_admissible",
    "find_admissible_weights",
    "eigenspace_rank",
    "milnor_fiber_b1",
    "two_torsion_certificate",
    "weights_from_subset",
    "CERTIFIED",
    "INCONCLUSIVE",
]

CERTIFIED = "2-torsion certified"
INCONCLUSIVE = "inconclusive"


def weights_from_subset(n: int, subset) -> tuple[int, ...]:
    """Characteristic vector of a set of 1-based indices."""
    mask = to_mask(subset)
    if mask >> n:
        raise ValueError(f"subset has indices beyond {n}")
    return tuple((mask >> i) & 1 for i in range(n))


@dataclass
class DoubleCoverReport:
    arrangement: Arrangement
    w: tuple[int, ...]
    betti: list[int]
    aomoto_h: list[int]

    @property
    def mod2_betti(self) -> list[int]:
        return [b + h for b, h in zip(self.betti, self.aomoto_h)]

    def to_json(self) -> dict:
        return {
            "w_subset": list(from_mask(to_mask(i for i, x in enumerate(self.w, 1) if x))),
            "table": [
                {"k": k, "betti": b, "aomoto_h": h, "mod2_betti_cover": b + h}
                for k, (b, h) in enumerate(zip(self.betti, self.aomoto_h))
            ],
            "mod2_betti_cover": self.mod2_betti,
        }


def double_cover_mod2_betti(a: Arrangement, w: Sequence) -> DoubleCoverReport:
    """Mod-2 Betti numbers of the double cover with characteristic class ``w``."""
    wv = tuple(F2(x) for x in w)
    if len(wv) != a.n:
        raise ValueError(f"need {a.n} weights, got {len(wv)}")
    if not any(wv):
        raise ValueError("w = 0 does not define a connected double cover (the formula needs w != 0)")
    cx = aomoto(a, wv, F2)
    return DoubleCoverReport(a, wv, betti_numbers(poset_of(a)), cx.cohomology)


# -- admissible weights --------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    range: int = 3
    max_nodes: int = 500_000


@dataclass
class AdmissibleWeights:
    d: int
    order: int  # number of hyperplanes of the central arrangement
    entries: tuple[Fraction, ...]
    admissible: bool
    violations: list[tuple[str, tuple[int, ...], Fraction]] = field(default_factory=list)
    source: str = "naive"

    @property
    def shifts(self) -> tuple[int, ...]:
        base = Fraction(self.d, self.order)
        return tuple(int(x - base) for x in self.entries)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "weights": [str(x) for x in self.entries],
            "admissible": self.admissible,
            "source": self.source,
            "violations": [
                {"condition": c, "flat": list(fl), "sum": str(s)} for c, fl, s in self.violations
            ],
        }


def _dense_flats(cA: Arrangement) -> list[tuple[int, ...]]:
    return [fl.members for fl in poset_of(cA).by_codim(2) if len(fl) >= 3]


def check_admissible(cA: Arrangement, d: int, entries: Sequence) -> list[tuple[str, tuple[int, ...], Fraction]]:
    """Independent re-check of the three conditions; returns the violations."""
    order = cA.n
    a = [Fraction(x) for x in entries]
    bad: list[tuple[str, tuple[int, ...], Fraction]] = []
    if len(a) != order:
        raise ValueError(f"need {order} weights")
    base = Fraction(d, order)
    for i, x in enumerate(a, 1):
        if (x - base).denominator != 1:
            bad.append(("P1", (i,), x))
    total = sum(a, Fraction(0))
    if total != 0:
        bad.append(("P2", tuple(range(1, order + 1)), total))
    for i, x in enumerate(a, 1):
        if x.denominator == 1 and x > 0:
            bad.append(("P3", (i,), x))
    for fl in _dense_flats(cA):
        s = sum((a[i - 1] for i in fl), Fraction(0))
        if s.denominator == 1 and s > 0:
            bad.append(("P3", fl, s))
    return bad


def _search(cA: Arrangement, d: int, cfg: SearchConfig) -> tuple[int, ...] | None:
    """Depth-first search over integer shifts in ``[-range, range]``.

    Values are tried in the order 0, -1, 1, -2, 2, ...; partial assignments are
    pruned whenever a constrained flat can no longer reach a non-positive sum
    or the remaining shifts cannot reach the required total ``-d``.
    """
    order = cA.n
    R = cfg.range
    base = Fraction(d, order)
    # flats whose sum m*d/order is an integer need sum(k) <= -m*d/order
    constraints = []
    for fl in _dense_flats(cA):
        t = len(fl) * base
        if t.denominator == 1:
            constraints.append((tuple(i - 1 for i in fl), -int(t)))
    by_var: list[list[int]] = [[] for _ in range(order)]
    for c, (members, _) in enumerate(constraints):
        for i in members:
            by_var[i].append(c)
    values = [0]
    for v in range(1, R + 1):
        values += [-v, v]
    partial = [0] * len(constraints)
    remaining = [len(m) for m, _ in constraints]
    k = [0] * order
    nodes = 0

    def feasible_constraint(c: int) -> bool:
        return partial[c] - R * remaining[c] <= constraints[c][1]

    def dfs(i: int, total: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > cfg.max_nodes:
            raise _Budget
        if i == order:
            return total == -d and all(partial[c] <= b for c, (_, b) in enumerate(constraints))
        rest = order - i - 1
        for v in values:
            need = -d - total - v
            if abs(need) > R * rest:
                continue
            k[i] = v
            ok = True
            for c in by_var[i]:
                partial[c] += v
                remaining[c] -= 1
            for c in by_var[i]:
                if not feasible_constraint(c):
                    ok = False
            if ok and dfs(i + 1, total + v):
                return True
            for c in by_var[i]:
                partial[c] -= v
                remaining[c] += 1
        return False

    try:
        found = dfs(0, 0)
    except _Budget:
        return None
    return tuple(k) if found else None


class _Budget(Exception):
    pass


def find_admissible_weights(
    cA: Arrangement, d: int, cfg: SearchConfig | None = None
) -> AdmissibleWeights:
    """Admissible weights for eigenvalue ``exp(2πi d/#cA)``, naive assignment first."""
    cfg = cfg or SearchConfig()
    if not cA.central:
        raise ArrangementError("admissible weights need a central arrangement")
    order = cA.n
    if not 1 <= d < order:
        raise ValueError(f"d must be in 1..{order - 1}")
    base = Fraction(d, order)
    naive = tuple([base] * (order - 1) + [base - d])
    bad = check_admissible(cA, d, naive)
    if not bad:
        return AdmissibleWeights(d, order, naive, True, [], "naive")
    shifts = _search(cA, d, cfg)
    if shifts is None:
        return AdmissibleWeights(d, order, naive, False, bad, "failed")
    entries = tuple(base + s for s in shifts)
    recheck = check_admissible(cA, d, entries)
    return AdmissibleWeights(d, order, entries, not recheck, recheck, "search")


@lru_cache(maxsize=64)
def _decone(cA: Arrangement, i: int) -> Arrangement:
    return decone(cA, i)


def _eigen_complex(cA: Arrangement, aw: AdmissibleWeights, decone_index: int | None):
    if not aw.admissible:
        raise ValueError(f"weights for d={aw.d} are not admissible; the Aomoto comparison does not apply")
    idx = decone_index or cA.n
    eta = [x for i, x in enumerate(aw.entries, 1) if i != idx]
    return aomoto(_decone(cA, idx), eta, Q)


def eigenspace_rank(cA: Arrangement, aw: AdmissibleWeights, decone_index: int | None = None) -> int:
    """First Aomoto cohomology over Q of the deconing, weights restricted to it."""
    return _eigen_complex(cA, aw, decone_index).cohomology[1]


@dataclass
class EigenRow:
    d: int
    weights: AdmissibleWeights
    h1: int | None
    flat_sums: list[tuple[tuple[int, ...], Fraction]] = field(default_factory=list)
    ranks: list[int] | None = None

    def to_json(self) -> dict:
        out = {k: v for k, v in self.weights.to_json().items() if k != "d"}
        out.update(
            d=self.d,
            h1=self.h1,
            aomoto_ranks=self.ranks,
            flat_sums=[{"flat": list(fl), "sum": str(s)} for fl, s in self.flat_sums],
        )
        return out


@dataclass
class MilnorReport:
    arrangement: Arrangement
    decone_index: int
    b1_base: int
    rows: list[EigenRow]
    h1_f2: int | None = None
    h1_f2_enumerated: int | None = None
    verdict: str | None = None
    conditions: dict[str, bool] = field(default_factory=dict)
    failed: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.arrangement.n - 1

    @property
    def all_known(self) -> bool:
        return all(r.h1 is not None for r in self.rows)

    @property
    def b1_lower(self) -> int:
        return self.b1_base + sum(r.h1 for r in self.rows if r.h1 is not None)

    @property
    def b1(self) -> int | None:
        return self.b1_lower if self.all_known else None

    @property
    def conjugate_symmetric(self) -> bool | None:
        if not self.all_known:
            return None
        h = {r.d: r.h1 for r in self.rows}
        order = self.arrangement.n
        return all(h[d] == h[order - d] for d in h)

    @property
    def mod2_lower_bound(self) -> int | None:
        if self.h1_f2 is None:
            return None
        return self.b1_base + self.h1_f2

    def evidence_chain(self) -> str | None:
        if self.verdict != CERTIFIED:
            return None
        return f"b̄₁(F) ≥ {self.mod2_lower_bound} > {self.b1} = b₁(F)"

    def to_json(self) -> dict:
        out = {
            "hyperplanes": self.arrangement.n,
            "decone_index": self.decone_index,
            "b1_complement_decone": self.b1_base,
            "eigentable": [r.to_json() for r in self.rows],
            "b1_milnor_fiber": self.b1,
            "b1_range": [self.b1_lower, self.b1] if self.all_known else [self.b1_lower, None],
            "conjugate_symmetric": self.conjugate_symmetric,
        }
        if self.verdict is not None:
            out.update(
                {
                    "verdict": self.verdict,
                    "conditions": dict(self.conditions),
                    "failed_conditions": list(self.failed),
                    "h1_f2_aomoto": self.h1_f2,
                    "h1_f2_by_enumeration": self.h1_f2_enumerated,
                    "mod2_b1_lower_bound": self.mod2_lower_bound,
                    "evidence": self.evidence_chain(),
                }
            )
        return out


def milnor_fiber_b1(
    cA: Arrangement, decone_index: int | None = None, cfg: SearchConfig | None = None
) -> MilnorReport:
    if not cA.central:
        raise ArrangementError("Milnor fiber needs a central arrangement")
    idx = decone_index or cA.n
    dA = _decone(cA, idx)
    base = betti_numbers(poset_of(dA))[1]
    dense = _dense_flats(cA)
    rows = []
    for d in range(1, cA.n):
        aw = find_admissible_weights(cA, d, cfg)
        sums = [(fl, sum((aw.entries[i - 1] for i in fl), Fraction(0))) for fl in dense]
        if aw.admissible:
            cx = _eigen_complex(cA, aw, idx)
            rows.append(EigenRow(d, aw, cx.cohomology[1], sums, cx.ranks))
        else:
            rows.append(EigenRow(d, aw, None, sums))
    return MilnorReport(cA, idx, base, rows)


def _power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


def two_torsion_certificate(
    cA: Arrangement, decone_index: int | None = None, cfg: SearchConfig | None = None
) -> MilnorReport:
    """Certify 2-torsion in ``H_1(F, Z)`` or report which condition failed."""
    rep = milnor_fiber_b1(cA, decone_index, cfg)
    dA = _decone(cA, rep.decone_index)
    cover = double_cover_mod2_betti(dA, [1] * dA.n)
    rep.h1_f2 = cover.aomoto_h[1]
    if dA.n <= MAX_ENUMERATION - 4:
        sols = len(enumerate_cocycles_f2(dA, [1] * dA.n))
        rep.h1_f2_enumerated = sols.bit_length() - 2
    rep.conditions = {
        "order_power_of_two": _power_of_two(cA.n),
        "mod2_aomoto_h1_nonzero": rep.h1_f2 > 0,
        "no_nontrivial_eigenspaces": rep.all_known and all(r.h1 == 0 for r in rep.rows),
    }
    rep.failed = [k for k, v in rep.conditions.items() if not v]
    rep.verdict = CERTIFIED if not rep.failed else INCONCLUSIVE
    if rep.verdict == CERTIFIED:
        assert rep.mod2_lower_bound > rep.b1 == rep.b1_base
    return rep
