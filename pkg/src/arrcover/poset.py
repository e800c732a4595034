"""Intersection poset L(A): flats, Moebius function, Betti numbers, census."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from arrcover.arrangement import Arrangement, from_mask, to_mask

__all__ = [
    "Flat",
    "IntersectionPoset",
    "Rank2Census",
    "build_poset",
    "betti_numbers",
    "characteristic_polynomial",
    "rank2_census",
    "find_isomorphism",
    "format_polynomial",
]


@dataclass(frozen=True, order=True)
class Flat:
    codim: int
    members: tuple[int, ...]  # 1-based, sorted, closure-complete

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def __len__(self) -> int:
        return len(self.members)


class _Echelon:
    """Row-reduced basis of linear forms, used to test ``H ⊇ X``."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows=()) -> None:
        self.field = field
        self.rows: list[tuple[int, list]] = list(rows)

    def reduce(self, v) -> list:
        f = self.field
        v = list(v)
        for pc, row in self.rows:
            c = v[pc]
            if c:
                v = [f.normalize(x - c * y) if y else x for x, y in zip(v, row)]
        return v

    def extended(self, v) -> "_Echelon | None":
        """Basis with ``v`` added, or None if ``v`` is already in the span."""
        f = self.field
        r = self.reduce(v)
        pc = next((j for j, x in enumerate(r) if x), None)
        if pc is None:
            return None
        inv = f.inv(r[pc])
        r = [f.normalize(x * inv) for x in r]
        rows = []
        for qc, row in self.rows:
            c = row[pc]
            if c:
                row = [f.normalize(x - c * y) for x, y in zip(row, r)]
            rows.append((qc, row))
        rows.append((pc, r))
        rows.sort(key=lambda t: t[0])
        return _Echelon(f, rows)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class IntersectionPoset:
    arrangement: Arrangement
    flats: list[Flat]
    mobius: list[int]
    index: dict[tuple[int, ...], int] = field(repr=False)
    _join: dict[tuple[int, int], int | None] = field(repr=False)

    @property
    def rank(self) -> int:
        return max(f.codim for f in self.flats)

    def by_codim(self, k: int) -> list[Flat]:
        return [f for f in self.flats if f.codim == k]

    def le(self, x: Flat, y: Flat) -> bool:
        """``x <= y`` in reverse inclusion, i.e. members(x) ⊆ members(y)."""
        return set(x.members) <= set(y.members)

    def join_hyperplane(self, i: int, h: int) -> int | None:
        """Index of the flat ``X_i ∩ H_h``; None when the intersection is empty."""
        return self._join[(i, h)]

    def closure(self, subset: Iterable[int] | int) -> Flat | None:
        """Flat of ``∩ subset``; None when the intersection is empty."""
        cur = 0
        for h in from_mask(to_mask(subset)):
            cur = self._join[(cur, h)]
            if cur is None:
                return None
        return self.flats[cur]

    def subset_rank(self, subset) -> int | None:
        x = self.closure(subset)
        return None if x is None else x.codim

    def is_dependent(self, subset) -> bool:
        idx = from_mask(to_mask(subset))
        x = self.closure(idx)
        return x is not None and x.codim < len(idx)

    def mobius_of(self, flat: Flat) -> int:
        return self.mobius[self.index[flat.members]]

    def to_json(self) -> dict:
        return {
            "flats": [
                {"codim": f.codim, "members": list(f.members), "mobius": m}
                for f, m in zip(self.flats, self.mobius)
            ],
            "betti": betti_numbers(self),
            "characteristic_polynomial": characteristic_polynomial(self),
            "census": rank2_census(self).to_json(),
        }


def build_poset(a: Arrangement) -> IntersectionPoset:
    """All nonempty flats by breadth-first closure, ordered by (codim, members)."""
    f = a.field
    n = a.n
    forms = [list(h.form) for h in a.hyperplanes]
    const_unit = [f.zero] * a.dim + [f.one]

    bottom: tuple[int, ...] = ()
    bases: dict[tuple[int, ...], _Echelon] = {bottom: _Echelon(f)}
    join: dict[tuple[tuple[int, ...], int], tuple[int, ...] | None] = {}
    frontier = [bottom]
    while frontier:
        nxt = []
        for x in frontier:
            basis = bases[x]
            xs = set(x)
            for h in range(1, n + 1):
                if h in xs:
                    join[(x, h)] = x
                    continue
                if (x, h) in join:
                    continue
                nb = basis.extended(forms[h - 1])
                if nb is None or not any(nb.reduce(const_unit)):
                    # inconsistent: the constant form lies in the span
                    join[(x, h)] = None
                    continue
                members = tuple(
                    k for k in range(1, n + 1)
                    if k in xs or k == h or not any(nb.reduce(forms[k - 1]))
                )
                join[(x, h)] = members
                if members not in bases:
                    bases[members] = nb
                    nxt.append(members)
                # every new member joins X to the same flat
                for k in members:
                    if k not in xs:
                        join[(x, k)] = members
        frontier = nxt

    flats = sorted(Flat(len(b), m) for m, b in bases.items())
    index = {fl.members: i for i, fl in enumerate(flats)}
    join_idx = {
        (index[x], h): (None if y is None else index[y]) for (x, h), y in join.items()
    }
    mobius: list[int] = []
    member_sets = [frozenset(fl.members) for fl in flats]
    for i, fl in enumerate(flats):
        if i == 0:
            mobius.append(1)
            continue
        s = member_sets[i]
        mobius.append(
            -sum(mobius[j] for j in range(i) if flats[j].codim < fl.codim and member_sets[j] < s)
        )
    return IntersectionPoset(a, flats, mobius, index, join_idx)


def _poset(a) -> IntersectionPoset:
    return a if isinstance(a, IntersectionPoset) else build_poset(a)


def betti_numbers(a: Arrangement | IntersectionPoset) -> list[int]:
    """Whitney numbers ``b_k = sum_{codim X = k} (-1)^k mu(X)`` for ``k = 0..dim``."""
    p = _poset(a)
    b = [0] * (p.arrangement.dim + 1)
    for fl, m in zip(p.flats, p.mobius):
        b[fl.codim] += (-1) ** fl.codim * m
    return b


def characteristic_polynomial(a: Arrangement | IntersectionPoset) -> list[int]:
    """Coefficients ``c[j]`` of ``t^j`` in ``sum_X mu(X) t^{dim X}``."""
    p = _poset(a)
    dim = p.arrangement.dim
    c = [0] * (dim + 1)
    for fl, m in zip(p.flats, p.mobius):
        c[dim - fl.codim] += m
    return c


def format_polynomial(coeffs: list[int], var: str = "t") -> str:
    terms = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if not c:
            continue
        mag = abs(c)
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        body = str(mag) if (mag != 1 or j == 0) else ""
        body = body + mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class Rank2Census:
    flats: tuple[tuple[int, ...], ...]

    @property
    def counts(self) -> dict[int, int]:
        return dict(sorted(Counter(len(f) for f in self.flats).items()))

    def multiplicities(self) -> set[int]:
        return {len(f) for f in self.flats}

    def to_json(self) -> dict:
        return {
            "counts": {str(m): c for m, c in self.counts.items()},
            "flats": [list(f) for f in self.flats],
        }


def rank2_census(a: Arrangement | IntersectionPoset) -> Rank2Census:
    p = _poset(a)
    return Rank2Census(tuple(fl.members for fl in p.by_codim(2)))


def find_isomorphism(
    p: IntersectionPoset,
    q: IntersectionPoset,
    colors_p: dict[int, object] | None = None,
    colors_q: dict[int, object] | None = None,
) -> dict[int, int] | None:
    """A bijection of hyperplanes carrying the flats of ``p`` onto those of ``q``.

    Optional colour maps restrict the search to colour-preserving bijections.
    Returns None when no isomorphism exists.
    """
    n = p.arrangement.n
    if n != q.arrangement.n or len(p.flats) != len(q.flats):
        return None
    if [f.codim for f in p.flats] != [f.codim for f in q.flats]:
        return None
    cp = colors_p or {i: 0 for i in range(1, n + 1)}
    cq = colors_q or {i: 0 for i in range(1, n + 1)}

    def profile(poset: IntersectionPoset, i: int) -> tuple:
        return tuple(sorted((fl.codim, len(fl)) for fl in poset.flats if i in fl.members))

    prof_p = {i: (cp[i], profile(p, i)) for i in range(1, n + 1)}
    prof_q = {i: (cq[i], profile(q, i)) for i in range(1, n + 1)}
    if sorted(prof_p.values()) != sorted(prof_q.values()):
        return None

    def pair_flat(poset, i, j):
        fl = poset.closure((i, j))
        return None if fl is None else frozenset(fl.members)

    pairs_p = {(i, j): pair_flat(p, i, j) for i, j in combinations(range(1, n + 1), 2)}
    pairs_q = {(i, j): pair_flat(q, i, j) for i, j in combinations(range(1, n + 1), 2)}

    def pq(i, j):
        return pairs_q[(i, j) if i < j else (j, i)]

    target = {frozenset(f.members) for f in q.flats}
    order = list(range(1, n + 1))
    sigma: dict[int, int] = {}
    used: set[int] = set()

    def consistent(x: int, y: int) -> bool:
        for u, v in sigma.items():
            fp_ = pairs_p[(u, x) if u < x else (x, u)]
            fq_ = pq(v, y)
            if (fp_ is None) != (fq_ is None):
                return False
            if fp_ is None:
                continue
            if len(fp_) != len(fq_):
                return False
            img = {sigma[k] for k in fp_ if k in sigma}
            dom_img = {w for w in fq_ if w in used}
            if img != dom_img:
                return False
            if (y in fq_) != (x in fp_):
                return False
        return True

    def search(t: int) -> bool:
        if t == n:
            return {frozenset(sigma[k] for k in f.members) for f in p.flats} == target
        x = order[t]
        for y in range(1, n + 1):
            if y in used or prof_q[y] != prof_p[x]:
                continue
            if not consistent(x, y):
                continue
            sigma[x] = y
            used.add(y)
            if search(t + 1):
                return True
            del sigma[x]
            used.discard(y)
        return False

    return dict(sigma) if search(0) else None
