"""Orlik-Solomon algebra degree components and Aomoto complexes.

``A^k`` is the quotient of the span of intersecting ``k``-subsets ``e_S``
(lexicographic order) by the degree-``k`` part of the OS ideal.  The quotient
basis is the set of non-pivot columns of the reduced relation matrix.

With lexicographic column order that rref is known in closed form: a
``k``-subset is a pivot exactly when it is dependent or contains a broken
circuit ``C - max(C)``, and each such ``e_S`` straightens, through
``d e_{S + max C} = 0``, into lexicographically larger subsets.  The
``"straighten"`` method builds the rref that way over the integers (valid for
every field at once); ``"eliminate"`` assembles the relation matrix and row
reduces it.  Both must agree and the test suite checks that they do.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from arrcover.arrangement import Arrangement, from_mask, to_mask
from arrcover.fields import F2, FieldContext, Matrix, rank, rref
from arrcover.poset import IntersectionPoset, build_poset

__all__ = [
    "OSDegree",
    "AomotoComplex",
    "poset_of",
    "os_degree",
    "relation_matrix",
    "express_in_basis",
    "aomoto",
    "wedge_sign",
    "enumerate_cocycles_f2",
    "pencil_kernel_oracle",
    "pencil_wedge_vanishes",
    "MAX_ENUMERATION",
]

MAX_ENUMERATION = 24

Subset = tuple[int, ...]


@lru_cache(maxsize=64)
def poset_of(a: Arrangement) -> IntersectionPoset:
    return build_poset(a)


def wedge_sign(i: int, s: Sequence[int]) -> int:
    """Sign of ``e_i ∧ e_S = ± e_{S ∪ i}`` for sorted ``S`` not containing ``i``."""
    return -1 if sum(1 for x in s if x < i) % 2 else 1


def _merge_sign(u: Subset, t: Subset) -> int:
    """Sign of ``e_U ∧ e_T`` relative to ``e_{sorted(U ∪ T)}`` (disjoint U, T)."""
    inversions = 0
    j = 0
    for x in u:
        while j < len(t) and t[j] < x:
            j += 1
        inversions += j
    return -1 if inversions % 2 else 1


@dataclass
class OSDegree:
    """Degree-``k`` component ``A^k`` as a quotient space.

    ``expressions`` maps every pivot generator to its coordinates in the
    quotient basis (integers for ``"straighten"``, field elements for
    ``"eliminate"``); basis elements map to themselves.
    """

    arrangement: Arrangement
    degree: int
    field: FieldContext
    generators: tuple[Subset, ...]
    basis: tuple[Subset, ...]
    relation_rank: int
    method: str
    expressions: dict[Subset, dict[int, object]] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def express(self, s: Iterable[int]) -> tuple:
        """Coordinates of the class of ``e_s`` (sorted subset) in the quotient basis."""
        s = tuple(s)
        if len(s) != self.degree:
            raise ValueError(f"subset {s} has size {len(s)}, expected {self.degree}")
        if len(set(s)) != len(s):
            return (self.field.zero,) * self.dimension
        order = tuple(sorted(s))
        sign = _sort_sign(s)
        coeffs = self.expressions.get(order)
        vec = [self.field.zero] * self.dimension
        if coeffs is None:
            # non-intersecting: zero in the quotient
            return tuple(vec)
        f = self.field
        for j, c in coeffs.items():
            vec[j] = f(c) if sign > 0 else f(-c)
        return tuple(vec)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": len(self.generators),
            "relation_rank": self.relation_rank,
            "dimension": self.dimension,
        }


def _sort_sign(s: Sequence[int]) -> int:
    inv = 0
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _generators(p: IntersectionPoset, k: int) -> list[Subset]:
    n = p.arrangement.n
    return [s for s in combinations(range(1, n + 1), k) if p.closure(s) is not None]


@lru_cache(maxsize=256)
def _straighten(a: Arrangement, k: int) -> tuple[tuple[Subset, ...], tuple[Subset, ...], dict]:
    """Integer rref of the degree-``k`` relations via broken-circuit straightening."""
    p = poset_of(a)
    gens = _generators(p, k)
    expr: dict[Subset, dict[Subset, int]] = {}
    basis: list[Subset] = []
    for s in reversed(gens):
        x = p.closure(s)
        if x.codim < k:
            expr[s] = {}
            continue
        members = set(s)
        c_found = None
        for c in x.members:
            if c in members:
                continue
            # fundamental circuit of c in S + c
            circuit = [c] + [t for t in s if p.subset_rank(tuple(u for u in s if u != t) + (c,)) == k]
            if max(circuit) == c:
                c_found = c
                break
        if c_found is None:
            basis.append(s)
            expr[s] = {s: 1}
            continue
        t_set = tuple(sorted(s + (c_found,)))
        q = t_set.index(c_found)
        acc: dict[Subset, int] = {}
        for pos, elt in enumerate(t_set):
            if pos == q:
                continue
            r = t_set[:pos] + t_set[pos + 1:]
            sub = expr.get(r)
            if sub is None:
                # lexicographically smaller terms still contain the circuit
                assert p.closure(r).codim < k
                continue
            if not sub:
                continue
            coef = (-1) ** (pos + q + 1)
            for b, v in sub.items():
                acc[b] = acc.get(b, 0) + coef * v
        expr[s] = {b: v for b, v in acc.items() if v}
    basis.sort()
    return tuple(gens), tuple(basis), expr


def relation_matrix(a: Arrangement, k: int, f: FieldContext) -> tuple[list[Subset], Matrix]:
    """Generators and the degree-``k`` relation matrix (one row per relation).

    Rows: ``e_S`` for dependent ``k``-subsets ``S`` and ``e_U ∧ ∂e_T`` for
    dependent ``T`` with ``|T| <= k+1`` and ``U`` disjoint of size
    ``k + 1 - |T|``.  Terms on non-intersecting subsets are dropped (those
    generators are zero in the quotient and are not columns).
    """
    p = poset_of(a)
    n = a.n
    gens = _generators(p, k)
    col = {s: j for j, s in enumerate(gens)}
    rows: list[list[int]] = []
    for s in gens:
        if p.closure(s).codim < k:
            r = [0] * len(gens)
            r[col[s]] = 1
            rows.append(r)
    for t_size in range(2, k + 2):
        for t in combinations(range(1, n + 1), t_size):
            if not p.is_dependent(t):
                continue
            rest = [i for i in range(1, n + 1) if i not in t]
            boundary = [
                ((-1) ** pos, t[:pos] + t[pos + 1:]) for pos in range(t_size)
            ]
            for u in combinations(rest, k + 1 - t_size):
                r = [0] * len(gens)
                nonzero = False
                for sgn, face in boundary:
                    s = tuple(sorted(u + face))
                    j = col.get(s)
                    if j is None:
                        continue
                    r[j] += sgn * _merge_sign(u, face)
                    nonzero = True
                if nonzero:
                    rows.append(r)
    return gens, Matrix(f, rows, len(gens))


def os_degree(a: Arrangement, k: int, f: FieldContext = F2, method: str = "straighten") -> OSDegree:
    if not 0 <= k <= a.dim:
        raise ValueError(f"degree {k} outside 0..{a.dim}")
    if method == "straighten":
        gens, basis, expr = _straighten(a, k)
        pos = {b: j for j, b in enumerate(basis)}
        expressions = {s: {pos[b]: v for b, v in e.items()} for s, e in expr.items()}
        return OSDegree(
            a, k, f, gens, basis, len(gens) - len(basis), method, expressions
        )
    if method == "eliminate":
        gens, m = relation_matrix(a, k, f)
        if m.nrows:
            red, piv = rref(m)
        else:
            red, piv = m, ()
        pivset = set(piv)
        nonpiv = [j for j in range(len(gens)) if j not in pivset]
        pos = {j: i for i, j in enumerate(nonpiv)}
        expressions: dict[Subset, dict[int, object]] = {}
        for j in nonpiv:
            expressions[gens[j]] = {pos[j]: 1}
        for r, pc in enumerate(piv):
            row = red.rows[r]
            expressions[gens[pc]] = {pos[j]: f(-row[j]) for j in nonpiv if row[j]}
        return OSDegree(
            a, k, f, tuple(gens), tuple(gens[j] for j in nonpiv), len(piv), method, expressions
        )
    raise ValueError(f"unknown method {method!r}")


def express_in_basis(deg: OSDegree, s: Iterable[int] | int) -> tuple:
    idx = from_mask(s) if isinstance(s, int) else tuple(s)
    return deg.express(idx)


@dataclass
class AomotoComplex:
    arrangement: Arrangement
    field: FieldContext
    weights: tuple
    degrees: list[OSDegree] = field(repr=False)
    differentials: list[Matrix] = field(repr=False)

    @property
    def dims(self) -> list[int]:
        return [d.dimension for d in self.degrees]

    @cached_property
    def ranks(self) -> list[int]:
        return [rank(m) if m.nrows and m.ncols else 0 for m in self.differentials]

    @property
    def cohomology(self) -> list[int]:
        dims, ranks = self.dims, self.ranks
        out = []
        for k, d in enumerate(dims):
            r_out = ranks[k] if k < len(ranks) else 0
            r_in = ranks[k - 1] if k >= 1 else 0
            out.append(d - r_out - r_in)
        return out

    def apply(self, k: int, vec: Sequence) -> tuple:
        """``w ∧ x`` for ``x`` given in the basis of ``A^k``."""
        m = self.differentials[k]
        f = self.field
        out = []
        for row in m.rows:
            s = f.zero
            for a, b in zip(row, vec):
                if a and b:
                    s = s + a * f(b)
            out.append(f(s))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "weights": [self.field.format(w) for w in self.weights],
            "dims": self.dims,
            "ranks": self.ranks,
            "cohomology": self.cohomology,
        }


def _differential(w: Sequence, src: OSDegree, dst: OSDegree) -> Matrix:
    f = src.field
    cols = []
    nonzero = [(i, wi) for i, wi in enumerate(w, 1) if wi]
    for s in src.basis:
        col = [f.zero] * dst.dimension
        members = set(s)
        for i, wi in nonzero:
            if i in members:
                continue
            target = tuple(sorted(s + (i,)))
            coeffs = dst.expressions.get(target)
            if not coeffs:
                continue
            sgn = wedge_sign(i, s)
            for j, c in coeffs.items():
                col[j] = col[j] + (wi * f(c) if sgn > 0 else -(wi * f(c)))
        cols.append(col)
    rows = [[cols[c][r] for c in range(src.dimension)] for r in range(dst.dimension)]
    return Matrix(f, rows, src.dimension)


def aomoto(
    a: Arrangement,
    weights: Sequence,
    f: FieldContext,
    method: str = "straighten",
) -> AomotoComplex:
    """The complex ``(A^*, w ∧ -)`` with ``w = sum a_i e_i``, degrees ``0..dim``."""
    if len(weights) != a.n:
        raise ValueError(f"need {a.n} weights, got {len(weights)}")
    w = tuple(f(x) for x in weights)
    degrees = [os_degree(a, k, f, method) for k in range(a.dim + 1)]
    diffs = [_differential(w, degrees[k], degrees[k + 1]) for k in range(a.dim)]
    return AomotoComplex(a, f, w, degrees, diffs)


def _is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


def pencil_kernel_oracle(n: int, eta: Sequence, omega: Sequence, f: FieldContext) -> bool:
    """Closed-form test of ``eta ∧ omega = 0`` in ``A^2`` of ``n`` concurrent lines.

    True iff both weight sums vanish or ``eta``, ``omega`` are linearly
    dependent.  Also valid for ``n = 2``.
    """
    if n < 2 or len(eta) != n or len(omega) != n:
        raise ValueError("need n >= 2 and two weight vectors of length n")
    eta = [f(x) for x in eta]
    omega = [f(x) for x in omega]
    sum_e = f(sum(eta, f.zero))
    sum_o = f(sum(omega, f.zero))
    if not sum_e and not sum_o:
        return True
    return rank(Matrix(f, [eta, omega], n, coerce=False)) < 2


def pencil_wedge_vanishes(n: int, eta: Sequence, omega: Sequence, f: FieldContext) -> bool:
    """Matrix route: compute ``eta ∧ omega`` in ``A^2`` of the pencil and test it."""
    from arrcover.catalog import pencil

    cx = aomoto(pencil(n), eta, f)
    return not any(cx.apply(1, [f(x) for x in omega]))


def enumerate_cocycles_f2(a: Arrangement, w: Sequence | int) -> list[int]:
    """All masks ``S`` with ``w ∧ e_S = 0`` in ``A^2`` over F_2, by brute force.

    ``w ∧ e_S`` splits over the rank-2 flats; at each flat the local product
    vanishes iff the local pencil criterion holds.  This never touches a
    relation matrix, so it is an independent check of ``aomoto``.
    """
    n = a.n
    if n > MAX_ENUMERATION:
        raise ValueError(f"enumeration over 2^{n} subsets refused (n > {MAX_ENUMERATION})")
    wmask = to_mask(from_mask(w)) if isinstance(w, int) else to_mask(
        i for i, x in enumerate(w, 1) if F2(x)
    )
    if wmask == 0:
        raise ValueError("w must be nonzero")
    p = poset_of(a)
    masks = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(1 << n, dtype=bool)
    for flat in p.by_codim(2):
        mem = flat.members
        m = len(mem)
        w_loc = [(wmask >> (i - 1)) & 1 for i in mem]
        allowed = np.zeros(1 << m, dtype=bool)
        for pat in range(1 << m):
            s_loc = [(pat >> j) & 1 for j in range(m)]
            allowed[pat] = pencil_kernel_oracle(m, w_loc, s_loc, F2)
        local = np.zeros(1 << n, dtype=np.uint32)
        for j, i in enumerate(mem):
            local |= ((masks >> np.uint32(i - 1)) & np.uint32(1)) << np.uint32(j)
        ok &= allowed[local]
    return [int(x) for x in np.nonzero(ok)[0]]
