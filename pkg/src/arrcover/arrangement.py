"""Affine and central hyperplane arrangements over an exact geometry field.

Hyperplanes are indexed ``1..n`` in input order; that order fixes the
generator indexing ``e_i`` of every algebra built downstream and is never
re-sorted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from arrcover.fields import FieldContext, Matrix, rank

__all__ = [
    "ArrangementError",
    "Hyperplane",
    "Arrangement",
    "parse",
    "serialize",
    "cone",
    "decone",
    "does_intersect",
    "is_dependent",
    "localization",
    "to_mask",
    "from_mask",
]


class ArrangementError(ValueError):
    """Malformed arrangement input or an invalid arrangement operation."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def to_mask(indices: Iterable[int] | int) -> int:
    """Bitmask with bit ``i-1`` set for each 1-based index ``i``."""
    if isinstance(indices, int):
        return indices
    m = 0
    for i in indices:
        if i < 1:
            raise ArrangementError(f"hyperplane index {i} out of range")
        m |= 1 << (i - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Hyperplane:
    """``c_1 x_1 + ... + c_l x_l + c_0 = 0``, stored with first nonzero ``c_i = 1``."""

    normal: tuple
    constant: object
    label: str = ""

    @classmethod
    def make(cls, field: FieldContext, normal: Sequence, constant=0, label: str = "") -> "Hyperplane":
        normal = tuple(field(x) for x in normal)
        constant = field(constant)
        lead = next((x for x in normal if x), None)
        if lead is None:
            raise ArrangementError(f"hyperplane {label!r} has zero normal")
        if lead != 1:
            inv = field.one / lead if field.kind != "Fp" else pow(lead, -1, field.param)
            if field.kind == "Fp":
                normal = tuple((x * inv) % field.param for x in normal)
                constant = (constant * inv) % field.param
            else:
                normal = tuple(x * inv for x in normal)
                constant = constant * inv
        return cls(normal, constant, label)

    def canonical(self, field: FieldContext) -> "Hyperplane":
        return Hyperplane.make(field, self.normal, self.constant, self.label)

    @property
    def form(self) -> tuple:
        """Coefficients ``(c_1, ..., c_l, c_0)``."""
        return self.normal + (self.constant,)

    def key(self) -> tuple:
        return self.form


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...]
    field: FieldContext

    def __post_init__(self) -> None:
        seen: dict[tuple, int] = {}
        for i, h in enumerate(self.hyperplanes, 1):
            if len(h.normal) != self.dim:
                raise ArrangementError(
                    f"hyperplane {i} has {len(h.normal)} coefficients, expected {self.dim}"
                )
            k = h.key()
            if k in seen:
                raise ArrangementError(f"hyperplanes {seen[k]} and {i} coincide")
            seen[k] = i

    @classmethod
    def from_forms(
        cls,
        field: FieldContext,
        dim: int,
        forms: Iterable[Sequence],
        labels: Sequence[str] | None = None,
    ) -> "Arrangement":
        """Build from rows ``(c_1, ..., c_l, c_0)``; labels default to ``1..n``."""
        forms = list(forms)
        if labels is None:
            labels = [str(i) for i in range(1, len(forms) + 1)]
        hs = []
        for f, lab in zip(forms, labels):
            if len(f) != dim + 1:
                raise ArrangementError(f"form {lab!r} needs {dim + 1} coefficients")
            hs.append(Hyperplane.make(field, f[:dim], f[dim], lab))
        return cls(dim, tuple(hs), field)

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @property
    def central(self) -> bool:
        return all(not h.constant for h in self.hyperplanes)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(h.label for h in self.hyperplanes)

    def hyperplane(self, i: int) -> Hyperplane:
        """1-based access."""
        if not 1 <= i <= self.n:
            raise ArrangementError(f"hyperplane index {i} out of range 1..{self.n}")
        return self.hyperplanes[i - 1]

    def __str__(self) -> str:
        kind = "central" if self.central else "affine"
        return f"{kind} arrangement of {self.n} hyperplanes in dim {self.dim} over {self.field}"


# -- text format -------------------------------------------------------------

_FIELD_RE = re.compile(r"^field\s+(Q|Fp\s+(\d+)|Qsqrt\s+(\d+))$")


def _parse_field(text: str, line: int) -> FieldContext:
    m = _FIELD_RE.match(text)
    if not m:
        raise ArrangementError(f"expected 'field Q|Fp <p>|Qsqrt <d>', got {text!r}", line)
    try:
        if m.group(2):
            return FieldContext.prime(int(m.group(2)))
        if m.group(3):
            return FieldContext.quadratic(int(m.group(3)))
    except ValueError as e:
        raise ArrangementError(str(e), line) from None
    return FieldContext.rationals()


def parse(text: str) -> Arrangement:
    field = None
    dim = None
    hs: list[Hyperplane] = []
    seen: dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if field is None:
            field = _parse_field(body, lineno)
            continue
        if dim is None:
            m = re.fullmatch(r"dim\s+(\d+)", body)
            if not m:
                raise ArrangementError(f"expected 'dim <l>', got {body!r}", lineno)
            dim = int(m.group(1))
            if dim < 1:
                raise ArrangementError("dimension must be positive", lineno)
            continue
        m = re.fullmatch(r"H\s+([^:\s]+)\s*:(.*)", body)
        if not m:
            raise ArrangementError(f"expected 'H <label>: c1 ... cl c0', got {body!r}", lineno)
        label, coeffs = m.group(1), m.group(2).split()
        if len(coeffs) != dim + 1:
            raise ArrangementError(
                f"hyperplane {label!r} has {len(coeffs)} coefficients, expected {dim + 1}",
                lineno,
            )
        try:
            values = [field.parse(c) for c in coeffs]
        except (ValueError, TypeError) as e:
            raise ArrangementError(f"field mismatch or bad scalar: {e}", lineno) from None
        try:
            h = Hyperplane.make(field, values[:dim], values[dim], label)
        except ArrangementError as e:
            raise ArrangementError(str(e), lineno) from None
        if h.key() in seen:
            raise ArrangementError(
                f"duplicate hyperplane {label!r} (same as hyperplane {seen[h.key()]})", lineno
            )
        seen[h.key()] = len(hs) + 1
        hs.append(h)
    if field is None or dim is None:
        raise ArrangementError("missing 'field' or 'dim' header")
    return Arrangement(dim, tuple(hs), field)


def serialize(a: Arrangement) -> str:
    lines = [f"field {a.field.spec()}", f"dim {a.dim}"]
    for h in a.hyperplanes:
        lines.append(f"H {h.label}: " + " ".join(a.field.format(x) for x in h.form))
    return "\n".join(lines) + "\n"


# -- coning / deconing ---------------------------------------------------------


def cone(a: Arrangement, infinity_label: str | None = None) -> Arrangement:
    """Homogenize with a new last coordinate; ``x_{l+1} = 0`` is appended last."""
    f = a.field
    forms = [h.normal + (h.constant,) + (f.zero,) for h in a.hyperplanes]
    forms.append((f.zero,) * a.dim + (f.one, f.zero))
    labels = list(a.labels) + [infinity_label or str(a.n + 1)]
    return Arrangement.from_forms(f, a.dim + 1, forms, labels)


def decone(a: Arrangement, i: int) -> Arrangement:
    """Send hyperplane ``i`` (1-based) to infinity.

    The last coordinate ``p`` where ``H_i`` has a nonzero coefficient is
    replaced by ``y = alpha_i(x)``; the remaining coordinates keep their order
    and ``y`` is set to 1.
    """
    if not a.central:
        raise ArrangementError("decone requires a central arrangement")
    hi = a.hyperplane(i)
    f = a.field
    alpha = hi.normal
    p = max(j for j, c in enumerate(alpha) if c)
    keep = [j for j in range(a.dim) if j != p]
    cp = alpha[p]
    forms, labels = [], []
    for k, h in enumerate(a.hyperplanes, 1):
        if k == i:
            continue
        # x_p = (y - sum_{j != p} alpha_j x_j) / cp
        t = h.normal[p] / cp if f.kind != "Fp" else (h.normal[p] * pow(cp, -1, f.param)) % f.param
        row = [f(h.normal[j] - t * alpha[j]) for j in keep]
        forms.append(tuple(row) + (f(t),))
        labels.append(h.label)
    return Arrangement.from_forms(f, a.dim - 1, forms, labels)


# -- subsets ----------------------------------------------------------------


def _ranks(a: Arrangement, idx: Sequence[int]) -> tuple[int, int]:
    hs = [a.hyperplane(i) for i in idx]
    normals = Matrix(a.field, [h.normal for h in hs], a.dim, coerce=False)
    forms = Matrix(a.field, [h.form for h in hs], a.dim + 1, coerce=False)
    return rank(normals), rank(forms)


def does_intersect(a: Arrangement, subset: Iterable[int] | int) -> bool:
    idx = from_mask(to_mask(subset))
    if not idx:
        return True
    r_normal, r_form = _ranks(a, idx)
    return r_normal == r_form


def is_dependent(a: Arrangement, subset: Iterable[int] | int) -> bool:
    idx = from_mask(to_mask(subset))
    if not idx:
        return False
    r_normal, r_form = _ranks(a, idx)
    return r_normal == r_form and r_normal < len(idx)


def codim(a: Arrangement, subset: Iterable[int] | int) -> int | None:
    """Codimension of the intersection, or None if it is empty."""
    idx = from_mask(to_mask(subset))
    if not idx:
        return 0
    r_normal, r_form = _ranks(a, idx)
    return r_normal if r_normal == r_form else None


def localization(a: Arrangement, flat: Iterable[int] | int) -> Arrangement:
    """Sub-arrangement of hyperplanes containing ``X = cap(flat)``; ``flat`` must be closed."""
    idx = from_mask(to_mask(flat))
    if not idx:
        raise ArrangementError("localization needs a nonempty member set")
    c = codim(a, idx)
    if c is None:
        raise ArrangementError(f"hyperplanes {list(idx)} do not intersect")
    members = set(idx)
    for k in range(1, a.n + 1):
        if k not in members and codim(a, idx + (k,)) == c:
            raise ArrangementError(f"member set not closed: hyperplane {k} contains the flat")
    return Arrangement(a.dim, tuple(a.hyperplane(k) for k in idx), a.field)
