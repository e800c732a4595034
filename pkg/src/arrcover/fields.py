"""Exact scalars and dense matrix elimination over Q, F_p and Q(sqrt d).

Elements are plain Python values: :class:`fractions.Fraction` for Q, ``int``
residues in ``[0, p)`` for F_p and :class:`QuadNumber` for Q(sqrt d).  A
:class:`FieldContext` knows how to coerce, parse and print them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from arrcover import kernels

__all__ = [
    "FieldContext",
    "QuadNumber",
    "Matrix",
    "Q",
    "F2",
    "rank",
    "rref",
    "kernel_basis",
    "is_prime",
    "is_squarefree",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    i = 2
    while i * i <= d:
        if d % (i * i) == 0:
            return False
        i += 1
    return True


class QuadNumber:
    """``a + b*sqrt(d)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 5) -> None:
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _lift(self, other) -> "QuadNumber | None":
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNumber(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadNumber(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadNumber division by zero")
        return QuadNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        o = self._lift(other) if not isinstance(other, QuadNumber) else other
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        return f"QuadNumber({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        return _format_quad(self.a, self.b)


def _format_quad(a: Fraction, b: Fraction) -> str:
    if b == 0:
        return str(a)
    bs = f"{abs(b)}*r"
    if a == 0:
        return bs if b > 0 else f"-{bs}"
    return f"{a}{'+' if b > 0 else '-'}{bs}"


_RAT = r"[+-]?\d+(?:/\d+)?"


def _parse_quad(s: str) -> tuple[Fraction, Fraction]:
    if "r" not in s:
        if not re.fullmatch(_RAT, s):
            raise ValueError(f"bad quadratic scalar {s!r}")
        return Fraction(s), Fraction(0)
    if not s.endswith("r") or s.count("r") != 1:
        raise ValueError(f"bad quadratic scalar {s!r}")
    head = s[:-1]
    if head.endswith("*"):
        head = head[:-1]
        if not head or head[-1] in "+-":
            raise ValueError(f"bad quadratic scalar {s!r}")
    cut = max(head.rfind("+"), head.rfind("-"))
    a_txt, b_txt = (head[:cut], head[cut:]) if cut > 0 else ("", head)
    if b_txt in ("", "+"):
        b = Fraction(1)
    elif b_txt == "-":
        b = Fraction(-1)
    elif re.fullmatch(_RAT, b_txt):
        b = Fraction(b_txt)
    else:
        raise ValueError(f"bad quadratic scalar {s!r}")
    if a_txt and not re.fullmatch(_RAT, a_txt):
        raise ValueError(f"bad quadratic scalar {s!r}")
    return (Fraction(a_txt) if a_txt else Fraction(0)), b


@dataclass(frozen=True)
class FieldContext:
    """One of ``Q``, ``F_p`` (``kind="Fp"``) or ``Q(sqrt d)`` (``kind="Qsqrt"``)."""

    kind: str
    param: int = 0

    def __post_init__(self) -> None:
        if self.kind == "Q":
            if self.param != 0:
                raise ValueError("Q takes no parameter")
        elif self.kind == "Fp":
            if not (is_prime(self.param) and self.param < 2**31):
                raise ValueError(f"F_p needs a prime p < 2^31, got {self.param}")
        elif self.kind == "Qsqrt":
            if not (self.param > 1 and is_squarefree(self.param)):
                raise ValueError(f"Q(sqrt d) needs square-free d > 1, got {self.param}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldContext":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldContext":
        return cls("Fp", p)

    @classmethod
    def quadratic(cls, d: int) -> "FieldContext":
        return cls("Qsqrt", d)

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "Fp" else 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, str, QuadNumber) into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.param)) % self.param
            if isinstance(x, QuadNumber):
                raise TypeError("cannot coerce a quadratic number into F_p")
            return int(x) % self.param
        if self.kind == "Q":
            if isinstance(x, QuadNumber):
                if x.b != 0:
                    raise TypeError(f"{x} is not rational")
                return x.a
            return Fraction(x)
        if isinstance(x, QuadNumber):
            if x.d != self.param:
                raise TypeError(f"{x!r} not in Q(sqrt {self.param})")
            return x
        return QuadNumber(x, 0, self.param)

    def is_zero(self, x) -> bool:
        return not x

    def inv(self, x):
        if self.kind == "Fp":
            return pow(x, -1, self.param)
        return 1 / x

    def normalize(self, x):
        """Canonical representative of an arithmetic result."""
        return x % self.param if self.kind == "Fp" else x

    def parse(self, text: str):
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if self.kind == "Fp":
            if not re.fullmatch(r"[+-]?\d+", s):
                raise ValueError(f"bad F_{self.param} element {text!r}")
            return int(s) % self.param
        if self.kind == "Q":
            if not re.fullmatch(_RAT, s):
                raise ValueError(f"bad rational {text!r}")
            return Fraction(s)
        a, b = _parse_quad(s)
        return QuadNumber(a, b, self.param)

    def format(self, x) -> str:
        if self.kind == "Qsqrt":
            x = self(x)
            return _format_quad(x.a, x.b)
        return str(self(x))

    def spec(self) -> str:
        """Header form used by the arrangement file format."""
        if self.kind == "Q":
            return "Q"
        if self.kind == "Fp":
            return f"Fp {self.param}"
        return f"Qsqrt {self.param}"

    def __str__(self) -> str:
        return {"Q": "Q", "Fp": f"F{self.param}", "Qsqrt": f"Q(sqrt {self.param})"}[
            self.kind
        ]


Q = FieldContext.rationals()
F2 = FieldContext.prime(2)

Scalar = Union[int, Fraction, QuadNumber]


class Matrix:
    """Immutable dense matrix over a :class:`FieldContext`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(
        self,
        field: FieldContext,
        rows: Iterable[Sequence],
        ncols: int | None = None,
        *,
        coerce: bool = True,
    ) -> None:
        if coerce:
            data = tuple(tuple(field(x) for x in r) for r in rows)
        else:
            data = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self.rows = data

    @classmethod
    def identity(cls, field: FieldContext, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: FieldContext, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [tuple(r[j] for r in self.rows) for j in range(self.ncols)],
            self.nrows,
            coerce=False,
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        zero = self.field.zero
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols])
        return Matrix(self.field, out, other.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix<{self.field} {self.nrows}x{self.ncols}>[{body}]"


def _rref_generic(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Gauss-Jordan over a Python field type (Fraction or QuadNumber)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if pr[c] != 1:
            pr = rows[r] = [x * inv if x else x for x in pr]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = ri[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def _rref_rows(m: Matrix) -> tuple[list[list], list[int]]:
    f = m.field
    if f.kind == "Fp":
        if f.param == 2:
            packed = [sum(1 << j for j, x in enumerate(r) if x) for r in m.rows]
            red, piv = kernels.gf2_rref(packed, m.ncols)
            out = [[(v >> j) & 1 for j in range(m.ncols)] for v in red]
        else:
            out, piv = kernels.fp_rref([list(r) for r in m.rows], m.ncols, f.param)
        out = out + [[0] * m.ncols for _ in range(m.nrows - len(out))]
        return out, list(piv)
    rows, piv = _rref_generic([list(r) for r in m.rows], m.ncols)
    return rows, piv


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and the ordered pivot columns."""
    rows, piv = _rref_rows(m)
    zero = m.field.zero
    rows = rows[: len(piv)] + [[zero] * m.ncols for _ in range(m.nrows - len(piv))]
    return Matrix(m.field, rows, m.ncols, coerce=False), tuple(piv)


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    f = m.field
    if f.kind == "Fp" and f.param == 2:
        packed = [sum(1 << j for j, x in enumerate(r) if x) for r in m.rows]
        return kernels.gf2_rank(packed, m.ncols)
    if f.kind == "Fp":
        return kernels.fp_rank([list(r) for r in m.rows], m.ncols, f.param)
    return len(_rref_rows(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Right null space basis; free variable ``f`` set to 1, others to 0, in order."""
    red, piv = rref(m)
    f = m.field
    pivset = set(piv)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for i, pc in enumerate(piv):
            x = red.rows[i][free]
            if x:
                v[pc] = f(-x)
        basis.append(tuple(v))
    return basis
