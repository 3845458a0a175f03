"""Matrix families ``sign*delta + C(mu + shift + i + j - 2, j + offset)``.

A :class:`FamilySpec` fixes everything except the dimension; entries are
addressed by absolute row/column indices starting at the family's origins, so
``b_n(I, J)`` for different origins are the same family.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction

from holodet.exact import HolodetError, MuPoly, as_fraction, binom_poly, binom_value

__all__ = [
    "FamilySpec",
    "SymMatrix",
    "ANDREWS",
    "XIN",
    "B00",
    "B01",
    "B10",
    "B11",
    "T36",
    "xin",
    "lascoux",
    "parse_family",
    "entry_of",
    "build_matrix",
]


class UnknownFamily(HolodetError, ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    delta_sign: int = 1
    delta_row_offset: int = 0
    delta_col_offset: int = 0
    binom_col_offset: int = 0
    row_origin: int = 1
    col_origin: int = 1
    mu_shift: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self):
        if self.delta_sign not in (-1, 0, 1):
            raise ValueError("delta_sign must be -1, 0 or 1")
        object.__setattr__(self, "mu_shift", as_fraction(self.mu_shift))

    def with_origins(self, row_origin: int, col_origin: int) -> "FamilySpec":
        return replace(self, row_origin=row_origin, col_origin=col_origin)

    def with_mu_shift(self, shift) -> "FamilySpec":
        return replace(self, mu_shift=as_fraction(shift))

    def rows(self, n: int) -> range:
        return range(self.row_origin, self.row_origin + n)

    def cols(self, n: int) -> range:
        return range(self.col_origin, self.col_origin + n)

    def degree_bound(self, n: int) -> int:
        """Upper bound for ``deg det`` of the ``n x n`` member (column degrees)."""
        return sum(max(j + self.binom_col_offset, 0) for j in self.cols(n))


def entry_of(spec: FamilySpec, i: int, j: int, mu=None):
    """Entry at absolute indices ``(i, j)``; a Fraction if ``mu`` is given."""
    bottom = j + spec.binom_col_offset
    fires = i + spec.delta_row_offset == j + spec.delta_col_offset
    delta = spec.delta_sign if fires else 0
    if mu is None:
        shift = spec.mu_shift + i + j - 2
        if shift.denominator == 1:
            b = binom_poly(int(shift), bottom)
        else:
            b = binom_poly(0, bottom).shift(shift)
        return b + delta if delta else b
    top = as_fraction(mu) + spec.mu_shift + i + j - 2
    return binom_value(top, bottom) + delta


class SymMatrix:
    """Square matrix of MuPoly (symbolic) or Fraction (specialized) entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(r) for r in entries)
        for r in rows:
            if len(r) != len(rows):
                raise ValueError("matrix must be square")
        self.entries = rows

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def symbolic(self) -> bool:
        return any(isinstance(x, MuPoly) for r in self.entries for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "SymMatrix":
        return SymMatrix(zip(*self.entries)) if self.n else SymMatrix([])

    def submatrix(self, rows, cols) -> "SymMatrix":
        return SymMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def delete(self, i: int, j: int) -> "SymMatrix":
        """Drop row ``i`` and column ``j`` (0-based)."""
        keep_r = [r for r in range(self.n) if r != i]
        keep_c = [c for c in range(self.n) if c != j]
        return self.submatrix(keep_r, keep_c)

    def specialize(self, mu) -> "SymMatrix":
        mu = as_fraction(mu)
        return SymMatrix(
            [[x(mu) if isinstance(x, MuPoly) else x for x in r] for r in self.entries]
        )

    def replace_entry(self, i: int, j: int, value) -> "SymMatrix":
        rows = [list(r) for r in self.entries]
        rows[i][j] = value
        return SymMatrix(rows)

    def to_json(self):
        return [
            [x.to_json() if isinstance(x, MuPoly) else str(x) for x in r]
            for r in self.entries
        ]

    def __repr__(self):
        return f"SymMatrix(n={self.n})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)


def build_matrix(spec: FamilySpec, n: int, mu=None) -> SymMatrix:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return SymMatrix(
        [[entry_of(spec, i, j, mu) for j in spec.cols(n)] for i in spec.rows(n)]
    )


ANDREWS = FamilySpec(delta_sign=1, name="andrews")


def xin(row_origin: int = 1, col_origin: int = 1, mu_shift=0) -> FamilySpec:
    """``-delta_{i,j} + C(mu + i + j - 2, j)`` with rows/columns from the origins."""
    return FamilySpec(
        delta_sign=-1,
        row_origin=row_origin,
        col_origin=col_origin,
        mu_shift=mu_shift,
        name=f"xin:b{row_origin}{col_origin}",
    )


B00 = xin(0, 0)
B01 = xin(0, 1)
B10 = xin(1, 0)
B11 = xin(1, 1)
XIN = B11
T36 = FamilySpec(delta_sign=-1, binom_col_offset=1, name="t36")


def lascoux(r: int) -> FamilySpec:
    """``-delta_{i,j+r-1} + C(mu + i + j - 2, j + r - 1)``; only concrete ``r``."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    return FamilySpec(
        delta_sign=-1,
        delta_col_offset=r - 1,
        binom_col_offset=r - 1,
        name=f"lascoux:{r}",
    )


_XIN_RE = re.compile(r"^(?:xin:)?b(\d)(\d)$")


def parse_family(name: str) -> FamilySpec:
    """Resolve a CLI family name such as ``andrews``, ``b01``, ``xin:b00``, ``lascoux:3``."""
    key = name.strip().lower()
    if key == "andrews":
        return ANDREWS
    if key in ("xin", "xin:b11"):
        return B11
    if key == "t36":
        return T36
    m = _XIN_RE.match(key)
    if m:
        return xin(int(m.group(1)), int(m.group(2)))
    if key.startswith("lascoux:"):
        try:
            r = int(key.split(":", 1)[1])
        except ValueError:
            raise UnknownFamily(f"bad lascoux parameter in {name!r}") from None
        return lascoux(r)
    raise UnknownFamily(f"unknown family {name!r}")
