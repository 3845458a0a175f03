"""Exact determinants, minors, normalized cofactors and null vectors.

Everything here runs fraction-free.  A matrix over Q (or Q[mu]) is first
scaled row by row to integer (or integer-polynomial) entries; elimination
then uses Bareiss' exact-division update, so no rational function ever
appears inside the hot loop.  Row scaling leaves kernels unchanged and
multiplies the determinant by a known integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from holodet import _zpoly as zp
from holodet.exact import HolodetError, MuPoly, MuRat, as_fraction
from holodet.families import SymMatrix

__all__ = [
    "SingularSubmatrix",
    "IndexOutOfRange",
    "CofactorVector",
    "LAST",
    "FIRST",
    "determinant",
    "determinant_interpolated",
    "minor",
    "cofactor_vector",
    "double_step_vectors",
    "double_step_value",
    "desnanot_jacobi_terms",
    "desnanot_jacobi_check",
    "nullspace",
    "null_vector",
    "mat_vec",
    "kernel",
    "rank",
]

LAST = "LAST"
FIRST = "FIRST"


class SingularSubmatrix(HolodetError, ArithmeticError):
    pass


class IndexOutOfRange(HolodetError, IndexError):
    pass


class _IntRing:
    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def div(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division")
        return q

    one = 1
    zero = 0


class _PolyRing:
    mul = staticmethod(zp.mul)
    sub = staticmethod(zp.sub)
    div = staticmethod(zp.exact_div)
    one = [1]
    zero = []


def _integral_rows(rows):
    """Scale each row to integer entries.

    Returns ``(ring, int_rows, scale, symbolic)`` with ``scale`` the product
    of the row multipliers.
    """
    symbolic = any(isinstance(x, MuPoly) for r in rows for x in r)
    out = []
    scale = 1
    if symbolic:
        for r in rows:
            polys = [x if isinstance(x, MuPoly) else MuPoly.constant(x) for x in r]
            s = 1
            for p in polys:
                s = s * p._den // math.gcd(s, p._den)
            out.append([zp.scale(p._nums, s // p._den) for p in polys])
            scale *= s
        return _PolyRing, out, scale, True
    for r in rows:
        fr = [as_fraction(x) for x in r]
        s = 1
        for x in fr:
            s = s * x.denominator // math.gcd(s, x.denominator)
        out.append([x.numerator * (s // x.denominator) for x in fr])
        scale *= s
    return _IntRing, out, scale, False


def _bareiss(ring, a):
    """Determinant of the integral matrix ``a`` (modified in place)."""
    n = len(a)
    if n == 0:
        return ring.one
    mul, sub, div = ring.mul, ring.sub, ring.div
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for p in range(k + 1, n):
                if a[p][k]:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        rk = a[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                x = mul(akk, ri[j])
                if aik:
                    x = sub(x, mul(aik, rk[j]))
                ri[j] = div(x, prev) if prev != ring.one else x
        prev = akk
    d = a[n - 1][n - 1]
    if sign < 0:
        d = sub(ring.zero, d)
    return d


def _from_ring(x, symbolic, den=1):
    if symbolic:
        return MuPoly._make(list(x), den)
    return Fraction(x, den)


def determinant(M: SymMatrix):
    """Exact determinant; a MuPoly for symbolic matrices, Fraction otherwise."""
    ring, a, scale, symbolic = _integral_rows(M.entries)
    if M.n == 0:
        return MuPoly.constant(1) if symbolic else Fraction(1)
    return _from_ring(_bareiss(ring, a), symbolic, scale)


def determinant_interpolated(M: SymMatrix, degree_bound: int | None = None) -> MuPoly:
    """Symbolic determinant through evaluation at integer points and interpolation.

    With ``degree_bound`` at least the true degree, the result is exact: a
    polynomial of degree <= D is fixed by D+1 values.  The default bound is
    the sum of the column degree maxima.
    """
    if degree_bound is None:
        degree_bound = sum(
            max((x.degree if isinstance(x, MuPoly) else 0) for x in col)
            for col in zip(*M.entries)
        ) if M.n else 0
    xs = list(range(degree_bound + 1))
    ys = [determinant(M.specialize(x)) for x in xs]
    return interpolate(xs, ys)


def interpolate(xs, ys) -> MuPoly:
    """Newton interpolation through ``(xs[k], ys[k])`` over Q."""
    n = len(xs)
    coef = [as_fraction(y) for y in ys]
    xs = [as_fraction(x) for x in xs]
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k])
    poly = MuPoly()
    for i in range(n - 1, -1, -1):
        poly = poly * MuPoly([-xs[i], 1]) + coef[i]
    return poly


def minor(M: SymMatrix, i: int, j: int):
    """Determinant after deleting row ``i`` and column ``j`` (1-based)."""
    if not (1 <= i <= M.n and 1 <= j <= M.n):
        raise IndexOutOfRange(f"({i}, {j}) outside a {M.n}x{M.n} matrix")
    return determinant(M.delete(i - 1, j - 1))


def _ff_rref(ring, a, ncols):
    """Fraction-free reduced echelon form of the integral rows ``a`` (in place).

    Returns ``(pivot_columns, d)``; every pivot entry equals ``d`` on exit.
    """
    mul, sub, div = ring.mul, ring.sub, ring.div
    m = len(a)
    prev = ring.one
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((p for p in range(r, m) if a[p][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        rr = a[r]
        piv = rr[c]
        for i in range(m):
            if i == r:
                continue
            ri = a[i]
            aic = ri[c]
            for j in range(ncols):
                if j == c:
                    continue
                x = mul(piv, ri[j])
                if aic:
                    x = sub(x, mul(aic, rr[j]))
                ri[j] = div(x, prev) if prev != ring.one else x
            ri[c] = ring.zero
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, prev


def _ratio(num, den, symbolic):
    if symbolic:
        return MuRat(MuPoly._make(list(num)), MuPoly._make(list(den)))
    return Fraction(num, den)


def _neg(ring, x):
    return ring.sub(ring.zero, x)


def _solve_bordered(rows, ncols, free):
    """Kernel of ``rows`` parametrized by the last ``free`` coordinates.

    The leading ``(ncols - free)`` columns must be pivots, otherwise the
    leading block is singular.  Returns, for each free coordinate, the
    vector whose free part is the corresponding unit vector.
    """
    ring, a, _, symbolic = _integral_rows(rows)
    bound = ncols - free
    pivots, d = _ff_rref(ring, a, ncols)
    if pivots[:bound] != list(range(bound)) or len(pivots) < bound:
        raise SingularSubmatrix("leading block of the bordered system is singular")
    if len(pivots) > bound:
        raise SingularSubmatrix("rows do not leave the expected free coordinates")
    one = MuRat(1) if symbolic else Fraction(1)
    zero = MuRat(0) if symbolic else Fraction(0)
    out = []
    for f in range(free):
        col = bound + f
        vec = [_ratio(_neg(ring, a[i][col]), d, symbolic) for i in range(bound)]
        vec += [one if g == f else zero for g in range(free)]
        out.append(vec)
    return out


@dataclass(frozen=True)
class CofactorVector:
    """Normalized cofactors of the expansion row.

    ``values[j]`` belongs to column ``j`` (0-based).  In ``LAST`` mode the
    last entry is 1 and the vector is orthogonal to all rows but the last;
    in ``FIRST`` mode the first entry is 1 and it is orthogonal to all rows
    but the first.
    """

    n: int
    row_mode: str
    values: tuple

    def dot(self, row) -> object:
        return _dot(self.values, row)

    def to_json(self):
        return {
            "n": self.n,
            "row_mode": self.row_mode,
            "values": [_value_json(v) for v in self.values],
        }


def _value_json(v):
    if isinstance(v, (MuRat, MuPoly)):
        return v.to_json()
    return str(v)


def _dot(vec, row):
    total = None
    for c, a in zip(vec, row):
        if not a or not c:
            continue
        term = c * a
        total = term if total is None else total + term
    if total is None:
        symbolic = any(isinstance(x, (MuRat, MuPoly)) for x in list(vec) + list(row))
        return MuRat(0) if symbolic else Fraction(0)
    if isinstance(total, MuPoly):
        total = MuRat(total)
    return total


def mat_vec(M: SymMatrix, v) -> list:
    return [_dot(v, row) for row in M.entries]


def cofactor_vector(M: SymMatrix, mode: str = LAST) -> CofactorVector:
    """Solve the bordered system for the normalized cofactors of ``M``.

    ``LAST``: expansion along the last row, normalized by the last-column
    cofactor.  ``FIRST``: expansion along the first row, normalized by the
    first-column cofactor.
    """
    n = M.n
    if n == 0:
        raise ValueError("no cofactors for the empty matrix")
    one = MuRat(1) if M.symbolic else Fraction(1)
    if n == 1:
        return CofactorVector(1, mode, (one,))
    if mode == LAST:
        (vec,) = _solve_bordered(M.entries[:-1], n, 1)
        return CofactorVector(n, mode, tuple(vec))
    if mode == FIRST:
        # move column 0 to the end, solve, rotate back
        rows = [r[1:] + r[:1] for r in M.entries[1:]]
        (vec,) = _solve_bordered(rows, n, 1)
        return CofactorVector(n, mode, tuple(vec[-1:] + vec[:-1]))
    raise ValueError(f"unknown mode {mode!r}")


def double_step_vectors(M: SymMatrix):
    """Certificate vectors ``(c', c'')`` of the double-step expansion.

    Both are orthogonal to rows ``1..n-2``; ``c'`` ends in ``(1, 0)`` and
    ``c''`` in ``(0, 1)``, i.e. ``C = -M1^{-1} M2`` bordered by the 2x2
    identity.
    """
    n = M.n
    if n < 2:
        raise ValueError("double step needs n >= 2")
    first, second = _solve_bordered(M.entries[:-2], n, 2)
    return tuple(first), tuple(second)


def double_step_value(M: SymMatrix, vectors=None):
    """The 2x2 combination ``det(M) / det(M1)`` built from the certificate vectors."""
    c1, c2 = vectors if vectors is not None else double_step_vectors(M)
    r1, r2 = M.entries[-2], M.entries[-1]
    return _dot(c1, r1) * _dot(c2, r2) - _dot(c2, r1) * _dot(c1, r2)


def desnanot_jacobi_terms(M: SymMatrix) -> dict:
    """The six determinants of the condensation identity."""
    n = M.n
    if n < 2:
        raise ValueError("condensation needs n >= 2")
    drop_first = range(1, n)
    drop_last = range(n - 1)
    return {
        "det": determinant(M),
        "interior": determinant(M.submatrix(range(1, n - 1), range(1, n - 1))),
        "nw": determinant(M.submatrix(drop_last, drop_last)),
        "se": determinant(M.submatrix(drop_first, drop_first)),
        "ne": determinant(M.submatrix(drop_last, drop_first)),
        "sw": determinant(M.submatrix(drop_first, drop_last)),
        "n": n,
    }


def desnanot_jacobi_check(M: SymMatrix, terms: dict | None = None) -> bool:
    """``det(M) det(interior) == det(NW) det(SE) - det(NE) det(SW)``."""
    t = terms if terms is not None else desnanot_jacobi_terms(M)
    return t["det"] * t["interior"] == t["nw"] * t["se"] - t["ne"] * t["sw"]


def nullspace(M: SymMatrix) -> list:
    """Basis of the right kernel, each vector scaled so its last nonzero entry is 1."""
    n = M.n
    if n == 0:
        return []
    ring, a, _, symbolic = _integral_rows(M.entries)
    pivots, d = _ff_rref(ring, a, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    zero = MuRat(0) if symbolic else Fraction(0)
    for f in free:
        vec = [zero] * n
        one = MuRat(1) if symbolic else Fraction(1)
        vec[f] = one
        for i, c in enumerate(pivots):
            if a[i][f]:
                vec[c] = _ratio(_neg(ring, a[i][f]), d, symbolic)
        last = next(v for v in reversed(vec) if v)
        if last != 1:
            vec = [v / last for v in vec]
        basis.append(vec)
    return basis


def null_vector(M: SymMatrix):
    """A nonzero ``v`` with ``M v = 0`` (last nonzero entry 1), or None."""
    basis = nullspace(M)
    return basis[0] if basis else None


def kernel(rows, ncols: int) -> list:
    """Right kernel of a rectangular matrix given as a list of rows.

    Basis vectors come from the reduced echelon form: one per free column,
    with a 1 in that column.  Entries are Fractions (or MuRat for
    polynomial input).
    """
    if not rows:
        one = Fraction(1)
        return [[one if i == f else Fraction(0) for i in range(ncols)] for f in range(ncols)]
    ring, a, _, symbolic = _integral_rows(rows)
    pivots, d = _ff_rref(ring, a, ncols)
    pivot_set = set(pivots)
    zero = MuRat(0) if symbolic else Fraction(0)
    one = MuRat(1) if symbolic else Fraction(1)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [zero] * ncols
        vec[f] = one
        for i, c in enumerate(pivots):
            if a[i][f]:
                vec[c] = _ratio(_neg(ring, a[i][f]), d, symbolic)
        basis.append(vec)
    return basis


def rank(rows, ncols: int) -> int:
    if not rows:
        return 0
    ring, a, _, _ = _integral_rows(rows)
    pivots, _ = _ff_rref(ring, a, ncols)
    return len(pivots)
