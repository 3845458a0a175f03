"""Exact arithmetic in Q[mu] and Q(mu).

:class:`MuPoly` is a dense univariate polynomial in the indeterminate ``mu``
with rational coefficients; :class:`MuRat` is a reduced quotient of two of
them.  Scalars are :class:`fractions.Fraction`.

Internally a ``MuPoly`` keeps integer numerators and a single positive
denominator, so multiplication and elimination run on Python ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from holodet import _zpoly as zp

__all__ = [
    "HolodetError",
    "DivisionByZero",
    "InexactDivision",
    "PoleAtPoint",
    "MuPoly",
    "MuRat",
    "MU",
    "as_fraction",
    "poly_gcd",
    "eval_at",
    "binom_poly",
    "pochhammer",
    "rational_floor",
    "factorial",
]


class HolodetError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(HolodetError, ZeroDivisionError):
    pass


class InexactDivision(HolodetError, ArithmeticError):
    pass


class PoleAtPoint(HolodetError, ZeroDivisionError):
    pass


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _normalize(nums, den):
    nums = zp.strip(nums)
    if not nums:
        return [], 1
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = math.gcd(zp.content(nums), den)
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return nums, den


class MuPoly:
    """Polynomial in ``mu`` over Q, immutable.

    >>> MuPoly([2, 3, 1])
    MuPoly('mu^2 + 3*mu + 2')
    """

    __slots__ = ("_nums", "_den", "_hash")

    def __init__(self, coeffs=()):
        fr = [as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._nums, self._den = _normalize(nums, den)
        self._hash = None

    @classmethod
    def _make(cls, nums, den=1):
        obj = object.__new__(cls)
        obj._nums, obj._den = _normalize(nums, den)
        obj._hash = None
        return obj

    @classmethod
    def _raw(cls, nums, den=1):
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj._nums, obj._den = nums, den
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "MuPoly":
        c = as_fraction(c)
        return cls._make([c.numerator], c.denominator)

    @classmethod
    def mu(cls) -> "MuPoly":
        return cls._raw([0, 1], 1)

    @classmethod
    def linear(cls, slope, offset) -> "MuPoly":
        """``slope*mu + offset``."""
        return cls([offset, slope])

    @property
    def coeffs(self) -> tuple:
        d = self._den
        return tuple(Fraction(c, d) for c in self._nums)

    @property
    def degree(self) -> int:
        return len(self._nums) - 1

    def is_zero(self) -> bool:
        return not self._nums

    def is_constant(self) -> bool:
        return len(self._nums) <= 1

    def leading_coeff(self) -> Fraction:
        if not self._nums:
            return Fraction(0)
        return Fraction(self._nums[-1], self._den)

    def __bool__(self):
        return bool(self._nums)

    # --- coercion -----------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, MuPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MuPoly.constant(other)
        return None

    # --- ring operations ----------------------------------------------

    def __neg__(self):
        return MuPoly._raw([-c for c in self._nums], self._den)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return MuPoly._make(zp.add(self._nums, o._nums), self._den)
        g = math.gcd(self._den, o._den)
        a = zp.scale(self._nums, o._den // g)
        b = zp.scale(o._nums, self._den // g)
        return MuPoly._make(zp.add(a, b), self._den // g * o._den)

    __radd__ = __add__

    def __sub__(self, other):
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return MuPoly._make(zp.scale(self._nums, other), self._den)
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        return MuPoly._make(zp.mul(self._nums, o._nums), self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return MuRat(MuPoly.constant(1), self) ** (-k)
        result = MuPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if not other:
                raise DivisionByZero("division by zero")
            return MuPoly._make(
                zp.scale(self._nums, other.denominator), self._den * other.numerator
            )
        if isinstance(other, MuPoly):
            return MuRat(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        return MuRat(o, self)

    def __divmod__(self, other):
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        div = o.coeffs
        dd = len(div) - 1
        inv = 1 / div[-1]
        q = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + dd] * inv
            q[k] = c
            if c:
                for i, d in enumerate(div):
                    rem[k + i] -= c * d
        return MuPoly(q), MuPoly(rem[:dd])

    def __floordiv__(self, other):
        res = divmod(self, other)
        return res if res is NotImplemented else res[0]

    def __mod__(self, other):
        res = divmod(self, other)
        return res if res is NotImplemented else res[1]

    def exact_div(self, other) -> "MuPoly":
        """Quotient of an exact division; raises InexactDivision otherwise."""
        o = MuPoly._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide MuPoly by {type(other).__name__}")
        if not o:
            raise DivisionByZero("polynomial division by zero")
        if not self:
            return self
        cb = zp.content(o._nums)
        if o._nums[-1] < 0:
            cb = -cb
        prim = [c // cb for c in o._nums]
        q = zp.divmod_exact_primitive(self._nums, prim)
        if q is None:
            raise InexactDivision("nonzero remainder in exact division")
        # self = A/da, other = cb*prim/db  =>  quotient = q * db / (da*cb)
        return MuPoly._make(zp.scale(q, o._den), self._den * cb)

    # --- comparison, hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MuRat):
            return other == self
        o = MuPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self._den == o._den and self._nums == o._nums

    def __hash__(self):
        if self._hash is None:
            if len(self._nums) <= 1:
                self._hash = hash(self.leading_coeff())
            else:
                self._hash = hash((tuple(self._nums), self._den))
        return self._hash

    # --- evaluation and substitution ----------------------------------

    def __call__(self, x):
        return eval_at(self, x)

    def shift(self, c) -> "MuPoly":
        """Return ``p(mu + c)``."""
        c = as_fraction(c)
        if not c or len(self._nums) <= 1:
            return self
        result = MuPoly()
        lin = MuPoly([c, 1])
        for a in reversed(self.coeffs):
            result = result * lin + a
        return result

    def compose(self, other) -> "MuPoly":
        result = MuPoly()
        for a in reversed(self.coeffs):
            result = result * other + a
        return result

    def derivative(self) -> "MuPoly":
        return MuPoly._make([i * c for i, c in enumerate(self._nums)][1:], self._den)

    def monic(self) -> "MuPoly":
        if not self:
            return self
        lc = self._nums[-1]
        return MuPoly._make(list(self._nums), lc)

    def primitive_int(self):
        """(integer content sign-normalized, primitive integer list)."""
        if not self:
            return 0, []
        g = zp.content(self._nums)
        if self._nums[-1] < 0:
            g = -g
        return Fraction(g, self._den), [c // g for c in self._nums]

    # --- printing -----------------------------------------------------

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "MuPoly":
        return cls(data)

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"MuPoly({str(self)!r})"


def format_poly(coeffs, var="mu") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a}*{mono}"
            else:
                body = f"({a})*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: MuPoly, b: MuPoly) -> MuPoly:
    """Monic gcd over Q (zero if both are zero).

    Runs the primitive remainder sequence on integer coefficients, which
    keeps coefficient growth in check far better than Euclid over Q.
    """
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MuPoly.constant(1)
    _, x = a.primitive_int()
    _, y = b.primitive_int()
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem(x, y)
        if not r:
            x = y
            break
        g = zp.content(r)
        r = [c // g for c in r]
        x, y = y, r
        if len(y) == 1:
            return MuPoly.constant(1)
    return MuPoly._make(list(x), 1).monic()


def _prem(a, b):
    """Pseudo-remainder of integer lists: lc(b)^k * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        t = r[-1]
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[k + i] -= t * c
        while r and not r[-1]:
            r.pop()
    return r


class MuRat:
    """Element of Q(mu) kept as ``num/den`` with gcd 1 and monic ``den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced=False):
        num = _as_poly(num)
        den = MuPoly.constant(1) if den is None else _as_poly(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not _reduced:
            if not num:
                den = MuPoly.constant(1)
            elif den.is_constant():
                num = num / den.leading_coeff()
                den = MuPoly.constant(1)
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.leading_coeff()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _coerce(other):
        if isinstance(other, MuRat):
            return other
        if isinstance(other, (MuPoly, int, Fraction)):
            return MuRat(other, _reduced=True)
        return None

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MuPoly:
        if not self.is_polynomial():
            raise InexactDivision(f"{self} is not a polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __neg__(self):
        return MuRat(-self.num, self.den, _reduced=True)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return MuRat(self.num + o.num, self.den)
        if self.den.is_constant():
            return MuRat(self.num * o.den + o.num, o.den, _reduced=True)
        if o.den.is_constant():
            return MuRat(self.num + o.num * self.den, self.den, _reduced=True)
        g = poly_gcd(self.den, o.den)
        if g.is_constant():
            return MuRat(self.num * o.den + o.num * self.den, self.den * o.den)
        sd = self.den.exact_div(g)
        od = o.den.exact_div(g)
        return MuRat(self.num * od + o.num * sd, sd * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return MuRat(MuPoly(), _reduced=True)
        # cross-cancel so the product stays reduced
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        a, d = self.num, o.den
        if not g1.is_constant():
            a, d = a.exact_div(g1), d.exact_div(g1)
        c, b = o.num, self.den
        if not g2.is_constant():
            c, b = c.exact_div(g2), b.exact_div(g2)
        # both denominators were monic, so the product is monic
        return MuRat(a * c, _monic_product(b, d), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "MuRat":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        lc = self.num.leading_coeff()
        return MuRat(self.den / lc, self.num / lc, _reduced=True)

    def __truediv__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return MuRat(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        o = MuRat._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.den.is_constant():
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, x):
        return eval_at(self, x)

    def shift(self, c) -> "MuRat":
        return MuRat(self.num.shift(c), self.den.shift(c), _reduced=True)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "MuRat":
        if isinstance(data, list):
            return cls(MuPoly(data))
        return cls(MuPoly(data["num"]), MuPoly(data["den"]))

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"MuRat({str(self)!r})"


def _monic_product(b, d):
    prod = b * d
    lc = prod.leading_coeff()
    return prod if lc == 1 else prod / lc


def _as_poly(x) -> MuPoly:
    if isinstance(x, MuPoly):
        return x
    if isinstance(x, (int, Fraction, str)):
        return MuPoly.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial in mu")


MU = MuPoly.mu()


def eval_at(p, mu):
    """Evaluate a MuPoly/MuRat (or pass through a scalar) at rational ``mu``.

    ``mu`` may also be a MuPoly or MuRat, in which case this substitutes.
    """
    if isinstance(p, (int, Fraction)):
        return as_fraction(p)
    if isinstance(mu, (MuPoly, MuRat)):
        if isinstance(p, MuPoly):
            return _subst(p, mu)
        return _subst(p.num, mu) / _subst(p.den, mu)
    x = as_fraction(mu)
    if isinstance(p, MuPoly):
        if not p._nums:
            return Fraction(0)
        d = len(p._nums) - 1
        v = zp.horner_frac(p._nums, x.numerator, x.denominator)
        return Fraction(v, p._den * x.denominator ** d)
    if isinstance(p, MuRat):
        den = eval_at(p.den, x)
        if not den:
            raise PoleAtPoint(f"denominator vanishes at mu = {x}")
        return eval_at(p.num, x) / den
    raise TypeError(f"cannot evaluate {type(p).__name__}")


def _subst(p, x):
    result = MuRat(MuPoly()) if isinstance(x, MuRat) else MuPoly()
    for a in reversed(p.coeffs):
        result = result * x + a
    return result


def factorial(n: int) -> int:
    return math.factorial(n)


def binom_poly(shift: int, j: int) -> MuPoly:
    """``C(mu + shift, j)`` as a polynomial of degree ``j``; zero for ``j < 0``."""
    if j < 0:
        return MuPoly()
    nums = [1]
    for t in range(j):
        nums = zp.mul(nums, [shift - t, 1])
    return MuPoly._make(nums, math.factorial(j))


def binom_value(top, j: int):
    """``C(top, j)`` for a scalar rational ``top``."""
    if j < 0:
        return Fraction(0)
    top = as_fraction(top)
    r = Fraction(1)
    for t in range(j):
        r *= top - t
    return r / math.factorial(j)


def pochhammer(x, m: int):
    """Rising factorial ``(x)_m`` with ``(x)_{-k} = 1/((x-1)...(x-k))``.

    ``x`` may be an int, Fraction, MuPoly or MuRat.  Symbolic input gives a
    MuRat, numeric input a Fraction.
    """
    symbolic = isinstance(x, (MuPoly, MuRat))
    if symbolic:
        one = MuRat(MuPoly.constant(1), _reduced=True)
    else:
        x = as_fraction(x)
        one = Fraction(1)
    prod = one
    if m >= 0:
        for t in range(m):
            prod = prod * (x + t)
        return prod
    for t in range(1, -m + 1):
        prod = prod * (x - t)
    if not prod:
        raise PoleAtPoint(f"(x)_{m} has a pole at x = {x}")
    return one / prod


def rational_floor(q) -> int:
    """True floor (toward minus infinity) of an exact rational."""
    return math.floor(as_fraction(q))
