"""Closed-form evaluations of the determinant families.

Every evaluator takes ``mu``: the indeterminate :data:`~holodet.exact.MU`
(default, result is a :class:`MuRat`) or a rational number (result is a
Fraction).  Products with an upper bound below the lower bound are 1 and
empty sums are 0; Pochhammer symbols with negative subscripts use the
extension ``(x)_{-k} = 1/((x-1)...(x-k))``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import factorial

from holodet.exact import MU, HolodetError, MuPoly, MuRat, as_fraction, pochhammer
from holodet.exact import rational_floor as floor

__all__ = [
    "ClosedFormId",
    "OutOfDomain",
    "EvenNotSupported",
    "thm34_quotient",
    "thm35_value",
    "q_formula",
    "b01_value",
    "b10_value",
    "thm36_value",
    "q_const",
    "conj34_value",
    "conj_C",
    "conj_E",
    "conj_F",
    "conj_Fm",
    "conj_T",
    "conj_S1",
    "conj_S2",
    "conj_P1",
    "conj_P2",
    "conj_G",
    "CLOSED_FORMS",
    "evaluate",
]


class OutOfDomain(HolodetError, ValueError):
    pass


class EvenNotSupported(OutOfDomain):
    pass


class ClosedFormId(enum.Enum):
    THM34_QUOTIENT = "thm34q"
    THM35 = "thm35"
    B01 = "b01"
    B10 = "b10"
    THM36 = "thm36"
    CONJ34 = "conj34"
    Q1 = "q1"
    Q2 = "q2"
    Q3 = "q3"
    Q4 = "q4"
    Q_CONST = "qconst"


def _symbolic(mu) -> bool:
    return isinstance(mu, (MuPoly, MuRat))


def _one(mu):
    return MuRat(1) if _symbolic(mu) else Fraction(1)


def _mu(mu):
    return mu if _symbolic(mu) else as_fraction(mu)


def _pow(x, e: int):
    if e >= 0:
        return x ** e
    if isinstance(x, (MuPoly, MuRat)):
        return MuRat(1) / (x ** (-e))
    return Fraction(1) / (as_fraction(x) ** (-e))


def _result(x, mu):
    if _symbolic(mu):
        return x if isinstance(x, MuRat) else MuRat(x)
    return as_fraction(x)


def _require(cond, msg):
    if not cond:
        raise OutOfDomain(msg)


def thm34_quotient(n: int, mu=MU):
    """Consecutive quotient ``D(2n)/D(2n-1)`` of the Andrews determinant, n >= 1."""
    _require(n >= 1, "thm34_quotient needs n >= 1")
    mu = _mu(mu)
    sign = -1 if ((n - 1) * (n - 2) // 2) % 2 else 1
    num = pochhammer((mu + 2 * n) / 2, (n + 1) // 2) * pochhammer(
        (mu + 4 * n + 1) / 2, n - 1
    )
    den = pochhammer(Fraction(n), n) * pochhammer((-mu - 4 * n + 3) / 2, (n - 1) // 2)
    return _result(num / den * (sign * 2 ** n), mu)


def thm35_value(n: int, mu=MU):
    """``det(-delta_{i,j} + C(mu+i+j-2, j))_{1<=i,j<=n}``, n >= 0, both parities."""
    _require(n >= 0, "thm35_value needs n >= 0")
    mu = _mu(mu)
    if n % 2 == 0:
        h = n // 2
        val = _one(mu) * ((-1) ** h * 2 ** (n * (n + 2) // 4))
        val = val * pochhammer(mu / 2, h) / factorial(h)
        c = Fraction(1)
        for i in range(0, h):
            c *= Fraction(factorial(i) ** 2, factorial(2 * i) ** 2)
        val = val * c
        for i in range(1, n // 4 + 1):
            val = val * pochhammer((mu + 6 * i - 1) / 2, (n - 4 * i + 2) // 2) ** 2
            val = val * pochhammer((-mu - 3 * n + 6 * i) / 2, (n - 4 * i) // 2) ** 2
        return _result(val, mu)
    h = (n - 1) // 2
    val = _one(mu) * ((-1) ** h * 2 ** ((n + 3) * (n + 1) // 4))
    val = val * pochhammer((mu - 1) / 2, (n + 1) // 2)
    c = Fraction(1)
    for i in range(0, h + 1):
        c *= Fraction(
            factorial(i) * factorial(i + 1), factorial(2 * i) * factorial(2 * i + 2)
        )
    val = val * c
    for i in range(1, (n + 1) // 4 + 1):
        val = val * pochhammer((mu + 6 * i - 1) / 2, (n - 4 * i + 1) // 2) ** 2
        val = val * pochhammer((-mu - 3 * n + 6 * i - 3) / 2, (n - 4 * i + 3) // 2) ** 2
    return _result(val, mu)


def q_formula(k: int, n: int, mu=MU):
    """The four consecutive quotients of ``b_n(0,1)`` and ``b_n(1,0)``.

    ====  ==========================  ========
    k     quotient                    domain
    ====  ==========================  ========
    1     b_{2n+1}(0,1)/b_{2n}(0,1)   n >= 0
    2     b_{2n}(0,1)/b_{2n-1}(0,1)   n >= 1
    3     b_{2n+1}(1,0)/b_{2n}(1,0)   n >= 0
    4     b_{2n}(1,0)/b_{2n-1}(1,0)   n >= 1
    ====  ==========================  ========
    """
    mu = _mu(mu)
    P = pochhammer
    if k == 1:
        _require(n >= 0, "Q1 needs n >= 0")
        num = P(mu / 2 + 2 * n, n + 1) * P(mu + 2 * n - 1, n + 1) * 2
        den = P(Fraction(n + 2), n + 1) * P(mu / 2 + n, n + 1)
    elif k == 2:
        _require(n >= 1, "Q2 needs n >= 1")
        num = P(mu / 2 + 2 * n - 1, n - 1) * P(mu + 2 * n + 1, n - 1) * (mu + 2 * n - 2)
        den = P(Fraction(n), n - 1) * P(mu / 2 + n + 1, n - 1) * n
    elif k == 3:
        _require(n >= 0, "Q3 needs n >= 0")
        num = P(mu / 2 + 2 * n, n + 1) * P(mu + 2 * n + 1, n - 1) * 2
        den = P(Fraction(n + 1), n) * P(mu / 2 + n + 1, n)
    elif k == 4:
        _require(n >= 1, "Q4 needs n >= 1")
        num = P(mu / 2 + 2 * n - 1, n - 1) * P(mu + 2 * n + 1, n - 1) * 2
        den = P(Fraction(n), n - 1) * P(mu / 2 + n + 1, n - 1)
    else:
        raise OutOfDomain(f"no quotient formula Q{k}")
    return _result(num / den, mu)


def _paired_product(n, mu, odd_prefactor, k_even, k_odd):
    _require(n >= 0, "needs n >= 0")
    val = _one(mu)
    if n % 2 == 0:
        for k in range(0, n // 2):
            val = val * q_formula(k_even, k, mu)
        for k in range(1, n // 2 + 1):
            val = val * q_formula(k_odd, k, mu)
        return val
    val = val * odd_prefactor
    for k in range(1, (n - 1) // 2 + 1):
        val = val * q_formula(k_even, k, mu) * q_formula(k_odd, k, mu)
    return val


def b01_value(n: int, mu=MU):
    """``b_n(0,1) = det(-delta_{i-1,j} + C(mu+i+j-3, j))``, n >= 0."""
    mu = _mu(mu)
    return _result(_paired_product(n, mu, mu - 1, 1, 2), mu)


def b10_value(n: int, mu=MU):
    """``b_n(1,0) = det(-delta_{i,j-1} + C(mu+i+j-3, j-1))``, n >= 0."""
    mu = _mu(mu)
    return _result(_paired_product(n, mu, 1, 3, 4), mu)


def thm36_value(n: int, mu=MU):
    """``det(-delta_{i,j} + C(mu+i+j-2, j+1))`` for odd n only."""
    if n < 1 or n % 2 == 0:
        raise EvenNotSupported(f"thm36_value is stated for odd n >= 1, got {n}")
    mu = _mu(mu)
    h = (n + 1) // 2
    val = _one(mu) * ((-1) ** ((n - 1) // 2) * 2 ** ((n - 1) * (n + 5) // 4))
    val = val * (mu + 1) * pochhammer((mu - 2) / 2, h) / factorial(h)
    c = Fraction(1)
    for i in range(0, (n - 1) // 2 + 1):
        c *= Fraction(factorial(i) ** 2, factorial(2 * i) ** 2)
    val = val * c
    for i in range(1, (n + 3) // 4 + 1):
        val = val * pochhammer((mu + 6 * i - 3) / 2, (n - 4 * i + 3) // 2) ** 2
    for i in range(1, (n + 1) // 4 + 1):
        val = val * pochhammer((-mu - 3 * n + 6 * i - 1) / 2, (n - 4 * i + 1) // 2) ** 2
    return _result(val, mu)


def q_const(n: int = 1, mu=MU):
    """Constant quotient ``b_{2n}(1,1,mu) / b_{2n-1}(2,2,mu) = -4/(mu+3)``."""
    _require(n >= 1, "q_const needs n >= 1")
    mu = _mu(mu)
    return _result(_one(mu) * -4 / (mu + 3), mu)


# --- the conjectured closed form of the Andrews determinant ---------------


def conj_C(n: int) -> Fraction:
    c = Fraction((-1) ** n + 3, 2)
    for i in range(1, n + 1):
        c *= Fraction(factorial(i // 2), factorial(i))
    return c


def conj_E(n: int, mu=MU):
    mu = _mu(mu)
    val = _one(mu) * pochhammer(mu + 1, n)
    top1 = floor(Fraction(3, 2) * ((n - 1) // 2) - 2)
    for i in range(1, top1 + 1):
        val = val * _pow(mu + 2 * i + 6, 2 * ((i + 2) // 3))
    h = n // 2
    top2 = floor(Fraction(3, 2) * h - 2)
    base = 2 * floor(Fraction(3, 2) * (h + 1)) - 1
    for i in range(1, top2 + 1):
        e = 2 * floor(Fraction(h, 2) - Fraction(i - 1, 3)) - 1
        val = val * _pow(mu + 2 * i + base, e)
    return _result(val, mu)


def conj_Fm(m: int, n: int, mu=MU):
    mu = _mu(mu)
    val = _one(mu)
    for i in range(1, floor(Fraction(n - 1, 4)) + 1):
        val = val * _pow(mu + 2 * i + n + m, 1 - 2 * i - m)
    for i in range(1, floor(Fraction(n, 4) - 1) + 1):
        val = val * _pow(mu - 2 * i + 2 * n - 2 * m + 1, 1 - 2 * i - m)
    return _result(val, mu)


def conj_F(n: int, mu=MU):
    mu = _mu(mu)
    if n % 2 == 0:
        return _result(conj_E(n, mu) * conj_Fm(0, n, mu), mu)
    val = conj_E(n, mu) * conj_Fm(1, n, mu)
    for i in range(1, (n - 5) // 2 + 1):
        val = val * (mu + 2 * i + 2 * n - 1)
    return _result(val, mu)


def _T_coeffs(mu):
    """Coefficients of T as a polynomial in k (ascending), entries in mu."""
    m1 = mu - 1
    return [
        2 * (mu - 3) * (mu - 2) * m1 * (mu + 1),
        m1 * (mu ** 4 - 14 * mu ** 3 + 101 * mu ** 2 - 160 * mu - 84),
        4 * (19 * mu ** 4 - 122 * mu ** 3 + 419 * mu ** 2 - 544 * mu + 72),
        96 * m1 * (15 * mu ** 2 - 42 * mu + 61),
        384 * (30 * mu ** 2 - 66 * mu + 53),
        41472 * m1,
        _one(mu) * 55296 if _symbolic(mu) else Fraction(55296),
    ]


def conj_T(k, mu=MU):
    """The sextic ``T(k)``; ``k`` may be any rational, e.g. ``k + 1/2``."""
    mu = _mu(mu)
    k = as_fraction(k)
    val = 0
    for c in reversed(_T_coeffs(mu)):
        val = val * k + c
    return _result(val, mu)


def conj_S1(n: int, mu=MU):
    mu = _mu(mu)
    P = pochhammer
    total = 0 * _one(mu)
    half = Fraction(1, 2)
    for k in range(1, n):
        num = (
            P(half, 2 * k - 1) ** 2
            * 2 ** (6 * k)
            * (mu + 8 * k - 1)
            * P((mu + 5) / 2, 2 * k - 3)
            * P((mu + 4 * k + 2) / 2, k - 2)
            * P((mu + 4 * k + 2) / 2, 2 * n - 2 * k - 2)
            * conj_T(k, mu)
        )
        den = P((mu + 6 * k - 3) / 2, 3 * k + 4) * factorial(2 * k)
        total = total + num / den
    return _result(total, mu)


def conj_S2(n: int, mu=MU):
    mu = _mu(mu)
    P = pochhammer
    total = 0 * _one(mu)
    half = Fraction(1, 2)
    for k in range(1, n):
        num = (
            P(half, 2 * k) ** 2
            * 2 ** (6 * k)
            * (mu + 8 * k + 3)
            * P((mu + 5) / 2, 2 * k - 2)
            * P((mu + 4 * k + 4) / 2, k - 2)
            * P((mu + 4 * k + 4) / 2, 2 * n - 2 * k - 2)
            * conj_T(k + half, mu)
        )
        den = P((mu + 6 * k + 1) / 2, 3 * k + 5) * factorial(2 * k + 1)
        total = total + num / den
    return _result(total, mu)


def conj_P1(n: int, mu=MU):
    mu = _mu(mu)
    P = pochhammer
    pre = P((mu + 6 * n - 3) / 2, 3 * n - 2) / P((mu + 5) / 2, 2 * n - 3) * 2 ** (3 * n - 1)
    inner = P((mu + 2) / 2, 2 * n - 2) / (mu + 3) ** 2 + mu * (mu - 1) * conj_S1(n, mu) / 2 ** 13
    return _result(pre * inner, mu)


def conj_P2(n: int, mu=MU):
    mu = _mu(mu)
    P = pochhammer
    pre = P((mu + 6 * n + 1) / 2, 3 * n - 1) / P((mu + 5) / 2, 2 * n - 2) * 2 ** (3 * n - 1)
    inner = (mu + 14) * P((mu + 4) / 2, 2 * n - 2) / ((mu + 7) * (mu + 9)) + mu * (
        mu - 1
    ) * conj_S2(n, mu) / 2 ** 9
    return _result(pre * inner, mu)


def conj_G(n: int, mu=MU):
    _require(n >= 1, "G needs n >= 1")
    if n % 2:
        return conj_P1((n + 1) // 2, mu)
    return conj_P2(n // 2, mu)


def conj34_value(n: int, mu=MU):
    """Conjectured value of ``det(delta_{i,j} + C(mu+i+j-2, j))_{1<=i,j<=n}``."""
    _require(n >= 1, "conj34_value needs n >= 1")
    mu = _mu(mu)
    val = conj_F(n, mu) * conj_G((n + 1) // 2, mu) * conj_C(n)
    return _result(val, mu)


CLOSED_FORMS = {
    ClosedFormId.THM34_QUOTIENT: thm34_quotient,
    ClosedFormId.THM35: thm35_value,
    ClosedFormId.B01: b01_value,
    ClosedFormId.B10: b10_value,
    ClosedFormId.THM36: thm36_value,
    ClosedFormId.CONJ34: conj34_value,
    ClosedFormId.Q1: lambda n, mu=MU: q_formula(1, n, mu),
    ClosedFormId.Q2: lambda n, mu=MU: q_formula(2, n, mu),
    ClosedFormId.Q3: lambda n, mu=MU: q_formula(3, n, mu),
    ClosedFormId.Q4: lambda n, mu=MU: q_formula(4, n, mu),
    ClosedFormId.Q_CONST: q_const,
}


def evaluate(form, n: int, mu=MU):
    """Evaluate a closed form by id (enum member or its CLI string)."""
    if not isinstance(form, ClosedFormId):
        try:
            form = ClosedFormId(str(form).lower())
        except ValueError:
            raise OutOfDomain(f"unknown closed form {form!r}") from None
    return CLOSED_FORMS[form](n, mu)
