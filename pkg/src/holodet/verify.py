"""Exact verification suites for determinant evaluations.

Each suite runs independently for every n in a range and returns a
:class:`~holodet.report.VerificationReport`.  A suite either works with
symbolic mu (equality in Q(mu)) or at a list of rational mu values.
"""

from __future__ import annotations

import multiprocessing
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from holodet import closed_forms as cf
from holodet.det import (
    _dot,
    FIRST,
    LAST,
    cofactor_vector,
    desnanot_jacobi_terms,
    determinant,
    determinant_interpolated,
    double_step_vectors,
    mat_vec,
    nullspace,
)
from holodet.exact import MU, HolodetError, MuPoly, MuRat, eval_at
from holodet.families import ANDREWS, B00, B01, B10, B11, T36, FamilySpec, SymMatrix, build_matrix, xin
from holodet.report import NResult, VerificationReport, Witness

__all__ = [
    "QuotientVanishes",
    "seeded_points",
    "verify_single_step",
    "verify_even_step",
    "verify_double_step",
    "verify_first_row",
    "verify_quotient_derivation",
    "verify_desnanot_jacobi",
    "verify_null_certificate",
    "verify_closed_form",
    "verify_thm34",
    "run_suite",
    "SUITES",
]


class QuotientVanishes(HolodetError, ZeroDivisionError):
    pass


def seeded_points(seed: int, count: int, n_max: int = 0) -> list:
    """Deterministic rational mu values.

    Integers in ``[-4 n_max - 2, 0]`` are skipped: small nonpositive
    integers are where the matrices degenerate.
    """
    rng = random.Random(seed)
    lo = -4 * n_max - 2
    out = []
    while len(out) < count:
        q = Fraction(rng.randint(-60, 240), rng.randint(1, 29))
        if q.denominator == 1 and lo <= q <= 0:
            continue
        if q not in out:
            out.append(q)
    return out


def _zero(x) -> bool:
    return not x


def _mu_label(mu) -> str:
    return "symbolic" if mu is None else str(mu)


def _mu_value(mu):
    return MU if mu is None else mu


# --- parallel fan-out -------------------------------------------------------

_TASK = None


def _call(n):
    t0 = time.perf_counter()
    res = _TASK(n)
    res.seconds = time.perf_counter() - t0
    return res


def _jobs(jobs) -> int:
    if jobs is None:
        jobs = int(os.environ.get("HOLODET_JOBS", "1") or 1)
    return max(1, int(jobs))


def _run(suite: str, family: str, mu, ns, task, jobs=None) -> VerificationReport:
    """Run ``task(n)`` for every n and merge in ascending order."""
    global _TASK
    report = VerificationReport(suite, family, mu=_mu_label(mu))
    ns = list(ns)
    jobs = _jobs(jobs)
    _TASK = task
    try:
        if jobs > 1 and len(ns) > 1:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
                results = list(pool.map(_call, ns))
        else:
            results = [_call(n) for n in ns]
    finally:
        _TASK = None
    for r in results:
        report.add(r)
    return report


def _result(n, witnesses) -> NResult:
    return NResult(n, "fail" if witnesses else "pass", list(witnesses))


# --- the certificate identities ----------------------------------------------


def _default_matrix(spec, mu):
    return lambda size: build_matrix(spec, size, mu=mu)


def _quotient_at(quotient, n, mu):
    q = quotient(n)
    if mu is not None and isinstance(q, (MuRat, MuPoly)):
        q = eval_at(q, mu)
    if _zero(q):
        raise QuotientVanishes(f"quotient vanishes at n={n}")
    return q


def _last_row_suite(tag, M: SymMatrix, q, n):
    """Identities for a LAST-mode certificate: normalization, orthogonality
    to all rows but the last, and the quotient from the last row."""
    c = cofactor_vector(M, LAST)
    ws = []
    if c.values[-1] != 1:
        ws.append(Witness(f"({tag}1)", (n, M.n), 1, c.values[-1]))
    for i in range(M.n - 1):
        s = c.dot(M.row(i))
        if s:
            ws.append(Witness(f"({tag}2)", (n, i + 1), 0, s))
    last = c.dot(M.row(M.n - 1))
    if last != q:
        ws.append(Witness(f"({tag}3)", n, q, last))
    return ws


def verify_single_step(spec: FamilySpec, quotient, n_max: int, mu=None, n_min: int = 1,
                       matrix=None, jobs=None) -> VerificationReport:
    """Check the normalized cofactors of the n x n matrix against ``quotient(n)``."""
    build = matrix or _default_matrix(spec, mu)

    def task(n):
        q = _quotient_at(quotient, n, mu)
        return _result(n, _last_row_suite("", build(n), q, n))

    return _run("single_step", spec.name, mu, range(n_min, n_max + 1), task, jobs)


def verify_even_step(spec: FamilySpec, quotient, n_max: int, mu=None, n_min: int = 1,
                     matrix=None, jobs=None) -> VerificationReport:
    """Same identities on the even-dimensional matrices only (size 2n)."""
    build = matrix or _default_matrix(spec, mu)

    def task(n):
        q = _quotient_at(quotient, n, mu)
        return _result(n, _last_row_suite("a", build(2 * n), q, n))

    return _run("even_step", spec.name, mu, range(n_min, n_max + 1), task, jobs)


def verify_double_step(spec: FamilySpec, quotient2, n_max: int, mu=None, n_min: int = 2,
                       size=None, matrix=None, jobs=None) -> VerificationReport:
    """Two certificate vectors and the 2x2 combination of the last two rows.

    ``size(n)`` is the matrix dimension checked for index n (default n);
    ``quotient2(n)`` is the expected ``det(size) / det(size - 2)``.
    """
    build = matrix or _default_matrix(spec, mu)
    size = size or (lambda n: n)

    def task(n):
        q = _quotient_at(quotient2, n, mu)
        M = build(size(n))
        m = M.n
        c1, c2 = double_step_vectors(M)
        ws = []
        if (c1[-2], c1[-1], c2[-2], c2[-1]) != (1, 0, 0, 1):
            ws.append(Witness("(b1)", (n, m), "1,0,0,1", f"{c1[-2]},{c1[-1]},{c2[-2]},{c2[-1]}"))
        for i in range(m - 2):
            row = M.row(i)
            for k, c in enumerate((c1, c2)):
                s = _dot(c, row)
                if s:
                    ws.append(Witness("(b2)" + "'" * (k + 1), (n, i + 1), 0, s))
        r1, r2 = M.row(m - 2), M.row(m - 1)
        val = _dot(c1, r1) * _dot(c2, r2) - _dot(c2, r1) * _dot(c1, r2)
        if val != q:
            ws.append(Witness("(b3)", n, q, val))
        return _result(n, ws)

    return _run("double_step", spec.name, mu, range(n_min, n_max + 1), task, jobs)


def verify_first_row(spec: FamilySpec, target, n_max: int, mu=None, n_min: int = 1,
                     size=None, matrix=None, jobs=None) -> VerificationReport:
    """FIRST-mode certificate: ``c_0 = 1``, orthogonal to rows 2..m, and the
    first row gives ``target``.  ``size`` defaults to 2n, the even matrices
    of the ``b(0,0)`` family."""
    build = matrix or _default_matrix(spec, mu)
    size = size or (lambda n: 2 * n)

    def task(n):
        M = build(size(n))
        c = cofactor_vector(M, FIRST)
        ws = []
        if c.values[0] != 1:
            ws.append(Witness("(c1)", (n, 0), 1, c.values[0]))
        for i in range(1, M.n):
            s = c.dot(M.row(i))
            if s:
                ws.append(Witness("(c2)", (n, i), 0, s))
        first = c.dot(M.row(0))
        if first != target:
            ws.append(Witness("(c3)", n, target, first))
        return _result(n, ws)

    return _run("first_row", spec.name, mu, range(n_min, n_max + 1), task, jobs)


def _b(I, J, m, mu):
    return determinant(build_matrix(xin(I, J), m, mu=mu))


def verify_quotient_derivation(n_max: int, mu=None, raw: bool = False, n_min: int = 1,
                               jobs=None) -> VerificationReport:
    """The b(1,1) quotients as products of b(0,1) and b(1,0) quotients.

    Odd: ``b_{2n+1}(1,1)/b_{2n-1}(1,1) = -(b_{2n+1}(0,1)/b_{2n}(0,1)) (b_{2n+1}(1,0)/b_{2n}(1,0))``.
    Even: the same with ``2n, 2n-2, 2n-1`` in place of ``2n+1, 2n-1, 2n``.
    With ``raw=True`` the condensation identity itself is checked on the
    b(0,0) matrices of size ``n`` instead.
    """
    if raw:
        def task(n):
            t = desnanot_jacobi_terms(build_matrix(B00, n, mu=mu))
            lhs = t["det"] * t["interior"]
            rhs = t["nw"] * t["se"] - t["ne"] * t["sw"]
            return _result(n, [] if lhs == rhs else [Witness("dj", n, rhs, lhs)])

        return _run("quotient_dj", B00.name, mu, range(max(n_min, 2), n_max + 1), task, jobs)

    def task(n):
        ws = []
        for tag, top, mid in (("odd", 2 * n + 1, 2 * n), ("even", 2 * n, 2 * n - 1)):
            lhs = _b(1, 1, top, mu) * _b(0, 1, mid, mu) * _b(1, 0, mid, mu)
            rhs = -_b(0, 1, top, mu) * _b(1, 0, top, mu) * _b(1, 1, top - 2, mu)
            if lhs != rhs:
                ws.append(Witness(tag, n, rhs, lhs))
        return _result(n, ws)

    return _run("quotient", B11.name, mu, range(n_min, n_max + 1), task, jobs)


# --- determinant-level suites --------------------------------------------------


def verify_desnanot_jacobi(spec: FamilySpec, n_max: int, mu=None, n_min: int = 2,
                           jobs=None) -> VerificationReport:
    def task(n):
        t = desnanot_jacobi_terms(build_matrix(spec, n, mu=mu))
        lhs = t["det"] * t["interior"]
        rhs = t["nw"] * t["se"] - t["ne"] * t["sw"]
        return _result(n, [] if lhs == rhs else [Witness("dj", n, rhs, lhs)])

    return _run("dj", spec.name, mu, range(n_min, n_max + 1), task, jobs)


def verify_null_certificate(n_max: int, mu=None, n_min: int = 1, jobs=None) -> VerificationReport:
    """``b_{2n-1}(0,0) = 0`` shown by an explicit null vector, and
    ``b_{2n}(0,0) = -b_{2n-1}(1,1)``."""

    def task(n):
        ws = []
        M = build_matrix(B00, 2 * n - 1, mu=mu)
        basis = nullspace(M)
        if len(basis) != 1:
            ws.append(Witness("nullity", (n, 2 * n - 1), 1, len(basis)))
        if basis:
            v = basis[0]
            prod = mat_vec(M, v)
            bad = [i for i, x in enumerate(prod) if x]
            if bad or not any(v):
                ws.append(Witness("null_vector", (n, 2 * n - 1), 0, prod[bad[0]] if bad else 0))
        d_odd = determinant(M)
        if d_odd:
            ws.append(Witness("odd_zero", n, 0, d_odd))
        even = determinant(build_matrix(B00, 2 * n, mu=mu))
        target = -determinant(build_matrix(B11, 2 * n - 1, mu=mu))
        if even != target:
            ws.append(Witness("even_relation", n, target, even))
        return _result(n, ws)

    return _run("nullcert", B00.name, mu, range(n_min, n_max + 1), task, jobs)


# closed forms that evaluate a determinant directly: (family, evaluator, domain)
_DIRECT = {
    "thm35": (B11, cf.thm35_value, lambda n: n >= 0),
    "b01": (B01, cf.b01_value, lambda n: n >= 0),
    "b10": (B10, cf.b10_value, lambda n: n >= 0),
    "thm36": (T36, cf.thm36_value, lambda n: n >= 1 and n % 2 == 1),
    "conj34": (ANDREWS, cf.conj34_value, lambda n: n >= 1),
}


def _det(M: SymMatrix, certify: bool):
    if certify and M.symbolic:
        return determinant_interpolated(M)
    return determinant(M)


def verify_closed_form(name: str, n_max: int, mu=None, n_min: int = 0, certify: bool = False,
                       matrix=None, jobs=None) -> VerificationReport:
    """``det(family, n) == closed form`` for every n in range (n outside the
    closed form's domain is skipped).  ``certify`` computes symbolic
    determinants by evaluation at degree-bound-many points and interpolation."""
    spec, form, domain = _DIRECT[name]
    ns = [n for n in range(n_min, n_max + 1) if domain(n)]

    build = matrix or _default_matrix(spec, mu)

    def task(n):
        det = _det(build(n), certify)
        val = form(n, _mu_value(mu))
        return _result(n, [] if det == val else [Witness(name, n, val, det)])

    return _run(name, spec.name, mu, ns, task, jobs)


def verify_thm34(n_max: int, mu=None, n_min: int = 1, certify: bool = False,
                 jobs=None) -> VerificationReport:
    """``det(A, 2n) / det(A, 2n-1)`` for the Andrews matrices against the
    closed-form quotient, checked as ``det(2n) = q * det(2n-1)``."""

    def task(n):
        top = _det(build_matrix(ANDREWS, 2 * n, mu=mu), certify)
        bottom = _det(build_matrix(ANDREWS, 2 * n - 1, mu=mu), certify)
        q = cf.thm34_quotient(n, _mu_value(mu))
        lhs = MuRat(top) if isinstance(top, MuPoly) else top
        rhs = q * bottom
        return _result(n, [] if lhs == rhs else [Witness("thm34", n, rhs, lhs)])

    return _run("thm34", ANDREWS.name, mu, range(n_min, n_max + 1), task, jobs)


def _suite_dj(n_max, mu=None, jobs=None):
    return verify_desnanot_jacobi(B11, n_max, mu=mu, jobs=jobs)


SUITES = {
    "thm34": lambda n_max, mu=None, jobs=None: verify_thm34(n_max, mu=mu, jobs=jobs),
    "thm35": lambda n_max, mu=None, jobs=None: verify_closed_form("thm35", n_max, mu=mu, jobs=jobs),
    "b01": lambda n_max, mu=None, jobs=None: verify_closed_form("b01", n_max, mu=mu, jobs=jobs),
    "b10": lambda n_max, mu=None, jobs=None: verify_closed_form("b10", n_max, mu=mu, jobs=jobs),
    "thm36": lambda n_max, mu=None, jobs=None: verify_closed_form("thm36", n_max, mu=mu, jobs=jobs),
    "conj34": lambda n_max, mu=None, jobs=None: verify_closed_form(
        "conj34", n_max, mu=mu, n_min=1, jobs=jobs),
    "dj": _suite_dj,
    "nullcert": lambda n_max, mu=None, jobs=None: verify_null_certificate(n_max, mu=mu, jobs=jobs),
}


def run_suite(name: str, n_max: int, mu=None, jobs=None) -> VerificationReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}") from None
    return suite(n_max, mu=mu, jobs=jobs)
