"""End-to-end acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line; the lines are printed in the
terminal summary (and immediately with ``pytest -s``).
"""

import json
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from holodet import closed_forms as cf
from holodet.det import (
    SingularSubmatrix,
    cofactor_vector,
    desnanot_jacobi_check,
    determinant,
)
from holodet.exact import MU, MuPoly, MuRat, PoleAtPoint, binom_poly, poly_gcd, pochhammer
from holodet.families import ANDREWS, B00, B01, B10, B11, SymMatrix, build_matrix, xin
from holodet.guess import AnsatzSpec, NoRecurrenceFound, extend, guess
from holodet.verify import (
    seeded_points,
    verify_closed_form,
    verify_desnanot_jacobi,
    verify_double_step,
    verify_even_step,
    verify_first_row,
    verify_null_certificate,
    verify_single_step,
    verify_thm34,
)

SEED = 20240


def record(k: int, text: str, checks: dict, t0: float):
    ok = all(checks.values())
    bad = [name for name, v in checks.items() if not v]
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {text} ({time.perf_counter() - t0:.1f}s)"
    if bad:
        line += " failing: " + ", ".join(bad)
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


# --- 1: even/odd quotient of the Andrews determinants -------------------------------


def test_criterion_1_andrews_quotient():
    t0 = time.perf_counter()
    checks = {"symbolic n<=6": verify_thm34(6).passed,
              "interpolated n<=12": verify_thm34(12, certify=True).passed}
    for mu in seeded_points(SEED, 5, 12):
        checks[f"mu={mu} n<=12"] = verify_thm34(12, mu=mu).passed
    record(1, "det(A,2n)/det(A,2n-1) equals the closed-form quotient", checks, t0)


# --- 2-4: closed forms of the b(I,J) families -----------------------------------------


def test_criterion_2_b11_closed_form():
    t0 = time.perf_counter()
    checks = {
        "n<=14": verify_closed_form("thm35", 14).passed,
        "n=1 is mu-1": determinant(build_matrix(B11, 1)) == MU - 1,
        "n=2 is -2mu": determinant(build_matrix(B11, 2)) == -2 * MU,
    }
    record(2, "det b(1,1) equals its closed form, 0<=n<=14", checks, t0)


def test_criterion_3_b01_b10_closed_forms():
    t0 = time.perf_counter()
    checks = {"b01 n<=14": verify_closed_form("b01", 14).passed,
              "b10 n<=14": verify_closed_form("b10", 14).passed}
    record(3, "det b(0,1) and det b(1,0) equal their closed forms, 0<=n<=14", checks, t0)


def test_criterion_4_shifted_family_and_q_constancy():
    t0 = time.perf_counter()
    rep = verify_closed_form("thm36", 13)
    checks = {"odd n<=13": rep.passed and [r.n for r in rep.results] == list(range(1, 14, 2))}
    for n in range(1, 5):
        q = MuRat(determinant(build_matrix(B11, 2 * n)), determinant(build_matrix(xin(2, 2), 2 * n - 1)))
        checks[f"q_{n}"] = q == cf.q_const(n) == MuRat(-4, MU + 3)
    record(4, "shifted family closed form (odd n<=13) and q_n = -4/(mu+3), n<=4", checks, t0)


# --- 5: the conjectured product formula ----------------------------------------------


def test_criterion_5_conjectured_formula():
    t0 = time.perf_counter()
    checks = {"symbolic n<=12": verify_closed_form("conj34", 12, n_min=1).passed}
    for mu in seeded_points(SEED + 1, 5, 40):
        checks[f"mu={mu} n<=40"] = verify_closed_form("conj34", 40, mu=mu, n_min=1).passed
    checks["G(4) factored"] = cf.conj_G(4) == MuRat(
        (MU + 34) * (MU**3 + 47 * MU**2 + 954 * MU + 5928))
    record(5, "conjectured product equals det(A,n), symbolic n<=12 and 5 points n<=40", checks, t0)


# --- 6: structural facts of b(0,0) --------------------------------------------------------


def test_criterion_6_null_vectors():
    t0 = time.perf_counter()
    checks = {"n<=6": verify_null_certificate(6).passed}
    record(6, "b(0,0) odd sizes singular with null vector; even = -b(1,1) odd", checks, t0)


# --- 7: certificate suites and single-entry mutation -------------------------------------


def b01_quotient(n):
    return cf.q_formula(1, (n - 1) // 2) if n % 2 else cf.q_formula(2, n // 2)


def b11_ratio(n):
    return cf.thm35_value(2 * n) / cf.thm35_value(2 * n - 2)


def _certificate(suite, n, build):
    if suite == "single":
        return verify_single_step(B01, b01_quotient, n, n_min=n, matrix=build)
    if suite == "even":
        return verify_even_step(ANDREWS, cf.thm34_quotient, n, n_min=n, matrix=build)
    if suite == "first":
        return verify_first_row(B00, -1, n, n_min=n, matrix=build)
    return verify_double_step(B11, b11_ratio, n, n_min=n, size=lambda k: 2 * k, matrix=build)


SUITE_FAMILY = {"single": (B01, 1), "even": (ANDREWS, 2), "first": (B00, 2), "double": (B11, 2)}
DET_FORM = {"single": "b01", "even": "conj34", "double": "thm35"}


def _mutations(suite, n):
    """Outcome of every single-entry mutation of the size being certified:
    'caught', 'singular' (induction hypothesis broken), or 'missed'."""
    spec, scale = SUITE_FAMILY[suite]
    size = scale * n
    out = {}
    for i in range(size):
        for j in range(size):
            def build(m, i=i, j=j):
                M = build_matrix(spec, m)
                return M.replace_entry(i, j, M[i, j] + 1) if m == size else M
            try:
                rep = _certificate(suite, n, build)
            except SingularSubmatrix:
                out[i, j] = "singular"
                continue
            if not rep.passed and rep.failures()[0].witnesses:
                out[i, j] = "caught"
            elif suite in DET_FORM and not verify_closed_form(
                    DET_FORM[suite], size, n_min=size, matrix=build).passed:
                out[i, j] = "det-only"
            else:
                out[i, j] = "missed"
    return out


def test_criterion_7_identity_suites():
    t0 = time.perf_counter()
    checks = {
        "single-step b(0,1) n<=14": verify_single_step(B01, b01_quotient, 14).passed,
        "even-step Andrews n<=6": verify_even_step(ANDREWS, cf.thm34_quotient, 6).passed,
        "first-row target -1 n<=6": verify_first_row(B00, -1, 6).passed,
        "double-step b(1,1) n<=7": verify_double_step(
            B11, b11_ratio, 7, n_min=1, size=lambda k: 2 * k).passed,
    }
    for mu in seeded_points(SEED + 2, 3, 12):
        checks[f"even-step mu={mu} n<=12"] = verify_even_step(
            ANDREWS, cf.thm34_quotient, 12, mu=mu).passed
    for suite in SUITE_FAMILY:
        for n in (1, 2, 3):
            res = _mutations(suite, n)
            checks[f"{suite} n={n} none missed"] = "missed" not in res.values()
            det_only = {k for k, v in res.items() if v == "det-only"}
            # the one known blind spot: the (1,1) entry of b(1,1) at even size
            # leaves the double-step quotient unchanged
            allowed = {(0, 0)} if suite == "double" and n >= 2 else set()
            checks[f"{suite} n={n} blind spots"] = det_only <= allowed
    record(7, "certificate suites pass; single-entry mutations fail with a witness", checks, t0)


# --- 8: condensation -----------------------------------------------------------------------


def test_criterion_8_desnanot_jacobi():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    ok = 0
    for _ in range(200):
        n = rng.randint(2, 8)
        M = SymMatrix([[Fraction(rng.randint(-20, 20)) for _ in range(n)] for _ in range(n)])
        ok += desnanot_jacobi_check(M)
    checks = {"200 random integer matrices": ok == 200}
    for spec in (B00, B01, B10, B11):
        checks[f"{spec.name} n<=8"] = verify_desnanot_jacobi(spec, 8).passed
    record(8, "condensation identity on 200 random matrices and symbolic families n<=8",
           checks, t0)


# --- 9: guessed recurrences reproduce cofactors -------------------------------------------


def _b01_rows(mu, n_max):
    """Normalized cofactors c[n, j] of the odd b(0,1) matrices of size 2n-1."""
    data = {}
    for n in range(1, n_max + 1):
        for j, v in enumerate(cofactor_vector(build_matrix(B01, 2 * n - 1, mu=mu)).values, 1):
            data[n, j] = v
    return data


def test_criterion_9_guesser_round_trip():
    t0 = time.perf_counter()
    points = seeded_points(SEED + 3, 5, 14)
    data = {mu: _b01_rows(mu, 12) for mu in points}
    # along each row, with coefficients polynomial in n, j and mu jointly
    (jrec,) = guess(data, AnsatzSpec(support=[(0, 0), (0, 1), (0, 2)],
                                     degree_bounds={"n": 2, "j": 6, "mu": 4}, total_degree=6))
    # the entry next to the last one, as a sequence in n
    diag = {mu: {(n,): d[n, 2 * n - 2] for n in range(2, 13)} for mu, d in data.items()}
    (drec,) = guess(diag, AnsatzSpec(support=[(1,), (0,)], degree_bounds={"n": 1, "mu": 1}))
    checks = {}
    fresh = seeded_points(SEED + 4, 1, 14)[0]
    for mu in points + [fresh]:
        for n in (13, 14):
            start = {(2,): -(mu + 1) / 2}
            d = extend([drec], start, [(m,) for m in range(3, n + 1)], mu=mu)
            row = {(n, 2 * n - 1): Fraction(1), (n, 2 * n - 2): d[n,]}
            row.update(extend([jrec], row, [(n, j) for j in range(2 * n - 3, 0, -1)], mu=mu))
            direct = cofactor_vector(build_matrix(B01, 2 * n - 1, mu=mu)).values
            checks[f"mu={mu} n={n}"] = [row[n, j] for j in range(1, 2 * n)] == list(direct)
    rng = random.Random(SEED)
    noise = {(n,): Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 99)) for n in range(40)}
    try:
        guess(noise, AnsatzSpec(support=[(2,), (1,), (0,)], degree_bounds={"n": 3}))
        checks["random data"] = False
    except NoRecurrenceFound:
        checks["random data"] = True
    record(9, "guessed b(0,1) cofactor recurrences reproduce n=13,14; noise has none",
           checks, t0)


# --- 10: arithmetic properties -----------------------------------------------------------------


def _random_murat(rng):
    def poly():
        return MuPoly([Fraction(rng.randint(-30, 30), rng.randint(1, 12))
                       for _ in range(rng.randint(0, 5))])

    den = poly()
    while den.is_zero():
        den = poly()
    return MuRat(poly(), den)


def test_criterion_10_arithmetic_properties():
    t0 = time.perf_counter()
    pascal = all(binom_poly(k, j) == binom_poly(k - 1, j) + binom_poly(k - 1, j - 1)
                 for k in range(-5, 6) for j in range(0, 11))
    comp = True
    rng = random.Random(SEED)
    xs = [MU, (MU + 3) / 2] + [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(30)]
    for x in xs:
        for a in range(-4, 5):
            for b in range(-4, 5):
                try:
                    comp &= pochhammer(x, a + b) == pochhammer(x, a) * pochhammer(x + a, b)
                except PoleAtPoint:
                    pass
    trips = True
    for _ in range(500):
        r = _random_murat(rng)
        canon = r.den.leading_coeff() == 1 and (r.num.is_zero() or poly_gcd(r.num, r.den).degree == 0)
        scale = MuPoly([rng.randint(1, 9), rng.randint(-9, 9)])
        trips &= canon and MuRat.from_json(json.loads(json.dumps(r.to_json()))) == r
        trips &= MuRat(r.num * scale, r.den * scale) == r
    checks = {"Pascal grid": pascal, "Pochhammer composition": comp, "MuRat round trips": trips}
    record(10, "Pascal grid, Pochhammer composition, canonical MuRat round trips", checks, t0)
