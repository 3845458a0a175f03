import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holodet import closed_forms as cf
from holodet.det import SingularSubmatrix, determinant
from holodet.exact import MU, MuRat
from holodet.families import ANDREWS, B00, B01, B11, SymMatrix, build_matrix
from holodet.report import VerificationReport
from holodet.verify import (
    QuotientVanishes,
    run_suite,
    seeded_points,
    verify_closed_form,
    verify_double_step,
    verify_even_step,
    verify_first_row,
    verify_null_certificate,
    verify_quotient_derivation,
    verify_single_step,
    verify_thm34,
)


def b01_quotient(n):
    """b_n(0,1) / b_{n-1}(0,1) from the two closed-form quotients."""
    return cf.q_formula(1, (n - 1) // 2) if n % 2 else cf.q_formula(2, n // 2)


def b11_ratio(n):
    return cf.thm35_value(2 * n) / cf.thm35_value(2 * n - 2)


# --- passing suites ------------------------------------------------------------------


def test_single_step_b01():
    rep = verify_single_step(B01, b01_quotient, 10)
    assert rep.passed and rep.range_verified == "1..10"


def test_single_step_base_case():
    # n = 1: the certificate is [1] and the identity reads a_11 = quotient(1)
    rep = verify_single_step(ANDREWS, lambda n: MuRat(MU + 1), 1)
    assert rep.passed


def test_even_step_andrews():
    assert verify_even_step(ANDREWS, cf.thm34_quotient, 6).passed
    assert cf.thm34_quotient(1) == MuRat(MU + 2)


def test_even_step_at_seeded_points():
    for mu in seeded_points(11, 5, 12):
        assert verify_even_step(ANDREWS, cf.thm34_quotient, 12, mu=mu).passed


def test_even_step_degenerate_mu():
    # at mu = -6 the certificate may not exist for some n
    try:
        rep = verify_even_step(ANDREWS, cf.thm34_quotient, 3, mu=Fraction(-6))
    except (SingularSubmatrix, QuotientVanishes):
        return
    assert rep.passed


def test_first_row_target():
    assert verify_first_row(B00, -1, 6).passed


def test_double_step_b11():
    rep = verify_double_step(B11, b11_ratio, 5, n_min=1, size=lambda n: 2 * n)
    assert rep.passed


def test_double_step_two_by_two():
    M = SymMatrix([[Fraction(3), Fraction(1)], [Fraction(4), Fraction(7)]])
    rep = verify_double_step(B11, lambda n: Fraction(17), 2, matrix=lambda size: M)
    assert rep.passed


@pytest.mark.parametrize("seed", range(5))
def test_double_step_random_matrices(seed):
    import random

    rng = random.Random(seed)
    mats = {}
    for n in range(2, 9):
        while True:
            M = SymMatrix([[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)])
            lead = determinant(M.submatrix(range(n - 2), range(n - 2)))
            if lead:
                break
        mats[n] = (M, determinant(M) / lead)
    rep = verify_double_step(B11, lambda n: mats[n][1], 8, matrix=lambda size: mats[size][0])
    assert rep.passed


def test_quotient_derivation():
    assert verify_quotient_derivation(1).passed
    assert verify_quotient_derivation(4).passed
    assert verify_quotient_derivation(8, raw=True).passed


def test_null_certificate():
    assert verify_null_certificate(6).passed


def test_closed_form_suites_small():
    for name, n_max in (("thm35", 8), ("b01", 8), ("b10", 8), ("thm36", 7), ("conj34", 6)):
        assert verify_closed_form(name, n_max).passed, name
    assert verify_thm34(4).passed
    assert verify_thm34(3, certify=True).passed


# --- failing suites carry witnesses -------------------------------------------------


def test_wrong_quotient_fails_at_one():
    rep = verify_single_step(B01, lambda n: b01_quotient(n) * 2, 3)
    assert not rep.passed
    first = rep.failures()[0]
    assert first.n == 1 and first.witnesses
    assert first.witnesses[0].identity == "(3)"


def test_wrong_target_fails():
    rep = verify_first_row(B00, 1, 3)
    assert not rep.passed
    assert all(r.witnesses for r in rep.failures())


def test_vanishing_quotient_is_an_error():
    with pytest.raises(QuotientVanishes):
        verify_single_step(ANDREWS, lambda n: MuRat(0), 1)


def _mutated(spec, size, i, j, mu=None):
    def build(m):
        M = build_matrix(spec, m, mu=mu)
        if m == size:
            M = M.replace_entry(i, j, M[i, j] + 1)
        return M

    return build


# Each mutated matrix is fed to its certificate suite and to the closed-form
# determinant suite of the same family; at least one of them must fail.
SUITE_RUNNERS = {
    "single": lambda n, build: [
        verify_single_step(B01, b01_quotient, n, n_min=n, matrix=build),
        verify_closed_form("b01", n, n_min=n, matrix=build),
    ],
    "even": lambda n, build: [
        verify_even_step(ANDREWS, cf.thm34_quotient, n, n_min=n, matrix=build),
        verify_closed_form("conj34", 2 * n, n_min=2 * n, matrix=build),
    ],
    "first": lambda n, build: [verify_first_row(B00, -1, n, n_min=n, matrix=build)],
    "double": lambda n, build: [
        verify_double_step(B11, b11_ratio, n, n_min=n, size=lambda k: 2 * k, matrix=build),
        verify_closed_form("thm35", 2 * n, n_min=2 * n, matrix=build),
    ],
}
SIZES = {"single": lambda n: n, "even": lambda n: 2 * n, "first": lambda n: 2 * n,
         "double": lambda n: 2 * n}
SPECS = {"single": B01, "even": ANDREWS, "first": B00, "double": B11}


def _caught(suite, n, i, j) -> bool:
    size = SIZES[suite](n)
    try:
        reports = SUITE_RUNNERS[suite](n, _mutated(SPECS[suite], size, i, j))
    except SingularSubmatrix:
        return True  # the mutation broke the induction hypothesis
    failed = [r for r in reports if not r.passed]
    return bool(failed) and all(r.failures()[0].witnesses for r in failed)


@settings(max_examples=40)
@given(st.sampled_from(sorted(SUITE_RUNNERS)), st.integers(1, 3), st.data())
def test_single_entry_mutation_is_caught(suite, n, data):
    size = SIZES[suite](n)
    i = data.draw(st.integers(0, size - 1))
    j = data.draw(st.integers(0, size - 1))
    assert _caught(suite, n, i, j)


def test_mutation_of_corner_entry_needs_determinant_suite():
    # Adding 1 to the (1,1) entry of the b(1,1) matrix leaves the double-step
    # quotient unchanged (the corner cofactors are b(2,2) determinants, whose
    # ratio to b(1,1) is constant), so only the determinant suite notices.
    build = _mutated(B11, 4, 0, 0)
    double, det_suite = SUITE_RUNNERS["double"](2, build)
    assert double.passed
    assert not det_suite.passed


def test_every_single_entry_mutation_is_caught():
    for suite in SUITE_RUNNERS:
        for n in (1, 2):
            size = SIZES[suite](n)
            for i in range(size):
                for j in range(size):
                    assert _caught(suite, n, i, j), (suite, n, i, j)


# --- reports --------------------------------------------------------------------------


def test_report_json_round_trip():
    rep = verify_single_step(B01, lambda n: b01_quotient(n) * 2, 3)
    payload = json.loads(rep.dumps())
    again = VerificationReport.from_json(payload)
    assert again.dumps() == rep.dumps()
    assert set(payload) >= {"suite", "family", "results", "range_verified"}


def test_parallel_matches_serial():
    serial = run_suite("thm35", 8, jobs=1).dumps()
    parallel = run_suite("thm35", 8, jobs=3).dumps()
    assert serial == parallel


def test_seeded_points_skip_degenerate_integers():
    pts = seeded_points(0, 50, 10)
    assert len(set(pts)) == 50
    assert not any(p.denominator == 1 and -42 <= p <= 0 for p in pts)
    assert seeded_points(0, 5, 10) == pts[:5]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("thm99", 3)
