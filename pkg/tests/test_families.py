from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holodet.exact import MU, MuPoly, eval_at
from holodet.families import (
    ANDREWS,
    B00,
    B01,
    B10,
    B11,
    T36,
    XIN,
    UnknownFamily,
    build_matrix,
    entry_of,
    lascoux,
    parse_family,
    xin,
)
from conftest import falling_binomial

mus = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def delta(a, b):
    return 1 if a == b else 0


# Independent entry formulas written out per family.
ORACLES = {
    "andrews": (ANDREWS, 1, 1, lambda m, i, j: delta(i, j) + falling_binomial(m + i + j - 2, j)),
    "b11": (B11, 1, 1, lambda m, i, j: -delta(i, j) + falling_binomial(m + i + j - 2, j)),
    "b00": (B00, 0, 0, lambda m, i, j: -delta(i, j) + falling_binomial(m + i + j - 2, j)),
    "b01": (B01, 0, 1, lambda m, i, j: -delta(i, j) + falling_binomial(m + i + j - 2, j)),
    "b10": (B10, 1, 0, lambda m, i, j: -delta(i, j) + falling_binomial(m + i + j - 2, j)),
    "t36": (T36, 1, 1, lambda m, i, j: -delta(i, j) + falling_binomial(m + i + j - 2, j + 1)),
    "lascoux3": (lascoux(3), 1, 1, lambda m, i, j: -delta(i, j + 2) + falling_binomial(m + i + j - 2, j + 2)),
}


@pytest.mark.parametrize("name", sorted(ORACLES))
@given(mu=mus)
def test_matrix_matches_entry_formula(name, mu):
    spec, i0, j0, formula = ORACLES[name]
    M = build_matrix(spec, 4)
    N = build_matrix(spec, 4, mu=mu)
    for r in range(4):
        for c in range(4):
            expected = formula(mu, i0 + r, j0 + c)
            assert eval_at(M[r, c], mu) == expected
            assert N[r, c] == expected


def test_entry_examples():
    assert entry_of(ANDREWS, 1, 1) == MU + 1
    assert entry_of(B00, 0, 0) == MuPoly()
    assert entry_of(T36, 1, 1) == (MU - 2) * (MU + 1) / 2


def test_build_examples():
    assert build_matrix(ANDREWS, 1).entries == ((MU + 1,),)
    M = build_matrix(B00, 2)
    assert [[M[i, j] for j in range(2)] for i in range(2)] == [
        [MuPoly(), MU - 1],
        [MuPoly([1]), MU - 1],
    ]
    assert build_matrix(ANDREWS, 0).n == 0


def test_shifted_origin_identity():
    # T36 with mu equals the b(2,2) family with mu - 2, one step further in.
    shifted = xin(2, 2, mu_shift=-2)
    for i in range(1, 10):
        for j in range(1, 10):
            assert entry_of(T36, i, j) == entry_of(shifted, i + 1, j + 1)


@pytest.mark.parametrize("spec", [ANDREWS, B11, B01, T36, lascoux(3)])
def test_degree_of_entries(spec):
    M = build_matrix(spec, 5)
    for r in range(5):
        for c in range(5):
            j = spec.col_origin + c
            assert M[r, c].degree == j + spec.binom_col_offset


def test_degree_bound_covers_determinant():
    from holodet.det import determinant

    for spec in (ANDREWS, B11, T36):
        for n in range(1, 6):
            assert determinant(build_matrix(spec, n)).degree <= spec.degree_bound(n)


def test_parse_family_names():
    assert parse_family("andrews") is ANDREWS
    assert parse_family("xin") == XIN == B11
    assert parse_family("xin:b00") == B00
    assert parse_family("b10") == B10
    assert parse_family("T36") == T36
    assert parse_family("lascoux:3") == lascoux(3)
    for bad in ("nope", "lascoux:x", "xin:b3"):
        with pytest.raises(UnknownFamily):
            parse_family(bad)


def test_specialize_agrees():
    M = build_matrix(ANDREWS, 3)
    assert M.specialize(Fraction(3, 7)) == build_matrix(ANDREWS, 3, mu=Fraction(3, 7))


def test_matrix_json_shape():
    payload = build_matrix(B11, 2).to_json()
    assert len(payload) == 2 and len(payload[0]) == 2
