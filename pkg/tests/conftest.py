import os
from fractions import Fraction

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def laplace(rows):
    """Determinant by cofactor expansion along the first row (oracle)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = None
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * laplace(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return Fraction(0) if total is None else total


def falling_binomial(top, j):
    """C(top, j) for rational top by the falling-product definition (oracle)."""
    if j < 0:
        return Fraction(0)
    out = Fraction(1)
    for t in range(j):
        out = out * (top - t) / (t + 1)
    return out


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
