"""Guessing and applying linear recurrences with polynomial coefficients.

A recurrence over index variables ``(n, j, ...)`` is a list of terms
``(shift, coeff)``; at a base point ``b`` it reads

    sum_t coeff_t(b, mu) * c[b + shift_t] = 0.

Coefficients are polynomials in the index variables and in ``mu``.  The
guesser sets up the linear system for the unknown rational coefficients
of those polynomials and returns a normalized basis of its nullspace.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd

from holodet.det import kernel as _exact_kernel
from holodet.exact import MU, HolodetError, MuPoly, MuRat, as_fraction, eval_at, poly_gcd
from holodet.report import NResult, VerificationReport, Witness

__all__ = [
    "SYMBOLIC_MU",
    "SPECIALIZED_MU",
    "InsufficientData",
    "NoRecurrenceFound",
    "LeadingCoefficientVanishes",
    "MissingDependency",
    "IndexPoly",
    "Recurrence",
    "AnsatzSpec",
    "guess",
    "apply",
    "extend",
    "consistency_check",
    "load_data",
    "dump_data",
]

SYMBOLIC_MU = "symbolic"
SPECIALIZED_MU = "specialized"
DEFAULT_VARS = ("n", "j", "k", "l")

# Systems with more unknowns than this go through the multi-modular solver.
EXACT_ELIMINATION_LIMIT = 48


class InsufficientData(HolodetError, ValueError):
    pass


class NoRecurrenceFound(HolodetError):
    pass


class LeadingCoefficientVanishes(HolodetError, ArithmeticError):
    pass


class MissingDependency(HolodetError, KeyError):
    pass


def _key(k) -> tuple:
    return (k,) if isinstance(k, int) else tuple(k)


# ---------------------------------------------------------------------------
# multivariate coefficient polynomials


class IndexPoly:
    """Polynomial in the index variables and mu with rational coefficients.

    Stored as ``{exponents: Fraction}`` where ``exponents`` has one entry per
    index variable followed by the exponent of mu.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars: int):
        self.nvars = nvars
        self.terms = {tuple(e): as_fraction(c) for e, c in terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, IndexPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def scale(self, c) -> "IndexPoly":
        return IndexPoly({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __add__(self, other: "IndexPoly") -> "IndexPoly":
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, 0) + v
        return IndexPoly(out, self.nvars)

    @property
    def mu_degree(self) -> int:
        return max((e[-1] for e in self.terms), default=-1)

    def leading(self):
        """Leading (exponents, coefficient) in graded lex order."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def at_index(self, point) -> MuPoly:
        """Specialize the index variables; the result is a polynomial in mu."""
        coeffs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            if v:
                coeffs[e[-1]] = coeffs.get(e[-1], 0) + v
        top = max(coeffs, default=-1)
        return MuPoly([coeffs.get(g, 0) for g in range(top + 1)])

    def __call__(self, point, mu=None):
        p = self.at_index(point)
        if mu is None:
            if p.degree > 0:
                raise ValueError("coefficient depends on mu; give a value")
            return p(0) if p else Fraction(0)
        if isinstance(mu, (MuPoly, MuRat)):
            return p
        return p(as_fraction(mu))

    def to_nested(self):
        """Nested lists indexed by exponents; entries are "p/q" strings."""
        dims = [max((e[i] for e in self.terms), default=0) + 1 for i in range(self.nvars + 1)]

        def build(level, prefix):
            if level == len(dims):
                return str(self.terms.get(tuple(prefix), Fraction(0)))
            return [build(level + 1, prefix + [k]) for k in range(dims[level])]

        return build(0, [])

    @classmethod
    def from_nested(cls, data, nvars: int) -> "IndexPoly":
        terms = {}

        def walk(node, prefix):
            if isinstance(node, list):
                for k, sub in enumerate(node):
                    walk(sub, prefix + (k,))
            else:
                c = Fraction(node)
                if c:
                    terms[prefix] = c

        walk(data, ())
        return cls(terms, nvars)

    def __str__(self):
        if not self.terms:
            return "0"
        names = list(DEFAULT_VARS[: self.nvars]) + ["mu"]
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"{v}^{k}" if k > 1 else v) for v, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class Recurrence:
    vars: tuple
    terms: tuple  # ((shift, IndexPoly), ...), sorted by shift descending
    mu: Fraction | None = None  # set when the recurrence is only valid at one mu

    def __post_init__(self):
        if len(self.terms) < 2:
            raise ValueError("a recurrence needs at least two terms")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def shifts(self) -> tuple:
        return tuple(s for s, _ in self.terms)

    def coefficient(self, shift) -> IndexPoly:
        for s, c in self.terms:
            if s == tuple(shift):
                return c
        raise KeyError(shift)

    @classmethod
    def build(cls, vars, terms, mu=None) -> "Recurrence":
        """Normalize: drop zero terms, clear denominators, divide by the
        content and make the leading coefficient positive."""
        terms = [(tuple(s), c) for s, c in terms if c]
        terms.sort(key=lambda t: t[0], reverse=True)
        den = 1
        num = 0
        for _, c in terms:
            for v in c.terms.values():
                den = den * v.denominator // gcd(den, v.denominator)
        for _, c in terms:
            for v in c.terms.values():
                num = gcd(num, int(v * den))
        factor = Fraction(den, num or 1)
        if terms and terms[0][1].leading()[1] < 0:
            factor = -factor
        terms = tuple((s, c.scale(factor)) for s, c in terms)
        return cls(tuple(vars), terms, None if mu is None else as_fraction(mu))

    def residual(self, data, base, mu=None):
        """Left-hand side at ``base``; ``mu`` defaults to the recurrence's own."""
        mu = self.mu if mu is None else mu
        total = None
        for s, c in self.terms:
            pt = tuple(b + d for b, d in zip(base, s))
            term = _times(c(base, _mu_arg(mu, data[pt])), data[pt])
            total = term if total is None else total + term
        return total

    def bases(self, points) -> list:
        """Base points whose every shifted point lies in ``points``."""
        pts = set(points)
        lo = [min(s[i] for s in self.shifts) for i in range(self.nvars)]
        out = []
        for p in pts:
            base = tuple(x - d for x, d in zip(p, lo))
            if all(tuple(b + d for b, d in zip(base, s)) in pts for s in self.shifts):
                out.append(base)
        return sorted(out)

    def violations(self, data, mu=None) -> list:
        """Base points of ``data`` at which the recurrence does not vanish."""
        return [b for b in self.bases(data) if self.residual(data, b, mu)]

    def annihilates(self, data, mu=None) -> bool:
        return not self.violations(data, mu)

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"shift": list(s), "coeff": c.to_nested()} for s, c in self.terms],
            "mu": None if self.mu is None else str(self.mu),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d) -> "Recurrence":
        nv = len(d["vars"])
        terms = [(tuple(t["shift"]), IndexPoly.from_nested(t["coeff"], nv)) for t in d["terms"]]
        terms.sort(key=lambda t: t[0], reverse=True)
        mu = d.get("mu")
        return cls(tuple(d["vars"]), tuple(terms), None if mu is None else Fraction(mu))

    def __str__(self):
        parts = []
        for s, c in self.terms:
            idx = ",".join(
                v if not k else f"{v}{k:+d}" for v, k in zip(self.vars, s)
            )
            parts.append(f"({c})*c[{idx}]")
        return " + ".join(parts) + " = 0"


def _mu_arg(mu, value):
    if mu is not None:
        return mu
    if isinstance(value, (MuPoly, MuRat)):
        return MU
    return None


def _times(coeff, value):
    if isinstance(coeff, MuPoly):
        if isinstance(value, (MuPoly, MuRat)):
            return coeff * value
        return coeff * as_fraction(value)
    return coeff * value


# ---------------------------------------------------------------------------
# ansatz and guessing


@dataclass(frozen=True)
class AnsatzSpec:
    """Search space: which shifts appear and how large the coefficient
    polynomials may be.

    ``degree_bounds`` maps each index variable name, and ``"mu"``, to a
    maximal degree; ``total_degree`` optionally caps the total degree of a
    monomial.  In ``SPECIALIZED_MU`` mode with ``points``, symbolic data is
    evaluated at those mu values and one system is built from all of them,
    mu entering as an ordinary coefficient variable.
    """

    support: tuple
    degree_bounds: dict = field(default_factory=dict)
    total_degree: int | None = None
    mode: str = SPECIALIZED_MU
    points: tuple = ()
    vars: tuple | None = None

    def __post_init__(self):
        support = tuple(sorted({_key(s) for s in self.support}, reverse=True))
        if not support:
            raise ValueError("empty support")
        if len({len(s) for s in support}) != 1:
            raise ValueError("shift vectors of different lengths")
        object.__setattr__(self, "support", support)
        if any(v < 0 for v in self.degree_bounds.values()):
            raise ValueError("degree bounds must be nonnegative")
        if self.mode not in (SYMBOLIC_MU, SPECIALIZED_MU):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "points", tuple(as_fraction(p) for p in self.points))
        if self.vars is None:
            object.__setattr__(self, "vars", DEFAULT_VARS[: len(support[0])])
        if len(self.vars) != len(support[0]):
            raise ValueError("vars and shift length differ")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def monomials(self) -> list:
        bounds = [self.degree_bounds.get(v, 0) for v in self.vars]
        bounds.append(self.degree_bounds.get("mu", 0))
        out = []
        for e in itertools.product(*(range(b + 1) for b in bounds)):
            if self.total_degree is None or sum(e) <= self.total_degree:
                out.append(e)
        return out

    def unknowns(self) -> list:
        return [(s, e) for s in self.support for e in self.monomials()]

    def to_json(self):
        return {
            "support": [list(s) for s in self.support],
            "degree_bounds": dict(self.degree_bounds),
            "total_degree": self.total_degree,
            "mode": self.mode,
            "points": [str(p) for p in self.points],
            "vars": list(self.vars),
        }

    @classmethod
    def from_json(cls, d) -> "AnsatzSpec":
        return cls(
            support=tuple(tuple(s) for s in d["support"]),
            degree_bounds=dict(d.get("degree_bounds", {})),
            total_degree=d.get("total_degree"),
            mode=d.get("mode", SPECIALIZED_MU),
            points=tuple(Fraction(p) for p in d.get("points", ())),
            vars=tuple(d["vars"]) if d.get("vars") else None,
        )


def _datasets(data, ansatz: AnsatzSpec):
    """Split input into ``[(mu or None, {point: value})]``."""
    if not data:
        raise InsufficientData("no data")
    first = next(iter(data))
    if not isinstance(first, (tuple, int)):
        # already specialized: {mu: {point: value}}
        return [
            (as_fraction(m), {_key(k): v for k, v in d.items()})
            for m, d in sorted(data.items(), key=lambda kv: as_fraction(kv[0]))
        ]
    data = {_key(k): v for k, v in data.items()}
    if ansatz.mode == SYMBOLIC_MU:
        return [(None, data)]
    if ansatz.points:
        out = []
        for m in ansatz.points:
            out.append((m, {k: eval_at(v, m) for k, v in data.items()}))
        return out
    if any(isinstance(v, (MuPoly, MuRat)) and not _is_const(v) for v in data.values()):
        raise ValueError("symbolic data needs SYMBOLIC_MU mode or specialization points")
    return [(None, {k: _const(v) for k, v in data.items()})]


def _is_const(v) -> bool:
    if isinstance(v, MuRat):
        return v.is_polynomial() and v.as_poly().degree <= 0
    return v.degree <= 0


def _const(v) -> Fraction:
    if isinstance(v, MuRat):
        v = v.as_poly()
    if isinstance(v, MuPoly):
        return v(0)
    return as_fraction(v)


def _lcm_poly(a: MuPoly, b: MuPoly) -> MuPoly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def _equations(ansatz: AnsatzSpec, mu, values: dict, base, unknowns) -> list:
    """Rows contributed by one base point (several for symbolic data)."""
    shifts = ansatz.support
    pts = [tuple(b + d for b, d in zip(base, s)) for s in shifts]
    vals = dict(zip(shifts, (values[p] for p in pts)))
    if mu is None and any(isinstance(v, (MuPoly, MuRat)) for v in vals.values()):
        # symbolic: clear denominators, one row per power of mu
        rats = {s: (v if isinstance(v, MuRat) else MuRat(v)) for s, v in vals.items()}
        den = MuPoly([1])
        for r in rats.values():
            den = _lcm_poly(den, r.den)
        polys = {s: r.num * den.exact_div(r.den) for s, r in rats.items()}
        top = max(p.degree for p in polys.values()) + ansatz.degree_bounds.get("mu", 0)
        rows = [[Fraction(0)] * len(unknowns) for _ in range(top + 1)]
        for col, (s, e) in enumerate(unknowns):
            mono = Fraction(1)
            for x, k in zip(base, e):
                mono *= x**k
            if not mono:
                continue
            for g, c in enumerate(polys[s].coeffs):
                if c:
                    rows[g + e[-1]][col] += mono * c
        return [r for r in rows if any(r)]
    row = []
    for s, e in unknowns:
        v = vals[s]
        if not v:
            row.append(Fraction(0))
            continue
        mono = Fraction(1)
        for x, k in zip(base, e):
            mono *= x**k
        if e[-1]:
            mono *= mu ** e[-1]
        row.append(mono * v)
    return [row]


def _kernel(rows, ncols):
    if ncols <= EXACT_ELIMINATION_LIMIT:
        return _exact_kernel(rows, ncols)
    from holodet._modular import kernel_modular

    return kernel_modular(rows, ncols)


def _hold_out_split(sources):
    """Keep the first 80% of base points (sorted) for the system."""
    sources = sorted(sources, key=lambda t: (t[1], t[0] is not None, t[0] or 0))
    k = ceil(len(sources) * 0.2)
    if len(sources) - k < 1 or k < 1:
        raise InsufficientData("too few base points to hold any out")
    return sources[: len(sources) - k], sources[len(sources) - k :]


def guess(data, ansatz: AnsatzSpec) -> list:
    """Return a normalized basis of recurrences annihilating ``data``.

    ``data`` maps index tuples to values (Fractions or MuRat), or maps mu
    values to such dictionaries.  At least 20% of the base points are kept
    out of the linear system; the surviving solution space is cut down by
    them and every returned recurrence is checked exactly on all data.
    """
    sets = _datasets(data, ansatz)
    probe = Recurrence(
        ansatz.vars, tuple((s, IndexPoly({}, ansatz.nvars)) for s in ansatz.support)
    ) if len(ansatz.support) >= 2 else None
    if probe is None:
        raise ValueError("a recurrence needs at least two shifts")
    sources = [(mu, b) for mu, d in sets for b in probe.bases(d)]
    train, held = _hold_out_split(sources)
    unknowns = ansatz.unknowns()
    by_mu = dict(sets)
    rows = []
    for mu, b in train:
        rows.extend(_equations(ansatz, mu, by_mu[mu], b, unknowns))
    if len(rows) < 2 * len(unknowns):
        raise InsufficientData(
            f"{len(rows)} equations for {len(unknowns)} unknowns; need a factor 2"
        )
    basis = _kernel(rows, len(unknowns))
    if not basis:
        raise NoRecurrenceFound("empty nullspace")
    # restrict to the part of the solution space that also fits held-out data
    held_rows = []
    for mu, b in held:
        held_rows.extend(_equations(ansatz, mu, by_mu[mu], b, unknowns))
    if held_rows:
        proj = [[sum((r[i] * v[i] for i in range(len(r)) if r[i] and v[i]), Fraction(0))
                 for v in basis] for r in held_rows]
        proj = [p for p in proj if any(p)]
        if proj:
            combos = _exact_kernel(proj, len(basis))
            basis = [
                [sum((c[k] * basis[k][i] for k in range(len(basis)) if c[k]), Fraction(0))
                 for i in range(len(unknowns))]
                for c in combos
            ]
            if basis:
                basis = _rref_rows(basis, len(unknowns))
    if not basis:
        raise NoRecurrenceFound("every candidate failed held-out data")
    point = None
    if len(sets) == 1 and sets[0][0] is not None and ansatz.degree_bounds.get("mu", 0) == 0:
        point = sets[0][0]
    recs = []
    for vec in basis:
        terms = []
        for s in ansatz.support:
            poly = {e: vec[k] for k, (ss, e) in enumerate(unknowns) if ss == s and vec[k]}
            terms.append((s, IndexPoly(poly, ansatz.nvars)))
        if sum(1 for _, c in terms if c) < 2:
            continue
        rec = Recurrence.build(ansatz.vars, terms, mu=point)
        if all(rec.annihilates(d, mu) for mu, d in sets):
            recs.append(rec)
    if not recs:
        raise NoRecurrenceFound("every candidate failed held-out data")
    return recs


def _rref_rows(vectors, ncols):
    """Canonical basis of the span of ``vectors`` (reduced echelon rows)."""
    rows = [list(v) for v in vectors]
    out = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    out = rows[:r]
    # order like the kernel basis: by the position of the last nonzero entry
    out.sort(key=lambda v: max(i for i, x in enumerate(v) if x))
    return out


# ---------------------------------------------------------------------------
# applying recurrences


def apply(rec: Recurrence, known, frontier, mu=None, solve_for=None):
    """Value at ``frontier`` forced by ``rec`` and the ``known`` values.

    The recurrence is used at the base point that puts ``frontier`` on one
    of its terms while all other terms are known.  ``solve_for`` picks the
    term by its shift; by default the first usable term in shift order is
    taken.
    """
    frontier = _key(frontier)
    known = known if all(isinstance(k, tuple) for k in known) else {_key(k): v for k, v in known.items()}
    mu = rec.mu if mu is None else mu
    candidates = [solve_for] if solve_for is not None else [s for s, _ in rec.terms]
    vanished = None
    for target in candidates:
        target = _key(target)
        base = tuple(f - d for f, d in zip(frontier, target))
        others = [(s, c) for s, c in rec.terms if s != target]
        pts = [tuple(b + d for b, d in zip(base, s)) for s, _ in others]
        if not all(p in known for p in pts):
            continue
        sample = known[pts[0]]
        m = _mu_arg(mu, sample)
        lead = rec.coefficient(target)(base, m)
        if not lead:
            vanished = (target, base)
            continue
        total = None
        for (s, c), p in zip(others, pts):
            term = _times(c(base, m), known[p])
            total = term if total is None else total + term
        if isinstance(lead, MuPoly) or isinstance(total, (MuPoly, MuRat)):
            return -MuRat(total) / lead if not isinstance(total, MuRat) else -total / lead
        return -total / lead
    if vanished is not None:
        raise LeadingCoefficientVanishes(
            f"coefficient of shift {vanished[0]} vanishes at base {vanished[1]}"
        )
    raise MissingDependency(f"no term of the recurrence can reach {frontier} from known data")


def extend(recs, known, targets, mu=None) -> dict:
    """Fill ``targets`` (in the given order) using the first applicable recurrence.

    Points that no recurrence can reach are left out of the result.
    """
    values = {_key(k): v for k, v in known.items()}
    out = {}
    for t in targets:
        t = _key(t)
        if t in values:
            continue
        for rec in recs:
            try:
                v = apply(rec, values, t, mu=mu)
            except (MissingDependency, LeadingCoefficientVanishes):
                continue
            values[t] = v
            out[t] = v
            break
    return out


def consistency_check(recs, data, targets=None, mu=None, family: str = "data") -> VerificationReport:
    """Cross-check recurrences on ``data`` and on extensions beyond it.

    Every recurrence must vanish on the data.  Then the ``targets`` are
    filled once per recurrence ordering; any point reached along two
    orders with different values is a failure.  Results are grouped by
    the first index.
    """
    if len(recs) < 2:
        raise ValueError("need at least two recurrences")
    data = {_key(k): v for k, v in data.items()}
    report = VerificationReport("consistency", family, mu="symbolic" if mu is None else str(mu))
    per_n: dict[int, list] = {}
    for r_i, rec in enumerate(recs):
        for b in rec.bases(data):
            res = rec.residual(data, b, mu)
            if res:
                per_n.setdefault(b[0], []).append(Witness(f"rec{r_i}", b, 0, res))
    seen_n = {k[0] for k in data}
    if targets:
        targets = [_key(t) for t in targets]
        seen_n |= {t[0] for t in targets}
        runs = []
        for order in itertools.permutations(range(len(recs))):
            runs.append(extend([recs[i] for i in order], data, targets, mu=mu))
            if len(runs) >= 6:
                break
        for t in targets:
            vals = [run[t] for run in runs if t in run]
            for v in vals[1:]:
                if v != vals[0]:
                    per_n.setdefault(t[0], []).append(Witness("order", t, vals[0], v))
                    break
        # single-recurrence extensions, where each recurrence can go alone
        solo = [extend([rec], data, targets, mu=mu) for rec in recs]
        for t in targets:
            vals = [s[t] for s in solo if t in s]
            for v in vals[1:]:
                if v != vals[0]:
                    per_n.setdefault(t[0], []).append(Witness("solo", t, vals[0], v))
                    break
    for n in sorted(seen_n):
        ws = per_n.get(n, [])
        report.add(NResult(n, "fail" if ws else "pass", ws))
    return report


# ---------------------------------------------------------------------------
# data files


def dump_data(data) -> str:
    out = {}
    for k, v in data.items():
        key = ",".join(str(x) for x in _key(k))
        out[key] = v.to_json() if isinstance(v, MuRat) else (
            MuRat(v).to_json() if isinstance(v, MuPoly) else str(as_fraction(v))
        )
    return json.dumps(out, sort_keys=True)


def load_data(text: str) -> dict:
    raw = json.loads(text)
    out = {}
    for k, v in raw.items():
        key = tuple(int(x) for x in k.split(","))
        out[key] = MuRat.from_json(v) if isinstance(v, dict) else Fraction(v)
    return out
