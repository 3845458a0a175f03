"""Command-line front end.

    holodet det --family andrews --n 4
    holodet verify --suite thm36 --n-max 7 --output json
    holodet guess --input data.json --ansatz ansatz.json

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from holodet import closed_forms as cf
from holodet.det import FIRST, LAST, cofactor_vector, desnanot_jacobi_terms, determinant
from holodet.exact import MU, HolodetError, MuPoly, MuRat
from holodet.families import UnknownFamily, build_matrix, entry_of, parse_family
from holodet.guess import AnsatzSpec, InsufficientData, NoRecurrenceFound, guess, load_data
from holodet.report import VerificationReport, value_to_json
from holodet.verify import SUITES, run_suite, seeded_points

COMMANDS = ("det", "entry", "cofactors", "verify", "guess", "condense", "closedform")


class UsageError(Exception):
    pass


def parse_mu(text: str | None):
    """``None``/"symbolic" -> None, otherwise a Fraction."""
    if text is None or text.strip().lower() in ("symbolic", "mu", ""):
        return None
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse mu value {text!r}") from None


def _mu_points(args) -> list:
    """The mu values a command runs at: symbolic, one value, or seeded ones."""
    text = (args.mu or "symbolic").strip().lower()
    if text.startswith("seeded"):
        _, _, count = text.partition(":")
        try:
            k = int(count) if count else 5
        except ValueError:
            raise UsageError(f"bad seeded count in {args.mu!r}") from None
        return seeded_points(args.seed, k, getattr(args, "n_max", None) or args.n or 0)
    return [parse_mu(args.mu)]


def _show(v) -> str:
    if isinstance(v, MuPoly):
        return str(v)
    return str(v)


def _jsonable(v):
    return value_to_json(v)


def _emit(args, text: str, payload) -> None:
    if args.output == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


def _family(args):
    try:
        return parse_family(args.family or "andrews")
    except UnknownFamily as e:
        raise UsageError(str(e)) from None


def cmd_det(args) -> int:
    _need(args, "n")
    spec = _family(args)
    mu = parse_mu(args.mu)
    d = determinant(build_matrix(spec, args.n, mu=mu))
    _emit(args, _show(d), {"family": spec.name, "n": args.n, "mu": args.mu or "symbolic",
                           "det": _jsonable(d)})
    return 0


def cmd_entry(args) -> int:
    _need(args, "n")
    spec = _family(args)
    mu = parse_mu(args.mu)
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None:
            raise UsageError("--i and --j go together")
        v = entry_of(spec, args.i, args.j, mu)
        _emit(args, _show(v), {"family": spec.name, "i": args.i, "j": args.j, "entry": _jsonable(v)})
        return 0
    M = build_matrix(spec, args.n, mu=mu)
    _emit(args, str(M), {"family": spec.name, "n": args.n, "matrix": M.to_json()})
    return 0


def cmd_cofactors(args) -> int:
    _need(args, "n")
    spec = _family(args)
    mu = parse_mu(args.mu)
    mode = FIRST if args.mode == "first" else LAST
    c = cofactor_vector(build_matrix(spec, args.n, mu=mu), mode)
    text = "\n".join(f"c[{args.n},{j + 1}] = {_show(v)}" for j, v in enumerate(c.values))
    _emit(args, text, {"family": spec.name, **c.to_json()})
    return 0


def cmd_condense(args) -> int:
    _need(args, "n")
    spec = _family(args)
    mu = parse_mu(args.mu)
    t = desnanot_jacobi_terms(build_matrix(spec, args.n, mu=mu))
    holds = t["det"] * t["interior"] == t["nw"] * t["se"] - t["ne"] * t["sw"]
    names = ("det", "interior", "nw", "se", "ne", "sw")
    text = "\n".join(f"{k:8s} {_show(t[k])}" for k in names)
    text += f"\nidentity {'holds' if holds else 'FAILS'}"
    payload = {k: _jsonable(t[k]) for k in names}
    payload.update({"family": spec.name, "n": args.n, "holds": holds})
    _emit(args, text, payload)
    return 0 if holds else 1


def cmd_closedform(args) -> int:
    _need(args, "n")
    form = args.form or args.suite
    if form is None:
        raise UsageError("--form is required for closedform")
    mu = parse_mu(args.mu)
    try:
        v = cf.evaluate(form, args.n, MU if mu is None else mu)
    except (KeyError, ValueError) as e:
        raise UsageError(str(e)) from None
    _emit(args, _show(v), {"form": form, "n": args.n, "mu": args.mu or "symbolic",
                           "value": _jsonable(v)})
    return 0


def cmd_verify(args) -> int:
    if args.suite is None:
        raise UsageError(f"--suite is required; one of {', '.join(sorted(SUITES))}")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; one of {', '.join(sorted(SUITES))}")
    n_max = args.n_max if args.n_max is not None else args.n
    if n_max is None:
        raise UsageError("--n-max is required for verify")
    reports = [run_suite(args.suite, n_max, mu=m, jobs=args.jobs) for m in _mu_points(args)]
    ok = all(r.passed for r in reports)
    if args.output == "json":
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        _emit(args, "", payload)
    else:
        _emit(args, "\n".join(r.render() for r in reports), None)
    return 0 if ok else 1


def cmd_guess(args) -> int:
    _need(args, "input", "ansatz")
    try:
        with open(args.input, encoding="utf-8") as fh:
            data = load_data(fh.read())
        with open(args.ansatz, encoding="utf-8") as fh:
            ansatz = AnsatzSpec.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot read guess input: {e}") from None
    try:
        recs = guess(data, ansatz)
    except InsufficientData as e:
        raise UsageError(str(e)) from None
    except NoRecurrenceFound as e:
        _emit(args, f"no recurrence found: {e}", {"recurrences": [], "reason": str(e)})
        return 1
    _emit(args, "\n".join(str(r) for r in recs), {"recurrences": [r.to_json() for r in recs]})
    return 0


HANDLERS = {
    "det": cmd_det,
    "entry": cmd_entry,
    "cofactors": cmd_cofactors,
    "verify": cmd_verify,
    "guess": cmd_guess,
    "condense": cmd_condense,
    "closedform": cmd_closedform,
}


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holodet", description="Exact binomial determinant toolkit.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--family", default="andrews",
                   help="andrews, xin (= xin:b11), xin:bIJ, t36, lascoux:r")
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--n-max", dest="n_max", type=_nonneg)
    p.add_argument("--mu", default="symbolic",
                   help="'symbolic', a rational such as 7/2, or 'seeded[:K]'")
    p.add_argument("--suite", help=", ".join(sorted(SUITES)))
    p.add_argument("--form", help="closed form id, e.g. thm35, b01, conj34, q1")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $HOLODET_JOBS or 1)")
    p.add_argument("--input", help="guess data file (JSON map 'n,j' -> value)")
    p.add_argument("--ansatz", help="guess ansatz file (JSON)")
    p.add_argument("--mode", choices=("last", "first"), default="last")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.jobs is None and os.environ.get("HOLODET_JOBS"):
        try:
            args.jobs = int(os.environ["HOLODET_JOBS"])
        except ValueError:
            print("holodet: HOLODET_JOBS must be an integer", file=sys.stderr)
            return 2
    try:
        return HANDLERS[args.command](args)
    except UsageError as e:
        print(f"holodet: {e}", file=sys.stderr)
        return 2
    except HolodetError as e:
        print(f"holodet: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
