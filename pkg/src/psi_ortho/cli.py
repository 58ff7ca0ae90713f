"""Command-line front end: ``psi-ortho {coeffs,classify,table,gram,verify}``.

Results go to stdout as JSON (default) or CSV; diagnostics go to stderr.
Exit codes: 0 success, 2 usage or domain error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from fractions import Fraction

from . import serialize
from .errors import AccuracyError, DomainError, PsiOrthoError
from .families import FamilyId
from .inner_products import DEFAULT_GRAM_TOL, IP_TAGS, InnerProductSpec, gram
from .psi import (CaseKind, PsiParams, classify, convergence_radius, parse_rational,
                  psi_genfunc_sequence, psi_sequence)
from .representations import char_roots, phi_angle
from .verify import SUITES, env_tolerance, run_verify

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 2, 3

_PI_RE = re.compile(r"^\s*(?:(?P<num>[0-9/.]+)\s*\*?\s*)?pi\s*(?:/\s*(?P<den>[0-9.]+))?\s*$")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    """argparse type for ``p/q`` or integer literals."""
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from None


def angle(text: str) -> float:
    """argparse type accepting decimals or multiples of pi such as ``pi/3`` or ``2pi/3``."""
    m = _PI_RE.match(text)
    try:
        if m:
            num = float(Fraction(m["num"])) if m["num"] else 1.0
            den = float(m["den"]) if m["den"] else 1.0
            return num * math.pi / den
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _params(args) -> PsiParams:
    return PsiParams(args.a, args.b, args.c)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# verbs ------------------------------------------------------------------------

def run_coeffs(args) -> int:
    p = _params(args)
    if args.n < 0:
        raise DomainError("n must be nonnegative")
    build = psi_genfunc_sequence if args.method == "genfunc" else psi_sequence
    rows = build(p, args.n)
    if args.format == "csv":
        _emit(serialize.coeff_rows_csv(rows))
    else:
        _emit(serialize.dumps({"params": {"a": p.a, "b": p.b, "c": p.c},
                               "method": args.method, "rows": rows}))
    return EXIT_OK


def run_classify(args) -> int:
    p = _params(args)
    kind = classify(p)
    roots = char_roots(p)
    family = {CaseKind.DOUBLE_ROOT: "laguerre_m1", CaseKind.OSCILLATORY_ROOTS: "mp0",
              CaseKind.REAL_ROOTS: "meixner0"}[kind]
    out = {"params": {"a": p.a, "b": p.b, "c": p.c}, "case": kind,
           "discriminant": p.discriminant, "roots": list(roots.values),
           "roots_exact": roots.exact, "family": family,
           "radius_of_convergence": convergence_radius(p)}
    if kind is CaseKind.OSCILLATORY_ROOTS:
        out["phi"] = phi_angle(p)
    if args.format == "csv":
        _emit(serialize.table_csv(["key", "value"], [[k, v] for k, v in out.items()
                                                      if not isinstance(v, (dict, list))]))
    else:
        _emit(serialize.dumps(out))
    return EXIT_OK


def run_table(args) -> int:
    p = _params(args)
    if args.n < 0:
        raise DomainError("n must be nonnegative")
    xs = args.x
    seq = psi_sequence(p, args.n)
    rows = [[n] + [seq[n](x) for x in xs] for n in range(args.n + 1)]
    if args.format == "csv":
        _emit(serialize.table_csv(["n"] + [f"x={x}" for x in xs], rows))
    else:
        _emit(serialize.dumps({"params": {"a": p.a, "b": p.b, "c": p.c}, "x": xs,
                               "rows": [{"n": r[0], "values": r[1:]} for r in rows]}))
    return EXIT_OK


_DOMAIN = {"laguerre": "lag", "laguerre_m1": "lag", "mp": "mp", "mp0": "mp",
           "meixner": "meix", "meixner0": "meix"}


def _family(args):
    if args.family == "psi":
        if None in (args.a, args.b, args.c):
            raise UsageError("family psi needs --a, --b and --c")
        return _params(args)
    need = {"laguerre": ["alpha"], "mp": ["lam", "phi"], "mp0": ["phi"],
            "meixner": ["beta", "gamma"], "meixner0": ["gamma"]}.get(args.family, [])
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        raise UsageError(f"family {args.family} needs " + ", ".join(f"--{k}" for k in missing))
    params = {k: getattr(args, k) for k in need}
    if "lam" in params:
        params["lam"] = float(params["lam"])
    return FamilyId(args.family, params)


def _inner_product(args, family):
    if args.family == "psi":
        if args.ip is not None:
            raise UsageError("family psi selects its own inner product; drop --ip")
        return None
    if args.ip is None:
        raise UsageError("--ip is required for classical families")
    if not args.ip.startswith(_DOMAIN[args.family]):
        raise UsageError(f"incompatible combination: {args.family} with {args.ip}")
    prm = family.params
    alpha = args.ip_alpha if args.ip_alpha is not None else (
        -1 if args.family == "laguerre_m1" else prm.get("alpha"))
    lam = args.ip_lam if args.ip_lam is not None else (
        0.0 if args.family == "mp0" else prm.get("lam"))
    beta = args.ip_beta if args.ip_beta is not None else (
        0 if args.family == "meixner0" else prm.get("beta"))
    if args.ip == "lag_weight" and (alpha is None or Fraction(alpha).denominator != 1):
        raise DomainError("lag_weight needs an integer alpha >= -1")
    if args.ip == "meix_weight" and (beta is None or Fraction(beta).denominator != 1):
        raise DomainError("meix_weight needs an integer beta >= 0")
    kw = {}
    if args.ip == "lag_weight":
        kw["alpha"] = int(alpha)
    if args.ip.startswith("mp"):
        kw["phi"] = prm["phi"]
    if args.ip == "mp_weight":
        kw["lam"] = float(lam) if lam is not None else None
    if args.ip.startswith("meix"):
        kw["gamma"] = prm["gamma"]
    if args.ip == "meix_weight":
        kw["beta"] = int(beta)
    return InnerProductSpec(args.ip, **kw)


def run_gram(args) -> int:
    family = _family(args)
    ip = _inner_product(args, family)
    tol = env_tolerance() or DEFAULT_GRAM_TOL
    G = gram(family, ip, args.N, start=args.start, tol=tol)
    status = "pass" if G.passed else "fail"
    if args.format == "csv":
        rows = []
        for i, n in enumerate(G.indices):
            for j, m in enumerate(G.indices):
                rows.append([n, m, G.entries[i][j], G.predicted[i][j]])
        _emit(serialize.table_csv(["n", "m", "value", "predicted"], rows))
    else:
        _emit(serialize.dumps({
            "family": G.family, "inner_product": G.inner_product, "indices": G.indices,
            "exact": G.exact, "tolerance": G.tolerance, "entries": G.entries,
            "predicted": G.predicted, "max_deviation": G.max_deviation,
            "symmetry_deviation": G.symmetry_deviation, "status": status, "notes": G.notes}))
    print(f"gram {G.family} / {G.inner_product}: {status} "
          f"(max deviation {float(G.max_deviation):.3g})", file=sys.stderr)
    return EXIT_OK if G.passed else EXIT_FAIL


def run_verify_cmd(args) -> int:
    report = run_verify(args.suite)
    if args.format == "csv":
        rows = [[c.name, c.status, c.mode, c.deviation] for c in report.checks]
        _emit(serialize.table_csv(["name", "status", "mode", "deviation"], rows))
    else:
        _emit(serialize.dumps(report))
    fails = report.failures()
    print(f"verify {report.suite}: {report.status} "
          f"({len(report.checks) - len(fails)}/{len(report.checks)} checks)", file=sys.stderr)
    for c in fails:
        print(f"  FAIL {c.name} (deviation {c.deviation})", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


# parser ---------------------------------------------------------------------

def _add_params(sp, required=True):
    sp.add_argument("--a", type=rational, required=required, help="a = f'(0), nonzero")
    sp.add_argument("--b", type=rational, required=required, help="b = f''(0)/f'(0)")
    sp.add_argument("--c", type=rational, required=required, help="c > 0")


def _add_format(sp):
    sp.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psi-ortho",
        description="Generalized Carlitz polynomials Psi_n(x; a, b, c) and their orthogonality.")
    sub = parser.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("coeffs", help="exact coefficient table of Psi_0..Psi_n")
    _add_params(sp)
    sp.add_argument("--n", type=int, default=5, help="largest degree (default 5)")
    sp.add_argument("--method", choices=("recurrence", "genfunc"), default="recurrence")
    _add_format(sp)
    sp.set_defaults(func=run_coeffs)

    sp = sub.add_parser("classify", help="discriminant case, roots and classical family")
    _add_params(sp)
    _add_format(sp)
    sp.set_defaults(func=run_classify)

    sp = sub.add_parser("table", help="values Psi_k(x) for k=0..n at rational points")
    _add_params(sp)
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--x", type=rational, nargs="+", default=[Fraction(0), Fraction(1)],
                    help="evaluation points (rational literals)")
    _add_format(sp)
    sp.set_defaults(func=run_table)

    sp = sub.add_parser("gram", help="Gram matrix with predicted diagonal")
    sp.add_argument("--family", required=True, choices=FamilyId.TAGS + ("psi",))
    _add_params(sp, required=False)
    sp.add_argument("--alpha", type=rational)
    sp.add_argument("--lam", type=rational)
    sp.add_argument("--phi", type=angle, help="angle, e.g. 1.2, pi/2 or 2pi/3")
    sp.add_argument("--beta", type=rational)
    sp.add_argument("--gamma", type=rational)
    sp.add_argument("--ip", choices=IP_TAGS, help="inner product (omit for --family psi)")
    sp.add_argument("--ip-alpha", type=rational, help="override the weight alpha")
    sp.add_argument("--ip-lam", type=rational, help="override the weight lam")
    sp.add_argument("--ip-beta", type=rational, help="override the weight beta")
    sp.add_argument("--N", "-N", type=int, default=4, help="matrix size")
    sp.add_argument("--start", type=int, default=None,
                    help="first index (default 1 for singular weights, else 0)")
    _add_format(sp)
    sp.set_defaults(func=run_gram)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=SUITES, default="all")
    _add_format(sp)
    sp.set_defaults(func=run_verify_cmd)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"psi-ortho {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"psi-ortho {args.verb}: accuracy failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PsiOrthoError as exc:
        print(f"psi-ortho {args.verb}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
