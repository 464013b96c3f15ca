"""Command-line front end: lattice, check, scan, bounds.

Exit codes: 0 pass, 1 mathematical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .certificates import Certificate
from .enumeration import IllPosedQueryError, discriminant_certificate
from .k3 import certify_very_ample, find_ulrich_line_bundles
from .lattice import A, B, H, ParameterError, build_k3_lattice, determinant, inertia, is_even
from .rank2 import chern_bounds
from .report import scan_rank2

log = logging.getLogger("k3ulrich")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _lattice(a: int, u: int):
    try:
        return build_k3_lattice(a, u)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def cmd_lattice(args) -> int:
    L = _lattice(args.a, args.u)
    sig = inertia(L)
    lines = [f"lattice a={args.a} u={args.u} (basis h, A, B)"]
    lines += ["  [" + " ".join(f"{v:>6}" for v in row) + " ]" for row in L.gram]
    lines.append(f"det: {determinant(L.gram)}")
    lines.append(f"even: {str(is_even(L)).lower()}")
    lines.append(f"signature: ({sig.positive},{sig.negative}) zero={sig.zero}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_PASS if tuple(sig) == (1, 2, 0) else EXIT_FAIL


def _very_ample(L) -> Certificate:
    try:
        return certify_very_ample(L).to_certificate()
    except IllPosedQueryError as exc:
        return Certificate("very-ample", {"a": L.a, "u": L.u}, "fail",
                           subchecks=[{"name": "well_posed", "passed": False, "error": str(exc)}])


def _ulrich_lines(L) -> Certificate:
    va = _very_ample(L)
    if not va.passed:
        return Certificate("ulrich-lines", {"a": L.a, "u": L.u}, "fail",
                           subchecks=[{"name": "very_ample", "passed": False}])
    certs = find_ulrich_line_bundles(L)
    certified = {c.cls for c in certs if c.passed}
    core = [A, B, 3 * H - A, 3 * H - B]
    ok = all(D in certified for D in core)
    return Certificate(
        "ulrich-lines",
        {"a": L.a, "u": L.u},
        "pass" if ok else "fail",
        witnesses=[c.to_dict() for c in certs],
        subchecks=[
            {"name": "very_ample", "passed": True},
            {"name": "core_classes_certified", "passed": ok,
             "classes": [D.label() for D in core]},
        ],
    )


def cmd_check(args) -> int:
    L = _lattice(args.a, args.u)
    if args.check == "very-ample":
        cert = _very_ample(L)
    elif args.check == "ulrich-lines":
        cert = _ulrich_lines(L)
    else:
        cert = discriminant_certificate(args.a)
        cert.params["u"] = args.u
    _emit(cert.to_json(), args.out)
    return EXIT_PASS if cert.passed else EXIT_FAIL


def cmd_scan(args) -> int:
    a_min, a_max = args.a
    if not 2 <= a_min <= a_max:
        raise UsageError("need 2 <= a_min <= a_max")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    report = scan_rank2(range(a_min, a_max + 1), args.verify, jobs=args.jobs)
    text = report.to_csv() if args.format == "csv" else report.to_json()
    try:
        _emit(text, args.out)
    except OSError as exc:
        log.error("cannot write %s: %s", args.out, exc)
        return EXIT_FAIL
    for f in report.failures:
        log.warning("row a=%s u=%s: %s", f["a"], f["u"], f["error"])
    return EXIT_FAIL if report.failures else EXIT_PASS


def cmd_bounds(args) -> int:
    try:
        rep = chern_bounds(args.a, args.r)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc
    excluded = ", ".join(str(v) for v in rep.excluded) or "none"
    rows = [
        ("a", rep.a),
        ("r", rep.r),
        ("lower", rep.lower),
        ("upper", rep.upper),
        ("simple_lower", rep.simple_lower),
        ("excluded", excluded),
        ("parity", "even only"),
        ("equality", f"upper attained iff {rep.equality_condition}"),
    ]
    text = "\n".join(f"{k:<13} {v}" for k, v in rows)
    text += f"\n{rep.lower} <= c1^2 <= {rep.upper}\n"
    _emit(text, args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3ulrich", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", help="print the Gram matrix, evenness and signature")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--u", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("check", help="run one certificate check and print JSON")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--u", type=int, required=True)
    s.add_argument("check", choices=["very-ample", "ulrich-lines", "discriminants"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("scan", help="rank-2 classification over a range of a")
    s.add_argument("--a", type=int, nargs=2, metavar=("A_MIN", "A_MAX"), required=True)
    s.add_argument("--verify", action="store_true", help="attach lattice certificates")
    s.add_argument("--format", choices=["csv", "json"], default="json")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("bounds", help="Chern-class bounds for Ulrich bundles of rank r")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
