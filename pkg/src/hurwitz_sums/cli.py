"""Command-line entry point.

Exit status: 0 when every check passed, 1 on a mathematical mismatch,
2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import catalog, class_numbers, conjectures, identities
from .errors import HurwitzSumsError
from .qseries import format_rational

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {v}")
    return v


def _odd_prime(text):
    v = _positive(text)
    if v % 2 == 0 or not class_numbers.is_prime(v):
        raise argparse.ArgumentTypeError(f"not an odd prime: {v}")
    return v


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit_report(report, fmt: str) -> str:
    """Serialize an IdentityReport deterministically."""
    d = report.to_dict()
    if fmt == "json":
        return _json(d)
    mm = d["first_mismatch"]
    if fmt == "csv":
        return _csv([["identity_id", "bound_used", "certified", "status",
                      "coefficients_checked", "mismatch_n", "mismatch_lhs", "mismatch_rhs"],
                     [d["identity_id"], d["bound_used"], str(d["certified"]).lower(),
                      d["status"], d["coefficients_checked"],
                      "" if mm is None else mm["n"], "" if mm is None else mm["lhs"],
                      "" if mm is None else mm["rhs"]]])
    line = (f"{d['identity_id']}: {d['status']} (bound {d['bound_used']}, "
            f"{d['coefficients_checked']} coefficients checked)")
    if mm is not None:
        line += f"; first mismatch at n={mm['n']}: lhs {mm['lhs']} != rhs {mm['rhs']}"
    return line + "\n"


# -- subcommands ----------------------------------------------------------

def cmd_hurwitz(args):
    h = class_numbers.hurwitz(args.n)
    if args.format == "json":
        return _json({"n": args.n, "H": format_rational(h)}), EXIT_OK
    if args.format == "csv":
        return _csv([["n", "H"], [args.n, format_rational(h)]]), EXIT_OK
    return format_rational(h) + "\n", EXIT_OK


def cmd_table(args):
    t = class_numbers.table_upto(args.max)
    vals = t.twelve_h[: args.max + 1]
    if args.format == "json":
        return _json({"max_n": args.max, "twelve_h": list(vals)}), EXIT_OK
    rows = [[n, v] for n, v in enumerate(vals)]
    if args.format == "csv":
        rows.insert(0, ["n", "12H"])
    return _csv(rows), EXIT_OK


def cmd_classsum(args):
    v = class_numbers.class_sum(args.a, args.p, args.n)
    if args.format == "json":
        return _json({"a": args.a, "p": args.p, "n": args.n,
                      "value": format_rational(v)}), EXIT_OK
    if args.format == "csv":
        return _csv([["a", "p", "n", "value"],
                     [args.a, args.p, args.n, format_rational(v)]]), EXIT_OK
    return format_rational(v) + "\n", EXIT_OK


def cmd_series(args):
    f = catalog.build_series(args.id, args.prec, a=args.a, N=args.N, r=args.r, p=args.p)
    if args.format == "json":
        return json.dumps([format_rational(c) for c in f.coeffs]) + "\n", EXIT_OK
    if args.format == "csv":
        return _csv([["exponent", "numerator", "denominator"]]
                    + [list(r) for r in catalog.series_to_rows(f)]), EXIT_OK
    return "".join(f"{n}: {format_rational(c)}\n" for n, c in enumerate(f.coeffs)), EXIT_OK


def cmd_verify(args):
    ids = identities.identity_ids() if args.identity_id == "all" else [args.identity_id]
    reports = [identities.verify_identity(i, args.bound) for i in ids]
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH
    if args.format == "json":
        body = [r.to_dict() for r in reports]
        return _json(body[0] if len(body) == 1 else body), code
    if args.format == "csv":
        out = [emit_report(r, "csv").splitlines() for r in reports]
        lines = out[0][:1] + [o[1] for o in out]
        return "\n".join(lines) + "\n", code
    return "".join(emit_report(r, "plain") for r in reports), code


def cmd_dmz(args):
    r = identities.verify_known_dmz(args.prec)
    return emit_report(r, args.format), EXIT_OK if r.ok else EXIT_MISMATCH


def cmd_eichler(args):
    table = class_numbers.table_upto(4 * args.max_prime)
    rows = []
    for ell in class_numbers.primes_upto(args.max_prime):
        if ell == 2:
            continue
        s = class_numbers.eichler_check(ell, table)
        rows.append((ell, s, 2 * ell, s == 2 * ell))
    code = EXIT_OK if all(ok for *_, ok in rows) else EXIT_MISMATCH
    if args.format == "json":
        return _json([{"ell": e, "sum": format_rational(s), "expected": x, "ok": ok}
                      for e, s, x, ok in rows]), code
    if args.format == "csv":
        return _csv([["ell", "sum", "expected", "ok"]]
                    + [[e, format_rational(s), x, str(ok).lower()] for e, s, x, ok in rows]), code
    return "".join(f"{e}: {format_rational(s)} == {x} OK\n" if ok
                   else f"{e}: {format_rational(s)} != {x} FAIL\n"
                   for e, s, x, ok in rows), code


def cmd_conjectures(args):
    reports = conjectures.check_conjectures(args.p, args.max_prime)
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH
    if args.format == "json":
        return _json([r.to_dict() for r in reports]), code
    if args.format == "csv":
        rows = [["p", "a_class", "L_class", "primes_checked", "skipped", "failures"]]
        rows += [[r.p, r.a_class, r.L_class, r.primes_checked, str(r.skipped).lower(),
                  len(r.failures)] for r in reports]
        return _csv(rows), code
    lines = []
    for r in reports:
        head = f"p={r.p} a={r.a_class} L={r.L_class}:"
        if r.skipped:
            lines.append(f"{head} no formula")
        elif r.ok:
            lines.append(f"{head} {r.primes_checked} primes OK")
        else:
            ell, e, g = r.failures[0]
            lines.append(f"{head} {len(r.failures)} FAILURES, first ell={ell}: "
                         f"expected {format_rational(e)}, got {format_rational(g)}")
    return "\n".join(lines) + "\n", code


def cmd_scan(args):
    res = conjectures.empirical_scan(args.a, args.p, args.L, args.max_prime)
    if args.format == "json":
        return _json(res.to_dict()), EXIT_OK
    d = res.to_dict()
    if args.format == "csv":
        keys = ["a", "p", "L", "c1", "c2", "affine", "samples"]
        return _csv([keys, [str(d[k]).lower() if isinstance(d[k], bool) else d[k]
                            for k in keys]]), EXIT_OK
    if res.affine:
        return (f"H_{{{args.a},{args.p}}}(l) = {d['c1']}*l + {d['c2']} "
                f"for all {res.samples} primes l = {res.L} mod {args.p}\n"), EXIT_OK
    ce = d["counterexample"]
    return (f"not affine: fit {d['c1']}*l + {d['c2']} predicts {ce['predicted']} "
            f"at l={ce['ell']}, actual {ce['got']}\n"), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--cache", metavar="PATH",
                        help="class-number table file, loaded if present and extended on demand")
    common.add_argument("--no-cache", action="store_true",
                        help="ignore the cache file and recompute all class numbers")

    parser = argparse.ArgumentParser(
        prog="hurwitz-sums",
        description="Exact Hurwitz class number sums and weight-2 q-series identities.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("hurwitz", parents=[common], help="print H(n)")
    p.add_argument("n", type=_nonneg)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("table", parents=[common], help="print 12*H(n) for n <= MAX")
    p.add_argument("--max", type=_nonneg, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classsum", parents=[common], help="print H_{a,p}(n)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p", type=_odd_prime, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_classsum)

    p = sub.add_parser("series", parents=[common], help="dump a catalog series")
    p.add_argument("id", choices=catalog.SERIES_NAMES)
    p.add_argument("--prec", type=_positive, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--N", type=_positive)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=_odd_prime)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="verify an identity ('all' for every one)")
    p.add_argument("identity_id", choices=identities.identity_ids() + ["all"])
    p.add_argument("--bound", type=_positive)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjectures", parents=[common], help="check the prime formula tables")
    p.add_argument("--p", type=int, choices=conjectures.SUPPORTED_PRIMES, required=True)
    p.add_argument("--max-prime", type=_positive, required=True)
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("eichler", parents=[common], help="check sum H(4l - m^2) = 2l")
    p.add_argument("--max-prime", type=_positive, required=True)
    p.set_defaults(func=cmd_eichler)

    p = sub.add_parser("dmz", parents=[common], help="check (H theta) | U(4) = 2D - G_{1,0} - 1/12")
    p.add_argument("--prec", type=_positive, required=True)
    p.set_defaults(func=cmd_dmz)

    p = sub.add_parser("scan", parents=[common], help="fit an affine formula for one residue pair")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p", type=_odd_prime, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--max-prime", type=_positive, required=True)
    p.set_defaults(func=cmd_scan)
    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.no_cache:
        class_numbers.reset_shared_table()
    cache = Path(args.cache) if args.cache else None
    loaded_max = -1
    try:
        if cache is not None and not args.no_cache and cache.exists():
            t = class_numbers.load_table(cache)
            class_numbers.install_table(t)
            loaded_max = t.max_n
        text, code = args.func(args)
        stdout.write(text)
        if cache is not None and not args.no_cache:
            t = class_numbers.shared_table()
            if t is not None and t.max_n > loaded_max:
                class_numbers.save_table(t, cache)
        return code
    except (HurwitzSumsError, OSError) as exc:
        print(f"hurwitz-sums: error: {exc}", file=stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
