"""Command-line front end.

Exit codes: 0 all checks passed, 1 a mathematical check failed (or could not
be certified numerically), 2 usage or parameter error, 3 internal integrity
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from cyclodet.detkit import crt_int_det
from cyclodet.errors import IntegrityError, ParameterError, PrecisionError
from cyclodet.fermat import HPoly, count_points, ext_jacobi_det_check, h_poly, zeta_consistency
from cyclodet.fp_base import CACHE_ENV, DivisorPair, make_ext_context, make_prime_context, valid_pairs
from cyclodet.numeric import NumericPolicy, gauss_det_numeric, verify_lemma23
from cyclodet.periods import min_poly
from cyclodet.sums import gauss_matrix, matrix_X, matrix_Y
from cyclodet.verify import CSV_COLUMNS, VerifyOptions, lemma21_suite, lemma22_check, csv_cell, scan, verify_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"{self.prog}: error: {message}") from None


def _common(sub: argparse.ArgumentParser, p=True, k=True) -> None:
    if p:
        sub.add_argument("--p", type=int, required=True, help="odd prime")
    if k:
        sub.add_argument("--k", type=int, help="divisor of p-1 with 1 <= k < p-1")
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--precision", type=int, metavar="BITS", help="numeric working precision")
    sub.add_argument("--jobs", type=int, default=1, metavar="N")
    sub.add_argument("--out", metavar="PATH", help="write primary output here instead of stdout")
    sub.add_argument("--generator", type=int, metavar="G", help="primitive-root override")
    sub.add_argument("--cache", metavar="DIR", help=f"prime-table cache directory (default ${CACHE_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclodet", description="Jacobi-sum and Gauss-sum cyclotomic determinants")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("detx", "det X_{p,chi}(k)"), ("dety", "det Y_{p,chi}(k)")):
        _common(subs.add_parser(name, help=help_))
    g = subs.add_parser("gaussdet", help="Gauss-sum matrix determinant")
    _common(g)
    g.add_argument("--include-zero", action="store_true", help="index from 0 instead of 1")
    g.add_argument("--numeric", action="store_true", help="use the high-precision numeric engine")
    _common(subs.add_parser("minpoly", help="minimal polynomial of the Gaussian period"))
    v = subs.add_parser("verify", help="full verification report (all k if --k is omitted)")
    _common(v)
    v.add_argument("--no-timings", action="store_true")
    lem = subs.add_parser("lemma", help="run one lemma check")
    _common(lem, p=False)
    lem.add_argument("--p", type=int, help="odd prime (extension check: characteristic)")
    lem.add_argument("--which", choices=("21", "22", "23", "ext"), required=True)
    lem.add_argument("--m", type=int, default=1, help="extension degree for --which ext")
    f = subs.add_parser("fermat", help="point counts and H(T) for x^n + y^n = z^n")
    _common(f)
    f.add_argument("--n", type=int, help="exponent (alternative to --k)")
    s = subs.add_parser("scan", help="verify every prime up to --max-p")
    _common(s, p=False, k=False)
    s.add_argument("--max-p", type=int, required=True)
    s.add_argument("--min-p", type=int, default=3)
    s.add_argument("--no-timings", action="store_true")
    return parser


def _options(args) -> VerifyOptions:
    return VerifyOptions(precision_bits=args.precision, generator=args.generator, cache_dir=args.cache)


def _ctx(args):
    return make_prime_context(args.p, generator=args.generator, cache_dir=args.cache)


def _pair(args) -> DivisorPair:
    if args.k is None:
        raise ParameterError("--k is required")
    return DivisorPair.from_k(args.p, args.k)


def _emit_value(args, record: dict, value) -> str:
    if args.format == "json":
        return json.dumps(record)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(record.keys())
        w.writerow([csv_cell(v) for v in record.values()])
        return buf.getvalue().rstrip("\n")
    return str(value)


def _reports_out(args, reports) -> str:
    timings = not getattr(args, "no_timings", False)
    if args.format == "json":
        return json.dumps([r.to_json(timings) for r in reports], indent=1)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([c for c, _ in CSV_COLUMNS] + ["pass"])
        for r in reports:
            w.writerow([csv_cell(getattr(r, a)) for _, a in CSV_COLUMNS] + [csv_cell(r.passed)])
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in reports:
        d = r.to_json(timings=False)
        lines.append(f"p={r.p} k={r.k} n={r.n}: {'PASS' if r.passed else 'FAIL'}")
        for key, val in d.items():
            if key not in ("p", "k", "n", "pass"):
                lines.append(f"  {key}: {csv_cell(val)}")
    return "\n".join(lines)


def _run(args) -> tuple[str, int]:
    cmd = args.command
    if cmd in ("detx", "dety"):
        ctx, pair = _ctx(args), _pair(args)
        mat = matrix_X(ctx, pair) if cmd == "detx" else matrix_Y(ctx, pair)
        d = crt_int_det(mat)
        key = "det_X" if cmd == "detx" else "det_Y"
        return _emit_value(args, {"p": args.p, "k": pair.k, "n": pair.n, key: d}, d), EXIT_OK
    if cmd == "gaussdet":
        ctx, pair = _ctx(args), _pair(args)
        if args.numeric:
            policy = NumericPolicy(args.precision) if args.precision else NumericPolicy.default_for(args.p, pair.n)
            d = gauss_det_numeric(ctx, pair, args.include_zero, policy)
        else:
            d = crt_int_det(gauss_matrix(ctx, pair, args.include_zero))
        rec = {"p": args.p, "k": pair.k, "n": pair.n, "include_zero": args.include_zero, "det": d}
        return _emit_value(args, rec, d), EXIT_OK
    if cmd == "minpoly":
        mp = min_poly(_ctx(args), _pair(args))
        if args.format == "text":
            return " ".join(map(str, mp.coeffs)), EXIT_OK
        rec = mp.to_json()
        if args.format == "csv":
            rec["coeffs"] = " ".join(map(str, mp.coeffs))
        return _emit_value(args, rec, None), EXIT_OK
    if cmd == "verify":
        make_prime_context(args.p)  # validates p before the pair search
        ks = [args.k] if args.k is not None else [pr.k for pr in valid_pairs(args.p)]
        reports = [verify_pair(args.p, k, _options(args)) for k in ks]
        return _reports_out(args, reports), EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if cmd == "scan":
        if args.max_p < 3:
            raise ParameterError("--max-p must be at least 3")
        reports = scan(args.max_p, _options(args), jobs=args.jobs, min_p=args.min_p)
        return _reports_out(args, reports), EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if cmd == "lemma":
        return _run_lemma(args)
    if cmd == "fermat":
        return _run_fermat(args)
    raise ParameterError(f"unknown command {cmd}")  # pragma: no cover


def _run_lemma(args) -> tuple[str, int]:
    if args.p is None:
        raise ParameterError("--p is required")
    policy = NumericPolicy(args.precision) if args.precision else NumericPolicy()
    rows = []
    if args.which == "ext":
        ext = make_ext_context(args.p, args.m)
        q = ext.q
        ks = [args.k] if args.k else [k for k in range(1, q - 1) if (q - 1) % k == 0]
        rows = [ext_jacobi_det_check(ext, k, policy).to_json() for k in ks]
    else:
        ctx = make_prime_context(args.p, generator=args.generator, cache_dir=args.cache)
        pairs = [_pair(args)] if args.k else valid_pairs(args.p)
        for pair in pairs:
            if args.which == "21":
                ok = lemma21_suite(ctx, pair)
            elif args.which == "22":
                ok = lemma22_check(ctx, pair, crt_int_det(matrix_X(ctx, pair)))
            else:
                ok = verify_lemma23(ctx, pair, policy).passed
            rows.append({"lemma": args.which, "p": args.p, "k": pair.k, "n": pair.n, "pass": ok})
    passed = all(r["pass"] for r in rows)
    if args.format == "json":
        out = json.dumps(rows)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({a: csv_cell(b) if not isinstance(b, list) else " ".join(b) for a, b in r.items()})
        out = buf.getvalue().rstrip("\n")
    else:
        out = "\n".join(" ".join(f"{a}={csv_cell(b)}" for a, b in r.items()) for r in rows)
    return out, EXIT_OK if passed else EXIT_FAIL


def _run_fermat(args) -> tuple[str, int]:
    ctx = _ctx(args)
    if args.n is not None:
        n = args.n
        if n < 1 or (args.p - 1) % n:
            raise ParameterError(f"n={n} must divide p-1")
    else:
        n = _pair(args).n
    counts = [count_points(args.p, n, m) for m in (1, 2)]
    # n = 1 is a line and has no divisor pair; its numerator is 1
    hp = HPoly((1,)) if n == 1 else h_poly(ctx, DivisorPair(args.p, (args.p - 1) // n, n))
    ok = zeta_consistency(hp, counts)
    rec = {
        "p": args.p,
        "n": n,
        "N_p": counts[0].N,
        "N_p2": counts[1].N,
        "H": list(hp.coeffs),
        "pass": ok,
    }
    if args.format == "text":
        out = f"N(p)={rec['N_p']} N(p^2)={rec['N_p2']} H={' '.join(map(str, hp.coeffs))} {'PASS' if ok else 'FAIL'}"
    elif args.format == "csv":
        rec["H"] = " ".join(map(str, hp.coeffs))
        out = _emit_value(args, rec, None)
    else:
        out = json.dumps(rec)
    return out, EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None):
            if isinstance(exc.code, str):
                print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        return EXIT_OK
    try:
        out, code = _run(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"precision: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        sys.stdout.write(out + "\n")
    return code


def run(argv) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
