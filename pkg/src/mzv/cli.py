"""Command-line front end (a thin client of the HTTP service).

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 precision-budget error.  Output is byte-identical across identical
invocations except for elapsed-time fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .client import ServiceClient, ServiceError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECISION_BUDGET = 3


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # shared flags live on the root parser (real defaults) and on each
    # subparser (SUPPRESS) so they are accepted on either side of the command
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--server", default=default(None),
                        help="base URL of a running service (default: in-process)")
    parser.add_argument("--digits", type=int, default=default(30),
                        help="target decimal digits (default 30)")
    parser.add_argument("--bits", type=int, default=default(None),
                        help="working precision bits (default digits*4+32)")
    parser.add_argument("--format", choices=("text", "json", "csv"), default=default(None),
                        dest="fmt", help="output format (default: text; json lines for verify)")
    parser.add_argument("--tol", type=float, default=default(None),
                        help="pairwise tolerance for exact/quadrature routes")
    parser.add_argument("--series-tol", type=float, default=default(None),
                        help="tolerance for series-route comparisons")
    parser.add_argument("--workers", type=int, default=default(1),
                        help="parallel check workers")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzv",
        description=(
            "Multiple zeta / t-values: evaluation, coefficient tables, and "
            "three-route identity verification. Composition arguments use the "
            "increasing-index convention: zeta(1,2) sums over n1 < n2, so the "
            "last exponent must exceed 1."
        ),
    )
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate zeta/t/H/T/hatH/hatT expressions")
    p_eval.add_argument("expr", help="e.g. 'zeta(1,2)', 't(2,3)', 'hatH(1,0)'")

    p_verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_verify.add_argument(
        "suite", choices=("zagier", "t", "lemmas", "moments", "euler", "all"),
        help="which identity family to verify",
    )
    p_verify.add_argument("--amax", type=int, help="max a for theorem grids / experiment")
    p_verify.add_argument("--bmax", type=int, help="max b for theorem and moment grids")
    p_verify.add_argument("--pmax", type=int, help="max cotangent power exponent")
    p_verify.add_argument("--nmax", type=int, help="max n for moment grids")
    p_verify.add_argument("--seed", type=int, help="seed for the random polynomial batch")

    p_table = sub.add_parser("table", parents=[common], help="emit coefficient or combination tables")
    p_table.add_argument("kind", choices=("hatH", "hatT", "coeffs"))
    p_table.add_argument("--amax", type=int, default=2)
    p_table.add_argument("--bmax", type=int, default=2)

    p_exp = sub.add_parser("experiment", parents=[common],
                           help="scaled-coefficient divisibility experiment")
    p_exp.add_argument("--amax", type=int, default=6)

    p_serve = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8643)

    return parser


def _print(line: str) -> None:
    sys.stdout.write(line + "\n")


def _csv_lines(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _cmd_eval(args, client: ServiceClient) -> int:
    res = client.eval(args.expr, digits=args.digits, bits=args.bits)
    if args.fmt == "json":
        _print(json.dumps(res))
    elif args.fmt == "csv":
        rows = [["value", res["value"]], ["radius", res["radius"]], ["route", res["route"]]]
        for t in res.get("terms") or []:
            rows.append(["term", t["pi_exp"], t["kind"], t["zeta_arg"], t["num"], t["den"]])
        _print(_csv_lines(["field", "v1", "v2", "v3", "v4", "v5"][: max(map(len, rows))], rows))
    else:
        _print(f"{res['label']} = {res['value']}  (+- {res['radius']}, {res['rigor']}, route={res['route']})")
        if res.get("terms"):
            parts = []
            for t in res["terms"]:
                mono = []
                if t["pi_exp"]:
                    mono.append("pi" if t["pi_exp"] == 1 else f"pi^{t['pi_exp']}")
                if t["kind"] == "zeta":
                    mono.append(f"zeta({t['zeta_arg']})")
                elif t["kind"] == "log2":
                    mono.append("log2")
                label = "*".join(mono) if mono else "1"
                parts.append(f"({t['num']}/{t['den']})*{label}")
            _print("exact: " + " + ".join(parts))
    return EXIT_OK


def _cmd_verify(args, client: ServiceClient) -> int:
    payload: dict = {
        "suite": args.suite,
        "digits": args.digits,
        "bits": args.bits,
        "workers": args.workers,
    }
    for key in ("tol", "series_tol", "amax", "bmax", "pmax", "nmax", "seed"):
        val = getattr(args, key, None)
        if val is not None:
            payload[key] = val
    res = client.verify(**payload)
    results = res["results"]
    summary = res["summary"]

    if args.fmt == "csv":
        rows = [
            [
                r["identity_id"],
                json.dumps(r["parameters"], sort_keys=True),
                r["passed"],
                r["max_discrepancy"],
                r["tolerance"],
                r["failure_reason"] or "",
            ]
            for r in results
        ]
        _print(_csv_lines(
            ["identity_id", "parameters", "passed", "max_discrepancy", "tolerance", "failure_reason"],
            rows,
        ))
    elif args.fmt == "text":
        for r in results:
            status = "PASS" if r["passed"] else f"FAIL({r['failure_reason']})"
            params = " ".join(f"{k}={v}" for k, v in r["parameters"].items())
            disc = r["max_discrepancy"]
            disc_txt = f"{disc:.3g}" if disc is not None else "n/a"
            _print(f"{status:>24}  {r['identity_id']} {params}  disc={disc_txt}")
        _print(
            f"suite={summary['suite']} passed={summary['passed']} "
            f"failed={summary['failed']} skipped={summary['skipped']} wall_ms={summary['wall_ms']}"
        )
    else:
        for r in results:
            _print(json.dumps(r))
        _print(json.dumps(summary))

    if summary["failed"] == 0:
        return EXIT_OK
    reasons = {r["failure_reason"] for r in results if not r["passed"]}
    if reasons <= {"precision_budget"}:
        return EXIT_PRECISION_BUDGET
    return EXIT_VERIFY_FAILED


def _cmd_table(args, client: ServiceClient) -> int:
    res = client.table(args.kind, args.amax, args.bmax)
    if args.kind == "coeffs":
        rows = [[r["a"], r["b"], r["k"], r["numerator"], r["denominator"]] for r in res["coefficient_rows"]]
        header = ["a", "b", "k", "numerator", "denominator"]
    else:
        rows = [
            [r["a"], r["b"], r["monomial"], r["numerator"], r["denominator"]]
            for r in res["combination_rows"]
        ]
        header = ["a", "b", "monomial", "numerator", "denominator"]
    if args.fmt == "json":
        _print(json.dumps(res))
    elif args.fmt == "text":
        widths = [max(len(str(x)) for x in [h] + [row[i] for row in rows]) for i, h in enumerate(header)]
        _print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            _print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))
    else:
        _print(_csv_lines(header, rows))
    return EXIT_OK


def _cmd_experiment(args, client: ServiceClient) -> int:
    res = client.experiment(args.amax, digits=args.digits)
    if args.fmt == "json":
        for row in res["rows"]:
            _print(json.dumps(row))
    elif args.fmt == "csv":
        rows = [
            [
                r["a"],
                r["factorial_divisor"],
                r["all_divisible"],
                r["integral"],
                r["upper_bound"],
                r["positive"],
                r["below_bound"],
            ]
            for r in res["rows"]
        ]
        _print(_csv_lines(
            ["a", "divisor", "all_divisible", "integral", "upper_bound", "positive", "below_bound"],
            rows,
        ))
    else:
        for r in res["rows"]:
            scaled = ", ".join(f"k={c['k']}: {c['scaled']}" for c in r["coefficients"])
            _print(
                f"a={r['a']}: divisor={r['factorial_divisor']} scaled=[{scaled}] "
                f"divisible={r['all_divisible']} integral={r['integral']} "
                f"in (0, {r['upper_bound']})={r['positive'] and r['below_bound']}"
            )
    return EXIT_OK if res["all_divisible"] else EXIT_VERIFY_FAILED


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    if args.fmt is None:
        args.fmt = "json" if args.command == "verify" else "text"

    if args.command == "serve":
        return _cmd_serve(args)

    client = ServiceClient(server=args.server)
    try:
        if args.command == "eval":
            return _cmd_eval(args, client)
        if args.command == "verify":
            return _cmd_verify(args, client)
        if args.command == "table":
            return _cmd_table(args, client)
        if args.command == "experiment":
            return _cmd_experiment(args, client)
    except ServiceError as exc:
        message = exc.detail
        if isinstance(message, dict):
            message = message.get("message", str(message))
        sys.stderr.write(f"error: {message}\n")
        if exc.code == "non_convergence":
            return EXIT_PRECISION_BUDGET
        if exc.code == "parse_error" or exc.status_code in (400, 422):
            return EXIT_USAGE
        return EXIT_VERIFY_FAILED
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
