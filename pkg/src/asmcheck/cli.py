"""Command-line entry point: enumerate, count, check, eval.

Exit status is 0 on success, 1 when a check fails and 2 for usage or
parse errors.
"""
import argparse
import os
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import checks, kernels, objects, recurrences
from .algebra import parse_rational
from .errors import ParseError, RegistryError, UsageError
from .series import constant_term, residue


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _shape(family, n, k):
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    if family == "asm":
        return n, None
    if k is None:
        raise UsageError(f"{family} needs --k")
    if not 1 <= k <= n:
        raise UsageError(f"need n >= k >= 1, got n={n} k={k}")
    return n, k


def _number(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def cmd_enumerate(args, out):
    n, k = _shape(args.family, args.n, args.k)
    if args.family == "asm":
        items = objects.enumerate_asm(n)
    elif args.family == "gog":
        items = objects.enumerate_gog(k, n)
    else:
        items = objects.enumerate_magog(k, n)
    if args.format == "count":
        out.write(f"{sum(1 for _ in items)}\n")
        return 0
    first = True
    for obj in items:
        if args.family == "asm" and not first:
            out.write("\n")
        out.write(obj.format() + "\n")
        first = False
    return 0


def recurrence_count(family, k, n):
    """Totals read off the tabulated solutions of the recurrences."""
    if family == "magog":
        X = recurrences.tabulate_X(k, n)
        return sum(X[(n, a)] for a in objects.land_of_magog(k, n))
    # M~ at (n+1; n+1, ..., n+1) sums M over every border at size n
    Y = recurrences.tabulate_Y(k, n + 1)
    return Y[(n + 1, (n + 1,) * k)]


def count(family, k, n, method):
    if family == "asm":
        if method != "brute":
            raise UsageError("asm counts support only --method brute")
        return sum(1 for _ in objects.enumerate_asm(n))
    if method == "brute":
        return objects.b_brute(k, n) if family == "magog" else objects.m_brute(k, n)
    if method == "ct":
        f = kernels.magog_total(k, n) if family == "magog" else kernels.gog_total(k, n)
        return constant_term(f)
    return recurrence_count(family, k, n)


def cmd_count(args, out):
    n, k = _shape(args.family, args.n, args.k)
    out.write(f"{count(args.family, k, n, args.method)}\n")
    return 0


def _coerce(text):
    try:
        return int(text)
    except ValueError:
        return text


def _check_params(args):
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.n is not None:
        params["n"] = args.n
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {item!r}")
        params[key] = _coerce(value)
    return params


def _check_jobs(args):
    if args.id == "all":
        return checks.plan(args.max_k, args.max_n, args.filter, args.heavy)
    if args.id not in checks.REGISTRY:
        raise RegistryError(f"unknown check {args.id!r}")
    params = _check_params(args)
    check = checks.REGISTRY[args.id]
    try:
        checks._validate(check, params)
        return [(args.id, params)]
    except UsageError:
        # partial parameters select matching points of the default grid
        grid = check.grid(args.max_k, args.max_n, True)
        chosen = [p for p in grid if all(p.get(key) == v for key, v in params.items())]
        if not chosen:
            raise
        return [(args.id, p) for p in chosen]


def cmd_check(args, out):
    jobs = _check_jobs(args)
    if args.jobs > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(checks._run_one, jobs))
    else:
        results = [checks.run_check(id, **params) for id, params in jobs]
    if args.no_timing:
        for r in results:
            r.elapsed = 0.0
    text = checks.format_records(results) if args.format == "records" else checks.format_table(results)
    out.write(text + "\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_eval(args, out):
    text = args.expression
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read().strip()
    f = parse_rational(text)
    order = [v.strip() for v in args.order.split(",")] if args.order else None
    value = constant_term(f, order) if args.mode == "ct" else residue(f, order)
    out.write(_number(value) + "\n")
    return 0


def build_parser():
    p = _Parser(prog="asmcheck", description="Exact checks for Gog and Magog enumeration identities.")
    p.add_argument("--output", "-o", help="write results to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="list ASMs, Gog or Magog trapezoids")
    e.add_argument("family", choices=["asm", "gog", "magog"])
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int)
    e.add_argument("--format", choices=["text", "count"], default="text")
    e.set_defaults(run=cmd_enumerate)

    c = sub.add_parser("count", help="count objects by enumeration, constant term or recurrence")
    c.add_argument("family", choices=["asm", "gog", "magog"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--method", choices=["brute", "ct", "recurrence"], default="brute")
    c.set_defaults(run=cmd_count)

    k = sub.add_parser("check", help="run a named check, or all of them")
    k.add_argument("id", help="check id such as S15, or 'all'")
    k.add_argument("--k", type=int)
    k.add_argument("--n", type=int)
    k.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="extra parameter, e.g. g=[2,1,3]+-+ or a=3,2,2")
    k.add_argument("--max-k", type=int, default=4)
    k.add_argument("--max-n", type=int, default=5)
    k.add_argument("--filter", default="*", help="glob on check ids for 'all'")
    k.add_argument("--heavy", action="store_true", help="include the k = 3 symbolic residue checks")
    k.add_argument("--format", choices=["table", "records"], default="table")
    k.add_argument("--jobs", type=int, default=1)
    k.add_argument("--no-timing", action="store_true", help="report zero elapsed time so output is reproducible")
    k.set_defaults(run=cmd_check)

    v = sub.add_parser("eval", help="constant term or residue of an expression")
    v.add_argument("expression", help="expression text or a file containing it")
    v.add_argument("--mode", choices=["ct", "res"], default="ct")
    v.add_argument("--order", help="comma separated variables; the last is extracted first")
    v.set_defaults(run=cmd_eval)
    return p


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with _sink(args.output) as out:
            return args.run(args, out)
    except (UsageError, RegistryError, ParseError) as exc:
        msg = exc.args[0] if isinstance(exc, RegistryError) and exc.args else exc
        print(f"asmcheck: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
