"""Command-line front end: ``polycount <command> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 a Failure verdict
(declined wild split, failed recovery, failed bound), 3 budget refusal.
"""

import argparse
import json
import sys

from .census import (CSV_HEADER, CensusOptions, csv_row, enumerate_decomposables,
                     report_to_dict, truncate_ratio, verify_bounds)
from .bounds import CHAIN_CONSTANTS
from .decompose import (DEFAULT_BUDGET, brute_decompose, decompose_all,
                        tame_decompose, wild_decompose)
from .errors import BudgetExceeded, DomainError, UsageError
from .field import parse_element, parse_field
from .formulas import bluher_counts, brute_bluher, frobenius_count, lower_bound_wild
from .poly import Poly, format_poly, parse_poly
from .ritt import (FirstCaseParams, SecondCaseParams, dickson, first_case_build,
                   first_case_recover, second_case_build, second_case_recover)

EXIT_OK, EXIT_USAGE, EXIT_FAILURE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, human, data):
    if getattr(args, "format", "human") == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(human)


def _normalized(F, text):
    f = parse_poly(F, text)
    if f.degree is None or f.degree < 1:
        raise UsageError("polynomial must have positive degree")
    note = None
    if not (f.is_monic() and f.is_original()):
        f = (f - Poly.constant(F, f.coeff(0))).scale(1 / f.lc())
        note = f"normalized to monic original: {format_poly(f)}"
    return f, note


def _dec_lines(decs):
    return [f"g = {format_poly(x.g)}, h = {format_poly(x.h)}" for x in decs]


def _dec_json(decs):
    return [{"g": format_poly(x.g), "h": format_poly(x.h)} for x in decs]


def cmd_decompose(args):
    F = parse_field(args.field)
    f, note = _normalized(F, args.poly)
    d = f.degree
    lines = [note] if note else []
    data = {"field": F.designator(), "poly": format_poly(f), "splits": []}
    status = EXIT_OK
    if args.left_degree is None:
        if args.algorithm != "auto":
            raise UsageError("--algorithm needs --left-degree")
        for e, res in decompose_all(f, args.budget).items():
            decs = list(res.decompositions)
            lines.append(f"left degree {e} ({res.method}{'' if res.complete else ', incomplete'}):")
            lines += ["  " + s for s in _dec_lines(decs)] or ["  none"]
            data["splits"].append({"left_degree": str(e), "method": res.method,
                                   "complete": res.complete, "decompositions": _dec_json(decs)})
        _emit(args, "\n".join(lines), data)
        return status
    e = args.left_degree
    if e < 2 or e >= d or d % e:
        raise UsageError(f"left degree {e} is not a proper divisor of {d}")
    algo = args.algorithm
    if algo == "auto":
        if e % F.p:
            algo = "tame"
        elif F.q ** (d // e - 1) <= args.budget:
            algo = "brute"
        else:
            algo = "wild"
    entry = {"left_degree": str(e), "method": algo}
    if algo == "tame":
        t = tame_decompose(f, e)
        decs = [] if t is None else [t]
    elif algo == "brute":
        decs = list(brute_decompose(f, e, args.budget))
    else:
        out = wild_decompose(f, e)
        if args.verbose:
            lines += ["  " + str(s) for s in out.trace]
            entry["trace"] = [str(s) for s in out.trace]
        if out.failure:
            lines.append(f"failure: {out.reason}")
            entry["failure"] = out.reason
            data["splits"].append(entry)
            _emit(args, "\n".join(lines), data)
            return EXIT_FAILURE
        decs = list(out.decompositions)
    entry["decompositions"] = _dec_json(decs)
    data["splits"].append(entry)
    lines += _dec_lines(decs) or ["indecomposable at this split"]
    _emit(args, "\n".join(lines), data)
    return status


def cmd_census(args):
    F = parse_field(args.field)
    opts = CensusOptions(workers=args.workers, budget=args.budget)
    if args.verify:
        rep = verify_bounds(F, args.degree, opts)
    else:
        rep = enumerate_decomposables(F, args.degree, opts)
    if args.table:
        print(csv_row(rep))
    elif args.format == "csv":
        print(CSV_HEADER)
        print(csv_row(rep))
    elif args.format == "json":
        print(json.dumps(report_to_dict(rep), indent=2, sort_keys=True))
    else:
        print(_census_human(rep))
    return EXIT_OK if rep.passed() else EXIT_FAILURE


def _census_human(rep):
    lines = [f"field {rep.field}, degree {rep.d}",
             f"#D = {rep.total}   alpha = {rep.alpha}   "
             f"ratio = {truncate_ratio(rep.total, rep.alpha)}   leaf = {rep.leaf}",
             f"Frobenius compositions: {rep.frobenius}"]
    for s in rep.splits:
        hist = ", ".join(f"{k}:{v}" for k, v in sorted(s.histogram.items()))
        lines.append(f"  split {s.e}x{s.m}: {s.count(rep.q)} "
                     f"(monic original {s.distinct}, multiplicities {hist})")
    for t in rep.pairs:
        lines.append(f"  t({t.l},{t.m}) = {t.both * rep.scale} "
                     f"(non-Frobenius {t.both_nonfrobenius * rep.scale})")
    if rep.bounds:
        npass = sum(b.passed for b in rep.bounds)
        lines.append(f"bounds: {npass}/{len(rep.bounds)} pass")
        lines += ["  " + str(b) for b in rep.bounds]
        const = CHAIN_CONSTANTS.get((rep.q, rep.d))
        if const is not None:
            low = lower_bound_wild(rep.q, 1, 1, rep.d // rep.q) + frobenius_count(rep.q, rep.d)
            lines.append(f"chain: {low} < {const} < {rep.total} < {rep.alpha}")
    lines.append(f"time {rep.seconds:.2f} s with {rep.workers} worker(s)")
    return "\n".join(lines)


def cmd_ritt(args):
    F = parse_field(args.field)
    if args.action == "build":
        if args.l is None or args.m is None or args.shift is None:
            raise UsageError("build needs --l, --m and --shift")
        shift = parse_element(F, args.shift)
        if args.case == "first":
            if args.w is None:
                raise UsageError("first case build needs --w")
            s, k = divmod(args.m, args.l)
            tup = first_case_build(args.l, args.m, FirstCaseParams(parse_poly(F, args.w), shift, k, s))
        else:
            if args.z is None:
                raise UsageError("second case build needs --z")
            tup = second_case_build(args.l, args.m, SecondCaseParams(parse_element(F, args.z), shift))
        names = ("f", "g", "h", "gStar", "hStar")
        vals = [format_poly(getattr(tup, n)) for n in names]
        _emit(args, "\n".join(f"{n} = {v}" for n, v in zip(names, vals)), dict(zip(names, vals)))
        return EXIT_OK
    if args.poly is None:
        raise UsageError("recover needs --poly")
    f = parse_poly(F, args.poly)
    if args.case == "first":
        if args.l is None:
            raise UsageError("first case recovery needs --l")
        res = first_case_recover(f, args.l)
        if not res:
            _emit(args, f"recovery failed: {res.reason}", {"failed": res.reason})
            return EXIT_FAILURE
        data = {"w": format_poly(res.w), "shift": str(res.shift), "k": str(res.k),
                "s": str(res.s), "unique": res.unique}
        human = f"w = {data['w']}, shift = {data['shift']}"
        if not res.unique:
            human += " (several witnesses; least shown)"
    else:
        res = second_case_recover(f)
        if not res:
            _emit(args, f"recovery failed: {res.reason}", {"failed": res.reason})
            return EXIT_FAILURE
        data = {"z": str(res.z), "shift": str(res.shift)}
        human = f"z = {data['z']}, shift = {data['shift']}"
    _emit(args, human, data)
    return EXIT_OK


def cmd_dickson(args):
    F = parse_field(args.field)
    t = dickson(args.n, parse_element(F, args.z))
    _emit(args, format_poly(t), {"dickson": format_poly(t)})
    return EXIT_OK


def cmd_bluher(args):
    F = parse_field(args.field)
    st = bluher_counts(F, args.dexp)
    human = [f"c=({st.c0},{st.c1},{st.c2},{st.cZplus1})   "
             f"[c0, c1, c2, c{st.z + 1}; z={st.z}, gamma={st.gamma}]"]
    data = {"q": str(st.q), "r": str(st.r), "z": str(st.z), "gamma": str(st.gamma),
            "counts": {str(k): str(v) for k, v in sorted(st.as_dict().items())}}
    status = EXIT_OK
    if args.brute_check:
        tally = brute_bluher(F, args.dexp)
        want = {k: v for k, v in st.as_dict().items() if v}
        agree = tally == want
        human.append("brute agrees" if agree else f"brute disagrees: {dict(sorted(tally.items()))}")
        data["brute"] = {str(k): str(v) for k, v in sorted(tally.items())}
        data["brute_agrees"] = agree
        status = EXIT_OK if agree else EXIT_FAILURE
    _emit(args, "\n".join(human), data)
    return status


def build_parser():
    ap = _Parser(prog="polycount", description="Decomposition and census of polynomials over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, choices=("human", "json")):
        p.add_argument("--format", choices=choices, default="human")

    p = sub.add_parser("decompose", help="normal decompositions of a polynomial")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--left-degree", type=int)
    p.add_argument("--algorithm", choices=("auto", "tame", "wild", "brute"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--verbose", "-v", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("census", help="exact count of decomposable polynomials")
    p.add_argument("--field", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--table", action="store_true", help="print the q,d,count,alpha,ratio row")
    p.add_argument("--verify", action="store_true", help="check all applicable bounds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, help="composition budget (default POLYCOUNT_BUDGET or 2^28)")
    fmt(p, ("human", "json", "csv"))
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("ritt", help="distinct-degree collision normal forms")
    p.add_argument("action", choices=("build", "recover"))
    p.add_argument("--case", choices=("first", "second"), required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--w")
    p.add_argument("--z")
    p.add_argument("--shift")
    p.add_argument("--poly")
    fmt(p)
    p.set_defaults(func=cmd_ritt)

    p = sub.add_parser("dickson", help="Dickson polynomial T_n(x, z)")
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", required=True)
    fmt(p)
    p.set_defaults(func=cmd_dickson)

    p = sub.add_parser("bluher", help="root count statistics of t^(r+1) - u t + u")
    p.add_argument("--field", required=True)
    p.add_argument("--dexp", type=int, required=True)
    p.add_argument("--brute-check", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_bluher)
    return ap


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        if getattr(args, "budget", None) is not None and args.budget < 0:
            raise UsageError("--budget must be >= 0")
        return args.func(args)
    except BudgetExceeded as ex:
        print(f"budget refused: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DomainError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
