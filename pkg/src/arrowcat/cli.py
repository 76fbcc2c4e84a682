"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or I/O error,
3 the SWF does not meet the hypotheses a command needs.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from .base import HypothesesNotMet, format_coalition
from .decisive import check_ultrafilter, decisive_family, decisiveness, is_strongly_decisive
from .factorization import check_factorization
from .formats import ParseError, read_swf
from .naturality import (
    IllDefined,
    NoLift,
    check_naturality_injections,
    enumerate_natural_transformations,
    extend_from_top,
    naturality_failures,
)
from .orders import enumerate_linear_orders, enumerate_weak_orders, format_chain
from .profiles import check_UD_for, format_profile
from .search import ArrowAssertionFailed, InfeasibleConfig, SearchConfig, emit_survivors, verify_arrow
from .swf import check_IIA, check_pareto, check_weak_pareto, find_dictator

OK, FAILED, USAGE, HYPOTHESES = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _pareto_witness(w) -> str:
    a, b, p = w
    return f"a={a} b={b} p={format_profile(p)}"


def cmd_enumerate(args) -> int:
    if not 1 <= args.n <= (4 if args.kind == "weak" else 6):
        print(f"error: --n out of range for {args.kind} orders", file=sys.stderr)
        return USAGE
    orders = enumerate_weak_orders(args.n) if args.kind == "weak" else enumerate_linear_orders(args.n)
    print(len(orders))
    if args.list:
        for r in orders:
            print(format_chain(r))
    return OK


def cmd_check(args) -> int:
    s = read_swf(args.swf)
    iia, p, wp = check_IIA(s), check_pareto(s), check_weak_pareto(s)
    dic = find_dictator(s)
    word = lambda v: "ok" if v else "FAIL"
    print(f"IIA: {word(iia)}  P: {word(p)}  WP: {word(wp)}  D: "
          + (f"dictator={dic}" if dic is not None else "none"))
    if s.carrier.n < 3:
        print("UD: n/a (fewer than 3 alternatives)")
    else:
        ud = check_UD_for(s.domain)
        ballots = "linear" if s.domain.is_linear else "weak"
        if ud:
            print(f"UD: ok ({ballots} ballots)")
        else:
            A, q = ud.witness
            print(f"UD: FAIL ({ballots} ballots) witness=A={A} p={format_profile(q)}")
    if not iia:
        print(f"IIA witness: {iia.witness}")
    if not p:
        print(f"P witness: {_pareto_witness(p.witness)}")
    if not wp:
        print(f"WP witness: {_pareto_witness(wp.witness)}")
    return OK if iia and p and wp and dic is not None else FAILED


def cmd_decisive(args) -> int:
    s = read_swf(args.swf)
    labs = s.carrier.labels
    n = s.carrier.n
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for U in range(1, 1 << s.m):
        d_rel, e_rel = [], []
        for a, b in pairs:
            dec = decisiveness(s, U, a, b)
            if dec.holds:
                d_rel.append(f"{labs[a]}{labs[b]}" + ("*" if dec.vacuous else ""))
            if is_strongly_decisive(s, U, a, b):
                e_rel.append(f"{labs[a]}{labs[b]}")
        print(f"U={format_coalition(U)} D: {' '.join(d_rel) or '-'} | E: {' '.join(e_rel) or '-'}")
    print("(* = vacuous: no profile has exactly U for a over b and the rest against)")
    fam = decisive_family(s)
    print("family: " + (" ".join(format_coalition(U) for U in sorted(fam)) or "-"))
    rep = check_ultrafilter(fam, s.m)
    for line in rep.lines():
        print(line)
    return OK if rep else FAILED


def cmd_factorize(args) -> int:
    s = read_swf(args.swf)
    rep = check_factorization(s)
    for line in rep.lines():
        print(line)
    print(f"squares checked: {rep.squares_checked}")
    return OK if rep.homomorphism and rep.square_commutes else FAILED


def cmd_naturality(args) -> int:
    s = read_swf(args.swf)
    try:
        fam = extend_from_top(s)
    except IllDefined as exc:
        print(f"IIA: FAIL {exc}")
        return FAILED
    except NoLift as exc:
        print(f"hypotheses not met: {exc}", file=sys.stderr)
        return HYPOTHESES
    if args.injections:
        check_naturality_injections(fam)  # raises HypothesesNotMet when it does not apply
    fails = naturality_failures(fam, injections=args.injections)
    for sq in fails:
        print(sq)
    kind = "injections" if args.injections else "inclusions"
    print(f"naturality ({kind}): " + ("ok" if not fails else f"FAIL {len(fails)} squares"))
    return OK if not fails else FAILED


def cmd_verify_arrow(args) -> int:
    cfg = SearchConfig(args.alternatives, args.voters, args.domain, jobs=args.jobs, method=args.method)
    t0 = time.perf_counter()
    try:
        report = verify_arrow(cfg)
    except ArrowAssertionFailed as exc:
        print(f"ASSERTION FAILED: {exc}")
        return FAILED
    for line in report.lines():
        print(line)
    if args.emit_survivors:
        paths = emit_survivors(report, args.emit_survivors)
        print(f"wrote {len(paths)} survivor files", file=sys.stderr)
    print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return OK


def cmd_nat_trans(args) -> int:
    try:
        cands = enumerate_natural_transformations(args.arity, args.max_size)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(f"survivors={len(cands)}")
    for k, t in enumerate(cands):
        proj = t.projection_index()
        comps = " ".join("".join(map(str, c)) for c in t.components)
        print(f"t{k}: projection={'none' if proj is None else proj} tables={comps}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="arrowcat", description="Exhaustive checks of Arrow's theorem at small scale.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="count weak or linear orders")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("weak", "linear"), required=True)
    p.add_argument("--list", action="store_true", help="also print each order")
    p.set_defaults(func=cmd_enumerate)

    for name, func, text in (
        ("check", cmd_check, "IIA, Pareto, weak Pareto, dictator, UD"),
        ("decisive", cmd_decisive, "decisive coalitions and ultrafilter report"),
        ("factorize", cmd_factorize, "Boolean factorization of an Arrow SWF"),
        ("naturality", cmd_naturality, "naturality squares of the subset family"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--swf", required=True, metavar="FILE")
        if name == "naturality":
            p.add_argument("--injections", action="store_true",
                           help="check all injections on linear ballots, not only inclusions")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-arrow", help="exhaustive search for IIA + Pareto SWFs")
    p.add_argument("--alternatives", type=int, required=True)
    p.add_argument("--voters", type=int, required=True)
    p.add_argument("--domain", choices=("linear", "weak"), default="linear")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--method", choices=("auto", "flat", "backtrack"), default="auto")
    p.add_argument("--emit-survivors", metavar="DIR")
    p.set_defaults(func=cmd_verify_arrow)

    p = sub.add_parser("nat-trans", help="natural transformations X^k -> X on small sets")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(func=cmd_nat_trans)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except InfeasibleConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except HypothesesNotMet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return HYPOTHESES


if __name__ == "__main__":
    sys.exit(main())
