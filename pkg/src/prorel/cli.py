"""Command-line front end.

Every subcommand prints one report (JSON by default) to stdout and exits 0
exactly when all of its assertions pass.  Diagnostics go to stderr.  The
``PROREL_MAX_ORDER`` environment variable sets the default element bound.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import groups as gr
from .errors import DomainError, HypothesisViolation, InvalidParameter, ParseError, ResourceLimitError
from .report import dumps


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-order", type=_positive,
                        default=int(os.environ.get("PROREL_MAX_ORDER", gr.DEFAULT_MAX_ORDER)),
                        help="largest subgroup the engine may enumerate")
    common.add_argument("--seed", type=int, default=0, help="seed for every sampled check")

    ap = argparse.ArgumentParser(prog="prorel", description="Finite-quotient checks for pro-p relation shapes.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("metacyclic", parents=[common], help="structure of G(a,m)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = sub.add_parser("unipotent", parents=[common], help="the witness group <X,Y> in U_{k+2}(Z/p)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--congruence", action="store_true", help="also run the k = p-1 perturbation check")

    sp = sub.add_parser("dpoly", parents=[common], help="D_i polynomial identities")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--random", type=int, default=0, metavar="COUNT",
                    help="also run COUNT random nilpotent-independence instances")

    sp = sub.add_parser("padic", parents=[common], help="solve (1+p^k u)^v = 1+p^k")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)

    sp = sub.add_parser("obstruct", parents=[common], help="witness for one relation")
    sp.add_argument("theorem", help="l<m | thm1 | thmT | filtration")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, default=None, help="not used by the filtration theorem")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--relation", required=True, help='e.g. "x^3 [y1,y2]"')
    sp.add_argument("--w", type=int, default=None, help="thmT case 2: x -> tau sigma^w")
    sp.add_argument("--t", default=None, help="filtration: the factor t")
    sp.add_argument("--with-t", action="store_true", help="filtration: sample t from G^(l+1)")
    sp.add_argument("--assign", type=_ints, default=None, help="y_i -> sigma^c_i exponents, comma separated")

    sp = sub.add_parser("sweep", parents=[common], help="grid of obstruction checks")
    sp.add_argument("--theorems", default="l<m,thm1,thmT,filtration")
    sp.add_argument("--p", type=_ints, default=(3, 5))
    sp.add_argument("--k", type=_ints, default=(1, 2))
    sp.add_argument("--m", type=_ints, default=(1, 2, 3, 4))
    sp.add_argument("--u", type=_ints, default=None, help="default 1,2,p+1")
    sp.add_argument("--samples", type=int, default=2, help="random y-assignments per point")

    sub.add_parser("selftest", parents=[common], help="run the whole verification grid")
    return ap


def run(args) -> tuple[object, bool]:
    saved = gr.DEFAULT_MAX_ORDER
    gr.DEFAULT_MAX_ORDER = args.max_order
    try:
        return _dispatch(args)
    finally:
        gr.DEFAULT_MAX_ORDER = saved


def _dispatch(args) -> tuple[object, bool]:
    cmd = args.command
    if cmd == "metacyclic":
        from .metacyclic import MetacyclicParams, verify_metacyclic_structure
        rep = verify_metacyclic_structure(MetacyclicParams(args.p, args.k, args.m), args.max_order)
        return rep, rep.passed
    if cmd == "unipotent":
        from .unipotent import WitnessGroupSpec, perturbation_congruence_check, witness_group_check
        rep = witness_group_check(WitnessGroupSpec(args.p, args.k), args.max_order)
        if args.congruence:
            extra = perturbation_congruence_check(args.p, args.max_order, seed=args.seed)
            return {"witness": rep.to_dict(), "congruence": extra.to_dict(),
                    "passed": rep.passed and extra.passed}, rep.passed and extra.passed
        return rep, rep.passed
    if cmd == "dpoly":
        from .dpoly import dpoly_suite, nilpotent_suite
        rep = dpoly_suite(args.p)
        if args.random:
            extra = nilpotent_suite(args.random, seed=args.seed)
            return {"identities": rep.to_dict(), "nilpotent": extra.to_dict(),
                    "passed": rep.passed and extra.passed}, rep.passed and extra.passed
        return rep, rep.passed
    if cmd == "padic":
        from .arith import power_exponent_report
        rep = power_exponent_report(args.p, args.k, args.u, args.N)
        return rep, rep.passed
    if cmd == "obstruct":
        from .obstruction import _canonical_theorem, check_relation
        thm = _canonical_theorem(args.theorem)
        if thm != "filtration" and args.m is None:
            raise InvalidParameter(f"{thm} needs --m")
        rep = check_relation(thm, args.p, args.k, args.m, args.l, args.u, args.relation,
                             w=args.w, t=args.t, with_t=args.with_t, c=args.assign, seed=args.seed)
        return rep, rep.passed
    if cmd == "sweep":
        from .obstruction import GridSpec, sweep
        grid = GridSpec(theorems=tuple(t.strip() for t in args.theorems.split(",") if t.strip()),
                        ps=args.p, ks=args.k, ms=args.m, us=args.u,
                        assignment_samples=args.samples, seed=args.seed)
        res = sweep(grid)
        return res, res.passed
    if cmd == "selftest":
        from .selftest import run_all
        results = {}
        ok = True
        for name, rep in _announce(run_all(args.seed)):
            results[name] = rep.to_dict()
            ok &= rep.passed
        results["passed"] = ok
        return results, ok
    raise InvalidParameter(f"unknown command {cmd!r}")


def _announce(reports: dict):
    for name, rep in reports.items():
        print(f"{name}: {'PASS' if rep.passed else 'FAIL'}", file=sys.stderr)
        yield name, rep


def _render_text(payload) -> str:
    if hasattr(payload, "to_text"):
        return payload.to_text()
    lines = []
    for name, part in payload.items():
        if isinstance(part, dict):
            lines.append(f"{name}: {'PASS' if part.get('passed') else 'FAIL'}")
            for a in part.get("assertions", []):
                if not a["passed"]:
                    lines.append(f"  [FAIL] {a['name']}  ({a['ref']})")
    lines.append("PASS" if payload.get("passed") else "FAIL")
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        payload, ok = run(args)
    except (InvalidParameter, DomainError, HypothesisViolation, ParseError, ResourceLimitError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        body = payload.to_dict() if hasattr(payload, "to_dict") else payload
        sys.stdout.write(dumps(body) + "\n")
    else:
        sys.stdout.write(_render_text(payload) + "\n")
    print(f"{args.command}: {'PASS' if ok else 'FAIL'} in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
