"""Command-line surface: verify, construct, bound, search, canon, scan.

Every subcommand prints one line of JSON (schema + invocation + payload).
Exit codes: 0 success, 1 negative finding (not an SHF / exhausted /
forbidden configuration found / not isomorphic), 2 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bounds, construct, io, search, symmetry, verify


def _fail(parser_name: str, message: str) -> int:
    print(json.dumps({"schema": io.SCHEMA, "error": message, "command": parser_name}),
          file=sys.stderr)
    return 2


def _cmd_verify(args) -> int:
    inv = {"command": "verify", "matrix": args.matrix, "type": args.type}
    try:
        a = io.read_matrix(args.matrix)
        ty = io.parse_type_string(args.type)
        verdict = verify.is_shf(a, ty)
    except (OSError, ValueError) as exc:
        return _fail("verify", str(exc))
    payload = {
        "result": "is-shf" if verdict.ok else "not-shf",
        "witness": [list(p) for p in verdict.witness.parts] if verdict.witness else None,
        "families_checked": verdict.families_checked,
        "rows_probed": verdict.rows_probed,
    }
    print(io.report(inv, **payload))
    return 0 if verdict.ok else 1


def _cmd_construct(args) -> int:
    inv = {
        "command": "construct", "design": args.design, "l": args.strength,
        "w1": args.w1, "w2": args.w2, "out": args.out,
        "coverage": args.coverage, "check": args.check,
    }
    try:
        try:
            h = construct.design_from_name(args.design)
        except ValueError:
            h = io.read_hypergraph(args.design)
    except (OSError, ValueError) as exc:
        return _fail("construct", str(exc))
    mode = construct.Coverage(args.coverage)
    failure = construct.coverage_failure(h, args.strength, mode)
    if failure is not None:
        subset, count = failure
        print(io.report(inv, result="coverage-failure",
                        subset=list(subset), edges_containing=count))
        return 1
    try:
        a = construct.construct_strong_shf(h, args.strength, args.w1, args.w2,
                                           check=args.check)
    except ValueError as exc:
        return _fail("construct", str(exc))
    if args.out:
        io.write_matrix(args.out, a)
    ones = f"1^{args.w1}" if args.w1 > 1 else "1"
    shf = f"SHF({a.num_rows}; {a.num_cols}, {a.m}, {{{ones},{args.w2}}})"
    print(io.report(inv, result="constructed", shf=shf,
                    N=a.num_rows, n=a.num_cols, m=a.m))
    return 0


def _cmd_bound(args) -> int:
    if args.upper:
        inv = {"command": "bound", "bound": "upper", "N": args.N, "m": args.m,
               "type": args.type}
        try:
            ty = io.parse_type_string(args.type)
            combined = bounds.upper_bound_cols(args.N, args.m, ty)
        except ValueError as exc:
            return _fail("bound", str(exc))
        print(io.report(inv, max_n=combined.max_n, sources=list(combined.sources)))
        return 0
    if args.lower_rows:
        w1, w2, m = args.lower_rows
        inv = {"command": "bound", "bound": "lower-rows", "w1": w1, "w2": w2, "m": m}
        try:
            rep = bounds.lower_bound_rows(w1, w2, m)
        except ValueError as exc:
            return _fail("bound", str(exc))
        print(io.report(inv, value=rep.value, kind=rep.kind.value, source=rep.source,
                        applicable=rep.applicable, reason=rep.reason))
        return 0
    if args.covering:
        n, k, l = args.covering
        inv = {"command": "bound", "bound": "covering", "n": n, "k": k, "l": l}
        try:
            rep = bounds.covering_lower_bound(n, k, l)
        except ValueError as exc:
            return _fail("bound", str(exc))
        print(io.report(inv, value=rep.value, kind=rep.kind.value, source=rep.source))
        return 0
    if args.schonheim:
        n, k, l = args.schonheim
        inv = {"command": "bound", "bound": "schonheim", "n": n, "k": k, "l": l}
        try:
            value = bounds.schonheim_size(n, k, l)
        except ValueError as exc:
            return _fail("bound", str(exc))
        print(io.report(inv, value=value))
        return 0
    return _fail("bound", "choose one of --upper, --lower-rows, --covering, --schonheim")


def _stats_dict(stats: search.SearchStats) -> dict:
    return {
        "nodes_expanded": stats.nodes_expanded,
        "canonical_rejections": stats.canonical_rejections,
        "separation_rejections": stats.separation_rejections,
        "max_depth": stats.max_depth,
        "wall_time": round(stats.wall_time, 3),
    }


def _cmd_search(args) -> int:
    inv = {
        "command": "search", "N": args.N, "n": args.n, "m": args.m,
        "type": args.type, "mode": args.mode, "threads": args.threads,
        "find_max": args.find_max,
    }
    audit = args.threads == 1
    try:
        ty = io.parse_type_string(args.type)
    except ValueError as exc:
        return _fail("search", str(exc))
    try:
        if args.find_max:
            result = search.max_n(args.N, args.m, ty, mode=args.mode,
                                  start_n=args.n, threads=args.threads,
                                  node_budget=args.node_budget)
            print(io.report(inv, result="max-n", n_star=result.n_star,
                            matrix=[list(r) for r in result.witness.entries],
                            stats=_stats_dict(result.exhaustion_stats), audit=audit))
            return 0
        outcome = search.search_shf(args.N, args.n, args.m, ty, mode=args.mode,
                                    threads=args.threads,
                                    node_budget=args.node_budget)
    except search.SearchInconclusive as exc:
        payload = {"result": "inconclusive", "detail": str(exc), "audit": audit}
        if exc.stats is not None:
            payload["stats"] = _stats_dict(exc.stats)
        if exc.largest_n is not None:
            payload["largest_verified_n"] = exc.largest_n
        print(io.report(inv, **payload))
        return 1
    except ValueError as exc:
        return _fail("search", str(exc))
    payload = {
        "result": "found" if outcome.found else "exhausted",
        "mode": outcome.mode,
        "stats": _stats_dict(outcome.stats),
        "audit": audit,
        "matrix": [list(r) for r in outcome.matrix.entries] if outcome.found else None,
    }
    print(io.report(inv, **payload))
    return 0 if outcome.found else 1


def _cmd_canon(args) -> int:
    inv = {"command": "canon", "matrices": [args.matrix] + ([args.other] if args.other else [])}
    try:
        a = io.read_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        return _fail("canon", str(exc))
    if args.other:
        try:
            b = io.read_matrix(args.other)
        except (OSError, ValueError) as exc:
            return _fail("canon", str(exc))
        iso = symmetry.are_isomorphic(a, b)
        print(io.report(inv, isomorphic=iso))
        return 0 if iso else 1
    canon = symmetry.canonical_form(a)
    print(io.report(inv, canonical=[list(r) for r in canon.entries], m=canon.m))
    return 0


def _cmd_scan(args) -> int:
    inv = {"command": "scan", "matrix": args.matrix}
    try:
        a = io.read_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        return _fail("scan", str(exc))
    hit = symmetry.find_forbidden(a)
    if hit is None:
        print(io.report(inv, found=False))
        return 0
    print(io.report(inv, found=True, config=hit.config,
                    rows=list(hit.rows), cols=list(hit.cols)))
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shfkit",
        description="Separating hash families: verify, construct, bound, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a matrix file against a type")
    p.add_argument("matrix")
    p.add_argument("--type", required=True, help='e.g. "{1^2,5}" or "{2,2}"')
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("construct", help="build a strong SHF from a design")
    p.add_argument("design", help='registry name ("fano", "sts(9)", '
                                  '"cyclic(7;0,1,3)") or a hypergraph file')
    p.add_argument("-l", "--strength", type=int, required=True)
    p.add_argument("--w1", type=int, required=True)
    p.add_argument("--w2", type=int, required=True)
    p.add_argument("-o", "--out")
    p.add_argument("--coverage", choices=[c.value for c in construct.Coverage],
                   default=construct.Coverage.AT_LEAST_ONE.value)
    p.add_argument("--check", action="store_true",
                   help="re-verify the result with the full verifier")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("bound", help="evaluate closed-form bounds")
    p.add_argument("--upper", action="store_true")
    p.add_argument("-N", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--type")
    p.add_argument("--lower-rows", nargs=3, type=int, metavar=("W1", "W2", "M"))
    p.add_argument("--covering", nargs=3, type=int, metavar=("N", "K", "L"))
    p.add_argument("--schonheim", nargs=3, type=int, metavar=("N", "K", "L"))
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("search", help="exhaustive existence search")
    p.add_argument("-N", type=int, required=True)
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--type", required=True)
    p.add_argument("--mode", choices=["certified", "heuristic"], default="certified")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--find-max", action="store_true",
                   help="increment n until exhaustion (-n is the starting n)")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("canon", help="canonical form / isomorphism test")
    p.add_argument("matrix")
    p.add_argument("other", nargs="?")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("scan", help="scan for forbidden 4x4 configurations")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "search" and not args.find_max and args.n is None:
        parser.error("search needs -n (or --find-max)")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
