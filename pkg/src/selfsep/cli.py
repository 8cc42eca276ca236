"""Command-line interface.

Subcommands: info, m, separable, witness, bounds, filter, diffbasis,
qformula, reproduce.  Human-readable output prints points 1-based (the
usual convention in the literature); JSON payloads are 0-based with an
explicit "indexing" field and a versioned schema tag.  Exit codes:
0 success, 1 usage error, 2 capacity or budget exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Optional

from .bounds import (
    bound_report,
    min_difference_basis,
    neumann_lower,
    product_action_upper,
    singer_difference_set,
    sym_wreath_exact,
    transversal_difference_basis,
    trivial_upper,
    wreath_bounds,
)
from .engine import (
    compute_m,
    counting_filter,
    is_self_separable,
    order_filter,
    random_witness_search,
)
from .group import CapacityError
from .qformulas import (
    compare_nd_with_oracle,
    compare_ts_with_oracle,
    gaussian_binomial,
    nd_cardinality,
    ts_cardinality,
)
from .reproduce import SUITES, run_suite
from .specparse import SpecError, parse_group_spec

SCHEMA = "selfsep/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2


def _env_budget(default: Optional[float]) -> Optional[float]:
    raw = os.environ.get("SELFSEP_BUDGET_SECS")
    if raw:
        return float(raw)
    return default


def _env_max_degree() -> Optional[int]:
    raw = os.environ.get("SELFSEP_MAX_DEGREE")
    return int(raw) if raw else None


def _one_based(points) -> str:
    return " ".join(str(p + 1) for p in points)


def _rational(x: Fraction) -> dict[str, str]:
    return {"numerator": str(x.numerator), "denominator": str(x.denominator)}


def _emit(args, payload: dict[str, Any], human_lines: list[str],
          csv_rows: Optional[list[dict[str, Any]]] = None) -> None:
    report = {
        "schema": SCHEMA,
        "command": " ".join(sys.argv[1:]),
        "indexing": "0-based",
        "payload": payload,
        "elapsed_secs": round(time.monotonic() - args._start, 3),
    }
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if getattr(args, "csv", None) and csv_rows:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(csv_rows[0]))
            writer.writeheader()
            writer.writerows(csv_rows)
    for line in human_lines:
        print(line)


def _parse_spec_arg(text: str):
    try:
        return parse_group_spec(text)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        print(GRAMMAR_HELP, file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


GRAMMAR_HELP = """group-spec grammar (whitespace- and case-insensitive, 0-based points):
  spec  := atom decorator* | spec "wr" spec ("@imprimitive" | "@product")
  atom  := sym:n | alt:n | cyclic:n | dihedral:n | mathieu:11|12
         | agl1:q | agammal1:q | agl:d,q
         | psl:d,q | pgl:d,q | pgammal:d,q
         | gl:d,q | sl:d,q | sp:d,q | gu:d,q | go:eps,d,q
         | perm:degree:[(cycles),(cycles),...]
  decorator := @natural | @regular | @ksubsets:k | @grass:k
             | @isotropic:k | @nondeg:[subtype,]k | @cosets:[(cycles),...]
examples: sym:5@ksubsets:2   cyclic:7@regular   gl:4,2@grass:2
          sym:2 wr sym:3 @imprimitive"""


def cmd_info(args) -> int:
    act = _parse_spec_arg(args.spec)
    g = act.group
    blocks = g.block_systems() if g.is_transitive() else []
    payload = {
        "spec": args.spec,
        "name": act.name,
        "degree": act.degree,
        "order": str(g.order),
        "transitive": g.is_transitive(),
        "primitive": g.is_transitive() and not blocks,
        "block_systems": [
            {"block_size": b.block_size, "block_count": b.block_count}
            for b in blocks
        ],
        "generators": [p.cycle_string() for p in g.generators],
        "kernel_order": str(act.kernel_order),
    }
    lines = [
        f"group      {act.name}",
        f"degree     {act.degree}",
        f"order      {g.order}",
        f"transitive {g.is_transitive()}",
        f"primitive  {payload['primitive']}",
    ]
    if blocks:
        lines.append("blocks     " + "; ".join(
            f"{b.block_count} x {b.block_size}" for b in blocks))
    if act.kernel_order > 1:
        lines.append(f"kernel     order {act.kernel_order} (action not faithful)")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_m(args) -> int:
    act = _parse_spec_arg(args.spec)
    cap = _env_max_degree()
    if cap is not None and act.degree > cap:
        print(f"error: degree {act.degree} exceeds SELFSEP_MAX_DEGREE={cap}",
              file=sys.stderr)
        return EXIT_CAPACITY
    budget = _env_budget(args.budget_secs)
    try:
        res = compute_m(
            act.group, strategy=args.strategy, budget_secs=budget,
            max_sets=args.max_sets,
            use_homogeneity=not args.no_homogeneity,
        )
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    payload = {
        "spec": args.spec,
        "degree": act.degree,
        "order": str(act.group.order),
        "m": res.m,
        "exact": res.exact,
        "minimal_witness": res.minimal_witness,
        "lower_bound_used": res.lower_bound_used,
        "upper_bound": res.upper_bound,
        "sizes_exhausted": res.sizes_exhausted,
        "homogeneity_used": res.homogeneity_used,
        "strategy": res.strategy,
    }
    lines = []
    if res.exact:
        lines.append(f"m({act.name}) = {res.m}")
        lines.append(
            f"witness (1-based points): {_one_based(res.minimal_witness)}")
    else:
        lines.append(f"m({act.name}) not settled within budget")
        exhausted = res.sizes_exhausted[-1][0] if res.sizes_exhausted else None
        lines.append(f"largest fully exhausted size: {exhausted}")
    lines.append(
        f"bracket [{res.lower_bound_used}, {res.upper_bound}], "
        f"homogeneity prefix {res.homogeneity_used}, strategy {res.strategy}")
    rows = [{"size": s, "sets_tested": c} for s, c in res.sizes_exhausted]
    _emit(args, payload, lines, rows or None)
    return EXIT_OK if res.exact else EXIT_CAPACITY


def cmd_separable(args) -> int:
    act = _parse_spec_arg(args.spec)
    try:
        pts = [int(x) for x in args.set.split(",") if x != ""]
    except ValueError:
        print("error: --set expects comma-separated 0-based points",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        res = is_self_separable(act.group, pts, strategy=args.strategy)
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    payload = {
        "spec": args.spec,
        "set": sorted(pts),
        "verdict": res.verdict,
        "witness": res.witness.cycle_string() if res.witness else None,
        "witness_images": list(res.witness.images) if res.witness else None,
        "strategy": res.strategy,
        "nodes_explored": res.nodes_explored,
    }
    lines = [f"set {{{_one_based(sorted(pts))}}} is {res.verdict}"]
    if res.witness:
        lines.append(f"separating element: {res.witness.cycle_string()}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_witness(args) -> int:
    act = _parse_spec_arg(args.spec)
    budget = _env_budget(args.budget_secs)
    found = random_witness_search(act.group, args.size,
                                  budget_secs=budget or 60.0,
                                  seed=args.seed)
    if found is None:
        payload = {"spec": args.spec, "size": args.size, "found": False,
                   "seed": args.seed}
        _emit(args, payload, ["no witness found within budget "
                              "(proves nothing)"])
        return EXIT_CAPACITY
    pts, cert = found
    payload = {
        "spec": args.spec, "size": args.size, "found": True,
        "witness_set": pts, "seed": args.seed,
        "nodes_explored": cert.nodes_explored,
    }
    lines = [
        f"non-separable {args.size}-set found (1-based): {_one_based(pts)}",
        f"certified by exhaustive backtrack ({cert.nodes_explored} nodes)",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_bounds(args) -> int:
    act = _parse_spec_arg(args.spec)
    rep = bound_report(act.group)
    rows = [{"bound": name, "direction": direction, "value": value,
             "provenance": name}
            for name, direction, value in rep.rows]
    payload = {
        "spec": args.spec,
        "degree": rep.n,
        "stabilizer_order": str(rep.stabilizer_order),
        "lower": rep.lower,
        "upper": rep.upper,
        "rows": rows,
    }
    lines = [f"degree {rep.n}, point stabilizer order {rep.stabilizer_order}"]
    for row in rows:
        lines.append(
            f"  {row['direction']:5} {row['value']:>6}   [{row['provenance']}]")
    if " wr " in f" {args.spec} " or "wr" in args.spec.replace(" ", ""):
        lines.append("hint: wreath brackets via `selfsep qformula` or the "
                     "sym-wreath suite")
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_filter(args) -> int:
    act = _parse_spec_arg(args.spec)
    try:
        rep = counting_filter(act.group, compute_r=args.with_r)
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    passed_order, threshold = order_filter(act.degree, act.group.order)
    payload = {
        "spec": args.spec,
        "degree": rep.n,
        "order": str(rep.order),
        "parity": rep.parity,
        "counting_sum": str(rep.sum_value),
        "counting_threshold": str(rep.threshold),
        "counting_passed": rep.passed,
        "r_orbit_count": rep.r_orbit_count,
        "order_threshold": _rational(threshold),
        "order_passed": passed_order,
    }
    lines = [
        f"counting filter ({rep.parity} degree): sum {rep.sum_value} vs "
        f"binom threshold {rep.threshold} -> "
        f"{'pass' if rep.passed else 'FAIL (ceiling impossible)'}",
        f"order filter: |G| = {rep.order} vs threshold "
        f"{threshold.numerator}/{threshold.denominator} -> "
        f"{'pass' if passed_order else 'FAIL (ceiling impossible)'}",
    ]
    if rep.r_orbit_count is not None:
        lines.append(f"orbit count on half-size subsets: {rep.r_orbit_count}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_diffbasis(args) -> int:
    if args.method == "singer":
        if args.q is None:
            print("error: --method singer needs --q", file=sys.stderr)
            return EXIT_USAGE
        db = singer_difference_set(args.q)
        label = f"cyclic group of order {db.group_order}"
    else:
        act = _parse_spec_arg(args.spec)
        if args.method == "min":
            budget = _env_budget(args.budget_secs)
            db = min_difference_basis(act.group, budget_secs=budget)
        else:
            db = transversal_difference_basis(act.group, seed=args.seed)
        label = act.name
    payload = {
        "group": label,
        "order": str(db.group_order),
        "size": db.size,
        "elements": db.elements,
        "planar": db.planar,
        "exact_minimum": db.exact,
        "method": db.method,
    }
    lines = [
        f"difference basis for {label} (order {db.group_order}): "
        f"size {db.size} via {db.method}",
        f"elements (indices): {db.elements}",
        f"planar: {db.planar}   exact minimum: {db.exact}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_qformula(args) -> int:
    rows: list[dict[str, Any]] = []
    lines: list[str] = []
    if args.kind == "gauss":
        n, k, q = args.params_int(3)
        val = gaussian_binomial(n, k, q)
        rows.append({"formula": f"[{n},{k}]_{q}", "value": str(val)})
        lines.append(f"[{n},{k}]_{q} = {val}")
        if args.compare_oracle:
            from .qformulas import count_subspaces_oracle

            oracle = count_subspaces_oracle(None, n, q, "any", k)
            rows[-1]["oracle"] = str(oracle)
            rows[-1]["match"] = val == oracle
            lines.append(f"oracle enumeration: {oracle} "
                         f"({'match' if val == oracle else 'MISMATCH'})")
    elif args.kind in ("ts", "nd"):
        family = args.params[0]
        rest = [int(x) for x in args.params[1:4]]
        d, k, q = rest
        subtype = args.params[4] if len(args.params) > 4 else None
        if args.kind == "ts":
            omega, a = ts_cardinality(family, d, k, q)
        else:
            omega, a = nd_cardinality(family, d, k, q, subtype)
        rows.append({"family": family, "d": d, "k": k, "q": q,
                     "subtype": subtype or "", "domain": str(omega),
                     "anchored": str(a)})
        lines.append(f"domain size {omega}, anchored set size {a}")
        if args.compare_oracle:
            if args.kind == "ts":
                co, ca = compare_ts_with_oracle(family, d, k, q)
            else:
                co, ca = compare_nd_with_oracle(family, d, k, q, subtype)
            rows[-1]["domain_oracle"] = str(co.oracle)
            rows[-1]["domain_match"] = co.matches
            rows[-1]["anchored_oracle"] = str(ca.oracle)
            rows[-1]["anchored_match"] = ca.matches
            lines.append(
                f"oracle: domain {co.oracle} "
                f"({'match' if co.matches else 'MISMATCH'}), anchored "
                f"{ca.oracle} ({'match' if ca.matches else 'MISMATCH'})")
    else:
        print("error: qformula kind must be gauss, ts or nd", file=sys.stderr)
        return EXIT_USAGE
    payload = {"kind": args.kind, "rows": rows}
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    budget = _env_budget(args.budget_secs)
    try:
        result = run_suite(args.suite, budget)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    rows = [
        {"label": r.label, "provenance": r.provenance,
         "expected": r.expected, "actual": r.actual,
         "status": "pass" if r.passed else "FAIL"}
        for r in result.rows
    ]
    payload = {"suite": result.suite, "passed": result.passed, "rows": rows}
    lines = [f"suite {result.suite}"]
    for row in rows:
        lines.append(
            f"  [{row['status']:4}] {row['label']}: expected "
            f"{row['expected']}, got {row['actual']}  ({row['provenance']})")
    lines.append("suite result: " + ("PASS" if result.passed else "FAIL"))
    _emit(args, payload, lines, rows)
    if not result.passed:
        diff = [r for r in rows if r["status"] == "FAIL"]
        print(f"{len(diff)} row(s) failed", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfsep",
        description="separability computations for transitive permutation "
                    "groups",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="group spec (see grammar below)")
        p.add_argument("--json", help="write a JSON report to this path")
        p.add_argument("--csv", help="write a CSV projection to this path")

    p = sub.add_parser("info", help="degree, order, transitivity, blocks")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("m", help="compute the minimal non-separable size")
    common(p)
    p.add_argument("--strategy", default="auto",
                   choices=["auto", "enumeration", "backtrack"])
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--max-sets", type=int, default=None)
    p.add_argument("--no-homogeneity", action="store_true")
    p.set_defaults(func=cmd_m)

    p = sub.add_parser("separable", help="decide one set")
    common(p)
    p.add_argument("--set", required=True,
                   help="comma-separated 0-based points")
    p.add_argument("--strategy", default="auto",
                   choices=["auto", "enumeration", "backtrack"])
    p.set_defaults(func=cmd_separable)

    p = sub.add_parser("witness", help="random search for a non-separable set")
    common(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--budget-secs", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bounds", help="closed-form bounds with provenance")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("filter", help="counting and order filters")
    common(p)
    p.add_argument("--with-r", action="store_true",
                   help="also count orbits on half-size subsets")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("diffbasis", help="difference-basis searches")
    common(p)
    p.add_argument("--method", default="min",
                   choices=["min", "transversal", "singer"])
    p.add_argument("--q", type=int, default=None,
                   help="plane order for --method singer")
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_diffbasis)

    p = sub.add_parser("qformula", help="exact subspace-count formulas")
    p.add_argument("kind", choices=["gauss", "ts", "nd"])
    p.add_argument("params", nargs="+",
                   help="gauss: n k q | ts: family d k q | "
                        "nd: family d k q [subtype]")
    p.add_argument("--compare-oracle", action="store_true")
    p.add_argument("--json", help="write a JSON report to this path")
    p.add_argument("--csv", help="write a CSV projection to this path")
    p.set_defaults(func=cmd_qformula)

    p = sub.add_parser("reproduce", help="run an embedded-expectation suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--json", help="write a JSON report to this path")
    p.add_argument("--csv", help="write a CSV projection to this path")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._start = time.monotonic()

    def params_int(count: int) -> list[int]:
        if len(args.params) != count:
            parser.error(f"{args.kind} expects {count} parameters")
        return [int(x) for x in args.params]

    args.params_int = params_int
    try:
        return args.func(args)
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (SpecError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
