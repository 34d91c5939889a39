"""Command-line front end: classification, axiom verification, tables, series.

Exit codes: 0 success, 1 mathematical failure (with a printed witness),
2 usage or resource-cap errors.  All output is deterministic for a fixed
invocation; JSON payloads carry a schema version.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import checks as checks_mod
from .axioms import MultiplicityError, support_matching, verify as verify_axioms
from .complexes import (
    ResourceLimitError,
    check_resource_cap,
    excess_signature,
    face_table,
)
from .matchings import construct_matching
from .rules import (
    ALIASES,
    RuleSet,
    TABLE_ROW_ORDER,
    alias_of,
    classify,
    orbit_census,
    orbits,
    valid_rulesets,
)
from .series import (
    Series,
    backward_only_series,
    backward_saturated_series,
    catalan_series,
    delannoy_egf,
    delannoy_genfunc,
    g_k,
    lex_mixed_forest_poly,
    node_enriched_egf,
    psi_series,
    refined_backward_series,
    revlex_saturated_series,
    simion_saturated_series,
)

SCHEMA = 1


class UsageError(Exception):
    pass


def _emit_json(payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(payload, sort_keys=True))


def _parse_ruleset(text: str) -> RuleSet:
    try:
        return RuleSet.parse(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse rule code {text!r}: {exc}") from None


def _code_info(rs: RuleSet) -> dict:
    return {
        "code": rs.code,
        "letters": rs.letters,
        "class": classify(rs).value,
        "alias": alias_of(rs),
        "rules": rs.verbose(),
    }


def cmd_classify(args: argparse.Namespace) -> int:
    if args.table4:
        rows = []
        for name in TABLE_ROW_ORDER:
            rs = ALIASES[name]
            rows.append(
                {
                    "alias": name,
                    "class": classify(rs).value,
                    "letters": rs.letters,
                    "hhtt": rs.hhtt,
                    "tthh": rs.tthh,
                    "signature": excess_signature(rs, 4).runs(),
                }
            )
        if args.format == "json":
            _emit_json({"rows": rows})
        elif args.format == "csv":
            writer = csv.writer(sys.stdout)
            writer.writerow(["alias", "class", "letters", "hhtt", "tthh", "signature"])
            for row in rows:
                writer.writerow([row[k] for k in ("alias", "class", "letters", "hhtt", "tthh", "signature")])
        else:
            for row in rows:
                print(
                    f"{row['alias']:<13} {row['class']:<9} {row['letters']} "
                    f"hhtt={row['hhtt']:<5} tthh={row['tthh']:<5} {row['signature']}"
                )
        return 0

    if args.all:
        codes = [RuleSet.from_code(c) for c in range(64)]
    elif args.codes:
        codes = [_parse_ruleset(text) for text in args.codes]
    else:
        raise UsageError("classify needs codes, --all or --table4")

    infos = [_code_info(rs) for rs in codes]
    payload: dict = {"codes": infos}
    if args.all:
        census = {label.value: sizes for label, sizes in orbit_census().items()}
        payload["valid"] = len(valid_rulesets())
        payload["invalid"] = 64 - payload["valid"]
        payload["orbits"] = [
            {
                "representative": orbit[0].letters,
                "class": classify(orbit[0]).value,
                "members": [rs.letters for rs in orbit],
            }
            for orbit in orbits()
        ]
        payload["census"] = census
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["code", "letters", "class", "alias"])
        for info in infos:
            writer.writerow([info["code"], info["letters"], info["class"], info["alias"] or ""])
    else:
        for info in infos:
            alias = f" alias={info['alias']}" if info["alias"] else ""
            print(f"{info['code']:>2} {info['letters']} class={info['class']}{alias}")
        if args.all:
            sizes = ", ".join(
                f"{label}: {len(v)} orbit(s) {v}" for label, v in sorted(payload["census"].items())
            )
            print(
                f"valid: {payload['valid']}  invalid: {payload['invalid']}  "
                f"orbits: {len(payload['orbits'])}  [{sizes}]"
            )
    return 0


def _verify_one(code: int, n: int, all_witnesses: bool) -> dict:
    rs = RuleSet.from_code(code)
    reports = verify_axioms(rs, n, all_witnesses)
    return {
        "code": _code_info(rs),
        "n": n,
        "reports": [r.to_json_dict() for r in reports],
        "verdict": "pass" if all(r.passed for r in reports) else "fail",
    }


def _verify_worker(payload: tuple[int, int, bool]) -> dict:
    return _verify_one(*payload)


def cmd_verify(args: argparse.Namespace) -> int:
    check_resource_cap(args.n, args.force)
    if args.all:
        codes = list(range(64))
    elif args.code:
        codes = [_parse_ruleset(args.code).code]
    else:
        raise UsageError("verify needs a code or --all")

    jobs = [(code, args.n, args.all_witnesses) for code in codes]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_worker, jobs))
    else:
        results = [_verify_worker(job) for job in jobs]

    if args.all:
        # the class labels predict the verdicts only from n = 5 upward; below
        # that the tool reports per-n verdicts without a claim
        mismatched = [
            r
            for r in results
            if (r["verdict"] == "pass") != (r["code"]["class"] != "invalid")
        ]
        applicable = args.n >= 5
        payload = {
            "n": args.n,
            "results": results,
            "passes": sum(r["verdict"] == "pass" for r in results),
            "failures": sum(r["verdict"] == "fail" for r in results),
            "matches_classification": (not mismatched) if applicable else None,
        }
        if args.format == "json":
            _emit_json(payload)
        else:
            for r in results:
                print(f"{r['code']['letters']} class={r['code']['class']:<9} {r['verdict']}")
            verdict_note = (
                f"matches classification: {not mismatched}"
                if applicable
                else "classification applies from n=5 up"
            )
            print(f"pass: {payload['passes']}  fail: {payload['failures']}  {verdict_note}")
        return 0 if not (applicable and mismatched) else 1

    result = results[0]
    if args.format == "json":
        _emit_json(result)
    else:
        print(f"code {result['code']['letters']} class={result['code']['class']} n={result['n']}")
        for report in result["reports"]:
            print(f"  {report['axiom']}: {report['verdict']}")
            for witness in report["witnesses"]:
                print(f"    witness: {json.dumps(witness, sort_keys=True)}")
    return 0 if result["verdict"] == "pass" else 1


def _print_table(table, fmt: str) -> None:
    if fmt == "json":
        _emit_json(table.to_json_dict())
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["i", "j", "count"])
        for i, j, c in table.to_csv_rows():
            writer.writerow([i, j, c])
    else:
        print(f"n={table.n} selector={table.selector} total={table.total()}")
        for i, j, c in table.cells():
            print(f"  forward={i} backward={j}: {c}")


def cmd_faces(args: argparse.Namespace) -> int:
    rs = _parse_ruleset(args.code)
    table = face_table(rs, args.n, args.selector, force=args.force)
    if args.refined or args.selector != "all":
        _print_table(table, args.format)
    else:
        dims = table.by_dimension()
        if args.format == "json":
            _emit_json(
                {
                    "n": table.n,
                    "selector": table.selector,
                    "by_dimension": [[k, dims[k]] for k in sorted(dims)],
                }
            )
        elif args.format == "csv":
            writer = csv.writer(sys.stdout)
            writer.writerow(["arrows", "count"])
            for k in sorted(dims):
                writer.writerow([k, dims[k]])
        else:
            print(f"n={table.n} total={table.total()}")
            for k in sorted(dims):
                print(f"  {k} arrows: {dims[k]}")
    return 0


def cmd_facets(args: argparse.Namespace) -> int:
    args.selector = "facets"
    args.refined = True
    return cmd_faces(args)


def cmd_excess(args: argparse.Namespace) -> int:
    if args.all_orbits:
        rows = []
        for name in TABLE_ROW_ORDER:
            rs = ALIASES[name]
            rows.append(
                {
                    "alias": name,
                    "class": classify(rs).value,
                    "signature": excess_signature(rs, args.n).runs(),
                }
            )
        if args.format == "json":
            _emit_json({"n": args.n, "rows": rows})
        elif args.format == "csv":
            writer = csv.writer(sys.stdout)
            writer.writerow(["alias", "class", "signature"])
            for row in rows:
                writer.writerow([row["alias"], row["class"], row["signature"]])
        else:
            for row in rows:
                print(f"{row['alias']:<13} {row['class']:<9} {row['signature']}")
        return 0
    if not args.code:
        raise UsageError("excess needs --code or --all-orbits")
    rs = _parse_ruleset(args.code)
    signature = excess_signature(rs, args.n)
    if args.format == "json":
        _emit_json(
            {
                "code": _code_info(rs),
                "n": args.n,
                "signature": signature.runs(),
                "degrees": list(signature.degrees),
            }
        )
    else:
        print(signature.runs())
    return 0


def cmd_match(args: argparse.Namespace) -> int:
    rs = _parse_ruleset(args.rules)
    tails = [int(x) for x in args.tails.replace(",", " ").split()]
    heads = [int(x) for x in args.heads.replace(",", " ").split()]
    valid = classify(rs).value != "invalid"
    try:
        brute = support_matching(rs, tails, heads)
    except MultiplicityError as exc:
        payload = {
            "code": _code_info(rs),
            "tails": list(exc.tails),
            "heads": list(exc.heads),
            "unique": False,
            "count": exc.count,
            "matchings": [[[a.tail, a.head] for a in sorted(m)] for m in exc.matchings],
        }
        if args.format == "json":
            _emit_json(payload)
        else:
            print(f"not unique: {exc.count} matchings found")
            for m in exc.matchings:
                print("  " + " ".join(f"{a.tail}->{a.head}" for a in sorted(m)))
        return 1
    agrees = construct_matching(rs, tails, heads) == brute if valid else None
    payload = {
        "code": _code_info(rs),
        "tails": sorted(tails),
        "heads": sorted(heads),
        "matching": [[a.tail, a.head] for a in sorted(brute)],
        "unique": True,
        "agrees_with_construction": agrees,
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        arrows = " ".join(f"{a.tail}->{a.head}" for a in sorted(brute))
        note = "construction agrees: %s" % agrees if valid else "invalid code, brute force only"
        print(f"{arrows}  (unique: yes, {note})")
    return 0 if agrees in (True, None) else 1


_DUMPABLE = {
    "catalan": lambda a: catalan_series(a.zorder),
    "backward-only": lambda a: backward_only_series(a.xyorder, a.zorder),
    "backward-saturated": lambda a: backward_saturated_series(a.xyorder, a.zorder),
    "refined-backward": lambda a: refined_backward_series(a.index, a.xyorder, a.zorder),
    "simion-thth-nest": lambda a: simion_saturated_series("THTH", a.xyorder, a.xyorder, a.zorder),
    "simion-htht-nest": lambda a: simion_saturated_series("HTHT", a.xyorder, a.xyorder, a.zorder),
    "revlex-saturated": lambda a: revlex_saturated_series(a.xyorder, a.xyorder, a.zorder),
    "node-egf": lambda a: node_enriched_egf(a.uvorder, a.uvorder),
    "delannoy-egf": lambda a: delannoy_egf(a.uvorder, a.uvorder),
    "delannoy-genfunc": lambda a: delannoy_genfunc(a.uvorder, a.uvorder, 2 * a.uvorder),
    "psi": lambda a: psi_series(a.index, a.zorder),
    "forest-poly": lambda a: g_k(a.index),
    "mixed-forest-poly": lambda a: lex_mixed_forest_poly(a.index, 0),
}


def cmd_series_dump(args: argparse.Namespace) -> int:
    builder = _DUMPABLE.get(args.which)
    if builder is None:
        raise UsageError(f"unknown series {args.which!r}; known: {sorted(_DUMPABLE)}")
    series: Series = builder(args)
    writer = csv.writer(sys.stdout)
    writer.writerow(list(series.ring.variables) + ["numerator", "denominator"])
    for exps, coeff in series.items():
        writer.writerow(list(exps) + [coeff.numerator, coeff.denominator])
    return 0


def _check_worker(payload: tuple[str, int]) -> dict:
    name, zorder = payload
    return checks_mod.CHECKS[name](zorder).to_json_dict()


def cmd_series_check(args: argparse.Namespace) -> int:
    if args.names:
        names = args.names
    else:
        names = sorted(checks_mod.CHECKS)
    unknown = [n for n in names if n not in checks_mod.CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; known: {sorted(checks_mod.CHECKS)}")
    jobs = [(name, args.zorder) for name in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_worker, jobs))
    else:
        results = [_check_worker(job) for job in jobs]
    ok = all(r["pass"] for r in results)
    if args.format == "json":
        _emit_json({"zorder": args.zorder, "checks": results, "verdict": "pass" if ok else "fail"})
    else:
        for r in results:
            print(f"{'PASS' if r['pass'] else 'FAIL'} {r['name']}: {r['detail']}")
        print(f"verdict: {'pass' if ok else 'fail'} ({len(results)} checks)")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootflags",
        description=(
            "Uniform flag triangulations of the root polytope boundary: "
            "classify rule codes, verify the support/linkage axioms, dump "
            "face tables and check exact series identities."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("classify", help="class labels, orbits and the census table")
    p.add_argument("codes", nargs="*", help="rule codes (integer, letters, alias, or WORD:choice list)")
    p.add_argument("--all", action="store_true", help="classify all 64 codes and print the orbit census")
    p.add_argument("--table4", action="store_true", help="the 15 orbit rows with excess signatures at n=4")
    add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the permissibility, support and linkage checks")
    p.add_argument("code", nargs="?", help="rule code")
    p.add_argument("--all", action="store_true", help="verify all 64 codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all-witnesses", action="store_true")
    p.add_argument("--force", action="store_true", help="override the resource cap")
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("faces", help="face counts by forward/backward arrows")
    p.add_argument("--code", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--selector", choices=("all", "saturated", "facets"), default="all")
    p.add_argument("--refined", action="store_true", help="full (i, j) table instead of per-dimension totals")
    p.add_argument("--force", action="store_true", help="override the resource cap")
    add_format(p)
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("facets", help="facet counts (n-arrow faces)")
    p.add_argument("--code", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--force", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("excess", help="excess-degree signatures")
    p.add_argument("--code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all-orbits", action="store_true", help="signatures of the 15 orbit representatives")
    add_format(p)
    p.set_defaults(func=cmd_excess)

    p = sub.add_parser("match", help="construct the unique support matching")
    p.add_argument("--rules", required=True)
    p.add_argument("--tails", required=True)
    p.add_argument("--heads", required=True)
    add_format(p)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("series", help="series utilities")
    series_sub = p.add_subparsers(dest="series_command", required=True)

    d = series_sub.add_parser("dump", help="emit series coefficients as CSV")
    d.add_argument("--which", required=True)
    d.add_argument("--zorder", type=int, default=8)
    d.add_argument("--xyorder", type=int, default=8)
    d.add_argument("--uvorder", type=int, default=6)
    d.add_argument("--index", type=int, default=1, help="i or k for the indexed families")
    d.set_defaults(func=cmd_series_dump)

    c = series_sub.add_parser("check", help="run oracle-vs-closed-form comparisons")
    c.add_argument("--names", nargs="*", help="subset of checks to run")
    c.add_argument("--all", action="store_true", help="run every check (default)")
    c.add_argument("--zorder", type=int, default=5)
    c.add_argument("--jobs", type=int, default=1)
    add_format(c)
    c.set_defaults(func=cmd_series_check)

    p = sub.add_parser("series-check", help="alias for 'series check'")
    p.add_argument("--names", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--zorder", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_series_check)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ResourceLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
