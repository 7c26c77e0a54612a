"""Command-line entry point.

Exit codes: 0 success/verified, 1 property failure (invalid input, or
strict inequality where --expect-equality demanded equality), 2 input
error, 3 budget exceeded, 4 internal theorem violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Any

from . import __version__
from .boxes import (
    BoxFamily,
    c_stats,
    is_keller_family,
    keller_pair,
    theorem_b_report,
)
from .census import ALL_SYMMETRIES, census, default_cell_budget, enumerate_tilings
from .errors import BudgetExceededError, KellerpackError, TheoremViolationError
from .hats import hat, hats_disjoint, verify_box_count
from .multipiles import is_multipile
from .serialization import (
    detect_and_load,
    dump_json,
    family_to_obj,
    fraction_str,
    load_json,
    system_from_obj,
    tiling_to_obj,
    tree_from_obj,
)
from .torus import (
    TorusSpec,
    TorusTiling,
    find_defect,
    p_params,
    theorem_c_report,
    to_box_family,
    validate_tiling,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_THEOREM = 4


def _config_dict(args: argparse.Namespace) -> dict[str, Any]:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    cfg["version"] = __version__
    return cfg


def _emit(args, payload: dict[str, Any]) -> None:
    payload = {"config": _config_dict(args), **payload}
    if getattr(args, "format", "json") == "text":
        for k, v in payload.items():
            if k != "config":
                print(f"{k}: {v}")
    else:
        json.dump(payload, sys.stdout, indent=2, default=str)
        print()


def _symmetry(args) -> frozenset[str]:
    if not args.symmetry:
        return ALL_SYMMETRIES
    flags = frozenset(args.symmetry.split(","))
    unknown = flags - ALL_SYMMETRIES - {"none"}
    if unknown:
        raise ValueError(f"unknown symmetry flags: {sorted(unknown)}")
    return frozenset() if flags == {"none"} else flags


def cmd_validate(args) -> int:
    try:
        obj = detect_and_load(args.path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(obj, TorusTiling):
        if validate_tiling(obj):
            _emit(args, {"valid": True})
            return EXIT_OK
        _emit(args, {"valid": False, "defect_cell": find_defect(obj)})
        return EXIT_PROPERTY
    assert isinstance(obj, BoxFamily)
    try:
        ok = is_keller_family(obj)
    except KellerpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    _emit(args, {"valid": ok})
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_analyze(args) -> int:
    try:
        obj = detect_and_load(args.path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if isinstance(obj, TorusTiling):
            if not validate_tiling(obj):
                print(f"error: invalid tiling, defect {find_defect(obj)}",
                      file=sys.stderr)
                return EXIT_PROPERTY
            params = p_params(obj)
            G = to_box_family(obj)
            stats = c_stats(G)
            report = theorem_c_report(obj) if obj.spec.is_uniform() else None
            payload = {
                "p_per_axis": [sorted(v) for v in params.per_axis],
                "p_total": params.total,
                "bound": report.bound if report else None,
                "c_per_axis": list(stats.c_per_axis),
                "c_total": stats.c_total,
                "size": len(G),
                "equality": report.equality if report else None,
                "multipile": is_multipile(G).verdict,
                "hidden_partitions": [sorted(h) for h in stats.hidden],
            }
        else:
            if not is_keller_family(obj):
                print("error: family violates Keller's condition", file=sys.stderr)
                return EXIT_PROPERTY
            stats = c_stats(obj)
            rep = theorem_b_report(obj)
            payload = {
                "c_per_axis": list(stats.c_per_axis),
                "c_total": stats.c_total,
                "size": rep.size,
                "equality": rep.equality,
                "multipile": is_multipile(obj).verdict,
                "hidden_partitions": [sorted(h) for h in stats.hidden],
            }
    except KellerpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    _emit(args, payload)
    if args.expect_equality and not payload.get("equality"):
        return EXIT_PROPERTY
    return EXIT_OK


def _parse_spec(args) -> TorusSpec:
    m = tuple(int(v) for v in args.m.split(","))
    if args.q:
        q = tuple(int(v) for v in args.q.split(","))
    else:
        total = 1
        for v in m:
            total *= v
        q = tuple(total for _ in m)
    return TorusSpec(m, q)


def cmd_enumerate(args) -> int:
    try:
        spec = _parse_spec(args)
        tilings = enumerate_tilings(
            spec, _symmetry(args), jobs=args.jobs, budget=args.budget
        )
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KellerpackError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.dump:
        with open(args.dump, "w") as fh:
            for t in tilings:
                fh.write(json.dumps(tiling_to_obj(t)) + "\n")
    _emit(args, {"count": len(tilings)})
    return EXIT_OK


def cmd_census(args) -> int:
    try:
        spec = _parse_spec(args)
        symmetry = _symmetry(args)
        row = census(spec, symmetry, jobs=args.jobs, budget=args.budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolationError as exc:
        print(f"theorem violation (library bug): {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (ValueError, KellerpackError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(
            ["m", "q", "symmetry", "total", "max_p", "bound", "equality",
             "multipiles"]
        )
        writer.writerow(
            [
                " ".join(map(str, row.m)),
                " ".join(map(str, row.q)),
                "+".join(row.symmetry),
                row.tilings_total,
                row.max_p,
                row.bound,
                row.equality_count,
                row.multipile_count,
            ]
        )
    else:
        _emit(
            args,
            {
                "m": list(row.m),
                "q": list(row.q),
                "symmetry": list(row.symmetry),
                "total": row.tilings_total,
                "p_histogram": row.p_histogram,
                "max_p": row.max_p,
                "bound": row.bound,
                "equality": row.equality_count,
                "multipiles": row.multipile_count,
                "conjectural": row.conjectural,
                "attaining_multipile": list(row.attaining_multipile),
            },
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(jobs=args.jobs, seed=args.seed)
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def cmd_build_multipile(args) -> int:
    try:
        obj = load_json(args.path)
        system = system_from_obj(obj["system"])
        tree = tree_from_obj(obj["tree"], system)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        from .multipiles import build_multipile

        G = build_multipile(system, tree)
    except KellerpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    out = family_to_obj(G)
    if args.out:
        dump_json(out, args.out)
        _emit(args, {"size": len(G), "written": args.out})
    else:
        json.dump(out, sys.stdout, indent=2)
        print()
    return EXIT_OK


def cmd_hat_check(args) -> int:
    try:
        obj = detect_and_load(args.path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(obj, TorusTiling):
        if not validate_tiling(obj):
            print("error: invalid tiling", file=sys.stderr)
            return EXIT_PROPERTY
        G = to_box_family(obj)
    else:
        G = obj
    try:
        violations = []
        from itertools import combinations

        for K, L in combinations(G.boxes, 2):
            if hats_disjoint(hat(G.system, K), hat(G.system, L)) != keller_pair(K, L):
                violations.append([G.boxes.index(K), G.boxes.index(L)])
        report = verify_box_count(G)
        payload = {
            "gamma1_violations": violations,
            "measure_sum": fraction_str(report.measure_sum),
            "box_count": len(G),
            "implied_size": report.implied_size,
            "holds": report.holds,
        }
    except KellerpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    _emit(args, payload)
    return EXIT_OK if not violations and report.holds else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kellerpack",
        description="Keller packings, cube tilings of tori, and their censuses",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=False):
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        if spec:
            p.add_argument("--m", required=True, help="comma-separated sides")
            p.add_argument(
                "--q", help="comma-separated resolutions; default prod(m) per axis"
            )
            p.add_argument("--symmetry",
                           help="comma list of translate,permute,reflect or 'none'")
            p.add_argument("--budget", type=int, default=default_cell_budget(),
                           help="cell budget (env KELLERPACK_CELL_BUDGET)")

    p = sub.add_parser("validate", help="check a tiling or box-family file")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="c-statistic / parameter report")
    p.add_argument("path")
    p.add_argument("--expect-equality", action="store_true")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="canonical tilings of a torus grid")
    common(p, spec=True)
    p.add_argument("--dump", help="write per-tiling JSONL to this path")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="census statistics for a torus grid")
    common(p, spec=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run the full verification suite")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build-multipile", help="construct a family from a tree")
    p.add_argument("path", help="JSON with 'system' and 'tree' keys")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_build_multipile)

    p = sub.add_parser("hat-check", help="hat disjointness and measure report")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_hat_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
