"""Command-line interface.

Exit codes: 0 all asserted suites pass, 1 a suite found a violation (a
reportable finding), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import cayfile, congruences, groups, loops, report, suites, transversals
from .errors import AlgebraError

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", type=int, default=None,
                   help="largest group order swept (per-suite defaults otherwise)")
    p.add_argument("--max-transversals", type=int, default=10_000,
                   help="enumerate exhaustively up to this many transversals per pair")
    p.add_argument("--sample", type=int, default=2000,
                   help="sample size when a pair overflows --max-transversals")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed for sampling")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--output", default=None, help="write the report to this path")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render summary figures into DIR")
    p.add_argument("--timing", action="store_true",
                   help="embed wall times in the report (breaks byte-determinism)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rloops",
        description="Exhaustive verification of transversal/right-loop structure "
                    "theorems over a catalog of small finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("suite", choices=suites.SUITE_ORDER + ("all",))
    _add_common_flags(verify)

    group_cmd = sub.add_parser("group", help="inspect a group table file")
    group_cmd.add_argument("action", choices=("validate", "info"))
    group_cmd.add_argument("file")

    loop_cmd = sub.add_parser("loop", help="inspect a right-loop table file")
    loop_cmd.add_argument("action", choices=("validate", "torsion", "derived-series", "solvable"))
    loop_cmd.add_argument("file")

    tr_cmd = sub.add_parser("transversals", help="survey transversals of a subgroup")
    tr_cmd.add_argument("file")
    tr_cmd.add_argument("--subgroup", required=True,
                        help="comma-separated element indices of the subgroup")
    tr_cmd.add_argument("--max-transversals", type=int, default=10_000)
    tr_cmd.add_argument("--sample", type=int, default=2000)
    tr_cmd.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_verify(args) -> int:
    names = list(suites.SUITE_ORDER) if args.suite == "all" else [args.suite]
    params = suites.SuiteParams(
        max_order=args.max_order,
        max_transversals=args.max_transversals,
        sample=args.sample,
        seed=args.seed,
    )
    suite_dicts, timings = suites.run_suites(names, params)
    if args.timing:
        for s in suite_dicts:
            s["timing_ms"] = round(timings[s["suite"]] * 1000, 3)
    rep = report.build_report(f"verify {args.suite}", params, suite_dicts)
    text = report.emit_report(rep, args.format, args.output)
    if args.output:
        print(f"report written to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    if args.figures:
        from . import figures

        written = figures.render_figures(rep, args.figures)
        print("figures: " + ", ".join(str(p) for p in written), file=sys.stderr)
    for name in names:
        print(f"{name}: {timings[name]:.2f}s", file=sys.stderr)
    return EXIT_PASS if rep["verdict"] == "pass" else EXIT_VIOLATION


def _cmd_group(args) -> int:
    g = cayfile.load_group_file(args.file)
    if args.action == "validate":
        print(f"valid group of order {g.order}")
        return EXIT_PASS
    series = groups.derived_series(g)
    print(f"order: {g.order}")
    print(f"abelian: {g.is_abelian}")
    print(f"solvable: {groups.is_solvable_group(g)}")
    print(f"derived series orders: {[s.order for s in series]}")
    print(f"elementary abelian 2-group: {groups.is_elementary_abelian_2(g)}")
    if g.order <= groups.DEFAULT_SUBGROUP_ENUM_CAP:
        subs = groups.all_subgroups(g)
        core_free = [h for h in subs if groups.core(g, h).order == 1]
        print(f"subgroups: {len(subs)} ({len(core_free)} core-free)")
    return EXIT_PASS


def _cmd_loop(args) -> int:
    s = cayfile.load_loop_file(args.file)
    if args.action == "validate":
        kind = "group (associative)" if loops.is_associative(s) else "right loop"
        print(f"valid {kind} of order {s.order}")
        return EXIT_PASS
    if args.action == "torsion":
        torsion = loops.torsion_group(s)
        distinct = sorted({p for _, p in torsion.generators})
        print(f"torsion group order: {torsion.order}")
        print(f"distinct deviation maps: {len(distinct)}")
        table, _ = groups.permutation_group(torsion.elements, max_order=torsion.order)
        print(f"elementary abelian 2-group: {groups.is_elementary_abelian_2(table)}")
        return EXIT_PASS
    series = congruences.derived_series(s)
    if args.action == "derived-series":
        for i, term in enumerate(series):
            print(f"S^({i}): {list(term.elements)}")
        return EXIT_PASS
    solvable = series[-1].elements == (0,)
    print(f"solvable: {solvable}")
    return EXIT_PASS


def _cmd_transversals(args) -> int:
    g = cayfile.load_group_file(args.file)
    try:
        h = cayfile.parse_subgroup_arg(g, args.subgroup)
    except (ValueError, AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    total = transversals.count_transversals(g, h)
    core_free = groups.core(g, h).order == 1
    print(f"subgroup order {h.order}, index {g.order // h.order}, core-free: {core_free}")
    print(f"transversals: {total}")
    if total <= args.max_transversals:
        stats = {"generating": 0, "solvable": 0, "solvable_generating": 0}
        for tr in transversals.enumerate_transversals(g, h, cap=args.max_transversals):
            bundle = transversals.induced_loop(tr)
            gen = transversals.is_generating(tr)
            solv = congruences.is_solvable(bundle.loop)
            stats["generating"] += gen
            stats["solvable"] += solv
            stats["solvable_generating"] += gen and solv
        print(f"generating: {stats['generating']}")
        print(f"solvable loops: {stats['solvable']}")
        print(f"solvable generating: {stats['solvable_generating']}")
        if g.order <= 24:
            classes = transversals.iso_classes(g, h, cap=args.max_transversals)
            print(f"isomorphism classes: {classes.count} (sizes {list(classes.class_sizes)})")
    else:
        import random

        rng = random.Random(f"{args.seed}:cli:{args.subgroup}")
        sampled = transversals.sample_transversals(g, h, args.sample, rng)
        gen = sum(transversals.is_generating(tr) for tr in sampled)
        print(f"sampled {len(sampled)} transversals: {gen} generating")
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "group":
            return _cmd_group(args)
        if args.command == "loop":
            return _cmd_loop(args)
        if args.command == "transversals":
            return _cmd_transversals(args)
    except (AlgebraError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
