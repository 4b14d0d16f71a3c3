"""Command-line interface.

Exit codes: 0 success, 1 unreadable or malformed input, 2 fewer goods than
agents, 3 p = 0 handed to the full solver, 4 enumeration over budget, 5 a
reduction asked for outside its parameter range.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import core, oracle, prng, reductions
from .balance import GoodsFewerThanAgentsError, ZeroSmallValueError, two_value_approx

EXIT_PARSE = 1
EXIT_TOO_FEW_GOODS = 2
EXIT_ZERO_SMALL = 3
EXIT_BUDGET = 4
EXIT_REDUCTION = 5


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = core.parse_instance(_read(args.instance))
    alloc = two_value_approx(inst)
    value = core.nsw_product(inst, alloc)
    if args.out:
        _write(args.out, core.serialize_allocation(alloc, inst.m))
    print(f"product={value.product} nsw_scaled={value.float_scaled:.6f}")
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    inst = core.parse_instance(_read(args.instance))
    value, witness = oracle.exact_optimum(inst, budget=args.budget)
    if args.out:
        _write(args.out, core.serialize_allocation(witness, inst.m))
    print(f"product={value.product} nsw_scaled={value.float_scaled:.6f}")
    return 0


def _cmd_ratio(args: argparse.Namespace) -> int:
    header = "instance,n,m,p,q,alg_product,opt_product,ratio"
    rows = []
    ratios = []
    for path in args.instances:
        inst = core.parse_instance(_read(path))
        report = oracle.ratio(inst, budget=args.budget)
        rows.append(
            f"{path},{inst.n},{inst.m},{inst.p},{inst.q},"
            f"{report.alg_product},{report.opt_product},{report.ratio_float:.6f}"
        )
        ratios.append(report.ratio_float)
    if args.out:
        out = Path(args.out)
        fresh = not out.exists() or out.stat().st_size == 0
        with out.open("a", encoding="utf-8") as handle:
            if fresh:
                handle.write(header + "\n")
            handle.writelines(row + "\n" for row in rows)
    else:
        print(header)
        for row in rows:
            print(row)
    if args.summary:
        print(f"max={max(ratios):.6f} mean={sum(ratios) / len(ratios):.6f}")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    inst = core.parse_instance(_read(args.instance))
    alloc, m = core.parse_allocation(_read(args.allocation))
    if alloc.n != inst.n or m != inst.m:
        raise core.ParseError(
            f"allocation is sized {alloc.n}x{m}, instance {inst.n}x{inst.m}"
        )
    report = core.validate_allocation(inst, alloc)
    value = core.nsw_product(inst, alloc)
    print(
        f"complete={_flag(report.complete)} disjoint={_flag(report.disjoint)} "
        f"nonwasteful={_flag(report.nonwasteful)} product={value.product}"
    )
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.m < args.n:
        raise GoodsFewerThanAgentsError(f"need m >= n, got m={args.m}, n={args.n}")
    big_prob = Fraction(args.big_prob)
    inst = prng.random_instance(args.n, args.m, args.p, args.q, big_prob, args.seed)
    text = core.serialize_instance(inst)
    if args.out:
        _write(args.out, text)
    print(text, end="")
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    graph = reductions.parse_pdm(_read(args.matching))
    if args.mode == "np":
        inst = reductions.reduce_pdm(graph, args.value)
    else:
        inst = reductions.reduce_gap4dm(graph, args.value)
    text = core.serialize_instance(inst)
    if args.out:
        _write(args.out, text)
    print(text, end="")
    return 0


def _cmd_verify_lp(args: argparse.Namespace) -> int:
    cert = reductions.parse_certificate(_read(args.certificate))
    report = reductions.verify_apx_lp(cert, Fraction(args.eps))
    if report.feasible:
        factor = 4.0 / math.exp(report.objective)
        print(f"feasible tight={len(report.tight)} factor={factor:.9f}")
    else:
        print("infeasible")
    for name in ("mass", "type4", "big_supply", "small_supply"):
        print(f"slack {name}={report.slacks[name]}")
    print(f"objective={report.objective:.12f}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsw2v",
        description="Nash-welfare solver and analysis tools for two-value instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the approximation solver on an instance file")
    solve.add_argument("instance")
    solve.add_argument("--out", help="write the allocation file here")
    solve.set_defaults(func=_cmd_solve)

    exact = sub.add_parser("exact", help="enumerate the exact optimum")
    exact.add_argument("instance")
    exact.add_argument("--out", help="write the witness allocation here")
    exact.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET,
                       help="enumeration state budget")
    exact.set_defaults(func=_cmd_exact)

    rat = sub.add_parser("ratio", help="solver-vs-optimum CSV rows for instance files")
    rat.add_argument("instances", nargs="+")
    rat.add_argument("--out", help="append rows to this CSV file")
    rat.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET,
                     help="enumeration state budget")
    rat.add_argument("--summary", action="store_true", help="print max and mean ratio")
    rat.set_defaults(func=_cmd_ratio)

    check = sub.add_parser("check", help="validate an allocation against an instance")
    check.add_argument("instance")
    check.add_argument("allocation")
    check.set_defaults(func=_cmd_check)

    gen = sub.add_parser("gen", help="generate a seeded random instance")
    gen.add_argument("n", type=int)
    gen.add_argument("m", type=int)
    gen.add_argument("p", type=int)
    gen.add_argument("q", type=int)
    gen.add_argument("big_prob", help="probability a pair is big, e.g. 1/3 or 0.25")
    gen.add_argument("--seed", type=int, default=0, help="64-bit stream seed")
    gen.add_argument("--out", help="also write the instance file here")
    gen.set_defaults(func=_cmd_gen)

    red = sub.add_parser("reduce", help="build a hardness instance from a matching file")
    red.add_argument("matching")
    red.add_argument("mode", choices=("np", "gap4dm"))
    red.add_argument("value", type=int, help="q for np mode, target matching size for gap4dm")
    red.add_argument("--out", help="also write the instance file here")
    red.set_defaults(func=_cmd_reduce)

    verify = sub.add_parser("verify-lp", help="check an LP certificate exactly")
    verify.add_argument("certificate")
    verify.add_argument("--eps", default="0", help="gap parameter as a rational")
    verify.set_defaults(func=_cmd_verify_lp)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except core.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GoodsFewerThanAgentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_FEW_GOODS
    except ZeroSmallValueError as exc:
        print(f"error: {exc} (run `exact`, or treat the instance as dichotomous)",
              file=sys.stderr)
        return EXIT_ZERO_SMALL
    except oracle.BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except reductions.ReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REDUCTION
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
