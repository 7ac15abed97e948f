"""Command-line front end: pell, exc, scan, verify, bound.

Formats: table (default), csv, json.  All numeric output is exact; decimal
columns are a 6-digit convenience rendering, never used in computation.

Exit codes: 0 success, 1 verification counterexample, 2 invalid input,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import Rat, is_square, isqrt, rat_cmp_sqrt
from .pell import NONSQUARE_MSG, PellSolution, cf_sqrt, nth_solution
from . import analysis, excset

DEFAULT_MAX_PAIRS = 2_000_000
RHO1_DEFAULT_FILTERS = (excset.RANGE, excset.GINO, excset.RHO1_DIVISIBILITY)

SCAN_COLUMNS = (
    "d",
    "p0",
    "q0",
    "bound_num",
    "bound_den",
    "bound_decimal",
    "smooth_count",
    "pair_count",
    "final_value_count",
    "status",
)


def dec6(num: int, den: int) -> str:
    """Exact 6-decimal rendering of num/den, rounded half up."""
    if den <= 0:
        raise ValueError("den must be positive")
    scaled = (num * 10**6 + den // 2) // den
    return f"{scaled // 10**6}.{scaled % 10**6:06d}"


def sqrt_dec6(n: int) -> str:
    """Floor of sqrt(n) to 6 decimals (approximate rendering only)."""
    s = isqrt(n * 10**12)
    return f"{s // 10**6}.{s % 10**6:06d}"


def rat_str(v: Fraction) -> str:
    return str(v)


def rat_dict(v: Fraction) -> dict:
    return {"num": v.numerator, "den": v.denominator}


def rat_from_dict(obj: dict) -> Rat:
    return Rat(obj["num"], obj["den"])


def pair_dict(pr: excset.CandidatePair) -> dict:
    return {"a": pr.a, "b": pr.b, "value": rat_dict(pr.value)}


def pair_from_dict(obj: dict) -> excset.CandidatePair:
    return excset.CandidatePair(obj["a"], obj["b"], rat_from_dict(obj["value"]))


def trace_dict(t: excset.FilterTrace) -> dict:
    if isinstance(t.subject, excset.CandidatePair):
        subject = {"kind": "pair", **pair_dict(t.subject)}
    else:
        subject = {"kind": "value", **rat_dict(t.subject)}
    return {
        "subject": subject,
        "filter": t.filter,
        "verdict": t.verdict,
        "reason": t.reason,
    }


def trace_from_dict(obj: dict) -> excset.FilterTrace:
    s = obj["subject"]
    if s["kind"] == "pair":
        subject = excset.CandidatePair(s["a"], s["b"], rat_from_dict(s["value"]))
    else:
        subject = rat_from_dict(s)
    return excset.FilterTrace(subject, obj["filter"], obj["verdict"], obj["reason"])


def report_to_dict(r: excset.DegreeReport) -> dict:
    return {
        "d": r.d,
        "solution": (
            None
            if r.solution is None
            else {"p": r.solution.p, "q": r.solution.q, "index": r.solution.index}
        ),
        "bound": None if r.bound is None else rat_dict(r.bound),
        "smooth_values": sorted(r.smooth_values),
        "stages": [
            {"filter": s.filter, "pairs": s.pairs, "values": s.values}
            for s in r.stages
        ],
        "final_values": [rat_dict(v) for v in sorted(r.final_values)],
        "final_pairs": [
            pair_dict(p) for p in sorted(r.final_pairs, key=lambda p: (p.value, p.b))
        ],
        "conditional_values": [rat_dict(v) for v in sorted(r.conditional_values)],
        "conjecture_status": r.conjecture_status,
        "traces": [trace_dict(t) for t in r.traces],
    }


def report_from_dict(obj: dict) -> excset.DegreeReport:
    sol = obj["solution"]
    return excset.DegreeReport(
        d=obj["d"],
        solution=None if sol is None else PellSolution(sol["p"], sol["q"], sol["index"]),
        bound=None if obj["bound"] is None else rat_from_dict(obj["bound"]),
        smooth_values=frozenset(obj["smooth_values"]),
        stages=tuple(
            excset.StageRecord(s["filter"], s["pairs"], s["values"])
            for s in obj["stages"]
        ),
        final_values=frozenset(rat_from_dict(v) for v in obj["final_values"]),
        final_pairs=frozenset(pair_from_dict(p) for p in obj["final_pairs"]),
        conditional_values=frozenset(
            rat_from_dict(v) for v in obj["conditional_values"]
        ),
        conjecture_status=obj["conjecture_status"],
        traces=tuple(trace_from_dict(t) for t in obj["traces"]),
    )


def _emit(lines: list[str], out=None) -> None:
    text = "\n".join(lines) + "\n"
    (out or sys.stdout).write(text)


def _fail(msg: str, code: int) -> int:
    print(msg, file=sys.stderr)
    return code


def _check_nonsquare(d: int) -> None:
    if d <= 0 or is_square(d):
        raise ValueError(NONSQUARE_MSG)


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


# ---------------------------------------------------------------- pell


def cmd_pell(args) -> int:
    d = args.d
    try:
        _check_nonsquare(d)
        cf = cf_sqrt(d)
        sols = [nth_solution(d, k) for k in range(1, args.count + 1)]
    except ValueError as e:
        return _fail(str(e), 2)
    residuals = [s.q * s.q - d * s.p * s.p - 1 for s in sols]
    if args.format == "json":
        _emit([
            json.dumps(
                {
                    "d": d,
                    "a0": cf.a0,
                    "period": list(cf.period),
                    "solutions": [
                        {"index": s.index, "p": s.p, "q": s.q, "residual": r}
                        for s, r in zip(sols, residuals)
                    ],
                },
                indent=2,
            )
        ])
    elif args.format == "csv":
        lines = [f"# sqrt({d}) = [{cf.a0}; {','.join(map(str, cf.period))} repeating]"]
        lines.append("d,index,p,q,residual")
        lines += [f"{d},{s.index},{s.p},{s.q},{r}" for s, r in zip(sols, residuals)]
        _emit(lines)
    else:
        lines = [
            f"d: {d}",
            f"sqrt({d}) = [{cf.a0}; {','.join(map(str, cf.period))} repeating]"
            f"  (period length {len(cf.period)})",
        ]
        rows = [["index", "p", "q", "residual"]]
        rows += [[str(s.index), str(s.p), str(s.q), str(r)] for s, r in zip(sols, residuals)]
        lines += _table(rows)
        _emit(lines)
    return 0


# ---------------------------------------------------------------- exc


def _build_config(args) -> excset.PipelineConfig:
    if args.filters:
        filters = tuple(f.strip() for f in args.filters.split(",") if f.strip())
    elif args.rho1:
        filters = RHO1_DEFAULT_FILTERS
    else:
        filters = (excset.RANGE,)
    max_pairs = None if args.max_pairs <= 0 else args.max_pairs
    return excset.PipelineConfig(
        filters=filters,
        rho1=args.rho1,
        gon_min=args.gon_min,
        strict_lower=args.strict_lower,
        include_conditional=args.include_conditional,
        max_pairs=max_pairs,
    )


def cmd_exc(args) -> int:
    d = args.d
    try:
        _check_nonsquare(d)
        cfg = _build_config(args)
        sol = nth_solution(d, args.pell_index)
        report = excset.run_pipeline(d, sol, cfg)
    except excset.PipelineBudgetError as e:
        return _fail(str(e), 2)
    except ValueError as e:
        return _fail(str(e), 2)

    values = sorted(report.final_values)
    pairs = sorted(report.final_pairs, key=lambda p: (p.value, p.b))
    conditional = sorted(report.conditional_values)

    if args.format == "json":
        _emit([json.dumps(report_to_dict(report), indent=2)])
        return 0

    if args.format == "csv":
        lines = [f"# d,{d}"]
        for s in report.stages:
            lines.append(f"# stage,{s.filter},{s.pairs},{s.values}")
        if args.mode == "pairs":
            lines.append("a,b,value_num,value_den,value_decimal")
            for p in pairs:
                lines.append(
                    f"{p.a},{p.b},{p.value.num},{p.value.den},"
                    f"{dec6(p.value.num, p.value.den)}"
                )
        else:
            lines.append("value_num,value_den,value_decimal,conditional")
            for v in values:
                cond = "true" if v in report.conditional_values else "false"
                lines.append(f"{v.num},{v.den},{dec6(v.num, v.den)},{cond}")
        _emit(lines)
        return 0

    sol = report.solution
    lines = [
        f"d: {d}",
        f"solution: index {sol.index}, (p,q) = ({sol.p},{sol.q})",
        f"bound: {rat_str(report.bound)} = {dec6(report.bound.num, report.bound.den)}",
        f"status: {report.conjecture_status}",
        f"smooth values: {' '.join(str(v) for v in sorted(report.smooth_values))}",
        "",
    ]
    rows = [["stage", "pairs", "values"]]
    rows += [[s.filter, str(s.pairs), str(s.values)] for s in report.stages]
    lines += _table(rows)
    lines.append("")
    if args.mode == "pairs":
        lines.append(f"final pairs ({len(pairs)}):")
        if pairs:
            rows = [["a", "b", "value", "decimal"]]
            rows += [
                [str(p.a), str(p.b), rat_str(p.value), dec6(p.value.num, p.value.den)]
                for p in pairs
            ]
            lines += _table(rows)
    else:
        lines.append(f"final values ({len(values)}):")
        if values:
            rows = [["value", "decimal"]]
            rows += [[rat_str(v), dec6(v.num, v.den)] for v in values]
            lines += _table(rows)
    if conditional:
        lines.append(
            f"conditional values ({len(conditional)}): "
            + " ".join(rat_str(v) for v in conditional)
        )
    _emit(lines)
    return 0


# ---------------------------------------------------------------- scan


def _scan_row(d: int, cfg: excset.PipelineConfig, budget: int | None) -> dict:
    if is_square(d):
        return {
            "d": d,
            "p0": "",
            "q0": "",
            "bound_num": "",
            "bound_den": "",
            "bound_decimal": "",
            "smooth_count": "",
            "pair_count": "",
            "final_value_count": "",
            "status": analysis.STATUS_NOT_APPLICABLE,
        }
    sol = nth_solution(d, 1)
    bound = Rat(sol.p * d, sol.q)
    cnt = excset.pair_count(d, sol.p, sol.q, cfg.strict_lower)
    if budget is None or cnt <= budget:
        quiet = excset.PipelineConfig(
            filters=cfg.filters,
            rho1=cfg.rho1,
            gon_min=cfg.gon_min,
            strict_lower=cfg.strict_lower,
            include_conditional=cfg.include_conditional,
            collect_traces=False,
        )
        report = excset.run_pipeline(d, sol, quiet)
        final_count: int | str = len(report.final_values)
    else:
        final_count = ""  # enumeration over budget; counts stay exact but unrun
    return {
        "d": d,
        "p0": sol.p,
        "q0": sol.q,
        "bound_num": bound.num,
        "bound_den": bound.den,
        "bound_decimal": dec6(bound.num, bound.den),
        "smooth_count": len(excset.smooth_values(d)),
        "pair_count": cnt,
        "final_value_count": final_count,
        "status": analysis.conjecture_status(d),
    }


def cmd_scan(args) -> int:
    try:
        if ":" in args.range:
            lo_s, hi_s = args.range.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(args.range)
        if lo < 1 or hi < lo:
            raise ValueError("range must satisfy 1 <= d_min <= d_max")
        cfg = _build_config(args)
    except ValueError as e:
        return _fail(str(e), 2)

    budget = None if args.max_pairs <= 0 else args.max_pairs
    try:
        rows = [_scan_row(d, cfg, budget) for d in range(lo, hi + 1)]
    except ValueError as e:
        return _fail(str(e), 2)

    if args.format == "json":
        rendered = json.dumps({"rows": rows}, indent=2)
        lines = [rendered]
    elif args.format == "csv":
        lines = [",".join(SCAN_COLUMNS)]
        lines += [",".join(str(r[c]) for c in SCAN_COLUMNS) for r in rows]
    else:
        trows = [list(SCAN_COLUMNS)]
        trows += [[str(r[c]) for c in SCAN_COLUMNS] for r in rows]
        lines = _table(trows)

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
        except OSError as e:
            return _fail(f"cannot write {args.out}: {e}", 3)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
        return 0
    _emit(lines)
    return 0


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    try:
        if args.claim == "main":
            if args.d is None:
                raise ValueError("claim 'main' requires a degree d")
            _check_nonsquare(args.d)
            sol = nth_solution(args.d, 1)
            report = analysis.verify_main_bqsq(args.d, sol.p, sol.q, args.window)
        elif args.claim == "p0-1":
            report = analysis.verify_p0_1(args.n_max, args.k_max)
        else:
            report = analysis.verify_p0_2(args.n_max, args.l_max)
    except ValueError as e:
        return _fail(str(e), 2)

    result = "PASS" if report.passed else "FAIL"
    if args.format == "json":
        _emit([
            json.dumps(
                {
                    "claim": report.claim,
                    "grid": dict(report.grid),
                    "cells": report.cells,
                    "counterexamples": [list(c) for c in report.counterexamples],
                    "min_margin": report.min_margin,
                    "passed": report.passed,
                },
                indent=2,
            )
        ])
    elif args.format == "csv":
        lines = ["claim,cells,counterexamples,min_margin,result"]
        lines.append(
            f"{report.claim},{report.cells},{len(report.counterexamples)},"
            f"{report.min_margin},{result}"
        )
        _emit(lines)
    else:
        grid = " ".join(f"{k}={v}" for k, v in report.grid)
        lines = [
            f"claim: {report.claim}",
            f"grid: {grid}",
            f"cells: {report.cells}",
            f"counterexamples: {len(report.counterexamples)}",
            f"min margin: {report.min_margin}",
            f"result: {result}",
        ]
        for c in report.counterexamples[:20]:
            lines.append(f"  counterexample: {c}")
        _emit(lines)
    return 0 if report.passed else 1


# ---------------------------------------------------------------- bound


def cmd_bound(args) -> int:
    d = args.d
    try:
        _check_nonsquare(d)
        sol = nth_solution(d, 1)
    except ValueError as e:
        return _fail(str(e), 2)
    b = Rat(sol.p * d, sol.q)
    cmp = rat_cmp_sqrt(b, d, 1)
    sym = "<" if cmp < 0 else ("=" if cmp == 0 else ">")
    if args.format == "json":
        _emit([
            json.dumps(
                {
                    "d": d,
                    "bound": rat_dict(b),
                    "bound_decimal": dec6(b.num, b.den),
                    "sqrt_decimal": sqrt_dec6(d),
                    "cmp": sym,
                },
                indent=2,
            )
        ])
    elif args.format == "csv":
        lines = ["d,bound_num,bound_den,bound_decimal,sqrt_decimal,cmp"]
        lines.append(
            f"{d},{b.num},{b.den},{dec6(b.num, b.den)},{sqrt_dec6(d)},{sym}"
        )
        _emit(lines)
    else:
        _emit([
            f"d: {d}",
            f"bound: {rat_str(b)} = {dec6(b.num, b.den)}",
            f"sqrt({d}) ~= {sqrt_dec6(d)}",
            f"bound {sym} sqrt({d})",
        ])
    return 0


# ---------------------------------------------------------------- parser


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("table", "csv", "json"), default="table",
        help="output format (default table)",
    )


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--filters",
        help="comma-separated filter list; default 'range' "
        "(with --rho1: 'range,gino,rho1-divisibility'). Available: "
        + ",".join(excset.ALL_FILTER_IDS),
    )
    p.add_argument(
        "--rho1", action="store_true",
        help="Picard-number-1 mode: enables the divisibility-based filters "
        "and drops smooth values",
    )
    p.add_argument("--gon-min", type=int, default=1, help="minimal gonality (default 1)")
    p.add_argument(
        "--strict-lower", action="store_true",
        help="exclude pairs with a = b (value 1)",
    )
    p.add_argument(
        "--include-conditional", action="store_true",
        help="count fibration-conditional integer values as final",
    )
    p.add_argument(
        "--max-pairs", type=int, default=DEFAULT_MAX_PAIRS,
        help=f"enumeration budget (default {DEFAULT_MAX_PAIRS}); 0 or negative "
        "means unlimited",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="seshadri",
        description="Exact possible-value analysis for maximal Seshadri "
        "constants of degree-d surfaces via the Pell equation",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", help="continued fraction and Pell solutions")
    p.add_argument("d", type=int)
    p.add_argument("--count", type=int, default=1, help="number of solutions")
    _add_format(p)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("exc", help="exceptional set with filter pipeline")
    p.add_argument("d", type=int)
    p.add_argument("--pell-index", type=int, default=1, help="solution index (default 1)")
    _add_pipeline_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument(
        "--values", dest="mode", action="store_const", const="values",
        help="list final values (default)",
    )
    g.add_argument(
        "--pairs", dest="mode", action="store_const", const="pairs",
        help="list final pairs",
    )
    p.set_defaults(mode="values")
    _add_format(p)
    p.set_defaults(func=cmd_exc)

    p = sub.add_parser("scan", help="summary rows over a degree range")
    p.add_argument("range", help="d_min:d_max")
    _add_pipeline_flags(p)
    p.add_argument("--out", help="write the rendered output to this file")
    _add_format(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="grid verification of theorem arithmetic")
    p.add_argument("claim", choices=("main", "p0-1", "p0-2"))
    p.add_argument("d", type=int, nargs="?", help="degree (claim 'main' only)")
    p.add_argument("--window", type=int, default=100, help="rows above q^2 (claim main)")
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--k-max", type=int, default=50)
    p.add_argument("--l-max", type=int, default=50)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="conjectured lower bound (p0/q0)*d")
    p.add_argument("d", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_bound)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
