"""Command-line interface: validate, solve, oracle, bench, gen.

All rationals print as "p/q" (``--decimal`` appends rounded display values
without affecting any check).  Exit codes: 0 success, 2 validation or
precondition error, 3 enumeration budget exceeded, 4 guarantee violation
(bench only).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import generators, lp, oracle
from .algorithms import (
    TraceEvent,
    additive_greedy,
    binary_wmms,
    divide_and_choose,
    egal_greedy,
    multiplicative_greedy,
    naive,
    round_robin,
)
from .errors import (
    BudgetExceeded,
    NoIntegralM,
    NormalizationImpossible,
    NotBinary,
    ParameterInconsistent,
    ParseError,
)
from .model import (
    Allocation,
    FairnessReport,
    Instance,
    bundle_value,
    fairness_report,
    validate_instance,
)
from .serialization import (
    format_ratio,
    load_instance,
    parse_ratio,
    save_instance,
    serialize_instance,
)

ALGORITHMS = (
    "naive",
    "egal-greedy",
    "round-robin",
    "mult-greedy",
    "add-greedy",
    "div-cho",
    "binary",
    "linpro",
)

BUDGET_ENV = "CHORESHARE_ORACLE_BUDGET"

GUARANTEES = {
    "egal-greedy": Fraction(2),
    "div-cho": Fraction(3, 2),
    "binary": Fraction(1),
}


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else oracle.DEFAULT_BUDGET


def _fmt(x: Fraction, decimal: bool = False) -> str:
    text = format_ratio(x)
    if decimal and x.denominator != 1:
        text += f" ({float(x):.6g})"
    return text


def _ratio_text(report: FairnessReport, i: int) -> str:
    agent = report.agents[i]
    if agent.ratio is not None:
        return format_ratio(agent.ratio)
    return "unbounded-satisfied" if agent.unbounded_satisfied else "violated"


def run_algorithm(
    inst: Instance,
    name: str,
    *,
    eps: Fraction = Fraction(1, 100),
    tie_rule: str = "largest-share",
    order: tuple[int, ...] | None = None,
    trace: list[TraceEvent] | None = None,
) -> tuple[Allocation, dict]:
    """Dispatch one algorithm; the dict carries algorithm-specific extras."""
    if name == "naive":
        return naive(inst, trace=trace), {}
    if name == "egal-greedy":
        if any(row != inst.values[0] for row in inst.values):
            raise ValueError("egal-greedy requires identical valuation rows")
        return egal_greedy(inst.shares, inst.values[0], trace=trace), {}
    if name == "round-robin":
        return round_robin(inst, order=order, trace=trace), {}
    if name == "mult-greedy":
        return multiplicative_greedy(inst, tie_rule=tie_rule, trace=trace), {}
    if name == "add-greedy":
        return additive_greedy(inst, trace=trace), {}
    if name == "div-cho":
        return divide_and_choose(inst, trace=trace), {}
    if name == "binary":
        return binary_wmms(inst, trace=trace), {}
    if name == "linpro":
        result = lp.linpro(inst, eps)
        if trace is not None:
            for j, agent in enumerate(result.allocation.owner):
                trace.append(TraceEvent(j, j, agent, result.c_final))
        return result.allocation, {"c_final": result.c_final, "result": result}
    raise ValueError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}")


def _cmd_validate(args) -> int:
    inst = load_instance(args.file)
    violations = validate_instance(inst)
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return 2
    print("ok")
    return 0


def _dump_lp(result: lp.LinProResult) -> None:
    prog = result.program
    names = [f"x[{i},{j}]" for i, j in prog.variables]
    print(f"lp-variables: {' '.join(names) if names else '-'}")
    for i in range(prog.inst.n):
        terms = [
            f"{format_ratio(prog.inst.values[i][j])}*x[{i},{j}]"
            for j in prog.eligible_chores[i]
        ]
        lhs = " + ".join(terms) if terms else "0"
        print(f"lp-agent {i}: {lhs} >= {format_ratio(prog.floors[i])}")
    for j in range(prog.inst.m):
        terms = [f"x[{i},{j}]" for i in prog.eligible_agents[j]]
        lhs = " + ".join(terms) if terms else "0"
        print(f"lp-chore {j}: {lhs} = 1")
    entries = " ".join(
        f"x[{i},{j}]={format_ratio(v)}" for (i, j), v in sorted(result.point.values.items())
    )
    print(f"lp-point: {entries if entries else '-'}")


def _cmd_solve(args) -> int:
    inst = load_instance(args.file)
    violations = validate_instance(inst)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return 2
    trace: list[TraceEvent] | None = [] if args.trace else None
    eps = parse_ratio(args.eps, context="--eps")
    order = None
    if args.order:
        order = tuple(int(tok) for tok in args.order.split(","))
    alloc, extra = run_algorithm(
        inst, args.algorithm, eps=eps, tie_rule=args.tie_rule, order=order, trace=trace
    )

    report = None
    if args.oracle:
        wmms = oracle.exact_wmms(inst, budget=args.budget).wmms
        report = fairness_report(inst, alloc, wmms)

    if args.json:
        doc: dict = {
            "algorithm": args.algorithm,
            "owner": list(alloc.owner),
            "bundles": [list(b) for b in alloc.bundles()],
            "values": [
                format_ratio(bundle_value(inst, i, b))
                for i, b in enumerate(alloc.bundles())
            ],
        }
        if "c_final" in extra:
            doc["c_final"] = format_ratio(extra["c_final"])
        if report is not None:
            doc["report"] = {
                "wmms": [format_ratio(a.reference) for a in report.agents],
                "ratios": [_ratio_text(report, i) for i in range(inst.n)],
                "worst_ratio": (
                    format_ratio(report.worst_ratio())
                    if report.worst_ratio() is not None
                    else "violated"
                ),
            }
        if trace is not None:
            doc["trace"] = [
                {
                    "step": e.step,
                    "chore": e.chore,
                    "agent": e.agent,
                    "quantity": format_ratio(e.quantity),
                }
                for e in trace
            ]
        print(json.dumps(doc, indent=2))
        return 0

    print(f"algorithm: {args.algorithm}")
    print(f"owner: {' '.join(map(str, alloc.owner)) if alloc.owner else '-'}")
    for i, b in enumerate(alloc.bundles()):
        print(f"bundle[{i}]: {' '.join(map(str, b)) if b else '-'}")
    for i, b in enumerate(alloc.bundles()):
        print(f"value[{i}]: {_fmt(bundle_value(inst, i, b), args.decimal)}")
    if "c_final" in extra:
        print(f"c-final: {_fmt(extra['c_final'], args.decimal)}")
    if report is not None:
        for i, agent in enumerate(report.agents):
            print(f"wmms[{i}]: {_fmt(agent.reference, args.decimal)}")
        for i in range(inst.n):
            print(f"ratio[{i}]: {_ratio_text(report, i)}")
        worst = report.worst_ratio()
        print(f"worst-ratio: {_fmt(worst, args.decimal) if worst is not None else 'violated'}")
    if trace is not None:
        for e in trace:
            print(
                f"trace: step {e.step}: chore {e.chore} -> agent {e.agent} "
                f"(quantity {format_ratio(e.quantity)})"
            )
    if args.dump_lp and "result" in extra:
        _dump_lp(extra["result"])
    return 0


def _cmd_oracle(args) -> int:
    inst = load_instance(args.file)
    violations = validate_instance(inst)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return 2
    result = oracle.exact_wmms(inst, budget=args.budget)
    print(f"wmms: {' '.join(_fmt(x, args.decimal) for x in result.wmms)}")
    print(f"w: {' '.join(_fmt(x, args.decimal) for x in result.w)}")
    for i, witness in enumerate(result.witness_partitions):
        owners = " ".join(map(str, witness.owner)) if witness.owner else "-"
        print(f"witness[{i}]: {owners}")
    owmms = oracle.exact_owmms(inst, result.wmms, budget=args.budget)
    print(f"alpha-star: {_fmt(owmms.alpha_star, args.decimal)}")
    owners = " ".join(map(str, owmms.witness.owner)) if owmms.witness.owner else "-"
    print(f"alpha-witness: {owners}")
    return 0


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _bench_instances(spec: str) -> list[tuple[str, Instance, tuple[Fraction, ...] | None]]:
    """Resolve a bench target: a directory of documents, one file, or a generator spec."""
    path = Path(spec)
    if path.is_dir():
        out = []
        for child in sorted(path.glob("*.json")):
            out.append((child.stem, load_instance(child), None))
        return out
    if path.is_file():
        return [(path.stem, load_instance(path), None)]

    family, _, params_text = spec.partition(":")
    params: dict[str, str] = {}
    positional: list[str] = []
    for part in params_text.split(","):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if sep:
            params[key] = value
        else:
            positional.append(part)
    if family == "table":
        if not positional and "k" not in params:
            raise ParseError("table spec needs an index, e.g. table:2")
        k = int(positional[0]) if positional else int(params["k"])
        eps = parse_ratio(params.get("eps", "1/10"), context="table eps")
        return [(f"table{k}", generators.paper_table(k, eps), None)]
    if family == "rr-family":
        sizes = _parse_range(params.get("n", "3..5"))
        return [
            (
                f"rr-family-n{n}",
                generators.round_robin_family(n),
                generators.round_robin_family_references(n),
            )
            for n in sizes
        ]
    if family == "random":
        n = int(params.get("n", "3"))
        m = int(params.get("m", "6"))
        count = int(params.get("count", "10"))
        seed0 = int(params.get("seed0", "0"))
        style = params.get("style", "normalized")
        return [
            (
                f"random-{style}-n{n}-m{m}-s{seed}",
                generators.random_instance(n, m, seed, style),
                None,
            )
            for seed in range(seed0, seed0 + count)
        ]
    raise ParseError(f"bench target {spec!r} is neither a path nor a known generator spec")


def _cmd_bench(args) -> int:
    instances = _bench_instances(args.spec)
    algs = [tok for tok in args.algs.split(",") if tok]
    for alg in algs:
        if alg not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {alg!r}")
    eps = parse_ratio(args.eps, context="--eps")

    rows = []
    violations = []
    for inst_id, inst, family_refs in instances:
        refs = None
        alpha_star = None
        if args.oracle:
            wres = oracle.exact_wmms(inst, budget=args.budget)
            refs = wres.wmms
            alpha_star = oracle.exact_owmms(inst, wres.wmms, budget=args.budget).alpha_star
        elif args.family_refs and family_refs is not None:
            refs = family_refs
        for alg in algs:
            started = time.perf_counter()
            alloc, extra = run_algorithm(inst, alg, eps=eps, tie_rule=args.tie_rule)
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            ratios_text = "-"
            worst_text = "-"
            worst = None
            if refs is not None:
                report = fairness_report(inst, alloc, refs)
                ratios_text = ",".join(_ratio_text(report, i) for i in range(inst.n))
                worst = report.worst_ratio()
                worst_text = format_ratio(worst) if worst is not None else "violated"
            bound = GUARANTEES.get(alg)
            if alg == "linpro" and alpha_star is not None:
                bound = (4 + eps) * alpha_star
            if refs is not None and bound is not None:
                if worst is None or worst > bound:
                    violations.append(
                        f"{inst_id}/{alg}: worst ratio {worst_text} exceeds bound {format_ratio(bound)}"
                    )
            rows.append(
                {
                    "instance": inst_id,
                    "algorithm": alg,
                    "ratios": ratios_text,
                    "worst_ratio": worst_text,
                    "alpha_star": format_ratio(alpha_star) if alpha_star is not None else "-",
                    "wall_ms": f"{elapsed_ms:.3f}",
                }
            )

    rows.sort(key=lambda r: (r["instance"], r["algorithm"]))
    columns = ["instance", "algorithm", "ratios", "worst_ratio", "alpha_star"]
    if args.times:
        columns.append("wall_ms")
    print("\t".join(columns))
    for row in rows:
        print("\t".join(row[c] for c in columns))
    if args.out:
        payload = [{c: row[c] for c in columns} for row in rows]
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"rows": payload}, fh, indent=2)
            fh.write("\n")
    for message in violations:
        print(f"guarantee-violation: {message}", file=sys.stderr)
    return 4 if violations else 0


def _cmd_gen(args) -> int:
    family = args.family
    eps = parse_ratio(args.eps, context="--eps")
    if family in ("table1", "table2", "table3", "table4", "table5", "table6"):
        k = int(family[-1])
        if k == 6:
            inst = generators.egal_greedy_failure_family(
                parse_ratio(args.T, "--T"), parse_ratio(args.c, "--c"), args.n or 7
            )
        else:
            inst = generators.paper_table(k, eps)
    elif family == "rr-family":
        inst = generators.round_robin_family(args.n or 3)
    elif family == "egal-failure":
        inst = generators.egal_greedy_failure_family(
            parse_ratio(args.T, "--T"), parse_ratio(args.c, "--c"), args.n or 7
        )
    elif family == "random":
        inst = generators.random_instance(
            args.n or 3, args.m if args.m is not None else 6, args.seed, args.style
        )
    else:
        raise ValueError(f"unknown family {family!r}")
    if args.output:
        save_instance(inst, args.output)
    else:
        sys.stdout.write(serialize_instance(inst))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choreshare",
        description="Fair allocation of indivisible chores to agents with asymmetric shares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check an instance document")
    p_validate.add_argument("file")
    p_validate.set_defaults(func=_cmd_validate)

    p_solve = sub.add_parser("solve", help="run one allocation algorithm")
    p_solve.add_argument("file")
    p_solve.add_argument("algorithm", choices=ALGORITHMS)
    p_solve.add_argument("--oracle", action="store_true", help="report ratios against exact WMMS")
    p_solve.add_argument("--trace", action="store_true", help="print per-step decisions")
    p_solve.add_argument("--eps", default="1/100", help="linpro precision (rational)")
    p_solve.add_argument("--dump-lp", action="store_true", help="print the final linpro program")
    p_solve.add_argument("--json", action="store_true", help="emit a JSON document")
    p_solve.add_argument("--decimal", action="store_true", help="append rounded decimals")
    p_solve.add_argument("--tie-rule", default="largest-share",
                         choices=("largest-share", "smallest-share"))
    p_solve.add_argument("--order", default=None, help="round-robin picking order, e.g. 2,0,1")
    p_solve.add_argument("--budget", type=int, default=_default_budget())
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="exact WMMS values and optimal ratio")
    p_oracle.add_argument("file")
    p_oracle.add_argument("--budget", type=int, default=_default_budget())
    p_oracle.add_argument("--decimal", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_bench = sub.add_parser("bench", help="run algorithms over generated or stored instances")
    p_bench.add_argument("spec", help="directory, file, or generator spec like random:n=3,m=6,count=10")
    p_bench.add_argument("--algs", required=True, help="comma-separated algorithm list")
    p_bench.add_argument("--oracle", action="store_true")
    p_bench.add_argument("--family-refs", action="store_true",
                         help="use closed-form references where the family defines them")
    p_bench.add_argument("--eps", default="1/100")
    p_bench.add_argument("--tie-rule", default="largest-share",
                         choices=("largest-share", "smallest-share"))
    p_bench.add_argument("--out", default=None, help="also write rows as JSON")
    p_bench.add_argument("--times", action="store_true", help="add a wall-clock column")
    p_bench.add_argument("--budget", type=int, default=_default_budget())
    p_bench.set_defaults(func=_cmd_bench)

    p_gen = sub.add_parser("gen", help="write a generated instance")
    p_gen.add_argument(
        "family",
        choices=(
            "table1", "table2", "table3", "table4", "table5", "table6",
            "rr-family", "egal-failure", "random",
        ),
    )
    p_gen.add_argument("--n", type=int, default=None)
    p_gen.add_argument("--m", type=int, default=None)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--style", default="normalized", choices=("normalized", "binary"))
    p_gen.add_argument("--eps", default="1/10")
    p_gen.add_argument("--T", default="8")
    p_gen.add_argument("--c", default="4")
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (
        ParseError,
        NotBinary,
        ParameterInconsistent,
        NoIntegralM,
        NormalizationImpossible,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())
