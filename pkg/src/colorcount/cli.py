"""Command-line front end.

Exit codes: 0 success, 1 verify failure, 2 usage error, 3 budget refusal.
Every error is reported on stderr as one line ``colorcount: error <kind>: <reason>``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from ._parallel import default_workers
from .dpcover import Cover, canonical_cover, count_cover_colorings, doubled_cover
from .errors import BudgetExceeded, ColorCountError
from .graph import Graph, parse_graph_input
from .listcolor import ListAssignment, count_L_colorings
from .shameful import (FUNCTIONS, evaluate, monte_carlo_expectation, rearrangement_check,
                       restriction_target, shameful_scan)

DEFAULT_BUDGET = 10 ** 8
MIN_BUDGET = 10 ** 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    report: str = "text"
    workers: int = 1

    def __post_init__(self):
        if self.budget < MIN_BUDGET:
            raise UsageError(f"budget must be at least {MIN_BUDGET}")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must fit in 64 bits")
        if self.report not in ("text", "csv", "json"):
            raise UsageError(f"unknown report format {self.report!r}")
        if self.workers < 1:
            raise UsageError("workers must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_budget() -> int:
    raw = os.environ.get("COLORCOUNT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    except ValueError:
        raise UsageError(f"COLORCOUNT_BUDGET={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="elementary-step limit (default 1e8 or $COLORCOUNT_BUDGET)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--report", choices=("text", "csv", "json"), default="text",
                        help="output format")
    common.add_argument("--workers", type=int, default=None, help="worker processes (default: cpu count)")
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")

    graph_opts = _Parser(add_help=False)
    graph_opts.add_argument("--graph", required=True, help='family spec like "cycle:5" or a graph6 string')
    graph_opts.add_argument("--format", choices=("auto", "family", "graph6"), default="auto",
                            help="how to read --graph (auto: family syntax if it contains ':')")

    p = _Parser(prog="colorcount", description="Exact coloring counts and shameful-inequality checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common, graph_opts], help="one color-function value")
    c.add_argument("--fn", choices=FUNCTIONS, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--witness", type=Path, default=None, help="write the extremal witness JSON here")

    s = sub.add_parser("scan", parents=[common, graph_opts], help="values and ratio steps over a k range")
    s.add_argument("--fn", choices=FUNCTIONS, required=True)
    s.add_argument("--k-min", type=int, required=True)
    s.add_argument("--k-max", type=int, required=True)
    s.add_argument("--witness-dir", type=Path, default=None)

    sub.add_parser("verify", parents=[common], help="run the regression suite")

    w = sub.add_parser("witness", parents=[common, graph_opts], help="extremal assignment or cover")
    w.add_argument("--fn", choices=("Pl", "Pdp", "Pdual"), required=True)
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--dot", type=Path, default=None, help="also write a DOT drawing here")

    m = sub.add_parser("mc", parents=[common, graph_opts], help="random label deletion from a (k+1)-fold source")
    m.add_argument("--fn", choices=("Pl", "Pdp"), default="Pl")
    m.add_argument("--k", type=int, required=True, help="fold after deletion; the source has fold k+1")
    m.add_argument("--trials", type=int, default=10 ** 4)
    m.add_argument("--source", default="canonical",
                   help="canonical (same lists / identity cover), doubled (k=1 covers only), "
                        "optimal (the minimizer at k+1), or a JSON file")

    r = sub.add_parser("rearrange", parents=[common], help="check the rearrangement inequality")
    r.add_argument("--matrix", type=Path, required=True,
                   help='JSON {"rows": [[...], ...], "perms": [[...], ...]}; perms default to identity')
    return p


def _config(args) -> RunConfig:
    budget = args.budget if args.budget is not None else _env_budget()
    workers = args.workers if args.workers is not None else default_workers()
    return RunConfig(budget=budget, seed=args.seed, report=args.report, workers=workers)


def _emit(text: str, out: Path | None, stdout):
    if out is None:
        stdout.write(text)
    else:
        out.write_text(text)


def _cmd_compute(args, cfg, g, stdout):
    value, wit = evaluate(g, args.fn, args.k, cfg.budget, cfg.workers)
    if args.witness is not None and wit is not None:
        args.witness.write_text(json.dumps(wit.to_json()) + "\n")
    if cfg.report == "json":
        text = json.dumps({"graph": args.graph, "function": args.fn, "k": args.k, "value": str(value),
                           "witness": None if wit is None else wit.to_json()}) + "\n"
    elif cfg.report == "csv":
        text = f"graph,function,k,value\n{args.graph},{args.fn},{args.k},{value}\n"
    else:
        text = f"{value}\n"
    _emit(text, args.out, stdout)
    return 0


def _cmd_scan(args, cfg, g, stdout):
    if args.k_min < 1 or args.k_max < args.k_min:
        raise UsageError("need 1 <= k-min <= k-max")
    rep = shameful_scan(g, args.fn, range(args.k_min, args.k_max + 1), cfg.budget,
                        graph_id=args.graph, workers=cfg.workers)
    files = {}
    if args.witness_dir is not None:
        args.witness_dir.mkdir(parents=True, exist_ok=True)
        for k, wit in sorted(rep.witnesses.items()):
            path = args.witness_dir / f"{args.fn}_k{k}.json"
            path.write_text(json.dumps(wit.to_json()) + "\n")
            files[k] = str(path)
    if cfg.report == "json":
        data = rep.to_json()
        data["witness_files"] = {str(k): v for k, v in files.items()}
        text = json.dumps(data) + "\n"
    elif cfg.report == "csv":
        text = rep.to_csv(files)
    else:
        lines = []
        for row in rep.rows(files):
            cmp = row["cmp_prev"] or " "
            val = row["value"] or "unevaluated"
            lines.append(f"k={row['k']:<3} {cmp} {val}")
        first = rep.first_violation
        lines.append(f"monotone={str(rep.monotone).lower()} "
                     f"first_violation={'none' if first is None else first}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out, stdout)
    return 0 if rep.complete else 3


def _cmd_verify(args, cfg, stdout):
    from .verify import run_all

    lines = []
    results = run_all(echo=lines.append)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    _emit("\n".join(lines) + "\n", args.out, stdout)
    return 0 if passed == len(results) else 1


def _assignment_dot(g: Graph, a: ListAssignment) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{v}: {{{",".join(map(str, sorted(a.lists[v])))}}}"];')
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_witness(args, cfg, g, stdout):
    if args.k < 1:
        raise UsageError("k must be positive")
    value, wit = evaluate(g, args.fn, args.k, cfg.budget, cfg.workers)
    data = {"graph": args.graph, "function": args.fn, "k": args.k, "value": str(value),
            "witness": wit.to_json()}
    if args.dot is not None:
        dot = wit.to_dot() if isinstance(wit, Cover) else _assignment_dot(g, wit)
        args.dot.write_text(dot)
    _emit(json.dumps(data) + "\n", args.out, stdout)
    return 0


def _mc_source(args, cfg, g):
    fold = args.k + 1
    choice = args.source
    if choice == "canonical":
        if args.fn == "Pl":
            return ListAssignment.uniform(g.n, range(1, fold + 1))
        return canonical_cover(g, fold)
    if choice == "doubled":
        if args.fn != "Pdp" or fold != 2:
            raise UsageError("the doubled cover is a 2-fold cover: use --fn Pdp --k 1")
        return doubled_cover(g)
    if choice == "optimal":
        return evaluate(g, args.fn, fold, cfg.budget, cfg.workers)[1]
    data = json.loads(Path(choice).read_text())
    src = ListAssignment.from_json(data) if "lists" in data else Cover.from_json(data)
    if src.fold != fold:
        raise UsageError(f"source fold {src.fold} does not match k+1 = {fold}")
    return src


def _cmd_mc(args, cfg, g, stdout):
    if args.k < 1:
        raise UsageError("k must be positive")
    if args.trials < 100:
        raise UsageError("mc needs at least 100 trials")
    src = _mc_source(args, cfg, g)
    if isinstance(src, Cover) and src.base != g:
        raise UsageError("source cover is over a different graph")
    a = count_L_colorings(g, src) if isinstance(src, ListAssignment) else count_cover_colorings(g, src)
    stats = monte_carlo_expectation(g, src, args.trials, cfg.seed, cfg.workers)
    target = restriction_target(a, args.k, g.n)
    zscore = (stats.mean - float(target)) / stats.stderr if stats.stderr > 0 else 0.0
    data = stats.to_json()
    data.update({"graph": args.graph, "function": args.fn, "k": args.k, "source_count": str(a),
                 "target": str(target), "target_float": float(target), "z": zscore,
                 "within_3_stderr": stats.within(target, 3.0)})
    if cfg.report == "json":
        text = json.dumps(data) + "\n"
    elif cfg.report == "csv":
        keys = list(data)
        text = ",".join(keys) + "\n" + ",".join(str(data[k]) for k in keys) + "\n"
    else:
        text = (f"trials={stats.trials} seed={stats.seed} mean={stats.mean:.6f} "
                f"stderr={stats.stderr:.6f} target={target} ({float(target):.6f}) z={zscore:.3f}\n")
    _emit(text, args.out, stdout)
    return 0


def _cmd_rearrange(args, cfg, stdout):
    try:
        data = json.loads(args.matrix.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file: {exc}") from None
    rows = data["rows"]
    perms = data.get("perms") or [list(range(len(rows[0])))] * len(rows)
    lhs, rhs, holds = rearrangement_check(rows, perms)
    if cfg.report == "json":
        text = json.dumps({"lhs": str(lhs), "rhs": str(rhs), "holds": holds}) + "\n"
    elif cfg.report == "csv":
        text = f"lhs,rhs,holds\n{lhs},{rhs},{str(holds).lower()}\n"
    else:
        text = f"lhs={lhs} rhs={rhs} holds={str(holds).lower()}\n"
    _emit(text, args.out, stdout)
    return 0


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        if args.command == "verify":
            return _cmd_verify(args, cfg, stdout)
        if args.command == "rearrange":
            return _cmd_rearrange(args, cfg, stdout)
        g = parse_graph_input(args.graph, args.format)
        handler = {"compute": _cmd_compute, "scan": _cmd_scan,
                   "witness": _cmd_witness, "mc": _cmd_mc}[args.command]
        return handler(args, cfg, g, stdout)
    except UsageError as exc:
        stderr.write(f"colorcount: error usage: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        stderr.write(f"colorcount: error {exc.kind}: {exc}\n")
        return 3
    except ColorCountError as exc:
        stderr.write(f"colorcount: error {exc.kind}: {exc}\n")
        return 2
    except (ValueError, KeyError) as exc:
        stderr.write(f"colorcount: error usage: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
