"""Command line entry point: ``rainbow-threshold <command> ...``."""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .colouring import write_colouring
from .exceptions import BudgetExhausted, DomainError, GraphFormatError
from .exact import DEFAULT_BUDGET, rc_exact
from .experiment import (
    EXPECTATION_CHECK,
    SWEEP,
    ConfigError,
    emit_csv,
    parse_config,
    run_expectation_check,
    run_threshold_sweep,
)
from .graph import gnp_generate, read_graph, write_graph
from .repair import repair_colouring
from .thresholds import ThresholdParams


def _cmd_generate(args) -> int:
    write_graph(gnp_generate(args.n, args.p, args.seed), args.out)
    return 0


def _cmd_rc_exact(args) -> int:
    g = read_graph(args.graph)
    try:
        res = rc_exact(g, args.budget)
    except BudgetExhausted as exc:
        print(f"rc = unknown (budget exhausted after {exc.nodes_explored} leaves)")
        return 3
    print(f"rc = {res.value}")
    if res.witness is not None:
        out = Path(args.out) if args.out else Path(f"{args.graph}.rc.col")
        write_colouring(res.witness, out)
    return 0


def _cmd_repair(args) -> int:
    g = read_graph(args.graph)
    outcome = repair_colouring(
        g, args.seed, args.r, args.k_danger, args.pool, args.iterate
    )
    out = Path(args.out) if args.out else Path(f"{args.graph}.repaired.col")
    write_colouring(outcome.colouring, out)
    print(outcome.status_line())
    return 0 if outcome.success else 2


def _cmd_thresholds(args) -> int:
    rows = ThresholdParams(args.n, args.r, args.epsilon).table()
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value:.10g}")
    return 0


def _load_experiment(path, mode):
    text = Path(path).read_text()
    cfg = parse_config(text)
    if "mode" in {ln.split("=", 1)[0].strip() for ln in text.splitlines() if "=" in ln}:
        if cfg.mode != mode:
            raise ConfigError(f"config mode {cfg.mode} does not match command ({mode})")
    return dataclasses.replace(cfg, mode=mode)


def _cmd_sweep(args) -> int:
    try:
        cfg = _load_experiment(args.config, SWEEP)
    except (ConfigError, OSError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    emit_csv(run_threshold_sweep(cfg), args.out, cfg)
    return 0


def _cmd_expectation(args) -> int:
    try:
        cfg = _load_experiment(args.config, EXPECTATION_CHECK)
    except (ConfigError, OSError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    print("n,r,p,trials,empirical_mean,prediction,relative_error")
    for s in run_expectation_check(cfg):
        print(f"{s.n},{s.r},{s.p!r},{s.trials},{s.empirical_mean!r},{s.prediction!r},{s.relative_error!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbow-threshold")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample G(n, p) to a graph file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("rc-exact", help="exact rainbow connection number of a small graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="witness colouring file (default GRAPH.rc.col)")
    p.set_defaults(func=_cmd_rc_exact)

    p = sub.add_parser("repair", help="random colouring plus flag-and-repair")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k-danger", type=int, default=1)
    p.add_argument("--pool", type=int, default=None)
    p.add_argument("--iterate", type=int, default=0, help="extra repair rounds on broken pairs (extension)")
    p.add_argument("--out", help="final colouring file (default GRAPH.repaired.col)")
    p.set_defaults(func=_cmd_repair)

    p = sub.add_parser("thresholds", help="threshold formulas and heuristics")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.set_defaults(func=_cmd_thresholds)

    p = sub.add_parser("experiment", help="Monte Carlo experiments")
    esub = p.add_subparsers(dest="experiment", required=True)
    q = esub.add_parser("sweep")
    q.add_argument("--config", required=True)
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_sweep)
    q = esub.add_parser("expectation")
    q.add_argument("--config", required=True)
    q.set_defaults(func=_cmd_expectation)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, DomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
