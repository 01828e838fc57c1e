"""Command line entry point: ``catbn {select,learn,average,compare,simulate}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import benchmarks
from .averaging import TsvError
from .constraints import ConstraintError
from .dataset import DatasetError
from .params_sim import BayesianNetwork, NetworkError
from .pipeline import (ConfigError, PipelineConfig, cmd_average, cmd_compare, cmd_learn,
                       cmd_select, cmd_simulate)

# exit status per error category
EXIT_CODES = {
    ConfigError: 2,
    DatasetError: 3,
    ConstraintError: 4,
    NetworkError: 5,
    TsvError: 6,
}


def _config(args) -> PipelineConfig:
    if args.config is not None:
        cfg = PipelineConfig.load(args.config)
    elif args.target is not None:
        cfg = PipelineConfig(target=args.target)
    else:
        raise ConfigError("either --config or --target is required")
    overrides = {
        "input": Path(args.input) if args.input else None,
        "target": args.target,
        "alpha": args.alpha,
        "selection_fraction": args.selection_fraction,
    }
    for key in ("algorithm", "replicates", "seed", "workers", "max_condition_size"):
        if hasattr(args, key):
            overrides[key] = getattr(args, key)
    cfg = cfg.updated(**overrides)
    if getattr(args, "no_selection", False):
        cfg.selection_fraction = None
    # re-run validation on the merged values
    return PipelineConfig(**vars(cfg))


def _emit(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _run_select(args):
    _emit(cmd_select(_config(args)), args.output)


def _run_learn(args):
    _, tsv, dot = cmd_learn(_config(args))
    _emit(tsv, args.edges)
    if args.dot:
        _emit(dot, args.dot)


def _run_average(args):
    if args.strengths:
        cfg = _config(args) if (args.config or args.target) else PipelineConfig(target="")
        _, tsv, dot = cmd_average(cfg, strengths=args.strengths)
    else:
        _, tsv, dot = cmd_average(_config(args))
    _emit(tsv, args.tsv)
    if args.dot:
        _emit(dot, args.dot)


def _run_compare(args):
    cmp = cmd_compare(args.run_a, args.run_b, args.cutoff)
    for msg in cmp.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    _emit(cmp.report(), args.output)


def _run_simulate(args):
    if args.benchmark:
        bn = benchmarks.NETWORKS[args.benchmark]()
    elif args.network:
        bn = BayesianNetwork.load(args.network)
    else:
        raise ConfigError("give a network file or --benchmark")
    if args.write_network:
        bn.save(args.write_network)
    _emit(cmd_simulate(bn, args.n, args.seed), args.output)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catbn", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def pipeline_args(sp):
        sp.add_argument("--config", help="JSON experiment config")
        sp.add_argument("--input", help="CSV data (overrides config)")
        sp.add_argument("--target", help="outcome variable (overrides config)")
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--selection-fraction", type=float)
        sp.add_argument("--no-selection", action="store_true", help="keep every variable")

    sp = sub.add_parser("select", help="rank features by MI with the target")
    pipeline_args(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_run_select)

    sp = sub.add_parser("learn", help="single structure-learning run")
    pipeline_args(sp)
    sp.add_argument("--algorithm", choices=["pc_stable", "inter_iamb"])
    sp.add_argument("--max-condition-size", type=int)
    sp.add_argument("--edges", help="edge TSV output (default stdout)")
    sp.add_argument("--dot", help="DOT output")
    sp.set_defaults(func=_run_learn)

    sp = sub.add_parser("average", help="bootstrap model averaging")
    pipeline_args(sp)
    sp.add_argument("--algorithm", choices=["pc_stable", "inter_iamb"])
    sp.add_argument("--max-condition-size", type=int)
    sp.add_argument("--replicates", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--strengths", help="render a precomputed strength TSV instead of learning")
    sp.add_argument("--tsv", help="strength TSV output (default stdout)")
    sp.add_argument("--dot", help="banded DOT output")
    sp.set_defaults(func=_run_average)

    sp = sub.add_parser("compare", help="compare two strength tables")
    sp.add_argument("run_a")
    sp.add_argument("run_b")
    sp.add_argument("--cutoff", type=float, default=0.3)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_run_compare)

    sp = sub.add_parser("simulate", help="sample a dataset from a network file")
    sp.add_argument("network", nargs="?", help="JSON network definition")
    sp.add_argument("--benchmark", choices=sorted(benchmarks.NETWORKS))
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--write-network", help="also save the network definition")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=_run_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except tuple(EXIT_CODES) as exc:
        code = next(c for cls, c in EXIT_CODES.items() if isinstance(exc, cls))
        category = type(exc).__name__
        print(f"error [{category}]: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error [OSError]: {exc}", file=sys.stderr)
        return 7
    return 0


if __name__ == "__main__":
    sys.exit(main())
