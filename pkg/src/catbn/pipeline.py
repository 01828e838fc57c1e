"""Experiment configuration and the select / learn / average / compare / simulate steps.

Configuration is a JSON object; relative paths resolve against the config
file's directory. Keys::

    input               CSV file (required for select, learn, average)
    target              outcome variable (required)
    recode              inline recode object or path to one
                        ({"recode": {var: {old: new}}, "drop": [...], "order": {var: [...]}})
    tiers               {variable: integer tier}; lower tiers precede higher ones
    blacklist           [[from, to], ...] extra prohibited directions
    algorithm           "pc_stable" (default) or "inter_iamb"
    alpha               CI test level, default 0.05
    max_condition_size  integer or null (unbounded)
    replicates          bootstrap replicates, default 1000
    seed                master seed, default 0
    workers             processes for averaging, default 1
    selection_fraction  MI cutoff as a fraction of H(target), default 0.01;
                        null keeps every variable
    strength_cutoff     display cutoff, default 0.3
    direction_cutoff    arrow cutoff, default 0.6
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .averaging import (ALGORITHMS, DIRECTION_CUTOFF, STRENGTH_CUTOFF, AveragedNetwork,
                        averaged_network, read_strength_tsv, to_display_graph, to_tsv)
from .constraints import ConstraintSet, build_constraints
from .dataset import Dataset, RecodeSpec, apply_recode, load_csv, write_csv
from .export import edges_to_tsv, to_dot
from .graph import Pdag
from .params_sim import BayesianNetwork, ancestral_sample
from .pc_stable import PcConfig
from .select import rank_features, select_features

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    target: str
    input: Path | None = None
    recode: RecodeSpec | None = None
    tiers: dict[str, int] | None = None
    blacklist: list[tuple[str, str]] = field(default_factory=list)
    algorithm: str = "pc_stable"
    alpha: float = 0.05
    max_condition_size: int | None = None
    replicates: int = 1000
    seed: int = 0
    workers: int = 1
    selection_fraction: float | None = 0.01
    strength_cutoff: float = STRENGTH_CUTOFF
    direction_cutoff: float = DIRECTION_CUTOFF

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm: expected one of {sorted(ALGORITHMS)}, got {self.algorithm!r}")
        for name in ("alpha", "strength_cutoff", "direction_cutoff"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ConfigError(f"{name}: must lie in (0, 1), got {v!r}")
        if self.selection_fraction is not None and not 0 < self.selection_fraction < 1:
            raise ConfigError(f"selection_fraction: must lie in (0, 1), got {self.selection_fraction!r}")
        if self.replicates < 1:
            raise ConfigError("replicates: must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers: must be at least 1")

    @classmethod
    def from_dict(cls, obj: Mapping[str, Any], base: Path | None = None) -> "PipelineConfig":
        base = base or Path(".")
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "target" not in obj:
            raise ConfigError("target: missing")
        kw = dict(obj)
        if kw.get("input") is not None:
            kw["input"] = base / kw["input"]
        rec = kw.get("recode")
        if isinstance(rec, str):
            try:
                kw["recode"] = RecodeSpec.load(base / rec)
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"recode: {exc}") from None
        elif isinstance(rec, Mapping):
            kw["recode"] = RecodeSpec.from_dict(rec)
        elif rec is not None:
            raise ConfigError("recode: expected an object or a path")
        if kw.get("tiers") is not None and not isinstance(kw["tiers"], Mapping):
            raise ConfigError("tiers: expected an object mapping variable -> tier")
        bl = kw.get("blacklist") or []
        try:
            kw["blacklist"] = [(str(a), str(b)) for a, b in bl]
        except (TypeError, ValueError):
            raise ConfigError("blacklist: expected a list of [from, to] pairs") from None
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
        if not isinstance(obj, Mapping):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(obj, path.parent)

    def updated(self, **overrides) -> "PipelineConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def prepare_data(cfg: PipelineConfig) -> Dataset:
    if cfg.input is None:
        raise ConfigError("input: missing")
    d = load_csv(cfg.input)
    if d.dropped_row_count:
        logger.info("dropped %d rows with missing cells", d.dropped_row_count)
    if cfg.recode is not None:
        d = apply_recode(d, cfg.recode)
    if cfg.target not in d:
        raise ConfigError(f"target: variable {cfg.target!r} not in data")
    return d


def selected_data(cfg: PipelineConfig, d: Dataset) -> Dataset:
    if cfg.selection_fraction is None:
        return d
    keep = set(select_features(d, cfg.target, cfg.selection_fraction))
    keep = [n for n in d.names if n in keep or n == cfg.target]
    return d.subset(keep)


def constraints_for(cfg: PipelineConfig, names) -> ConstraintSet:
    names = list(names)
    for a, b in cfg.blacklist:
        for v in (a, b):
            if v not in names:
                logger.warning("blacklist entry %s -> %s ignored: %s not in data", a, b, v)
    extra = [(a, b) for a, b in cfg.blacklist if a in names and b in names]
    if cfg.tiers is None:
        return build_constraints({n: 0 for n in names if n != cfg.target}, cfg.target, extra)
    tiers = {k: v for k, v in cfg.tiers.items() if k in names}
    return build_constraints(tiers, cfg.target, extra, variables=names)


SELECT_COLUMNS = ("variable", "mi_nats", "fraction", "selected")


def cmd_select(cfg: PipelineConfig) -> str:
    """Ranked MI table: variable, mi_nats, fraction, selected (0/1)."""
    d = prepare_data(cfg)
    frac = cfg.selection_fraction if cfg.selection_fraction is not None else 0.01
    chosen = set(select_features(d, cfg.target, frac))
    out = io.StringIO()
    w = csv.writer(out, delimiter="\t", lineterminator="\n")
    w.writerow(SELECT_COLUMNS)
    for r in rank_features(d, cfg.target):
        w.writerow([r.name, f"{r.mi:.8f}", f"{r.fraction_of_target_entropy:.8f}",
                    int(r.name in chosen)])
    return out.getvalue()


def cmd_learn(cfg: PipelineConfig) -> tuple[Pdag, str, str]:
    """Single learning run on the selected variables: (graph, edge TSV, DOT)."""
    d = selected_data(cfg, prepare_data(cfg))
    pc_cfg = PcConfig(cfg.alpha, cfg.max_condition_size)
    if len(d.names) < 2:
        g = Pdag(d.names)
    else:
        g = ALGORITHMS[cfg.algorithm](d, pc_cfg, constraints_for(cfg, d.names))
    return g, edges_to_tsv(g), to_dot(g)


def render_average(net: AveragedNetwork, cfg: PipelineConfig) -> tuple[str, str]:
    g, bands = to_display_graph(net, cfg.strength_cutoff, cfg.direction_cutoff)
    return to_tsv(net, cfg.direction_cutoff), to_dot(g, bands)


def cmd_average(cfg: PipelineConfig, strengths=None) -> tuple[AveragedNetwork, str, str]:
    """Bootstrap averaging; ``strengths`` (TSV path or stream) skips learning and only renders."""
    if strengths is not None:
        net = read_strength_tsv(strengths)
    else:
        d = selected_data(cfg, prepare_data(cfg))
        pc_cfg = PcConfig(cfg.alpha, cfg.max_condition_size)
        if len(d.names) < 2:
            net = AveragedNetwork(tuple(d.names), [], cfg.replicates, cfg.algorithm, cfg.seed)
        else:
            net = averaged_network(d, cfg.algorithm, pc_cfg, constraints_for(cfg, d.names),
                                   cfg.replicates, cfg.seed, cfg.workers)
    tsv, dot = render_average(net, cfg)
    return net, tsv, dot


@dataclass
class Comparison:
    shared: list[tuple]
    a_only: list[tuple]
    b_only: list[tuple]
    warnings: list[str]

    def report(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, delimiter="\t", lineterminator="\n")
        for msg in self.warnings:
            out.write(f"# warning: {msg}\n")
        out.write("# shared\n")
        w.writerow(["from", "to", "strength_a", "direction_a", "strength_b", "direction_b"])
        w.writerows(self.shared)
        out.write("# a_only\n")
        w.writerow(["from", "to", "strength", "direction"])
        w.writerows(self.a_only)
        out.write("# b_only\n")
        w.writerow(["from", "to", "strength", "direction"])
        w.writerows(self.b_only)
        return out.getvalue()


def compare_networks(a: AveragedNetwork, b: AveragedNetwork,
                     strength_cutoff: float = STRENGTH_CUTOFF) -> Comparison:
    """Edges at or above the cutoff, split into shared / A-only / B-only over common variables."""
    common = set(a.nodes) & set(b.nodes)
    warnings = []
    if not common:
        warnings.append("the two tables share no variables")

    def keep(net):
        return {frozenset((e.source, e.target)): e for e in net.edges
                if e.strength >= strength_cutoff and e.source in common and e.target in common}

    ea, eb = keep(a), keep(b)
    f = lambda x: f"{x:.3f}"
    shared, a_only, b_only = [], [], []
    for key in sorted(ea.keys() | eb.keys(), key=sorted):
        x, y = ea.get(key), eb.get(key)
        if x is not None and y is not None:
            shared.append((x.source, x.target, f(x.strength), f(x.direction),
                           f(y.strength), f(y.probability(x.source, x.target))))
        elif x is not None:
            a_only.append((x.source, x.target, f(x.strength), f(x.direction)))
        else:
            b_only.append((y.source, y.target, f(y.strength), f(y.direction)))
    return Comparison(shared, a_only, b_only, warnings)


def cmd_compare(run_a, run_b, strength_cutoff: float = STRENGTH_CUTOFF) -> Comparison:
    return compare_networks(read_strength_tsv(run_a), read_strength_tsv(run_b), strength_cutoff)


def cmd_simulate(bn: BayesianNetwork, n: int, seed: int) -> str:
    out = io.StringIO()
    write_csv(ancestral_sample(bn, n, seed), out)
    return out.getvalue()
