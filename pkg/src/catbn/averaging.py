"""Bootstrap model averaging: edge strength, direction, confidence bands."""

from __future__ import annotations

import csv
import enum
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constraints import ConstraintSet
from .dataset import Dataset, bootstrap_resample
from .graph import Pdag
from .inter_iamb import inter_iamb
from .pc_stable import PcConfig, pc_stable

ALGORITHMS = {"pc_stable": pc_stable, "inter_iamb": inter_iamb}

STRENGTH_CUTOFF = 0.3
DIRECTION_CUTOFF = 0.6
TSV_COLUMNS = ("from", "to", "strength", "direction", "band", "direction_reliable")


class Band(str, enum.Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"
    EXCLUDED = "excluded"


# DOT line style per band
BAND_STYLE = {Band.HIGH: "solid", Band.MEDIUM: "dashed", Band.LOW: "dotted"}


@dataclass(frozen=True)
class EdgeStrength:
    """Averaged evidence for one variable pair.

    ``source -> target`` is the majority orientation (ties by name), so
    ``direction`` is at least 0.5.
    """

    source: str
    target: str
    strength: float
    direction: float

    @classmethod
    def canonical(cls, a: str, b: str, strength: float, p_ab: float) -> "EdgeStrength":
        """Build from the probability ``p_ab`` of orientation ``a -> b``."""
        p_ba = 1.0 - p_ab
        if p_ab > p_ba or (p_ab == p_ba and a <= b):
            return cls(a, b, strength, p_ab)
        return cls(b, a, strength, p_ba)

    def probability(self, a: str, b: str) -> float:
        """Probability of orientation ``a -> b`` given the edge is present."""
        if (a, b) == (self.source, self.target):
            return self.direction
        if (b, a) == (self.source, self.target):
            return 1.0 - self.direction
        raise KeyError((a, b))


@dataclass
class AveragedNetwork:
    nodes: tuple[str, ...]
    edges: list[EdgeStrength]
    replicate_count: int
    algorithm: str = ""
    master_seed: int | None = None
    replicate_graphs: list[Pdag] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.replicate_count < 1:
            raise ValueError("replicate_count must be at least 1")

    def edge(self, a: str, b: str) -> EdgeStrength | None:
        for e in self.edges:
            if {e.source, e.target} == {a, b}:
                return e
        return None

    def strength(self, a: str, b: str) -> float:
        e = self.edge(a, b)
        return 0.0 if e is None else e.strength


def _learn_replicate(args) -> Pdag:
    data, algorithm, cfg, constraints, index, seed = args
    sample = bootstrap_resample(data, index, seed)
    return ALGORITHMS[algorithm](sample, cfg, constraints)


def _graph_records(g: Pdag) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    return sorted(g.directed), sorted(tuple(sorted(e)) for e in g.undirected)


def aggregate(graphs: Sequence[Pdag], nodes: Iterable[str] | None = None, **meta) -> AveragedNetwork:
    """Strength and direction tallies over learned graphs.

    A directed occurrence counts 1 toward its orientation; an undirected one
    counts 0.5 toward each.
    """
    graphs = list(graphs)
    if nodes is None:
        nodes = graphs[0].nodes if graphs else ()
    present: dict[tuple[str, str], int] = {}
    tally: dict[tuple[str, str], float] = {}
    for g in graphs:
        directed, undirected = _graph_records(g)
        for a, b in directed:
            key = (min(a, b), max(a, b))
            present[key] = present.get(key, 0) + 1
            if a == key[0]:
                tally[key] = tally.get(key, 0.0) + 1.0
            else:
                tally.setdefault(key, 0.0)
        for key in undirected:
            present[key] = present.get(key, 0) + 1
            tally[key] = tally.get(key, 0.0) + 0.5
    n = len(graphs)
    edges = [EdgeStrength.canonical(a, b, present[(a, b)] / n, tally[(a, b)] / present[(a, b)])
             for a, b in sorted(present)]
    edges.sort(key=lambda e: (-e.strength, e.source, e.target))
    return AveragedNetwork(tuple(nodes), edges, n, **meta)


def averaged_network(d: Dataset, algorithm: str = "pc_stable", cfg: PcConfig = PcConfig(),
                     constraints: ConstraintSet | None = None, replicates: int = 1000,
                     master_seed: int = 0, workers: int = 1,
                     keep_replicates: bool = False) -> AveragedNetwork:
    """Learn on ``replicates`` bootstrap samples and average the edges.

    Replicate ``i`` (1-based) is learned on ``bootstrap_resample(d, i,
    master_seed)``; results are reduced in index order, so the output does
    not depend on ``workers``.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}")
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    jobs = [(d, algorithm, cfg, constraints, i, master_seed) for i in range(1, replicates + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            graphs = list(pool.map(_learn_replicate, jobs, chunksize=max(1, replicates // (4 * workers))))
    else:
        graphs = [_learn_replicate(job) for job in jobs]
    net = aggregate(graphs, d.names, algorithm=algorithm, master_seed=master_seed)
    if keep_replicates:
        net.replicate_graphs = graphs
    return net


def band_of(strength: float) -> Band:
    if strength > 0.5:
        return Band.HIGH
    if strength >= 0.4:
        return Band.MEDIUM
    if strength >= 0.3:
        return Band.LOW
    return Band.EXCLUDED


def classify_confidence(n: AveragedNetwork) -> list[tuple[EdgeStrength, Band]]:
    return [(e, band_of(e.strength)) for e in n.edges]


def direction_reliable(e: EdgeStrength, cutoff: float = DIRECTION_CUTOFF) -> bool:
    return e.direction >= cutoff


def to_display_graph(n: AveragedNetwork, strength_cutoff: float = STRENGTH_CUTOFF,
                     direction_cutoff: float = DIRECTION_CUTOFF) -> tuple[Pdag, dict[frozenset, Band]]:
    """Edges with strength at or above the cutoff, arrows only for reliable directions.

    Returns the graph and a band per unordered pair. The drawn graph is not
    required to be acyclic.
    """
    nodes = list(n.nodes)
    for e in n.edges:
        for v in (e.source, e.target):
            if v not in nodes:
                nodes.append(v)
    g = Pdag(nodes)
    bands: dict[frozenset, Band] = {}
    for e in n.edges:
        if e.strength < strength_cutoff:
            continue
        if direction_reliable(e, direction_cutoff):
            g.add_directed(e.source, e.target)
        else:
            g.add_undirected(e.source, e.target)
        bands[frozenset((e.source, e.target))] = band_of(e.strength)
    return g, bands


# -- TSV -----------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.6f}"


def to_tsv(n: AveragedNetwork, direction_cutoff: float = DIRECTION_CUTOFF) -> str:
    out = io.StringIO()
    w = csv.writer(out, delimiter="\t", lineterminator="\n")
    w.writerow(TSV_COLUMNS)
    for e, band in classify_confidence(n):
        w.writerow([e.source, e.target, _fmt(e.strength), _fmt(e.direction), band.value,
                    int(direction_reliable(e, direction_cutoff))])
    return out.getvalue()


class TsvError(ValueError):
    pass


def read_strength_tsv(source, replicate_count: int = 1) -> AveragedNetwork:
    """Parse a strength table. Only ``from``, ``to``, ``strength``, ``direction`` are required."""
    text = source.read() if hasattr(source, "read") else open(source, encoding="utf-8").read()
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    if not rows:
        raise TsvError("empty strength table")
    header = [h.strip().lower() for h in rows[0]]
    for col in ("from", "to", "strength", "direction"):
        if col not in header:
            raise TsvError(f"line 1: missing column {col!r}")
    pos = {h: i for i, h in enumerate(header)}
    edges = []
    nodes: list[str] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise TsvError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            a, b = row[pos["from"]].strip(), row[pos["to"]].strip()
            s, dprob = float(row[pos["strength"]]), float(row[pos["direction"]])
        except ValueError as exc:
            raise TsvError(f"line {lineno}: {exc}") from None
        if not (0 <= s <= 1 and 0 <= dprob <= 1) or a == b or not a or not b:
            raise TsvError(f"line {lineno}: invalid edge record")
        edges.append(EdgeStrength.canonical(a, b, s, dprob))
        for v in (a, b):
            if v not in nodes:
                nodes.append(v)
    return AveragedNetwork(tuple(nodes), edges, replicate_count)
