"""Order-independent PC (PC-stable) structure learning."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .citest import as_tester
from .constraints import ConstraintSet
from .graph import Pdag, SepsetMap, apply_meek_rules, orient_v_structures

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PcConfig:
    alpha: float = 0.05
    max_condition_size: int | None = None

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.max_condition_size is not None and self.max_condition_size < 0:
            raise ValueError("max_condition_size must be non-negative")


def learn_skeleton_pcstable(data, cfg: PcConfig = PcConfig(),
                            constraints: ConstraintSet | None = None) -> tuple[Pdag, SepsetMap]:
    """Level-wise skeleton search with adjacency sets frozen at the start of each level.

    ``data`` is a :class:`~catbn.dataset.Dataset` or any CI tester. Edges are
    visited in sorted name order and, for each edge ``X - Y``, conditioning
    sets are drawn first from ``adj(X) \\ {Y}`` and then from
    ``adj(Y) \\ {X}``, each in lexicographic order. The first separating
    set removes the edge and is recorded.
    """
    tester = as_tester(data, cfg.alpha)
    nodes = sorted(tester.names)
    sepsets = SepsetMap()
    g = Pdag(nodes)
    for a, b in itertools.combinations(nodes, 2):
        if constraints is not None and constraints.is_forbidden(a, b):
            sepsets.record(a, b, ())
        else:
            g.add_undirected(a, b)

    level = 0
    while cfg.max_condition_size is None or level <= cfg.max_condition_size:
        adj = {n: frozenset(g.neighbors(n)) for n in nodes}
        if all(len(adj[n]) - 1 < level for n in nodes):
            break
        for a, b in sorted(tuple(sorted(e)) for e in g.undirected):
            found = None
            for x, y in ((a, b), (b, a)):
                pool = sorted(adj[x] - {y})
                if len(pool) < level:
                    continue
                for s in itertools.combinations(pool, level):
                    if tester.test(x, y, s).independent:
                        found = s
                        break
                if found is not None:
                    break
            if found is not None:
                g.remove_edge(a, b)
                sepsets.record(a, b, found)
        level += 1
    return g, sepsets


def pc_stable(data, cfg: PcConfig = PcConfig(), constraints: ConstraintSet | None = None,
              conflicts: list | None = None) -> Pdag:
    """Skeleton, then v-structures, then Meek closure."""
    skel, sepsets = learn_skeleton_pcstable(data, cfg, constraints)
    g = orient_v_structures(skel, sepsets, constraints, conflicts)
    return apply_meek_rules(g, constraints)
