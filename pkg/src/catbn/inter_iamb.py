"""Inter-IAMB: Markov blankets by interleaved grow/shrink, then local structure."""

from __future__ import annotations

import itertools
import logging
from typing import Mapping

from .citest import as_tester
from .constraints import ConstraintSet
from .graph import Pdag, SepsetMap, apply_meek_rules, orient_v_structures
from .pc_stable import PcConfig

logger = logging.getLogger(__name__)


def markov_blanket_interiamb(data, target: str, cfg: PcConfig = PcConfig()) -> list[str]:
    """Estimate the Markov blanket of ``target``.

    Each grow step adds the candidate with the largest conditional mutual
    information given the current blanket among those the test finds
    dependent (ties by name). Right after an addition, members are scanned
    in insertion order and any member independent of the target given the
    rest is dropped. The loop ends when nothing is added or when a blanket
    state repeats (a finite-sample add/remove cycle).
    """
    tester = as_tester(data, cfg.alpha)
    if target not in tester.names:
        raise KeyError(f"unknown variable {target!r}")
    others = sorted(n for n in tester.names if n != target)
    mb: list[str] = []
    seen = {frozenset()}
    while True:
        best = None
        best_score = None
        for x in others:
            if x in mb:
                continue
            if tester.test(x, target, mb).independent:
                continue
            score = tester.association(x, target, mb)
            if best_score is None or score > best_score:
                best, best_score = x, score
        if best is None:
            break
        mb.append(best)
        for y in list(mb):
            rest = [m for m in mb if m != y]
            if tester.test(y, target, rest).independent:
                mb.remove(y)
        state = frozenset(mb)
        if state in seen:
            logger.debug("blanket of %s revisited %s; stopping", target, sorted(state))
            break
        seen.add(state)
    return mb


def symmetry_correct(m: Mapping[str, object]) -> dict[str, frozenset]:
    """AND rule: keep ``x`` in MB(y) only when ``y`` is in MB(x)."""
    return {y: frozenset(x for x in mb if x != y and y in m.get(x, ())) for y, mb in m.items()}


def neighbors_from_mb(data, m: Mapping[str, frozenset], cfg: PcConfig = PcConfig(),
                      constraints: ConstraintSet | None = None) -> tuple[Pdag, SepsetMap]:
    """Adjacencies among blanket partners.

    ``X - Y`` is kept unless a subset of the smaller of ``MB(X) \\ {Y}`` and
    ``MB(Y) \\ {X}`` (sizes ascending, lexicographic within a size)
    separates them. Pairs outside each other's blanket are separated by the
    smaller blanket.
    """
    tester = as_tester(data, cfg.alpha)
    nodes = sorted(tester.names)
    g = Pdag(nodes)
    sepsets = SepsetMap()
    for a, b in itertools.combinations(nodes, 2):
        mba, mbb = m.get(a, frozenset()), m.get(b, frozenset())
        if constraints is not None and constraints.is_forbidden(a, b):
            sepsets.record(a, b, ())
            continue
        if b not in mba or a not in mbb:
            sa, sb = sorted(mba - {b}), sorted(mbb - {a})
            sepsets.record(a, b, sa if len(sa) <= len(sb) else sb)
            continue
        sa, sb = sorted(mba - {b}), sorted(mbb - {a})
        pool = sa if len(sa) <= len(sb) else sb
        if cfg.max_condition_size is not None:
            max_size = min(len(pool), cfg.max_condition_size)
        else:
            max_size = len(pool)
        found = None
        for k in range(max_size + 1):
            for s in itertools.combinations(pool, k):
                if tester.test(a, b, s).independent:
                    found = s
                    break
            if found is not None:
                break
        if found is None:
            g.add_undirected(a, b)
        else:
            sepsets.record(a, b, found)
    return g, sepsets


def markov_blankets(data, cfg: PcConfig = PcConfig()) -> dict[str, list[str]]:
    tester = as_tester(data, cfg.alpha)
    return {t: markov_blanket_interiamb(tester, t, cfg) for t in sorted(tester.names)}


def inter_iamb(data, cfg: PcConfig = PcConfig(), constraints: ConstraintSet | None = None,
               conflicts: list | None = None) -> Pdag:
    tester = as_tester(data, cfg.alpha)
    blankets = symmetry_correct(markov_blankets(tester, cfg))
    skel, sepsets = neighbors_from_mb(tester, blankets, cfg, constraints)
    g = orient_v_structures(skel, sepsets, constraints, conflicts)
    return apply_meek_rules(g, constraints)
