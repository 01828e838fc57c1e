"""Tier blacklists and edge admissibility."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

TARGET_TIER = "target"


class ConstraintError(ValueError):
    pass


class Admissibility(enum.Enum):
    FREE = "free"
    FORCED_X_TO_Y = "forced_x_to_y"
    FORCED_Y_TO_X = "forced_y_to_x"
    FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class ConstraintSet:
    """Ordered pairs ``(from, to)`` that may not appear as directed edges.

    ``tier_of`` maps each feature to its tier and the target to ``"target"``.
    """

    blacklist: frozenset = frozenset()
    tier_of: Mapping[str, object] = field(default_factory=dict)

    def is_blacklisted(self, a: str, b: str) -> bool:
        return (a, b) in self.blacklist

    def is_forbidden(self, a: str, b: str) -> bool:
        return (a, b) in self.blacklist and (b, a) in self.blacklist

    def restricted_to(self, names: Iterable[str]) -> "ConstraintSet":
        keep = set(names)
        return ConstraintSet(
            frozenset((a, b) for a, b in self.blacklist if a in keep and b in keep),
            {k: v for k, v in self.tier_of.items() if k in keep},
        )


def build_constraints(tier_map: Mapping[str, int], target: str | None = None,
                      extra_blacklist: Iterable[tuple[str, str]] = (),
                      variables: Iterable[str] | None = None) -> ConstraintSet:
    """Blacklist from tiers: no edge out of the target, none from a later tier to an earlier one.

    Parameters
    ----------
    tier_map : mapping
        Feature name -> integer tier. Lower tiers come first causally.
    target : str, optional
        Outcome variable; every edge leaving it is blacklisted.
    extra_blacklist : iterable of (from, to)
        User-supplied pairs added verbatim.
    variables : iterable of str, optional
        If given, every variable must have a tier or be the target.
    """
    tier_of: dict[str, object] = {}
    for name, tier in tier_map.items():
        if name == target:
            continue
        if isinstance(tier, bool) or not isinstance(tier, int):
            raise ConstraintError(f"tier of {name!r} must be an integer, got {tier!r}")
        tier_of[name] = tier
    if target is not None:
        tier_of[target] = TARGET_TIER
    if variables is not None:
        missing = [v for v in variables if v not in tier_of]
        if missing:
            raise ConstraintError(f"variables without a tier: {missing}")

    black = set()
    features = [n for n in tier_of if n != target]
    if target is not None:
        black.update((target, v) for v in features)
    for u, v in itertools.permutations(features, 2):
        if tier_of[u] > tier_of[v]:
            black.add((u, v))
    for a, b in extra_blacklist:
        if a == b:
            raise ConstraintError(f"self-pair in blacklist: {a!r}")
        black.add((a, b))
    return ConstraintSet(frozenset(black), tier_of)


def admissibility(c: ConstraintSet | None, x: str, y: str) -> Admissibility:
    if x == y:
        raise ValueError("x and y must differ")
    if c is None:
        return Admissibility.FREE
    fwd = c.is_blacklisted(x, y)
    back = c.is_blacklisted(y, x)
    if fwd and back:
        return Admissibility.FORBIDDEN
    if back:
        return Admissibility.FORCED_X_TO_Y
    if fwd:
        return Admissibility.FORCED_Y_TO_X
    return Admissibility.FREE


def violations(g, c: ConstraintSet | None) -> list[str]:
    """Blacklisted directed edges and forbidden adjacencies present in ``g``."""
    if c is None:
        return []
    out = []
    for a, b in sorted(g.directed):
        if c.is_blacklisted(a, b):
            out.append(f"blacklisted edge {a} -> {b}")
    for e in sorted(tuple(sorted(e)) for e in g.undirected):
        if c.is_forbidden(*e):
            out.append(f"forbidden pair {e[0]} - {e[1]}")
        elif c.is_blacklisted(*e) or c.is_blacklisted(e[1], e[0]):
            out.append(f"undirected edge {e[0]} - {e[1]} on a one-way blacklisted pair")
    return out
