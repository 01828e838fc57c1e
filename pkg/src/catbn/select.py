"""Filter-style feature selection by mutual information with the target."""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import Dataset
from .infotheory import entropy, mutual_information


@dataclass(frozen=True)
class RankedFeature:
    name: str
    mi: float
    fraction_of_target_entropy: float


def rank_features(d: Dataset, target: str) -> list[RankedFeature]:
    """Every non-target variable, by decreasing MI with ``target`` (ties by name)."""
    h = entropy(d, target)
    ranked = []
    for name in d.names:
        if name == target:
            continue
        mi = mutual_information(d, name, target)
        ranked.append(RankedFeature(name, mi, mi / h if h > 0 else 0.0))
    ranked.sort(key=lambda r: (-r.mi, r.name))
    return ranked


def select_features(d: Dataset, target: str, threshold_fraction: float = 0.01) -> list[str]:
    """Names whose MI with ``target`` strictly exceeds ``threshold_fraction * H(target)``, in rank order."""
    if not 0 < threshold_fraction < 1:
        raise ValueError("threshold_fraction must lie in (0, 1)")
    cutoff = threshold_fraction * entropy(d, target)
    return [r.name for r in rank_features(d, target) if r.mi > cutoff]
