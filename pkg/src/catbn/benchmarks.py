"""Canned ground-truth networks for recovery experiments.

``chain``     A -> B -> C
``collider``  A -> C <- B
``tiered``    eight nodes laid out like an evacuation survey: two tier-1
              roots, three tier-2 information/social variables, two tier-3
              appraisals and the ``Evc`` outcome.
"""

from __future__ import annotations

from .dataset import Variable
from .params_sim import BayesianNetwork, Cpt

BIN = ("no", "yes")


def _bn(spec) -> BayesianNetwork:
    variables = [Variable(name, levels) for name, levels, _, _ in spec]
    cpts = {name: Cpt(name, parents, table) for name, _, parents, table in spec}
    return BayesianNetwork(variables, cpts)


def chain() -> BayesianNetwork:
    return _bn([
        ("A", BIN, (), [[0.5, 0.5]]),
        ("B", BIN, ("A",), [[0.85, 0.15], [0.2, 0.8]]),
        ("C", BIN, ("B",), [[0.8, 0.2], [0.15, 0.85]]),
    ])


def collider() -> BayesianNetwork:
    return _bn([
        ("A", BIN, (), [[0.5, 0.5]]),
        ("B", BIN, (), [[0.6, 0.4]]),
        ("C", BIN, ("A", "B"), [[0.9, 0.1], [0.4, 0.6], [0.35, 0.65], [0.05, 0.95]]),
    ])


TIERED_TIERS = {
    "CstDst": 1, "Eld": 1,
    "EvcNtc": 2, "Nbr": 2, "FamFrds": 2,
    "Rsk": 3, "D_Eld": 3,
}
TIERED_TARGET = "Evc"


def tiered() -> BayesianNetwork:
    """Eight-node network; ``Eld`` and ``D_Eld`` are independent of ``Evc``."""
    return _bn([
        ("CstDst", ("near", "mid", "far"), (), [[0.3, 0.3, 0.4]]),
        ("Eld", BIN, (), [[0.7, 0.3]]),
        ("EvcNtc", BIN, ("CstDst",), [[0.25, 0.75], [0.55, 0.45], [0.85, 0.15]]),
        ("Nbr", BIN, ("CstDst",), [[0.3, 0.7], [0.6, 0.4], [0.8, 0.2]]),
        ("FamFrds", BIN, ("Nbr",), [[0.8, 0.2], [0.3, 0.7]]),
        ("Rsk", ("low", "mid", "high"), ("FamFrds",), [[0.5, 0.3, 0.2], [0.15, 0.35, 0.5]]),
        ("D_Eld", BIN, ("Eld",), [[0.85, 0.15], [0.3, 0.7]]),
        ("Evc", BIN, ("EvcNtc", "Nbr", "Rsk"), [
            [0.95, 0.05], [0.8, 0.2], [0.6, 0.4],
            [0.75, 0.25], [0.5, 0.5], [0.25, 0.75],
            [0.7, 0.3], [0.45, 0.55], [0.2, 0.8],
            [0.4, 0.6], [0.2, 0.8], [0.05, 0.95],
        ]),
    ])


NETWORKS = {"chain": chain, "collider": collider, "tiered": tiered}
