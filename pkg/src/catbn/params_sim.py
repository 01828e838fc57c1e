"""Conditional probability tables: estimation, ancestral sampling, exact marginals.

Network files are JSON::

    {"nodes": [
        {"name": "A", "levels": ["no", "yes"], "parents": [],
         "cpt": [[0.7, 0.3]]},
        {"name": "B", "levels": ["no", "yes"], "parents": ["A"],
         "cpt": [[0.9, 0.1], [0.2, 0.8]]}
    ]}

``cpt`` holds one probability row per parent configuration, with the first
parent varying slowest (row-major over the parents' level indices).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import Dataset, Variable
from .graph import Pdag, dag as make_dag

MAX_JOINT_STATES = 2 ** 20


class NetworkError(ValueError):
    pass


@dataclass
class Cpt:
    """``table[config, level]`` = P(node = level | parents in config)."""

    node: str
    parents: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        self.parents = tuple(self.parents)
        self.table = np.asarray(self.table, dtype=float)
        if self.table.ndim != 2:
            raise NetworkError(f"{self.node}: CPT must be 2-D")
        if (self.table < 0).any():
            raise NetworkError(f"{self.node}: negative probability")
        if not np.allclose(self.table.sum(axis=1), 1.0, atol=1e-9):
            raise NetworkError(f"{self.node}: CPT rows must sum to 1")


class BayesianNetwork:
    def __init__(self, variables: Sequence[Variable], cpts: Mapping[str, Cpt]):
        self.variables = tuple(variables)
        self._var = {v.name: v for v in self.variables}
        self.cpts = dict(cpts)
        edges = [(p, c.node) for c in self.cpts.values() for p in c.parents]
        self.dag = make_dag([v.name for v in self.variables], edges)
        for v in self.variables:
            cpt = self.cpts.get(v.name)
            if cpt is None:
                raise NetworkError(f"missing CPT for {v.name}")
            n_cfg = int(np.prod([self._var[p].arity for p in cpt.parents], dtype=int))
            if cpt.table.shape != (n_cfg, v.arity):
                raise NetworkError(
                    f"{v.name}: CPT shape {cpt.table.shape}, expected {(n_cfg, v.arity)}"
                )

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def variable(self, name: str) -> Variable:
        return self._var[name]

    def config_index(self, parents: Sequence[str], values: Mapping[str, int] | np.ndarray):
        idx = 0
        for p in parents:
            idx = idx * self._var[p].arity + values[p]
        return idx

    # -- file format ----------------------------------------------------
    def to_dict(self) -> dict:
        nodes = []
        for v in self.variables:
            c = self.cpts[v.name]
            nodes.append({"name": v.name, "levels": list(v.levels), "parents": list(c.parents),
                          "cpt": c.table.tolist()})
        return {"nodes": nodes}

    @classmethod
    def from_dict(cls, obj: Mapping) -> "BayesianNetwork":
        if not isinstance(obj, Mapping) or not isinstance(obj.get("nodes"), list):
            raise NetworkError("nodes: expected a list of node objects")
        variables, cpts = [], {}
        for i, node in enumerate(obj["nodes"]):
            where = f"nodes[{i}]"
            if not isinstance(node, Mapping):
                raise NetworkError(f"{where}: expected an object")
            for key in ("name", "levels", "cpt"):
                if key not in node:
                    raise NetworkError(f"{where}.{key}: missing")
            try:
                variables.append(Variable(node["name"], tuple(node["levels"])))
                cpts[node["name"]] = Cpt(node["name"], tuple(node.get("parents", [])), node["cpt"])
            except ValueError as exc:
                raise NetworkError(f"{where}: {exc}") from None
        names = {v.name for v in variables}
        for i, node in enumerate(obj["nodes"]):
            for p in node.get("parents", []):
                if p not in names:
                    raise NetworkError(f"nodes[{i}].parents: unknown node {p!r}")
        try:
            return cls(variables, cpts)
        except ValueError as exc:
            raise NetworkError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "BayesianNetwork":
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise NetworkError(f"{path}: {exc}") from None
        return cls.from_dict(obj)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)


def fit_cpts(d: Dataset, g: Pdag, laplace: float = 1.0) -> BayesianNetwork:
    """Maximum-likelihood CPTs with ``laplace`` pseudo-counts per cell.

    With ``laplace == 0`` a parent configuration that never occurs gets the
    uniform distribution.
    """
    if laplace < 0:
        raise ValueError("laplace must be non-negative")
    if not g.is_dag():
        raise ValueError("fit_cpts needs a DAG")
    variables = [d.variable(n) for n in g.nodes]
    cpts = {}
    for v in variables:
        parents = tuple(sorted(g.parents(v.name), key=g.nodes.index))
        cfg = np.zeros(d.n_rows, dtype=np.int64)
        n_cfg = 1
        for p in parents:
            r = d.arity(p)
            cfg = cfg * r + d.column(p)
            n_cfg *= r
        flat = cfg * v.arity + d.column(v.name)
        table = np.bincount(flat, minlength=n_cfg * v.arity).reshape(n_cfg, v.arity).astype(float)
        table += laplace
        totals = table.sum(axis=1, keepdims=True)
        empty = totals[:, 0] == 0
        table[empty] = 1.0
        totals[empty] = v.arity
        cpts[v.name] = Cpt(v.name, parents, table / totals)
    return BayesianNetwork(variables, cpts)


def ancestral_sample(bn: BayesianNetwork, n: int, seed: int) -> Dataset:
    """Draw ``n`` joint samples visiting nodes in topological order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    cols: dict[str, np.ndarray] = {}
    for name in bn.dag.topological_order():
        cpt = bn.cpts[name]
        cfg = np.zeros(n, dtype=np.int64)
        for p in cpt.parents:
            cfg = cfg * bn.variable(p).arity + cols[p]
        cum = np.cumsum(cpt.table, axis=1)
        cum[:, -1] = 1.0
        u = rng.random(n)
        cols[name] = (u[:, None] >= cum[cfg]).sum(axis=1)
    rows = np.column_stack([cols[v] for v in bn.names])
    return Dataset(bn.variables, rows)


def joint_distribution(bn: BayesianNetwork) -> tuple[np.ndarray, np.ndarray]:
    """All joint states (rows of level indices, in ``bn.names`` order) and their probabilities."""
    arities = [v.arity for v in bn.variables]
    total = int(np.prod(arities, dtype=np.int64))
    if total > MAX_JOINT_STATES:
        raise NetworkError(f"joint state space {total} exceeds {MAX_JOINT_STATES}")
    states = np.array(list(itertools.product(*[range(a) for a in arities])), dtype=np.int64)
    prob = np.ones(len(states))
    pos = {name: j for j, name in enumerate(bn.names)}
    for name, cpt in bn.cpts.items():
        cfg = np.zeros(len(states), dtype=np.int64)
        for p in cpt.parents:
            cfg = cfg * bn.variable(p).arity + states[:, pos[p]]
        prob *= cpt.table[cfg, states[:, pos[name]]]
    return states, prob


def exact_marginal(bn: BayesianNetwork, x: str) -> np.ndarray:
    """Marginal of ``x`` by summing the full joint."""
    states, prob = joint_distribution(bn)
    j = bn.names.index(x)
    return np.bincount(states[:, j], weights=prob, minlength=bn.variable(x).arity)
