"""Independent oracles used across the test suite."""

import itertools

import networkx as nx
import numpy as np

from catbn.graph import Pdag


def all_dags(nodes):
    """Every DAG on ``nodes`` by brute force over edge states."""
    pairs = list(itertools.combinations(nodes, 2))
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = [(a, b) if s == 1 else (b, a) for (a, b), s in zip(pairs, states) if s]
        g = Pdag(nodes, directed=edges)
        if g.is_dag():
            yield g


def skeleton_and_vstructs(g):
    skel = frozenset(frozenset(e) for e in g.directed)
    vs = set()
    for z in g.nodes:
        for x, y in itertools.combinations(sorted(g.parents(z)), 2):
            if not g.adjacent(x, y):
                vs.add((x, z, y))
    return skel, frozenset(vs)


def equivalence_classes(nodes):
    """Map (skeleton, v-structures) -> list of member DAGs."""
    classes = {}
    for g in all_dags(nodes):
        classes.setdefault(skeleton_and_vstructs(g), []).append(g)
    return classes


def cpdag_by_enumeration(members):
    """Edge directed iff every member of the class orients it the same way."""
    first = members[0]
    out = Pdag(first.nodes)
    for a, b in first.directed:
        if all(m.has_directed(a, b) for m in members):
            out.add_directed(a, b)
        else:
            out.add_undirected(a, b)
    return out


def nx_dsep(g, x, y, z):
    dg = nx.DiGraph()
    dg.add_nodes_from(g.nodes)
    dg.add_edges_from(g.directed)
    fn = getattr(nx, "is_d_separator", None) or nx.d_separated
    return fn(dg, {x}, {y}, set(z))


def rowscan_counts(d, x, y):
    """Joint counts of (x, y) by a plain Python loop over rows."""
    rx, ry = d.arity(x), d.arity(y)
    out = np.zeros((rx, ry), dtype=int)
    ix, iy = d.column_index(x), d.column_index(y)
    for row in d.rows.tolist():
        out[row[ix], row[iy]] += 1
    return out


def exact_mi(bn, x, y, z=()):
    """I(x; y | z) in nats from the exact joint of ``bn`` (enumeration)."""
    from catbn.params_sim import joint_distribution

    states, prob = joint_distribution(bn)
    names = bn.names

    def h(cols):
        if not cols:
            return 0.0
        idx = [names.index(c) for c in cols]
        dims = [bn.variable(c).arity for c in cols]
        key = np.ravel_multi_index(states[:, idx].T, dims)
        p = np.bincount(key, weights=prob)
        p = p[p > 0]
        return float(-(p * np.log(p)).sum())

    z = list(z)
    return h([x] + z) + h([y] + z) - h([x, y] + z) - h(z)
