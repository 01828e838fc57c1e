"""Partially directed graphs: orientation rules, CPDAGs and structural Hamming distance."""

from __future__ import annotations

import itertools
import logging
from typing import TYPE_CHECKING, Iterable, Mapping

if TYPE_CHECKING:
    from .constraints import ConstraintSet

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    pass


def pair(a: str, b: str) -> frozenset:
    return frozenset((a, b))


class Pdag:
    """Graph with directed and undirected edges over an ordered node list.

    Public operations in this module never mutate their inputs. The in-place
    helpers (``add_*``, ``remove_edge``, ``orient``) exist for building graphs
    and are used on private copies by the learners.
    """

    def __init__(self, nodes: Iterable[str], directed: Iterable[tuple[str, str]] = (),
                 undirected: Iterable[Iterable[str]] = ()):
        self.nodes: tuple[str, ...] = tuple(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("duplicate node names")
        self._pa: dict[str, set[str]] = {n: set() for n in self.nodes}
        self._ch: dict[str, set[str]] = {n: set() for n in self.nodes}
        self._un: dict[str, set[str]] = {n: set() for n in self.nodes}
        for a, b in directed:
            self.add_directed(a, b)
        for e in undirected:
            a, b = tuple(e)
            self.add_undirected(a, b)

    @property
    def directed(self) -> set[tuple[str, str]]:
        return {(a, b) for b, ps in self._pa.items() for a in ps}

    @property
    def undirected(self) -> set[frozenset]:
        return {pair(a, b) for a, bs in self._un.items() for b in bs if a < b}

    # -- construction ---------------------------------------------------
    def _check_new(self, a: str, b: str) -> None:
        if a not in self._pa or b not in self._pa:
            raise GraphError(f"unknown node in edge ({a}, {b})")
        if a == b:
            raise GraphError(f"self-loop on {a}")
        if self.adjacent(a, b):
            raise GraphError(f"pair ({a}, {b}) already has an edge")

    def add_directed(self, a: str, b: str) -> None:
        self._check_new(a, b)
        self._pa[b].add(a)
        self._ch[a].add(b)

    def add_undirected(self, a: str, b: str) -> None:
        self._check_new(a, b)
        self._un[a].add(b)
        self._un[b].add(a)

    def remove_edge(self, a: str, b: str) -> None:
        for x, y in ((a, b), (b, a)):
            self._pa[y].discard(x)
            self._ch[x].discard(y)
            self._un[x].discard(y)

    def orient(self, a: str, b: str) -> None:
        """Turn the undirected edge ``a - b`` into ``a -> b``."""
        if b not in self._un[a]:
            raise GraphError(f"{a} - {b} is not an undirected edge")
        self._un[a].discard(b)
        self._un[b].discard(a)
        self._pa[b].add(a)
        self._ch[a].add(b)

    def copy(self) -> "Pdag":
        g = Pdag(self.nodes)
        g._pa = {n: set(s) for n, s in self._pa.items()}
        g._ch = {n: set(s) for n, s in self._ch.items()}
        g._un = {n: set(s) for n, s in self._un.items()}
        return g

    @classmethod
    def complete(cls, nodes: Iterable[str]) -> "Pdag":
        nodes = tuple(nodes)
        return cls(nodes, undirected=itertools.combinations(nodes, 2))

    # -- queries ----------------------------------------------------------
    def adjacent(self, a: str, b: str) -> bool:
        return b in self._pa[a] or b in self._ch[a] or b in self._un[a]

    def has_directed(self, a: str, b: str) -> bool:
        return a in self._pa[b]

    def has_undirected(self, a: str, b: str) -> bool:
        return b in self._un[a]

    def neighbors(self, a: str) -> set[str]:
        """Nodes joined to ``a`` by an edge of any kind."""
        return self._pa[a] | self._ch[a] | self._un[a]

    def undirected_neighbors(self, a: str) -> set[str]:
        return set(self._un[a])

    def parents(self, a: str) -> set[str]:
        return set(self._pa[a])

    def children(self, a: str) -> set[str]:
        return set(self._ch[a])

    def skeleton_pairs(self) -> set[frozenset]:
        return {pair(a, b) for a, b in self.directed} | self.undirected

    def skeleton(self) -> "Pdag":
        return Pdag(self.nodes, undirected=self.skeleton_pairs())

    def n_edges(self) -> int:
        return sum(len(s) for s in self._pa.values()) + len(self.undirected)

    def is_dag(self) -> bool:
        return not any(self._un.values()) and self._directed_acyclic()

    def has_directed_path(self, src: str, dst: str) -> bool:
        stack, seen = [src], {src}
        while stack:
            u = stack.pop()
            for v in self._ch[u]:
                if v == dst:
                    return True
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return False

    def _directed_acyclic(self) -> bool:
        try:
            self.topological_order()
        except GraphError:
            return False
        return True

    def topological_order(self) -> list[str]:
        """Topological order of the directed part; ties broken by node order."""
        pos = {n: i for i, n in enumerate(self.nodes)}
        indeg = {n: len(self._pa[n]) for n in self.nodes}
        order = []
        ready = [n for n in self.nodes if indeg[n] == 0]
        while ready:
            u = ready.pop(0)
            order.append(u)
            for v in sorted(self._ch[u], key=pos.__getitem__):
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        if len(order) != len(self.nodes):
            raise GraphError("directed part contains a cycle")
        return order

    def validate(self) -> None:
        for b, ps in self._pa.items():
            for a in ps:
                if a == b:
                    raise GraphError("self-loop")
                if b in self._pa[a]:
                    raise GraphError(f"both orientations of {a}-{b}")
                if b in self._un[a]:
                    raise GraphError(f"{a}-{b} both directed and undirected")
                if b not in self._ch[a]:
                    raise GraphError("inconsistent adjacency bookkeeping")
        for a, bs in self._un.items():
            for b in bs:
                if a not in self._un[b]:
                    raise GraphError("inconsistent adjacency bookkeeping")
        if not self._directed_acyclic():
            raise GraphError("directed part contains a cycle")

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Pdag):
            return NotImplemented
        return (set(self.nodes) == set(other.nodes) and self._pa == other._pa
                and self._un == other._un)

    def __hash__(self):
        return hash((frozenset(self.nodes), frozenset(self.directed), frozenset(self.undirected)))

    def __repr__(self) -> str:
        parts = sorted(f"{a}->{b}" for a, b in self.directed)
        parts += sorted("-".join(sorted(e)) for e in self.undirected)
        return f"Pdag({', '.join(parts)})"

    def edge_list(self) -> list[tuple[str, str, str]]:
        """Sorted ``(from, to, kind)`` rows, kind being ``"->"`` or ``"--"``."""
        rows = [(a, b, "->") for a, b in self.directed]
        rows += [tuple(sorted(e)) + ("--",) for e in self.undirected]
        return sorted(rows)


def dag(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> Pdag:
    g = Pdag(nodes, directed=edges)
    if not g.is_dag():
        raise GraphError("edges do not form a DAG")
    return g


# -- sepsets ----------------------------------------------------------------

class SepsetMap(dict):
    """Unordered pair -> conditioning set that separated the pair."""

    def record(self, a: str, b: str, s: Iterable[str]) -> None:
        self[pair(a, b)] = frozenset(s)

    def get_sep(self, a: str, b: str) -> frozenset | None:
        return self.get(pair(a, b))


# -- orientation ---------------------------------------------------------------

def _blacklisted(constraints, a: str, b: str) -> bool:
    return constraints is not None and constraints.is_blacklisted(a, b)


def _forbidden(constraints, a: str, b: str) -> bool:
    return constraints is not None and constraints.is_forbidden(a, b)


def _creates_cycle(g: Pdag, a: str, b: str) -> bool:
    return g.has_directed_path(b, a)


def _creates_v_structure(g: Pdag, a: str, b: str) -> bool:
    return any(c != a and not g.adjacent(a, c) for c in g.parents(b))


def apply_forced_orientations(g: Pdag, constraints: "ConstraintSet | None") -> Pdag:
    """Orient undirected edges whose reverse direction is blacklisted."""
    g = g.copy()
    if constraints is None:
        return g
    for a, b in sorted(tuple(sorted(e)) for e in g.undirected):
        if _blacklisted(constraints, a, b) and _blacklisted(constraints, b, a):
            continue
        if _blacklisted(constraints, b, a):
            src, dst = a, b
        elif _blacklisted(constraints, a, b):
            src, dst = b, a
        else:
            continue
        if _creates_cycle(g, src, dst):
            logger.warning("forced orientation %s -> %s skipped: would create a cycle", src, dst)
            continue
        g.orient(src, dst)
    return g


def orient_v_structures(skeleton: Pdag, sepsets: Mapping, constraints: "ConstraintSet | None" = None,
                        conflicts: list | None = None) -> Pdag:
    """Orient unshielded colliders ``X -> Z <- Y`` where ``Z`` is not in sepset(X, Y).

    One-direction blacklist entries are applied first (see
    :func:`apply_forced_orientations`). Triples are then visited by middle
    node ``Z`` in name order, then by ``(X, Y)`` in name order. An orientation that is blacklisted,
    contradicts an edge already directed or closes a directed cycle is
    skipped and recorded in ``conflicts`` (first orientation wins). Pairs that
    are forbidden outright carry no independence evidence and never seed a
    collider.
    """
    g = apply_forced_orientations(skeleton, constraints)
    nodes = sorted(g.nodes)
    for z in nodes:
        nbrs = sorted(g.neighbors(z))
        for x, y in itertools.combinations(nbrs, 2):
            if g.adjacent(x, y) or _forbidden(constraints, x, y):
                continue
            sep = sepsets.get(pair(x, y))
            if sep is None or z in sep:
                continue
            for src in (x, y):
                if g.has_directed(src, z):
                    continue
                reason = None
                if g.has_directed(z, src):
                    reason = "opposite orientation already present"
                elif _blacklisted(constraints, src, z):
                    reason = "blacklisted"
                elif _creates_cycle(g, src, z):
                    reason = "would create a cycle"
                if reason is None:
                    g.orient(src, z)
                else:
                    logger.debug("v-structure %s -> %s <- %s: %s -> %s %s", x, z, y, src, z, reason)
                    if conflicts is not None:
                        conflicts.append({"triple": (x, z, y), "edge": (src, z), "reason": reason})
    return g


def _try_orient(g: Pdag, a: str, b: str, constraints) -> bool:
    if (_blacklisted(constraints, a, b) or _creates_cycle(g, a, b)
            or _creates_v_structure(g, a, b)):
        return False
    g.orient(a, b)
    return True


def _meek_candidate(g: Pdag, a: str, b: str) -> bool:
    """True if any of Meek's rules R1-R4 would orient the undirected edge a - b as a -> b."""
    # R1: c -> a - b, c and b nonadjacent
    for c in g.parents(a):
        if not g.adjacent(c, b):
            return True
    # R2: a -> c -> b
    for c in g.children(a):
        if g.has_directed(c, b):
            return True
    und_a = g.undirected_neighbors(a)
    # R3: a - c -> b, a - d -> b, c and d nonadjacent
    cands = sorted(c for c in und_a if g.has_directed(c, b))
    for c, d in itertools.combinations(cands, 2):
        if not g.adjacent(c, d):
            return True
    # R4: a - d -> c -> b, a adjacent to c, d and b nonadjacent
    for d in und_a:
        if d == b or g.adjacent(d, b):
            continue
        for c in g.children(d):
            if c != b and g.has_directed(c, b) and g.adjacent(a, c):
                return True
    return False


def apply_meek_rules(g: Pdag, constraints: "ConstraintSet | None" = None) -> Pdag:
    """Close ``g`` under Meek's orientation rules R1-R4.

    Undirected edges are scanned in sorted order and the scan restarts after
    every orientation, so the result is deterministic. A rule application is
    skipped when it would violate the blacklist, close a directed cycle or
    introduce a new v-structure.
    """
    g = g.copy()
    changed = True
    while changed:
        changed = False
        for a, b in sorted(tuple(sorted(e)) for e in g.undirected):
            for src, dst in ((a, b), (b, a)):
                if _meek_candidate(g, src, dst) and _try_orient(g, src, dst, constraints):
                    changed = True
                    break
            if changed:
                break
    return g


# -- CPDAG of a DAG --------------------------------------------------------------

def v_structures(g: Pdag) -> set[tuple[str, str, str]]:
    """Unshielded colliders ``(x, z, y)`` with ``x < y``."""
    out = set()
    for z in g.nodes:
        for x, y in itertools.combinations(sorted(g.parents(z)), 2):
            if not g.adjacent(x, y):
                out.add((x, z, y))
    return out


def cpdag_of(d: Pdag) -> Pdag:
    """Completed PDAG of a DAG by compelled-edge labelling.

    Edges are ordered from a topological sort and labelled compelled or
    reversible in a single sweep; reversible edges become undirected.
    """
    if not d.is_dag():
        raise GraphError("cpdag_of requires a DAG")
    order = d.topological_order()
    rank = {n: i for i, n in enumerate(order)}
    ordered = []
    for y in order:
        for x in sorted(d.parents(y), key=lambda n: -rank[n]):
            ordered.append((x, y))
    label: dict[tuple[str, str], str | None] = {e: None for e in ordered}

    for x, y in ordered:
        if label[(x, y)] is not None:
            continue
        done = False
        for w in d.parents(x):
            if label[(w, x)] != "compelled":
                continue
            if w not in d.parents(y):
                for z in d.parents(y):
                    label[(z, y)] = "compelled"
                done = True
                break
            label[(w, y)] = "compelled"
        if done:
            continue
        if any(z != x and z not in d.parents(x) for z in d.parents(y)):
            kind = "compelled"
        else:
            kind = "reversible"
        for z in d.parents(y):
            if label[(z, y)] is None:
                label[(z, y)] = kind

    out = Pdag(d.nodes)
    for (x, y), kind in label.items():
        if kind == "compelled":
            out.add_directed(x, y)
        else:
            out.add_undirected(x, y)
    return out


# -- comparison ----------------------------------------------------------------------

def _edge_state(g: Pdag, a: str, b: str) -> str | None:
    if g.has_directed(a, b):
        return "fwd"
    if g.has_directed(b, a):
        return "back"
    if g.has_undirected(a, b):
        return "und"
    return None


def shd(a: Pdag, b: Pdag) -> int:
    """Structural Hamming distance: one per missing, extra or differently oriented edge."""
    if set(a.nodes) != set(b.nodes):
        raise GraphError("shd needs graphs over the same nodes")
    total = 0
    for x, y in itertools.combinations(sorted(a.nodes), 2):
        if _edge_state(a, x, y) != _edge_state(b, x, y):
            total += 1
    return total


# -- d-separation ----------------------------------------------------------------------

def d_separated(g: Pdag, x: str, y: str, z: Iterable[str]) -> bool:
    """Whether ``x`` and ``y`` are d-separated by ``z`` in the DAG ``g`` (reachability)."""
    z = set(z)
    parents = {n: g.parents(n) for n in g.nodes}
    children = {n: g.children(n) for n in g.nodes}
    # ancestors of z (including z) decide whether a collider is open
    anc = set()
    stack = list(z)
    while stack:
        n = stack.pop()
        if n not in anc:
            anc.add(n)
            stack.extend(parents[n])
    # states: (node, arrived_from_child)
    visited = set()
    stack = [(x, True)]
    while stack:
        n, up = stack.pop()
        if (n, up) in visited:
            continue
        visited.add((n, up))
        if n == y:
            return False
        if up and n not in z:
            stack.extend((p, True) for p in parents[n])
            stack.extend((c, False) for c in children[n])
        elif not up:
            if n not in z:
                stack.extend((c, False) for c in children[n])
            if n in anc:
                stack.extend((p, True) for p in parents[n])
    return True
