"""Graphviz DOT and TSV writers for learned graphs."""

from __future__ import annotations

import csv
import io
from typing import Mapping

from .averaging import BAND_STYLE, Band
from .graph import Pdag


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Pdag, bands: Mapping[frozenset, Band] | None = None, name: str = "G") -> str:
    """Render ``g`` as a DOT digraph.

    Undirected edges get ``dir=none``. When ``bands`` is given, every edge
    carries ``style=solid|dashed|dotted`` for high, medium and low confidence.
    """
    lines = [f"digraph {_q(name)} {{"]
    for n in g.nodes:
        lines.append(f"  {_q(n)};")
    for a, b, kind in g.edge_list():
        attrs = []
        if kind == "--":
            attrs.append("dir=none")
        if bands is not None:
            band = bands.get(frozenset((a, b)))
            if band in BAND_STYLE:
                attrs.append(f"style={BAND_STYLE[band]}")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(a)} -> {_q(b)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


EDGE_COLUMNS = ("from", "to", "type")


def edges_to_tsv(g: Pdag) -> str:
    out = io.StringIO()
    w = csv.writer(out, delimiter="\t", lineterminator="\n")
    w.writerow(EDGE_COLUMNS)
    for a, b, kind in g.edge_list():
        w.writerow([a, b, "directed" if kind == "->" else "undirected"])
    return out.getvalue()


def edges_from_tsv(text: str, nodes=None) -> Pdag:
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    if not rows or tuple(rows[0]) != EDGE_COLUMNS:
        raise ValueError(f"edge table must start with header {EDGE_COLUMNS}")
    records = [r for r in rows[1:] if r]
    names = list(nodes or [])
    for a, b, _ in records:
        for v in (a, b):
            if v not in names:
                names.append(v)
    g = Pdag(names)
    for a, b, kind in records:
        if kind == "directed":
            g.add_directed(a, b)
        elif kind == "undirected":
            g.add_undirected(a, b)
        else:
            raise ValueError(f"unknown edge type {kind!r}")
    return g
