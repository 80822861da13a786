"""Labeled circuits: directed multigraphs with labeled edges on the apex.

Labels are exact values (``Decimal``, ``int``, ``Fraction`` or plain
strings).  Floats are refused because their printed forms are not stable.
An :class:`LGraph` keeps its edges sorted by ``(source, target, label)``,
so two graphs are equal exactly when their edge multisets agree.
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any, Iterable, Union

from .decoration import DecoratedCospan, DecorationBackend
from .errors import DomainMismatch, ParseError
from .finset import FinFunction, FinSet

__all__ = [
    "Label",
    "LGraph",
    "CircuitBackend",
    "CIRCUIT",
    "parse_label",
    "format_label",
    "lgraph_transport",
    "lgraph_combine",
    "lgraph_unit",
    "dot_export",
    "csv_export",
    "inputs",
    "outputs",
    "terminals",
]

Label = Union[Decimal, int, Fraction, str]

DEFAULT_ALPHABET = tuple(Decimal(s) for s in ("0.2", "0.3", "0.8", "1.3", "1.7", "2.0"))


def _label_key(label: Label) -> tuple:
    if isinstance(label, str):
        return (1, label, "")
    return (0, label, str(label))


def _check_label(label: Any) -> Label:
    if isinstance(label, bool) or isinstance(label, float):
        raise TypeError(f"labels must be exact, got {label!r}")
    if isinstance(label, Decimal) and not label.is_finite():
        raise TypeError(f"labels must be finite, got {label!r}")
    if not isinstance(label, (Decimal, int, Fraction, str)):
        raise TypeError(f"unsupported label type {type(label).__name__}")
    return label


def parse_label(text: str) -> Label:
    """Decimal strings become exact decimals; anything else stays a symbol."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        return text
    return value if value.is_finite() else text


def format_label(label: Label) -> str:
    return str(label)


@dataclass(frozen=True)
class LGraph:
    """Directed multigraph on ``nodes`` with one label per edge."""

    nodes: FinSet
    edge_list: tuple[tuple[int, int, Label], ...] = ()

    def __post_init__(self) -> None:
        n = self.nodes.size
        edges = []
        for e in self.edge_list:
            s, t, label = e
            if not (isinstance(s, int) and isinstance(t, int) and 0 <= s < n and 0 <= t < n):
                raise DomainMismatch(f"edge {e!r} leaves the node set of size {n}")
            edges.append((s, t, _check_label(label)))
        edges.sort(key=lambda e: (e[0], e[1], _label_key(e[2])))
        object.__setattr__(self, "edge_list", tuple(edges))

    @property
    def edges(self) -> FinSet:
        return FinSet(len(self.edge_list))

    @property
    def src(self) -> FinFunction:
        return FinFunction(self.edges, self.nodes, tuple(e[0] for e in self.edge_list))

    @property
    def tgt(self) -> FinFunction:
        return FinFunction(self.edges, self.nodes, tuple(e[1] for e in self.edge_list))

    @property
    def labels(self) -> tuple[Label, ...]:
        return tuple(e[2] for e in self.edge_list)

    def in_degrees(self) -> list[int]:
        deg = [0] * self.nodes.size
        for _, t, _ in self.edge_list:
            deg[t] += 1
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * self.nodes.size
        for s, _, _ in self.edge_list:
            deg[s] += 1
        return deg


def lgraph_transport(f: FinFunction, g: LGraph) -> LGraph:
    """Move every edge endpoint along ``f``; labels are untouched."""
    if f.dom != g.nodes:
        raise DomainMismatch(f"cannot transport a graph on {g.nodes} along {f}")
    t = f.table
    return LGraph(f.cod, tuple((t[s], t[u], label) for s, u, label in g.edge_list))


def lgraph_combine(g1: LGraph, g2: LGraph) -> LGraph:
    shift = g1.nodes.size
    moved = tuple((s + shift, t + shift, label) for s, t, label in g2.edge_list)
    return LGraph(g1.nodes + g2.nodes, g1.edge_list + moved)


def lgraph_unit() -> LGraph:
    return LGraph(FinSet(0), ())


class CircuitBackend(DecorationBackend):
    name = "circuit"

    def transport(self, f: FinFunction, d: LGraph) -> LGraph:
        return lgraph_transport(f, d)

    def combine(self, d1: LGraph, d2: LGraph) -> LGraph:
        return lgraph_combine(d1, d2)

    def unit(self) -> LGraph:
        return lgraph_unit()

    def support(self, d: LGraph) -> FinSet:
        return d.nodes

    def to_json(self, d: LGraph) -> dict:
        return {"edges": [[s, t, format_label(label)] for s, t, label in d.edge_list]}

    def from_json(self, payload: Any, apex: FinSet) -> LGraph:
        if not isinstance(payload, dict) or not isinstance(payload.get("edges", []), list):
            raise ParseError("circuit decoration must be an object with an 'edges' list")
        edges = []
        for k, e in enumerate(payload.get("edges", [])):
            if (not isinstance(e, list) or len(e) != 3 or not isinstance(e[2], str)
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e[:2])):
                raise ParseError(f"edges[{k}] must be [source, target, \"label\"]")
            edges.append((e[0], e[1], parse_label(e[2])))
        try:
            return LGraph(apex, tuple(edges))
        except (DomainMismatch, TypeError) as exc:
            raise ParseError(str(exc)) from exc

    def sample(self, rng: random.Random, size: int, *, max_edges: int = 5,
               alphabet: Iterable[Label] = DEFAULT_ALPHABET, **_: int) -> LGraph:
        if size == 0:
            return LGraph(FinSet(0), ())
        alphabet = tuple(alphabet)
        count = rng.randint(0, max_edges)
        edges = tuple((rng.randrange(size), rng.randrange(size), rng.choice(alphabet))
                      for _ in range(count))
        return LGraph(FinSet(size), edges)


CIRCUIT = CircuitBackend()


def inputs(c: DecoratedCospan) -> set[int]:
    return c.cospan.in_leg.image()


def outputs(c: DecoratedCospan) -> set[int]:
    return c.cospan.out_leg.image()


def terminals(c: DecoratedCospan) -> set[int]:
    return inputs(c) | outputs(c)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_export(c: DecoratedCospan, name: str = "circuit") -> str:
    """Graphviz text for a circuit; gray points mark the feet."""
    g: LGraph = c.decoration
    lines = [
        f"digraph {name} {{",
        "  rankdir=LR;",
        '  node [shape=circle, style=filled, fillcolor=black, label="", width=0.12];',
    ]
    for k in range(g.nodes.size):
        lines.append(f"  n{k};")
    foot = 'shape=circle, style=filled, color=gray, fillcolor=gray, width=0.12'
    for k in range(c.left_foot.size):
        lines.append(f'  x{k} [{foot}, xlabel="x{k}"];')
    for k in range(c.right_foot.size):
        lines.append(f'  y{k} [{foot}, xlabel="y{k}"];')
    leg = "color=gray, penwidth=2, arrowhead=vee"
    for k, v in enumerate(c.cospan.in_leg.table):
        lines.append(f"  x{k} -> n{v} [{leg}];")
    for k, v in enumerate(c.cospan.out_leg.table):
        lines.append(f"  y{k} -> n{v} [{leg}];")
    for s, t, label in g.edge_list:
        lines.append(f"  n{s} -> n{t} [label={_quote(format_label(label))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def csv_export(c: DecoratedCospan) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["source", "target", "label"])
    for s, t, label in c.decoration.edge_list:
        writer.writerow([s, t, format_label(label)])
    return out.getvalue()
