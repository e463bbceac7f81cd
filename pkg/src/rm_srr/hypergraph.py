"""Recovery hypergraphs of RM generator matrices.

Vertices are the servers ``1..n``.  A recovery set of size one would be a
loop, so it is instead joined to an auxiliary vertex with id ``0``; that
vertex has unlimited capacity and never appears in capacity constraints.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable

from .exceptions import ValidationError
from .recovery import (
    oracle_all_recovery_sets,
    second_smallest_recovery_sets,
    smallest_recovery_set,
)
from .rm import RmParams

AUX = 0
ORACLE_POLICY = "oracle"
GEOMETRIC_POLICY = "geometric"
POLICIES = (ORACLE_POLICY, GEOMETRIC_POLICY)


@dataclass(frozen=True)
class Edge:
    label: int
    servers: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        if len(self.servers) == 1:
            return (AUX,) + self.servers
        return self.servers

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sort_key(self):
        return (self.label, len(self.servers), self.servers)


@dataclass(frozen=True)
class RecoveryHypergraph:
    edges: tuple[Edge, ...]
    servers: tuple[int, ...]

    @property
    def auxiliary(self) -> bool:
        return any(len(e.servers) == 1 for e in self.edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return ((AUX,) if self.auxiliary else ()) + self.servers

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({e.label for e in self.edges}))

    def edges_for(self, label: int) -> list[Edge]:
        return [e for e in self.edges if e.label == label]

    def incidence(self) -> list[list[int]]:
        """|V| x |E| 0/1 matrix with rows in ``vertices`` order."""
        return [[1 if v in e.vertices else 0 for e in self.edges] for v in self.vertices]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "auxiliary": self.auxiliary,
            "edges": [{"label": e.label, "vertices": list(e.vertices)} for e in self.edges],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["vertex"] + [f"e{i}:{e.label}" for i, e in enumerate(self.edges, start=1)])
        for v, row in zip(self.vertices, self.incidence()):
            writer.writerow(["aux" if v == AUX else v] + row)
        return buf.getvalue()

    def to_table(self) -> str:
        lines = []
        for i, e in enumerate(self.edges, start=1):
            names = ["aux" if v == AUX else str(v) for v in e.vertices]
            lines.append(f"e{i:<3} label {e.label:<3} {{{', '.join(names)}}}")
        return "\n".join(lines) + ("\n" if lines else "")


def _make(edges: Iterable[Edge]) -> RecoveryHypergraph:
    edges = sorted(set(edges), key=Edge.sort_key)
    servers = sorted({v for e in edges for v in e.servers})
    return RecoveryHypergraph(tuple(edges), tuple(servers))


def build_hypergraph(p: RmParams, policy: str = ORACLE_POLICY, objects=None) -> RecoveryHypergraph:
    """Hypergraph over all objects (or just ``objects``) under the given edge policy.

    The server set is always all ``n`` columns.
    """
    if policy not in POLICIES:
        raise ValidationError(f"unknown edge policy {policy!r}; choose from {', '.join(POLICIES)}")
    labels = range(1, p.k + 1) if objects is None else sorted(set(objects))
    edges = []
    for j in labels:
        if policy == ORACLE_POLICY:
            sets = oracle_all_recovery_sets(p, j)
        else:
            sets = [smallest_recovery_set(p, j)] + second_smallest_recovery_sets(p, j)
        edges.extend(Edge(j, R.columns) for R in sets)
    g = _make(edges)
    return RecoveryHypergraph(g.edges, tuple(range(1, p.n + 1)))


def induced_subgraph(g: RecoveryHypergraph, objects) -> RecoveryHypergraph:
    """Edges labeled by ``objects`` and the vertices they touch."""
    keep = set(objects)
    return _make(e for e in g.edges if e.label in keep)


def dumps_hypergraph_json(g: RecoveryHypergraph) -> str:
    return json.dumps(g.to_json(), indent=2) + "\n"
