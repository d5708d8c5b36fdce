"""Quotient-graph data model for d-periodic graphs.

A d-periodic graph is stored as its finite quotient multigraph together
with one Z^d label per directed edge representative. Edge order is fixed
at parse time and defines the coordinate order of every map into R^m
downstream, so the tuple of edges is part of the value, not an
implementation detail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import GraphFormatError
from .exact import smith_invariant_factors

MAX_DIMENSION = 4


def _as_int(value, what: str) -> int:
    # bool is an int subclass; exclude it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"{what} must be an exact integer, got {value!r}")
    return value


@dataclass(frozen=True)
class LabeledEdge:
    """Directed edge representative (tail, head, Z^d label).

    (j, i, -label) denotes the same undirected bar; a loop with label 0
    would be a zero-length bar and is rejected.
    """

    tail: int
    head: int
    label: tuple

    def __post_init__(self):
        object.__setattr__(self, "label", tuple(int(x) for x in self.label))

    def reversed(self) -> "LabeledEdge":
        return LabeledEdge(self.head, self.tail, tuple(-x for x in self.label))

    def canonical_key(self):
        """Orientation-independent key implementing the reversal convention."""
        fwd = (self.tail, self.head, self.label)
        rev = (self.head, self.tail, tuple(-x for x in self.label))
        return min(fwd, rev)


@dataclass(frozen=True)
class PeriodicGraph:
    """Finite quotient multigraph with Z^d edge labels.

    Attributes:
        d: ambient dimension, 1 <= d <= 4.
        n: number of vertex orbits.
        edges: ordered tuple of LabeledEdge; the order is load-bearing.
        names: optional vertex-orbit labels.
    """

    d: int
    n: int
    edges: tuple
    names: Optional[tuple] = None

    def __post_init__(self):
        d = _as_int(self.d, "dimension d")
        n = _as_int(self.n, "vertex count n")
        if not 1 <= d <= MAX_DIMENSION:
            raise GraphFormatError(f"dimension d must be in [1, {MAX_DIMENSION}], got {d}")
        if n < 1:
            raise GraphFormatError(f"need at least one vertex orbit, got n={n}")
        edges = tuple(self.edges)
        if not edges:
            raise GraphFormatError("need at least one edge orbit")
        for idx, e in enumerate(edges):
            if not isinstance(e, LabeledEdge):
                e = LabeledEdge(*e)
            if len(e.label) != d:
                raise GraphFormatError(f"edge {idx}: label length {len(e.label)} != d={d}")
            if not (0 <= e.tail < n and 0 <= e.head < n):
                raise GraphFormatError(f"edge {idx}: vertex index out of range [0, {n})")
            if e.tail == e.head and all(x == 0 for x in e.label):
                raise GraphFormatError(f"edge {idx}: loop with zero label is a zero-length bar")
        edges = tuple(e if isinstance(e, LabeledEdge) else LabeledEdge(*e) for e in edges)
        object.__setattr__(self, "edges", edges)
        names = self.names
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != n:
                raise GraphFormatError(f"names has {len(names)} entries, expected n={n}")
        object.__setattr__(self, "names", names)

    @property
    def m(self) -> int:
        return len(self.edges)

    def tails(self) -> np.ndarray:
        a = np.array([e.tail for e in self.edges], dtype=np.int64)
        a.setflags(write=False)
        return a

    def heads(self) -> np.ndarray:
        a = np.array([e.head for e in self.edges], dtype=np.int64)
        a.setflags(write=False)
        return a

    def labels(self) -> np.ndarray:
        a = np.array([e.label for e in self.edges], dtype=np.int64).reshape(self.m, self.d)
        a.setflags(write=False)
        return a

    def edge_lookup(self) -> dict:
        """Map canonical edge key -> sorted list of edge indices carrying it."""
        table: dict = {}
        for idx, e in enumerate(self.edges):
            table.setdefault(e.canonical_key(), []).append(idx)
        return table


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks on a periodic graph.

    label_lattice_index is None when the cycle labels do not span, i.e.
    the infinite graph splits into parallel copies of smaller rank.
    """

    connected: bool
    label_lattice_rank: int
    label_lattice_index: Optional[int]
    messages: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.connected and self.label_lattice_index == 1

    def to_dict(self) -> dict:
        return {
            "connected": self.connected,
            "label_lattice_rank": self.label_lattice_rank,
            "label_lattice_index": self.label_lattice_index,
            "ok": self.ok,
            "messages": list(self.messages),
        }


# ---------------------------------------------------------------------------
# Parsing / serialization
# ---------------------------------------------------------------------------


def graph_from_dict(doc: dict) -> PeriodicGraph:
    if not isinstance(doc, dict):
        raise GraphFormatError("graph document must be a JSON object")
    for key in ("d", "n", "edges"):
        if key not in doc:
            raise GraphFormatError(f"graph document missing required key {key!r}")
    d = _as_int(doc["d"], "d")
    n = _as_int(doc["n"], "n")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise GraphFormatError("edges must be a list")
    edges = []
    for idx, item in enumerate(raw_edges):
        if not isinstance(item, dict):
            raise GraphFormatError(f"edge {idx} must be an object")
        for key in ("tail", "head", "label"):
            if key not in item:
                raise GraphFormatError(f"edge {idx} missing key {key!r}")
        label = item["label"]
        if not isinstance(label, list):
            raise GraphFormatError(f"edge {idx}: label must be a list of integers")
        edges.append(
            LabeledEdge(
                _as_int(item["tail"], f"edge {idx} tail"),
                _as_int(item["head"], f"edge {idx} head"),
                tuple(_as_int(x, f"edge {idx} label entry") for x in label),
            )
        )
    names = doc.get("names")
    if names is not None and not isinstance(names, list):
        raise GraphFormatError("names must be a list of strings")
    return PeriodicGraph(d=d, n=n, edges=tuple(edges), names=tuple(names) if names else None)


def parse_graph(text: str) -> PeriodicGraph:
    """Parse the JSON graph document format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from exc
    return graph_from_dict(doc)


def graph_to_dict(g: PeriodicGraph) -> dict:
    doc = {
        "d": g.d,
        "n": g.n,
        "edges": [{"tail": e.tail, "head": e.head, "label": list(e.label)} for e in g.edges],
    }
    if g.names is not None:
        doc["names"] = list(g.names)
    return doc


def serialize_graph(g: PeriodicGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)


def load_graph(path) -> PeriodicGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _spanning_tree(g: PeriodicGraph):
    """Lowest-edge-index spanning forest; returns (tree_edge_indices, parent_count).

    Deterministic by construction: edges are scanned in document order and
    kept exactly when they join two components.
    """
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for idx, e in enumerate(g.edges):
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
            tree.append(idx)
    roots = {find(v) for v in range(g.n)}
    return tree, len(roots)


def is_quotient_connected(g: PeriodicGraph) -> bool:
    return _spanning_tree(g)[1] == 1


def cycle_label_matrix(g: PeriodicGraph) -> np.ndarray:
    """d x (m-n+1) integer matrix of fundamental-cycle labels.

    Columns correspond to the non-tree edges in document order; the label of
    the fundamental cycle of edge (i, j, l) is l + phi(i) - phi(j) with phi
    the tree potential rooted at vertex 0 (phi gauges every tree edge to 0).
    """
    tree, ncomp = _spanning_tree(g)
    if ncomp != 1:
        raise GraphFormatError("quotient graph is disconnected; no spanning tree")
    tree_set = set(tree)
    phi = np.zeros((g.n, g.d), dtype=np.int64)
    seen = {0}
    # propagate potentials over the tree until stable (tree is tiny)
    pending = [g.edges[i] for i in tree]
    while pending:
        progressed = False
        rest = []
        for e in pending:
            if e.tail in seen:
                phi[e.head] = phi[e.tail] + np.array(e.label, dtype=np.int64)
                seen.add(e.head)
                progressed = True
            elif e.head in seen:
                phi[e.tail] = phi[e.head] - np.array(e.label, dtype=np.int64)
                seen.add(e.tail)
                progressed = True
            else:
                rest.append(e)
        pending = rest
        if not progressed and pending:
            raise AssertionError("spanning tree traversal stalled")
    cols = []
    for idx, e in enumerate(g.edges):
        if idx in tree_set:
            continue
        cols.append(np.array(e.label, dtype=np.int64) + phi[e.tail] - phi[e.head])
    mat = np.array(cols, dtype=np.int64).T if cols else np.zeros((g.d, 0), dtype=np.int64)
    mat.setflags(write=False)
    return mat


def validate(g: PeriodicGraph) -> ValidationReport:
    """Connectivity and label-lattice checks; failures go in the report."""
    messages = []
    connected = is_quotient_connected(g)
    if not connected:
        messages.append("quotient multigraph is disconnected")
        return ValidationReport(False, 0, None, tuple(messages))
    cycles = cycle_label_matrix(g)
    factors = smith_invariant_factors([[int(x) for x in row] for row in cycles])
    lattice_rank = len(factors)
    if lattice_rank < g.d:
        index = None
        messages.append(
            f"cycle labels span rank {lattice_rank} < d={g.d}: infinite graph is disconnected"
        )
    else:
        index = 1
        for f in factors:
            index *= f
        if index != 1:
            messages.append(
                f"cycle labels generate a sublattice of index {index}: infinite graph "
                "splits into that many components"
            )
    return ValidationReport(connected, lattice_rank, index, tuple(messages))
