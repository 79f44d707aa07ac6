"""Immutable undirected simple graphs plus edge-list parsing and serialization.

Vertex identity is the label string.  Internal integer ids are positions in
the construction order (first appearance in the edge list, then registry
order), which fixes every deterministic tie-break downstream.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import EdgeListParseError, GraphAnalysisError

_COMMENT = "#"


@dataclass(frozen=True)
class EdgeList:
    """Normalized edge rows plus parse provenance."""

    rows: tuple[tuple[str, str], ...]
    source: str = "<memory>"
    duplicate_count: int = 0
    warnings: tuple[str, ...] = ()


class Graph:
    """Undirected simple graph, immutable after construction.

    Safe to share across concurrent readers; all analysis functions in this
    package treat it as read-only.
    """

    __slots__ = ("_labels", "_index", "_neighbors", "_edge_count", "_long_names")

    def __init__(
        self,
        labels: Sequence[str],
        edges: Iterable[tuple[str, str]],
        long_names: Mapping[str, str] | None = None,
    ):
        labels = tuple(labels)
        index: dict[str, int] = {}
        for label in labels:
            if not label:
                raise GraphAnalysisError("empty vertex label")
            if label in index:
                raise GraphAnalysisError(f"duplicate vertex label {label!r}")
            index[label] = len(index)
        neighbor_sets: list[set[int]] = [set() for _ in labels]
        edge_count = 0
        for a, b in edges:
            try:
                i, j = index[a], index[b]
            except KeyError as exc:
                raise GraphAnalysisError(f"edge endpoint {exc.args[0]!r} is not a vertex") from None
            if i == j:
                raise GraphAnalysisError(f"self-loop at vertex {a!r}")
            if j not in neighbor_sets[i]:
                neighbor_sets[i].add(j)
                neighbor_sets[j].add(i)
                edge_count += 1
        self._labels = labels
        self._index = index
        self._neighbors = tuple(frozenset(s) for s in neighbor_sets)
        self._edge_count = edge_count
        self._long_names = dict(long_names) if long_names else {}

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def vertex_count(self) -> int:
        return len(self._labels)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def long_names(self) -> dict[str, str]:
        return dict(self._long_names)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphAnalysisError(f"unknown vertex {label!r}") from None

    def degree(self, label: str) -> int:
        return len(self._neighbors[self.index(label)])

    def degrees(self) -> np.ndarray:
        """Vertex degrees in label order."""
        return np.array([len(s) for s in self._neighbors], dtype=np.int64)

    def neighbors(self, label: str) -> frozenset[str]:
        return frozenset(self._labels[i] for i in self._neighbors[self.index(label)])

    def neighbor_indices(self, i: int) -> frozenset[int]:
        return self._neighbors[i]

    def has_edge(self, a: str, b: str) -> bool:
        return self.index(b) in self._neighbors[self.index(a)]

    def edges(self) -> list[tuple[str, str]]:
        """Edges as label pairs, canonical order (by vertex index, i < j)."""
        out = []
        for i, nbrs in enumerate(self._neighbors):
            for j in sorted(nbrs):
                if i < j:
                    out.append((self._labels[i], self._labels[j]))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix in label order."""
        n = self.vertex_count
        adj = np.zeros((n, n), dtype=bool)
        for i, nbrs in enumerate(self._neighbors):
            for j in nbrs:
                adj[i, j] = True
        return adj

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def _detect_separator(lines: list[str]) -> str:
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith(_COMMENT):
            continue
        if "\t" in stripped:
            return "\t"
        if "," in stripped:
            return ","
    return ","


def read_edge_list(text: str, source: str = "<string>") -> EdgeList:
    """Parse delimiter-separated label pairs into normalized, deduplicated rows.

    Separator (comma or tab) is auto-detected; ``#`` starts a comment line.
    Duplicate unordered pairs are collapsed with a warning each; self-loops
    and malformed lines raise :class:`EdgeListParseError` with line numbers.
    """
    lines = text.splitlines()
    sep = _detect_separator(lines)
    rows: list[tuple[str, str]] = []
    seen: set[frozenset[str]] = set()
    warnings: list[str] = []
    duplicates = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(_COMMENT):
            continue
        fields = [f.strip() for f in line.split(sep)]
        if len(fields) != 2 or not all(fields):
            raise EdgeListParseError(
                f"expected two {'tab' if sep == chr(9) else 'comma'}-separated labels, got {line!r}",
                line_number=lineno,
            )
        a, b = fields
        if a == b:
            raise EdgeListParseError(f"self-loop at vertex {a!r}", line_number=lineno)
        pair = frozenset((a, b))
        if pair in seen:
            duplicates += 1
            warnings.append(f"line {lineno}: duplicate edge {a},{b} collapsed")
            continue
        seen.add(pair)
        rows.append((a, b))
    return EdgeList(
        rows=tuple(rows), source=source, duplicate_count=duplicates, warnings=tuple(warnings)
    )


def read_registry(text: str) -> list[tuple[str, str | None]]:
    """Parse a vertex registry: one label per line, optional long name after it."""
    lines = text.splitlines()
    sep = _detect_separator(lines)
    entries: list[tuple[str, str | None]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(_COMMENT):
            continue
        fields = [f.strip() for f in line.split(sep, 1)]
        label = fields[0]
        if not label:
            raise EdgeListParseError("empty label in registry", line_number=lineno)
        long_name = fields[1] if len(fields) > 1 and fields[1] else None
        entries.append((label, long_name))
    return entries


def graph_from_edge_list(edge_list: EdgeList, registry: list[tuple[str, str | None]] | None = None) -> Graph:
    """Build a Graph from parsed rows; registry entries may add isolated vertices."""
    order: list[str] = []
    seen: set[str] = set()
    for a, b in edge_list.rows:
        for label in (a, b):
            if label not in seen:
                seen.add(label)
                order.append(label)
    long_names: dict[str, str] = {}
    if registry:
        for label, long_name in registry:
            if label not in seen:
                seen.add(label)
                order.append(label)
            if long_name:
                long_names[label] = long_name
    return Graph(order, edge_list.rows, long_names=long_names)


def parse_edge_list(text: str, registry_text: str | None = None, source: str = "<string>") -> Graph:
    """Parse edge-list text (and optional registry text) into a Graph."""
    registry = read_registry(registry_text) if registry_text is not None else None
    return graph_from_edge_list(read_edge_list(text, source=source), registry)


def load_graph(path: str, registry_path: str | None = None) -> Graph:
    """Load a Graph from an edge-list file plus optional registry file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    registry_text = None
    if registry_path is not None:
        with open(registry_path, encoding="utf-8") as fh:
            registry_text = fh.read()
    return parse_edge_list(text, registry_text, source=path)


def to_edge_list_text(graph: Graph) -> str:
    """Serialize the canonical edge set, one ``a,b`` line per edge (each pair
    and the line list sorted by label, so the text is a pure function of the
    edge set).

    Isolated vertices are not representable in edge lines; emit a registry
    via :func:`to_registry_text` alongside when they must round-trip.
    """
    lines = sorted(f"{min(a, b)},{max(a, b)}" for a, b in graph.edges())
    return "\n".join(lines) + ("\n" if lines else "")


def to_registry_text(graph: Graph) -> str:
    """Serialize all vertices (with long names where known), one per line."""
    long_names = graph.long_names
    lines = []
    for label in graph.labels:
        name = long_names.get(label)
        lines.append(f"{label},{name}" if name else label)
    return "\n".join(lines) + ("\n" if lines else "")


def induced_subgraph(graph: Graph, vertices: Iterable[str]) -> Graph:
    """Subgraph on ``vertices`` with every edge of ``graph`` joining two of them.

    Vertex order is inherited from ``graph``; unknown vertices are an error.
    """
    wanted = set()
    for label in vertices:
        if label not in graph:
            raise GraphAnalysisError(f"unknown vertex {label!r}")
        wanted.add(label)
    kept = [label for label in graph.labels if label in wanted]
    kept_set = set(kept)
    edges = [(a, b) for a, b in graph.edges() if a in kept_set and b in kept_set]
    long_names = {k: v for k, v in graph.long_names.items() if k in kept_set}
    return Graph(kept, edges, long_names=long_names)


def connected_components(graph: Graph) -> list[frozenset[str]]:
    """Maximal connected vertex sets, largest first (ties: smallest label)."""
    n = graph.vertex_count
    seen = [False] * n
    components: list[frozenset[str]] = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            v = stack.pop()
            members.append(graph.labels[v])
            for w in graph.neighbor_indices(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        components.append(frozenset(members))
    components.sort(key=lambda comp: (-len(comp), min(comp)))
    return components
