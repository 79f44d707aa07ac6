"""Structural indices and per-vertex centralities for undirected graphs.

Path metrics are computed on the largest connected component and the choice
is recorded in a :class:`ComponentPolicy`, so summaries of graphs with
stragglers (isolated or pendant vertices) stay interpretable.

Freeman-style centralizations are pinned to exact variants because toolkits
differ; these are the variants that reproduce the random-graph baseline
ensemble used throughout the test suite:

* degree:       ``sum(max - deg) / ((n - 1) * (n - 2))`` (star scores 1)
* betweenness:  vertex scores divided by the ordered-pair count
  ``(n - 1)(n - 2)`` first, then ``sum(max - b) / (n - 1)`` (an undirected
  star scores 0.5; the spread normalizer is the directed-star maximum)
* closeness:    ``c = (n - 1)/sum(dist)``, then
  ``sum(max - c) * (2n - 3) / ((n - 1)(n - 2))`` (star scores 1)

The characteristic path length is the median over vertices of the full
distance-matrix row mean (the zero self-distance included), again matching
the baseline ensemble convention.

Shortest-path counts for betweenness use exact integer arithmetic (Python
integers cannot overflow) with per-pair fractions accumulated exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _matrixops
from .errors import UndefinedMetricError
from .graph import Graph, connected_components

UNREACHABLE = _matrixops.UNREACHABLE

INDEX_FIELDS = (
    "vertex_count",
    "edge_count",
    "density",
    "mean_degree",
    "mean_distance",
    "characteristic_path_length",
    "diameter",
    "local_clustering",
    "transitivity",
    "degree_centralization",
    "betweenness_centralization",
    "closeness_centralization",
)


@dataclass(frozen=True)
class ComponentPolicy:
    """Which component the path-based metrics were computed on."""

    component_count: int
    component_size: int
    vertex_count: int

    def describe(self) -> str:
        if self.component_count == 1:
            return "whole graph (connected)"
        return (
            f"largest of {self.component_count} components "
            f"({self.component_size} of {self.vertex_count} vertices)"
        )


@dataclass(frozen=True)
class DistanceTable:
    """Symmetric hop distances; ``UNREACHABLE`` (-1) marks cross-component pairs."""

    labels: tuple[str, ...]
    hops: np.ndarray

    def distance(self, a: str, b: str) -> int | None:
        i = self.labels.index(a)
        j = self.labels.index(b)
        value = int(self.hops[i, j])
        return None if value == UNREACHABLE else value


@dataclass(frozen=True)
class PathMetrics:
    mean_distance: float
    characteristic_path_length: float
    diameter: int
    policy: ComponentPolicy


@dataclass(frozen=True)
class ClusteringCoefficients:
    local_clustering: float
    transitivity: float


@dataclass(frozen=True)
class CentralityScores:
    degree: dict[str, float]
    betweenness: dict[str, float]
    closeness: dict[str, float]


@dataclass(frozen=True)
class StructuralIndices:
    vertex_count: int
    edge_count: int
    density: float
    mean_degree: float
    mean_distance: float
    characteristic_path_length: float
    diameter: int
    local_clustering: float
    transitivity: float
    degree_centralization: float
    betweenness_centralization: float
    closeness_centralization: float
    component_policy: ComponentPolicy

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in INDEX_FIELDS}


def density(graph: Graph) -> float:
    """Existing edges over possible edges, 2m / n(n-1)."""
    n = graph.vertex_count
    if n < 2:
        raise UndefinedMetricError("density needs at least 2 vertices")
    return 2.0 * graph.edge_count / (n * (n - 1))


def all_pairs_distances(graph: Graph) -> DistanceTable:
    """Exact BFS hop distances between all vertex pairs."""
    return DistanceTable(labels=graph.labels, hops=_matrixops.hop_distances(graph.adjacency_matrix()))


def _largest_component_indices(graph: Graph) -> tuple[list[int], int]:
    components = connected_components(graph)
    largest = components[0] if components else frozenset()
    indices = [i for i, label in enumerate(graph.labels) if label in largest]
    return indices, len(components)


def _path_metrics_from_distances(dist: np.ndarray, indices: list[int]) -> tuple[float, float, int]:
    sub = dist[np.ix_(indices, indices)].astype(np.float64)
    size = len(indices)
    off_diag_sum = float(sub.sum())
    mean_distance = off_diag_sum / (size * (size - 1))
    # characteristic length: median of full distance-matrix row means, i.e.
    # the zero self-distance stays in each mean (divisor size, not size-1)
    per_vertex_mean = sub.sum(axis=1) / size
    characteristic = float(np.median(per_vertex_mean))
    diameter = int(sub.max())
    return mean_distance, characteristic, diameter


def path_metrics(graph: Graph) -> PathMetrics:
    """Mean distance, characteristic path length (median of per-vertex means),
    and diameter, all on the largest connected component."""
    indices, component_count = _largest_component_indices(graph)
    if len(indices) < 2:
        raise UndefinedMetricError("largest component has fewer than 2 vertices")
    dist = _matrixops.hop_distances(graph.adjacency_matrix())
    mean_distance, characteristic, diameter = _path_metrics_from_distances(dist, indices)
    policy = ComponentPolicy(
        component_count=component_count,
        component_size=len(indices),
        vertex_count=graph.vertex_count,
    )
    return PathMetrics(mean_distance, characteristic, diameter, policy)


def _clustering_from_matrix(adj: np.ndarray, degrees: np.ndarray) -> tuple[float, float]:
    n = len(degrees)
    if n == 0:
        raise UndefinedMetricError("clustering of an empty graph")
    edge_counts = _matrixops.neighborhood_edge_counts(adj)
    with np.errstate(divide="ignore", invalid="ignore"):
        local = np.where(degrees > 1, 2.0 * edge_counts / (degrees * (degrees - 1.0)), 0.0)
    local_clustering = float(local.mean())
    triples = float((degrees * (degrees - 1) // 2).sum())
    if triples == 0:
        raise UndefinedMetricError("no connected triple; transitivity undefined")
    transitivity = float(edge_counts.sum()) / triples
    return local_clustering, transitivity


def clustering(graph: Graph) -> ClusteringCoefficients:
    """Mean neighborhood density (degree <= 1 contributes 0) and the
    triangle/connected-triple ratio."""
    local, trans = _clustering_from_matrix(graph.adjacency_matrix(), graph.degrees())
    return ClusteringCoefficients(local_clustering=local, transitivity=trans)


def betweenness_fractions(graph: Graph) -> dict[str, Fraction]:
    """Exact betweenness (sum over unordered pairs of path fractions) per vertex.

    Brandes' accumulation with integer path counts and Fraction dependencies,
    so the result is an exact rational on every input.
    """
    n = graph.vertex_count
    adjacency = [sorted(graph.neighbor_indices(i)) for i in range(n)]
    totals = [Fraction(0)] * n
    for source in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[source] = 0
        sigma[source] = 1
        order: list[int] = []
        queue = deque([source])
        while queue:
            v = queue.popleft()
            order.append(v)
            next_dist = dist[v] + 1
            sigma_v = sigma[v]
            for w in adjacency[v]:
                if dist[w] < 0:
                    dist[w] = next_dist
                    queue.append(w)
                if dist[w] == next_dist:
                    sigma[w] += sigma_v
                    preds[w].append(v)
        delta = [Fraction(0)] * n
        for w in reversed(order):
            coeff = (1 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != source:
                totals[w] += delta[w]
    return {graph.labels[i]: totals[i] / 2 for i in range(n)}


def _closeness_from_distances(dist: np.ndarray) -> np.ndarray:
    """Per-vertex closeness within its own component; isolated vertices get 0."""
    reachable = dist >= 0
    comp_sizes = reachable.sum(axis=1)
    dist_sums = np.where(reachable, dist, 0).sum(axis=1).astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        closeness = np.where(comp_sizes > 1, (comp_sizes - 1.0) / dist_sums, 0.0)
    return closeness


def centralities(graph: Graph) -> CentralityScores:
    """Degree, betweenness, and closeness per vertex.

    Degree centrality is deg/(n-1); betweenness is the unnormalized sum of
    pair fractions; closeness is (size-1)/sum(dist) within each component.
    """
    n = graph.vertex_count
    if n < 2:
        raise UndefinedMetricError("centralities need at least 2 vertices")
    labels = graph.labels
    degrees = graph.degrees()
    degree = {labels[i]: degrees[i] / (n - 1) for i in range(n)}
    betweenness = {k: float(v) for k, v in betweenness_fractions(graph).items()}
    dist = _matrixops.hop_distances(graph.adjacency_matrix())
    closeness_values = _closeness_from_distances(dist)
    closeness = {labels[i]: float(closeness_values[i]) for i in range(n)}
    return CentralityScores(degree=degree, betweenness=betweenness, closeness=closeness)


def _clamp_unit(value: float) -> float:
    # the star-graph normalization guarantees [0, 1]; strip float noise
    return min(max(value, 0.0), 1.0)


def _degree_centralization(degrees: np.ndarray) -> float:
    n = len(degrees)
    spread = float((degrees.max() - degrees).sum())
    return _clamp_unit(spread / ((n - 1) * (n - 2)))


def _betweenness_centralization(values: np.ndarray) -> float:
    n = len(values)
    # ordered-pair normalizer: an undirected star scores 0.5, not 1; this is
    # the variant that reproduces the published random-graph baseline column
    normalized = values / ((n - 1) * (n - 2))
    return _clamp_unit(float((normalized.max() - normalized).sum()) / (n - 1))


def _closeness_centralization(closeness: np.ndarray) -> float:
    n = len(closeness)
    spread = float((closeness.max() - closeness).sum())
    return _clamp_unit(spread * (2 * n - 3) / ((n - 1) * (n - 2)))


def centralization(graph: Graph, kind: str) -> float:
    """Freeman centralization in [0, 1] for kind 'degree', 'betweenness',
    or 'closeness' (closeness requires a connected graph)."""
    n = graph.vertex_count
    if n < 3:
        raise UndefinedMetricError("centralization needs at least 3 vertices")
    if kind == "degree":
        return _degree_centralization(graph.degrees())
    if kind == "betweenness":
        values = np.array([float(v) for v in betweenness_fractions(graph).values()])
        return _betweenness_centralization(values)
    if kind == "closeness":
        dist = _matrixops.hop_distances(graph.adjacency_matrix())
        if (dist == UNREACHABLE).any():
            raise UndefinedMetricError("closeness centralization requires a connected graph")
        return _closeness_centralization(_closeness_from_distances(dist))
    raise ValueError(f"unknown centralization kind {kind!r}")


def structural_summary(graph: Graph) -> StructuralIndices:
    """Every structural index in one pass.

    Degree and betweenness centralization use the whole graph; path metrics
    and closeness centralization use the largest component (recorded in the
    returned policy).
    """
    n = graph.vertex_count
    m = graph.edge_count
    d = density(graph)
    mean_degree = 2.0 * m / n
    if n < 3:
        raise UndefinedMetricError("structural summary needs at least 3 vertices")

    adj = graph.adjacency_matrix()
    degrees = graph.degrees()
    dist = _matrixops.hop_distances(adj)

    indices, component_count = _largest_component_indices(graph)
    if len(indices) < 2:
        raise UndefinedMetricError("largest component has fewer than 2 vertices")
    mean_distance, characteristic, diameter = _path_metrics_from_distances(dist, indices)
    policy = ComponentPolicy(
        component_count=component_count, component_size=len(indices), vertex_count=n
    )

    local, trans = _clustering_from_matrix(adj, degrees)

    betweenness = np.array([float(v) for v in betweenness_fractions(graph).values()])
    closeness_all = _closeness_from_distances(dist)
    closeness_comp = closeness_all[indices] if component_count > 1 else closeness_all
    if len(indices) < 3:
        raise UndefinedMetricError("closeness centralization needs a component of 3+ vertices")

    return StructuralIndices(
        vertex_count=n,
        edge_count=m,
        density=d,
        mean_degree=mean_degree,
        mean_distance=mean_distance,
        characteristic_path_length=characteristic,
        diameter=diameter,
        local_clustering=local,
        transitivity=trans,
        degree_centralization=_degree_centralization(degrees),
        betweenness_centralization=_betweenness_centralization(betweenness),
        closeness_centralization=_closeness_centralization(closeness_comp),
        component_policy=policy,
    )
