"""Seeded Erdős–Rényi G(n, p) sampling and ensemble-mean structural indices.

Sample ``i`` of an ensemble is a pure function of ``(seed, i)`` (see
:mod:`densegraph.rng`), so ensembles are reproducible bit-for-bit no matter
how many worker threads compute them: every sample writes its own row of a
preallocated result array and the reduction is a fixed column-wise pass.

Per-sample indices run on adjacency matrices directly (same kernels as
:mod:`densegraph.metrics`, except betweenness, which here uses the int64
vectorized path instead of exact rationals; the two are cross-checked in the
test suite).  Indices that are undefined for a particular sample (e.g. no
connected triple) are recorded as NaN and excluded from the means.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _matrixops, metrics, rng
from .errors import GraphAnalysisError
from .graph import Graph

_DOMAIN = "er-ensemble"

INDEX_FIELDS = metrics.INDEX_FIELDS


@dataclass(frozen=True)
class ErParams:
    """Erdős–Rényi ensemble parameters: each possible edge exists with probability p."""

    vertex_count: int
    edge_probability: float
    samples: int = 10000
    seed: int = 0

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphAnalysisError("vertex_count must be at least 1")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise GraphAnalysisError("edge_probability must be in [0, 1]")
        if self.samples < 1:
            raise GraphAnalysisError("samples must be at least 1")


@dataclass(frozen=True)
class IndexStats:
    mean: float
    sd: float
    undefined_count: int


@dataclass(frozen=True)
class EnsembleSummary:
    params: ErParams
    stats: dict[str, IndexStats]
    disconnected_count: int
    connected_only: bool = False

    def mean(self, name: str) -> float:
        return self.stats[name].mean


def vertex_labels(n: int) -> tuple[str, ...]:
    """Synthetic labels v00, v01, ... whose sort order equals index order."""
    width = max(2, len(str(n - 1)))
    return tuple(f"v{i:0{width}d}" for i in range(n))


def _sample_adjacency(params: ErParams, index: int) -> np.ndarray:
    n = params.vertex_count
    key = rng.derive_key(rng.domain_key(params.seed, _DOMAIN), index)
    pair_count = n * (n - 1) // 2
    mask = rng.uniforms(key, pair_count) < params.edge_probability
    adj = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, k=1)
    adj[iu] = mask
    return adj | adj.T


def sample_er(params: ErParams, index: int) -> Graph:
    """Sample ``index`` of the ensemble, as a Graph with synthetic labels.

    Possible edges are enumerated in row-major (i < j) order and each is
    included independently with probability p, driven by the counter stream
    keyed by (seed, index).
    """
    adj = _sample_adjacency(params, index)
    labels = vertex_labels(params.vertex_count)
    iu, ju = np.nonzero(np.triu(adj, k=1))
    edges = [(labels[i], labels[j]) for i, j in zip(iu.tolist(), ju.tolist())]
    return Graph(labels, edges)


def _indices_from_adjacency(adj: np.ndarray) -> tuple[np.ndarray, bool]:
    """Index vector (order INDEX_FIELDS) plus connectedness; NaN where undefined."""
    n = adj.shape[0]
    degrees = adj.sum(axis=1).astype(np.int64)
    m = int(degrees.sum()) // 2
    values = np.full(len(INDEX_FIELDS), np.nan)
    values[0] = n
    values[1] = m
    if n >= 2:
        values[2] = 2.0 * m / (n * (n - 1))
    values[3] = 2.0 * m / n

    dist = _matrixops.hop_distances(adj)
    reachable_counts = (dist >= 0).sum(axis=1)
    largest_size = int(reachable_counts.max())
    connected = largest_size == n
    if connected:
        comp_indices = list(range(n))
    else:
        root = int(np.argmax(reachable_counts))
        comp_indices = np.nonzero(dist[root] >= 0)[0].tolist()

    if len(comp_indices) >= 2:
        values[4], values[5], values[6] = metrics._path_metrics_from_distances(dist, comp_indices)

    try:
        values[7], values[8] = metrics._clustering_from_matrix(adj, degrees)
    except GraphAnalysisError:
        # no connected triple: every degree is <= 1, so C1 is 0; C2 stays NaN
        values[7] = 0.0

    if n >= 3:
        values[9] = metrics._degree_centralization(degrees)
        values[10] = metrics._betweenness_centralization(_matrixops.betweenness_values(adj))
        if len(comp_indices) >= 3:
            closeness = metrics._closeness_from_distances(dist)[comp_indices]
            values[11] = metrics._closeness_centralization(closeness)
    return values, connected


def ensemble_summary(params: ErParams, threads: int = 1, connected_only: bool = False) -> EnsembleSummary:
    """Mean and sd of every structural index over N independent samples.

    Path metrics of a disconnected sample use its largest component; with
    ``connected_only`` disconnected samples are dropped from all statistics
    instead (the disconnected count is reported either way).
    """
    count = params.samples
    rows = np.full((count, len(INDEX_FIELDS)), np.nan)
    connected_flags = np.zeros(count, dtype=bool)

    def work(i: int) -> None:
        rows[i], connected_flags[i] = _indices_from_adjacency(_sample_adjacency(params, i))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, range(count)))
    else:
        for i in range(count):
            work(i)

    disconnected = int(count - connected_flags.sum())
    kept = rows[connected_flags] if connected_only else rows
    stats: dict[str, IndexStats] = {}
    for col, name in enumerate(INDEX_FIELDS):
        column = kept[:, col]
        defined = column[~np.isnan(column)]
        undefined = len(column) - len(defined)
        if len(defined) == 0:
            stats[name] = IndexStats(mean=float("nan"), sd=float("nan"), undefined_count=undefined)
        else:
            sd = float(defined.std(ddof=1)) if len(defined) > 1 else 0.0
            stats[name] = IndexStats(mean=float(defined.mean()), sd=sd, undefined_count=undefined)
    return EnsembleSummary(
        params=params, stats=stats, disconnected_count=disconnected, connected_only=connected_only
    )
