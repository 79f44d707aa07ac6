"""Vectorized adjacency-matrix kernels shared by the metrics and ensemble paths.

All functions take a dense boolean adjacency matrix (symmetric, zero
diagonal) and run level-synchronous sweeps, so the only loops are over BFS
levels, which dense graphs keep very short.
"""

from __future__ import annotations

import numpy as np

UNREACHABLE = -1

# Forward sigma sweeps stay exact while every count fits comfortably in int64.
_SIGMA_GUARD = 2**62


def hop_distances(adj: np.ndarray) -> np.ndarray:
    """All-pairs hop distances via simultaneous BFS; -1 marks unreachable pairs."""
    n = adj.shape[0]
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    if n == 0 or not adj.any():
        return dist
    adj_f = adj.astype(np.float64)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    level = 0
    while frontier.any():
        level += 1
        nxt = ((frontier.astype(np.float64) @ adj_f) > 0) & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


def component_labels(adj: np.ndarray) -> np.ndarray:
    """Connected-component id per vertex (ids ordered by first vertex index)."""
    n = adj.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    adj_f = adj.astype(np.float64)
    comp = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        member = np.zeros(n, dtype=bool)
        member[start] = True
        frontier = member.copy()
        while frontier.any():
            nxt = ((frontier.astype(np.float64) @ adj_f) > 0) & ~member
            member |= nxt
            frontier = nxt
        labels[member] = comp
        comp += 1
    return labels


def neighborhood_edge_counts(adj: np.ndarray) -> np.ndarray:
    """Per vertex, the number of edges among its neighbors (= triangles through it)."""
    adj_f = adj.astype(np.float64)
    paths2 = adj_f @ adj_f
    return (paths2 * adj_f).sum(axis=1) / 2.0


def fix_eigenvector_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (first on ties) is positive.

    Eigenvector signs are arbitrary; fixing them keeps every spectral result
    reproducible across runs and label permutations.
    """
    out = vectors.copy()
    for j in range(out.shape[1]):
        column = out[:, j]
        anchor = int(np.argmax(np.abs(column)))
        if column[anchor] < 0:
            out[:, j] = -column
    return out


def betweenness_values(adj: np.ndarray) -> np.ndarray:
    """Betweenness per vertex: sum over unordered pairs of shortest-path fractions.

    Level-synchronous Brandes over all sources at once.  Path counts are
    exact int64 with an overflow guard; callers needing arbitrary magnitude
    use the big-integer implementation in :mod:`densegraph.metrics`.
    """
    n = adj.shape[0]
    if n <= 2 or not adj.any():
        return np.zeros(n, dtype=np.float64)
    adj_i = adj.astype(np.int64)
    adj_f = adj.astype(np.float64)
    max_degree = int(adj_i.sum(axis=1).max())

    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    sigma = np.eye(n, dtype=np.int64)
    frontier = np.eye(n, dtype=bool)
    level = 0
    while frontier.any():
        if int(sigma[frontier].max()) > _SIGMA_GUARD // max_degree:
            raise OverflowError("shortest-path counts exceed the int64 fast path")
        contrib = (sigma * frontier) @ adj_i
        level += 1
        newly = (contrib > 0) & (dist == UNREACHABLE)
        dist[newly] = level
        sigma[newly] = contrib[newly]
        frontier = newly

    sigma_f = sigma.astype(np.float64)
    delta = np.zeros((n, n), dtype=np.float64)
    for lev in range(level, 0, -1):
        at_level = dist == lev
        coeff = np.zeros((n, n), dtype=np.float64)
        coeff[at_level] = (1.0 + delta[at_level]) / sigma_f[at_level]
        delta += (coeff @ adj_f) * (dist == lev - 1) * sigma_f
    np.fill_diagonal(delta, 0.0)
    return delta.sum(axis=0) / 2.0
