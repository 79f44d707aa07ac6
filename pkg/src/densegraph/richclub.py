"""Degree-ordered density/diameter profiles and rich-club extraction.

The profile walks vertices in non-increasing degree order (label breaks
ties, so the prefix is deterministic) and reports, for every rank r, the
density and the diameter of the subgraph induced by the top-r vertices.
A rich club is the largest prefix of at least ``min_size`` vertices whose
internal density clears the threshold; the density drop and diameter jump
just past the club are reported as diagnostics, not used as triggers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _matrixops, metrics
from .errors import UndefinedMetricError
from .graph import Graph


@dataclass(frozen=True)
class ProfileRow:
    rank: int
    label: str
    degree: int
    density: float
    edges: int
    diameter: int | None  # largest-component diameter; None for a 1-vertex prefix
    connected: bool


@dataclass(frozen=True)
class RichClubProfile:
    rows: tuple[ProfileRow, ...]

    def density_at(self, rank: int) -> float:
        return self.rows[rank - 1].density

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class RichClubResult:
    members: tuple[str, ...]
    size: int
    internal_density: float
    missing_edges: int
    threshold: float
    next_density: float | None
    diameter_jump: int | None


@dataclass(frozen=True)
class CentralityByDegreeRow:
    rank: int
    label: str
    degree: int
    betweenness: float
    closeness: float


def degree_order(graph: Graph) -> list[str]:
    """Vertices by non-increasing degree, ties broken by ascending label."""
    return sorted(graph.labels, key=lambda label: (-graph.degree(label), label))


def rich_club_profile(graph: Graph) -> RichClubProfile:
    """Density and diameter of the top-r induced subgraph for every rank r.

    The single-vertex prefix has density 1 by convention (0/0 otherwise);
    diameters are taken on the prefix subgraph's largest component, with
    ``connected`` recording whether the whole prefix was connected.
    """
    if graph.vertex_count < 2:
        raise UndefinedMetricError("rich-club profile needs at least 2 vertices")
    order = degree_order(graph)
    order_idx = [graph.index(label) for label in order]
    adj = graph.adjacency_matrix()

    rows: list[ProfileRow] = []
    internal_edges = 0
    for rank, label in enumerate(order, start=1):
        new = order_idx[rank - 1]
        prefix = order_idx[:rank]
        internal_edges += int(adj[new, prefix].sum())
        if rank == 1:
            rows.append(ProfileRow(rank, label, graph.degree(label), 1.0, 0, None, True))
            continue
        phi = 2.0 * internal_edges / (rank * (rank - 1))
        sub = adj[np.ix_(prefix, prefix)]
        dist = _matrixops.hop_distances(sub)
        connected = not (dist == _matrixops.UNREACHABLE).any()
        reach_counts = (dist >= 0).sum(axis=1)
        comp_root = int(np.argmax(reach_counts))
        comp_members = (dist[comp_root] >= 0).nonzero()[0]
        diameter = int(dist[np.ix_(comp_members, comp_members)].max())
        rows.append(
            ProfileRow(rank, label, graph.degree(label), phi, internal_edges, diameter, connected)
        )
    return RichClubProfile(rows=tuple(rows))


def detect_rich_club(
    profile: RichClubProfile, threshold: float = 0.95, min_size: int = 3
) -> RichClubResult | None:
    """Largest rank >= min_size whose prefix density clears the threshold.

    Absence is a value: returns None when no rank qualifies (thresholds
    above 1 can never be met).
    """
    if threshold <= 0:
        raise UndefinedMetricError("threshold must be positive")
    if min_size < 2:
        raise UndefinedMetricError("min_size must be at least 2")
    best = None
    for row in profile.rows:
        if row.rank >= min_size and row.density >= threshold:
            best = row
    if best is None:
        return None
    size = best.rank
    members = tuple(row.label for row in profile.rows[:size])
    possible = size * (size - 1) // 2
    next_row = profile.rows[size] if size < len(profile.rows) else None
    diameter_jump = None
    if next_row is not None and next_row.diameter is not None and best.diameter is not None:
        diameter_jump = next_row.diameter - best.diameter
    return RichClubResult(
        members=members,
        size=size,
        internal_density=best.density,
        missing_edges=possible - best.edges,
        threshold=threshold,
        next_density=next_row.density if next_row else None,
        diameter_jump=diameter_jump,
    )


def centrality_by_degree_report(graph: Graph) -> list[CentralityByDegreeRow]:
    """Betweenness and closeness per vertex, listed in degree order."""
    scores = metrics.centralities(graph)
    rows = []
    for rank, label in enumerate(degree_order(graph), start=1):
        rows.append(
            CentralityByDegreeRow(
                rank=rank,
                label=label,
                degree=graph.degree(label),
                betweenness=scores.betweenness[label],
                closeness=scores.closeness[label],
            )
        )
    return rows
