"""Neighborhood dissimilarity, classical scaling, and the hemicycle layout.

The layout places a designated club of central vertices at the origin of a
unit half-disk and every other vertex at polar coordinates

* radius: affine in the vertex's mean dissimilarity to the club,
  ``r = 0.8 * (dbar - max) / (max - min) + 1`` (so r spans [0.2, 1]);
* angle: ``theta = pi * (c1 - min) / (max - min)`` where c1 is the first
  principal component of the embedded vertices after the direction carrying
  the club distance has been projected out.

The vertex dissimilarity is the squared-form neighborhood measure
``delta^2(v, w) = |Gamma_v XOR Gamma_w| / (|Gamma_v| + |Gamma_w|)``; the
matrix stores ``delta`` (the square root) so that classical scaling embeds
it isometrically in Euclidean space.  Double centering follows the standard
Torgerson construction (positive row/column/grand means).

Degenerate inputs (constant club distances, constant first component) raise
hard errors rather than producing a meaningless picture.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from . import _matrixops
from .errors import (
    DegenerateInputError,
    EigenSolverError,
    GraphAnalysisError,
    IsolatedVertexError,
    NonEuclideanInputError,
)
from .graph import Graph, induced_subgraph

RADIUS_MIN = 0.2
RADIUS_MAX = 1.0


@dataclass(frozen=True)
class DissimilarityMatrix:
    """Symmetric vertex dissimilarities in [0, 1]; `squared` records whether
    entries are delta^2 rather than delta."""

    labels: tuple[str, ...]
    values: np.ndarray
    squared: bool = False

    def value(self, a: str, b: str) -> float:
        return float(self.values[self.labels.index(a), self.labels.index(b)])

    def submatrix(self, labels: Iterable[str]) -> "DissimilarityMatrix":
        wanted = list(labels)
        index = {label: i for i, label in enumerate(self.labels)}
        idx = [index[label] for label in wanted]
        return DissimilarityMatrix(
            labels=tuple(wanted), values=self.values[np.ix_(idx, idx)], squared=self.squared
        )


@dataclass(frozen=True)
class GramMatrix:
    """Double-centered inner products with their eigendecomposition
    (eigenvalues descending, eigenvector signs fixed)."""

    values: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class Embedding:
    """Principal coordinates; projection fields are filled by
    :func:`project_out_variable`."""

    labels: tuple[str, ...]
    coords: np.ndarray
    eigenvalues: np.ndarray
    projection_vector: np.ndarray | None = None
    projected: np.ndarray | None = None
    projected_components: np.ndarray | None = None

    @property
    def dimensions(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True)
class VertexPlacement:
    label: str
    club_distance: float
    radius: float
    angle: float


@dataclass(frozen=True)
class HemicycleLayout:
    placements: tuple[VertexPlacement, ...]
    club: tuple[str, ...]
    diagnostic_correlation: float
    warnings: tuple[str, ...] = ()


def czekanovski_dice(
    graph: Graph, closed_neighborhoods: bool = False, store_squared: bool = False
) -> DissimilarityMatrix:
    """Pairwise proportion of non-shared neighbors.

    Open neighborhoods by default; `closed_neighborhoods` counts each vertex
    in its own neighborhood.  Every vertex must have at least one neighbor.
    """
    degrees = graph.degrees()
    for i, label in enumerate(graph.labels):
        if degrees[i] == 0:
            raise IsolatedVertexError(f"vertex {label!r} is isolated; dissimilarity undefined")
    adj = graph.adjacency_matrix().astype(np.float64)
    if closed_neighborhoods:
        common = adj @ adj + 2.0 * adj
        sizes = degrees + 1.0
    else:
        common = adj @ adj
        sizes = degrees.astype(np.float64)
    size_sums = sizes[:, None] + sizes[None, :]
    squared = 1.0 - 2.0 * common / size_sums
    np.fill_diagonal(squared, 0.0)
    squared = np.clip(squared, 0.0, 1.0)
    values = squared if store_squared else np.sqrt(squared)
    return DissimilarityMatrix(labels=graph.labels, values=values, squared=store_squared)


def mean_distance_to_club(dm: DissimilarityMatrix, club: Iterable[str]) -> dict[str, float]:
    """Mean dissimilarity from each non-club vertex to the club members."""
    club_set = set(club)
    if not club_set:
        raise GraphAnalysisError("club is empty")
    index = {label: i for i, label in enumerate(dm.labels)}
    for label in club_set:
        if label not in index:
            raise GraphAnalysisError(f"club member {label!r} not in dissimilarity matrix")
    club_idx = [index[label] for label in dm.labels if label in club_set]
    out: dict[str, float] = {}
    for label in dm.labels:
        if label in club_set:
            continue
        out[label] = float(dm.values[club_idx, index[label]].mean())
    return out


def radial_coords(club_distances: np.ndarray) -> np.ndarray:
    """Affine map of club distances onto [0.2, 1]: nearest 0.2, farthest 1."""
    values = np.asarray(club_distances, dtype=np.float64)
    top = values.max()
    bottom = values.min()
    if top <= bottom:
        raise DegenerateInputError("all club distances are equal; radius undefined")
    return 0.8 * (values - top) / (top - bottom) + 1.0


def angular_coords(component: np.ndarray) -> np.ndarray:
    """Affine map of the projected first principal component onto [0, pi]."""
    values = np.asarray(component, dtype=np.float64)
    top = values.max()
    bottom = values.min()
    if top <= bottom:
        raise DegenerateInputError("first principal component is constant; angle undefined")
    return np.pi * (values - bottom) / (top - bottom)


def gram_from_distances(dm: DissimilarityMatrix) -> GramMatrix:
    """Torgerson double centering: w_ij = -(d_ij^2 - row - col + grand)/2."""
    d2 = np.asarray(dm.values, dtype=np.float64) ** 2
    row_means = d2.mean(axis=1, keepdims=True)
    col_means = d2.mean(axis=0, keepdims=True)
    grand_mean = d2.mean()
    gram = -0.5 * (d2 - row_means - col_means + grand_mean)
    gram = (gram + gram.T) / 2.0
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(gram)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"Gram eigendecomposition failed ({gram.shape[0]}x{gram.shape[0]}): {exc}") from exc
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = eigenvalues[order]
    eigenvectors = _matrixops.fix_eigenvector_signs(eigenvectors[:, order])
    return GramMatrix(values=gram, eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def principal_coordinates(
    gram: GramMatrix, labels: Iterable[str], tol: float | None = None
) -> Embedding:
    """Coordinates X = Q sqrt(L) from eigenpairs with eigenvalue above `tol`
    (default 1e-10 of the top eigenvalue).

    A clearly negative spectrum is rejected: the dissimilarities were not
    Euclidean-embeddable, which signals a corrupted input here.
    """
    labels = tuple(labels)
    eigenvalues = gram.eigenvalues
    top = float(eigenvalues.max(initial=0.0))
    effective_tol = tol if tol is not None else 1e-10 * max(top, 0.0)
    scale = float(np.abs(eigenvalues).max(initial=0.0))
    negative_floor = max(100.0 * effective_tol, 1e-12 * scale)
    if eigenvalues.min(initial=0.0) < -negative_floor:
        raise NonEuclideanInputError(
            f"most negative eigenvalue {eigenvalues.min():.3e} exceeds floor {negative_floor:.3e}"
        )
    keep = eigenvalues > effective_tol
    coords = gram.eigenvectors[:, keep] * np.sqrt(eigenvalues[keep])
    return Embedding(labels=labels, coords=coords, eigenvalues=eigenvalues[keep].copy())


def _as_vector(embedding: Embedding, values: Mapping[str, float] | np.ndarray) -> np.ndarray:
    if isinstance(values, Mapping):
        try:
            return np.array([values[label] for label in embedding.labels], dtype=np.float64)
        except KeyError as exc:
            raise GraphAnalysisError(f"no value for vertex {exc.args[0]!r}") from None
    vector = np.asarray(values, dtype=np.float64)
    if vector.shape != (len(embedding.labels),):
        raise GraphAnalysisError("value vector length does not match embedding")
    return vector


def project_out_variable(
    embedding: Embedding, values: Mapping[str, float] | np.ndarray
) -> Embedding:
    """Remove the direction along which the given per-vertex variable varies.

    The direction `a` is the unit vector of covariances between the variable
    and the principal coordinates (zero-variance or uncorrelated variables
    are errors); Y = X (I - a a') then has zero covariance, hence zero
    correlation, between the variable and any linear combination of its
    columns, including every principal component of Y.
    """
    variable = _as_vector(embedding, values)
    centered = variable - variable.mean()
    if float(centered @ centered) <= 0.0:
        raise DegenerateInputError("variable is constant; nothing to project out")
    coords = embedding.coords
    if coords.shape[1] == 0:
        raise DegenerateInputError("embedding has no dimensions to project")
    raw_direction = coords.T @ centered
    norm = float(np.linalg.norm(raw_direction))
    reference = float(np.linalg.norm(coords)) * float(np.linalg.norm(centered))
    if norm <= 1e-12 * max(reference, 1.0):
        raise DegenerateInputError("variable is uncorrelated with every principal coordinate")
    direction = raw_direction / norm
    projected = coords - np.outer(coords @ direction, direction)

    centered_proj = projected - projected.mean(axis=0, keepdims=True)
    try:
        comp_values, comp_vectors = np.linalg.eigh(centered_proj.T @ centered_proj)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"projected PCA failed: {exc}") from exc
    order = np.argsort(comp_values)[::-1]
    components = _matrixops.fix_eigenvector_signs(centered_proj @ comp_vectors[:, order])
    return Embedding(
        labels=embedding.labels,
        coords=embedding.coords,
        eigenvalues=embedding.eigenvalues,
        projection_vector=direction,
        projected=projected,
        projected_components=components,
    )


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    denom = float(np.linalg.norm(xc) * np.linalg.norm(yc))
    if denom == 0.0:
        raise DegenerateInputError("correlation with a constant vector")
    return float(xc @ yc / denom)


def hemicycle_layout(
    graph: Graph, club: Iterable[str], closed_neighborhoods: bool = False
) -> HemicycleLayout:
    """Polar placement of every non-club vertex around the club.

    Isolated vertices are skipped with a warning; the embedding, projection,
    and angle are computed over the non-club vertices only.  The diagnostic
    correlation reports how strongly the *un-projected* first principal
    component tracks the club distance.
    """
    club_list = sorted(set(club))
    if not club_list:
        raise GraphAnalysisError("club is empty")
    for label in club_list:
        if label not in graph:
            raise GraphAnalysisError(f"club member {label!r} not in graph")
        if graph.degree(label) == 0:
            raise IsolatedVertexError(f"club member {label!r} is isolated")

    warnings = []
    scope = []
    for label in graph.labels:
        if graph.degree(label) == 0:
            warnings.append(f"isolated vertex {label!r} skipped")
        else:
            scope.append(label)
    club_set = set(club_list)
    others = [label for label in scope if label not in club_set]
    if not others:
        raise GraphAnalysisError("club covers every non-isolated vertex; nothing to place")

    dm = czekanovski_dice(induced_subgraph(graph, scope), closed_neighborhoods=closed_neighborhoods)
    club_distances = mean_distance_to_club(dm, club_list)
    distance_vector = np.array([club_distances[label] for label in others])
    radii = radial_coords(distance_vector)

    embedding = principal_coordinates(gram_from_distances(dm.submatrix(others)), others)
    if embedding.dimensions == 0:
        raise DegenerateInputError("non-club vertices are mutually indistinguishable")
    diagnostic = _pearson(embedding.coords[:, 0], distance_vector)
    projected = project_out_variable(embedding, distance_vector)
    angles = angular_coords(projected.projected_components[:, 0])

    placements = tuple(
        VertexPlacement(
            label=label,
            club_distance=float(distance_vector[i]),
            radius=float(radii[i]),
            angle=float(angles[i]),
        )
        for i, label in enumerate(others)
    )
    return HemicycleLayout(
        placements=placements,
        club=tuple(club_list),
        diagnostic_correlation=diagnostic,
        warnings=tuple(warnings),
    )


class HemicycleEmbedding(BaseEstimator):
    """Estimator wrapper for the hemicycle layout.

    `club=None` detects the club from the degree-ordered density profile
    using `threshold` and `min_size`; `fit_transform` returns the (radius,
    angle) pairs for the non-club vertices in layout order.
    """

    def __init__(
        self,
        club: Iterable[str] | None = None,
        closed_neighborhoods: bool = False,
        threshold: float = 0.95,
        min_size: int = 3,
    ):
        self.club = club
        self.closed_neighborhoods = closed_neighborhoods
        self.threshold = threshold
        self.min_size = min_size

    def _resolve_club(self, graph: Graph) -> tuple[str, ...]:
        if self.club is not None:
            return tuple(self.club)
        from .richclub import detect_rich_club, rich_club_profile

        result = detect_rich_club(
            rich_club_profile(graph), threshold=self.threshold, min_size=self.min_size
        )
        if result is None:
            raise GraphAnalysisError(
                f"no rich club at threshold {self.threshold} (min size {self.min_size})"
            )
        return result.members

    def fit(self, X: Graph, y=None):
        self.club_ = self._resolve_club(X)
        self.layout_ = hemicycle_layout(
            X, self.club_, closed_neighborhoods=self.closed_neighborhoods
        )
        return self

    def fit_transform(self, X: Graph, y=None) -> np.ndarray:
        self.fit(X)
        return np.array([[p.radius, p.angle] for p in self.layout_.placements])
