"""Modularity, three partitioning algorithms, and stable-community extraction.

The three partitioners (greedy agglomeration, spectral embedding + k-means,
random-walk agglomeration) all score candidate partitions with the same
modularity function and break every tie lexicographically on class
representatives (the smallest label in a class), so outputs are
deterministic across platforms.  `stable_communities` intersects several
partitions into their meet: the vertex groups co-classified by every input.

Estimator wrappers (`FastGreedy`, `SpectralPartition`, `Walktrap`) expose the
same algorithms through the scikit-learn fit/fit_predict protocol with a
`labels_` array in graph vertex order.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from . import _matrixops, rng
from .errors import EigenSolverError, GraphAnalysisError, UndefinedMetricError
from .graph import Graph, connected_components, induced_subgraph

_SPECTRAL_DOMAIN = "spectral-kmeans"


@dataclass(frozen=True)
class Partition:
    """Disjoint vertex classes covering the analyzed vertex set."""

    classes: tuple[frozenset[str], ...]
    method: str
    modularity: float

    def class_of(self, label: str) -> frozenset[str]:
        for cls in self.classes:
            if label in cls:
                return cls
        raise GraphAnalysisError(f"vertex {label!r} not in partition")

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class Merge:
    first: str
    second: str
    score: float


@dataclass(frozen=True)
class Dendrogram:
    """Agglomeration record: replaying ``merges[:level]`` rebuilds any level."""

    leaves: tuple[str, ...]
    merges: tuple[Merge, ...]
    level_modularity: tuple[float, ...]

    @property
    def levels(self) -> int:
        return len(self.merges) + 1

    def partition_at(self, level: int) -> tuple[frozenset[str], ...]:
        if not 0 <= level <= len(self.merges):
            raise GraphAnalysisError(f"level {level} outside dendrogram")
        classes: dict[str, set[str]] = {label: {label} for label in self.leaves}
        for merge in self.merges[:level]:
            merged = classes.pop(merge.first) | classes.pop(merge.second)
            classes[min(merge.first, merge.second)] = merged
        return _canonical_classes(classes.values())

    def best_level(self) -> int:
        scores = self.level_modularity
        return max(range(len(scores)), key=lambda i: (scores[i], -i))


def _canonical_classes(classes: Iterable[Iterable[str]]) -> tuple[frozenset[str], ...]:
    frozen = [frozenset(c) for c in classes]
    frozen.sort(key=lambda cls: (-len(cls), min(cls)))
    return tuple(frozen)


def _check_partition(graph: Graph, classes: Sequence[frozenset[str]]) -> None:
    seen: set[str] = set()
    for cls in classes:
        if not cls:
            raise GraphAnalysisError("partition contains an empty class")
        for label in cls:
            if label not in graph:
                raise GraphAnalysisError(f"partition names unknown vertex {label!r}")
            if label in seen:
                raise GraphAnalysisError(f"vertex {label!r} appears in two classes")
            seen.add(label)
    if len(seen) != graph.vertex_count:
        missing = set(graph.labels) - seen
        raise GraphAnalysisError(f"partition does not cover the vertex set (missing {sorted(missing)[:5]})")


def modularity(graph: Graph, partition: Partition | Iterable[Iterable[str]]) -> float:
    """Partition quality: sum over classes of m_i/m - (sum of degrees / 2m)^2."""
    classes = partition.classes if isinstance(partition, Partition) else _canonical_classes(partition)
    if graph.edge_count == 0:
        raise UndefinedMetricError("modularity undefined on an edgeless graph")
    _check_partition(graph, classes)
    m = graph.edge_count
    total = 0.0
    for cls in classes:
        indices = {graph.index(label) for label in cls}
        internal = sum(len(graph.neighbor_indices(i) & indices) for i in indices) // 2
        degree_sum = sum(len(graph.neighbor_indices(i)) for i in indices)
        total += internal / m - (degree_sum / (2.0 * m)) ** 2
    return total


def make_partition(graph: Graph, classes: Iterable[Iterable[str]], method: str) -> Partition:
    """Canonicalize classes (size desc, then smallest label) and score them."""
    canonical = _canonical_classes(classes)
    return Partition(classes=canonical, method=method, modularity=modularity(graph, canonical))


def partition_labels(graph: Graph, partition: Partition) -> np.ndarray:
    """Class index per vertex, in graph label order."""
    lookup = {label: k for k, cls in enumerate(partition.classes) for label in cls}
    return np.array([lookup[label] for label in graph.labels], dtype=np.int64)


# ---------------------------------------------------------------------------
# greedy modularity agglomeration


def fast_greedy(graph: Graph) -> tuple[Partition, Dendrogram]:
    """Merge, from singletons, the class pair with the largest modularity gain
    (ties: lexicographically smallest representative pair); return the
    partition at the best level along the merge path plus the full dendrogram.
    """
    m = graph.edge_count
    if m == 0:
        raise UndefinedMetricError("fast-greedy needs at least one edge")
    labels = graph.labels
    degree_sum = {label: graph.degree(label) for label in labels}
    members: dict[str, set[str]] = {label: {label} for label in labels}
    inter: dict[tuple[str, str], int] = {}
    for a, b in graph.edges():
        inter[(min(a, b), max(a, b))] = inter.get((min(a, b), max(a, b)), 0) + 1

    score = sum(-((d / (2.0 * m)) ** 2) for d in degree_sum.values())
    level_scores = [score]
    merges: list[Merge] = []

    while len(members) > 1:
        reps = sorted(members)
        best_gain = None
        best_pair = None
        for i, ra in enumerate(reps):
            da = degree_sum[ra]
            for rb in reps[i + 1 :]:
                edges_ab = inter.get((ra, rb), 0)
                gain = edges_ab / m - da * degree_sum[rb] / (2.0 * m * m)
                if best_gain is None or gain > best_gain:
                    best_gain = gain
                    best_pair = (ra, rb)
        ra, rb = best_pair
        keep, drop = (ra, rb) if ra < rb else (rb, ra)
        members[keep] = members.pop(ra) | members.pop(rb)
        degree_sum[keep] = degree_sum.pop(ra) + degree_sum.pop(rb)
        inter.pop((ra, rb), None)
        for rc in list(members):
            if rc == keep:
                continue
            merged_count = inter.pop((min(ra, rc), max(ra, rc)), 0) + inter.pop(
                (min(rb, rc), max(rb, rc)), 0
            )
            if merged_count:
                inter[(min(keep, rc), max(keep, rc))] = merged_count
        score += best_gain
        level_scores.append(score)
        merges.append(Merge(first=ra, second=rb, score=best_gain))

    dendrogram = Dendrogram(
        leaves=labels, merges=tuple(merges), level_modularity=tuple(level_scores)
    )
    best = dendrogram.best_level()
    partition = make_partition(graph, dendrogram.partition_at(best), "fast-greedy")
    return partition, dendrogram


# ---------------------------------------------------------------------------
# spectral embedding + k-means


def _kmeans(points: np.ndarray, k: int, key: int, restarts: int) -> np.ndarray:
    """Seeded k-means with greedy farthest-point init; best of `restarts` runs."""
    count = len(points)
    best_assign = None
    best_wcss = None
    for restart in range(restarts):
        restart_key = rng.derive_key(key, restart)
        first = rng.integer_below(restart_key, 0, count)
        chosen = [first]
        min_dist = ((points - points[first]) ** 2).sum(axis=1)
        while len(chosen) < k:
            nxt = int(np.argmax(min_dist))
            chosen.append(nxt)
            min_dist = np.minimum(min_dist, ((points - points[nxt]) ** 2).sum(axis=1))
        centers = points[chosen].copy()
        assign = None
        for _ in range(200):
            sq_dist = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            new_assign = sq_dist.argmin(axis=1)
            if assign is not None and (new_assign == assign).all():
                break
            assign = new_assign
            for c in range(k):
                mask = assign == c
                if mask.any():
                    centers[c] = points[mask].mean(axis=0)
        wcss = float(((points - centers[assign]) ** 2).sum())
        if best_wcss is None or wcss < best_wcss:
            best_wcss = wcss
            best_assign = assign
    return best_assign


def _partial_modularity(graph: Graph, classes: Iterable[frozenset[str]]) -> float:
    """Sum of the global-m modularity terms contributed by these classes."""
    m = graph.edge_count
    total = 0.0
    for cls in classes:
        indices = {graph.index(label) for label in cls}
        internal = sum(len(graph.neighbor_indices(i) & indices) for i in indices) // 2
        degree_sum = sum(len(graph.neighbor_indices(i)) for i in indices)
        total += internal / m - (degree_sum / (2.0 * m)) ** 2
    return total


def spectral_partition(
    graph: Graph, kmax: int | None = None, restarts: int = 16, seed: int = 0
) -> Partition:
    """Embed each component with the low eigenvectors of its normalized
    Laplacian, cluster with seeded k-means for k = 2..kmax, and keep the
    cluster count that maximizes modularity (the single-class candidate is
    always in the running, so complete graphs stay whole)."""
    if graph.edge_count == 0:
        raise UndefinedMetricError("spectral partition needs at least one edge")
    n = graph.vertex_count
    if kmax is None:
        kmax = math.isqrt(n - 1) + 1 + 2 if n > 1 else 2  # ceil(sqrt(n)) + 2
    if kmax < 2:
        raise GraphAnalysisError("kmax must be at least 2")
    base_key = rng.domain_key(seed, _SPECTRAL_DOMAIN)

    final_classes: list[frozenset[str]] = []
    for comp_index, component in enumerate(connected_components(graph)):
        if len(component) == 1:
            final_classes.append(component)
            continue
        sub = induced_subgraph(graph, component)
        size = sub.vertex_count
        adj = sub.adjacency_matrix().astype(np.float64)
        inv_sqrt_deg = 1.0 / np.sqrt(adj.sum(axis=1))
        laplacian = np.eye(size) - inv_sqrt_deg[:, None] * adj * inv_sqrt_deg[None, :]
        try:
            _, eigvecs = np.linalg.eigh(laplacian)
        except np.linalg.LinAlgError as exc:
            raise EigenSolverError(
                f"normalized-Laplacian eigendecomposition failed on {size} vertices: {exc}"
            ) from exc
        eigvecs = _matrixops.fix_eigenvector_signs(eigvecs)

        comp_key = rng.derive_key(base_key, comp_index)
        candidates: list[tuple[frozenset[str], ...]] = [(frozenset(component),)]
        for k in range(2, min(kmax, size) + 1):
            embedding = eigvecs[:, :k]
            assign = _kmeans(embedding, k, rng.derive_key(comp_key, k), restarts)
            grouped: dict[int, set[str]] = {}
            for i, label in enumerate(sub.labels):
                grouped.setdefault(int(assign[i]), set()).add(label)
            candidates.append(_canonical_classes(grouped.values()))
        scores = [_partial_modularity(graph, cand) for cand in candidates]
        best = max(range(len(candidates)), key=lambda i: (scores[i], -i))
        final_classes.extend(candidates[best])

    return make_partition(graph, final_classes, "spectral")


# ---------------------------------------------------------------------------
# random-walk agglomeration


def walktrap(graph: Graph, steps: int = 4) -> tuple[Partition, Dendrogram]:
    """Agglomerate communities by the t-step random-walk distance.

    Communities carry the mean of their members' t-step transition rows;
    the pair with the smallest (degree-weighted, Ward-style) squared distance
    merges first, preferring adjacent pairs while any exist.  The dendrogram
    is cut at the level of maximal modularity.  Isolated vertices cannot
    carry a walk and stay singleton classes.
    """
    if graph.edge_count == 0:
        raise UndefinedMetricError("walktrap needs at least one edge")
    if steps < 1:
        raise GraphAnalysisError("walk length must be at least 1")

    labels = graph.labels
    degrees = graph.degrees()
    walkable = [i for i in range(graph.vertex_count) if degrees[i] > 0]
    isolated = [labels[i] for i in range(graph.vertex_count) if degrees[i] == 0]
    walk_count = len(walkable)

    adj = graph.adjacency_matrix()[np.ix_(walkable, walkable)].astype(np.float64)
    walk_degrees = adj.sum(axis=1)
    transition = adj / walk_degrees[:, None]
    transition_t = np.linalg.matrix_power(transition, steps)
    inv_degree = 1.0 / walk_degrees

    reps = [labels[i] for i in walkable]
    communities: dict[str, dict] = {
        rep: {"members": {rep}, "prob": transition_t[i], "size": 1, "adj": set()}
        for i, rep in enumerate(reps)
    }
    for a, b in graph.edges():
        communities[a]["adj"].add(b)
        communities[b]["adj"].add(a)

    def current_classes() -> list[set[str]]:
        classes = [set(c["members"]) for c in communities.values()]
        classes.extend({label} for label in isolated)
        return classes

    def distance(c1: dict, c2: dict) -> float:
        diff = c1["prob"] - c2["prob"]
        r2 = float((diff * diff * inv_degree).sum())
        s1, s2 = c1["size"], c2["size"]
        return (s1 * s2 / (s1 + s2)) * r2 / walk_count

    merges: list[Merge] = []
    level_scores = [modularity(graph, current_classes())]
    while len(communities) > 1:
        pairs = []
        for ra in communities:
            for rb in communities[ra]["adj"]:
                if ra < rb:
                    pairs.append((ra, rb))
        if not pairs:  # disconnected stage: fall back to all remaining pairs
            ordered = sorted(communities)
            pairs = [(a, b) for i, a in enumerate(ordered) for b in ordered[i + 1 :]]
        best_pair = min(pairs, key=lambda pair: (distance(communities[pair[0]], communities[pair[1]]), pair))
        ra, rb = best_pair
        c1, c2 = communities.pop(ra), communities.pop(rb)
        score = distance(c1, c2)
        keep = min(ra, rb)
        merged = {
            "members": c1["members"] | c2["members"],
            "prob": (c1["size"] * c1["prob"] + c2["size"] * c2["prob"]) / (c1["size"] + c2["size"]),
            "size": c1["size"] + c2["size"],
            "adj": (c1["adj"] | c2["adj"]) - {ra, rb},
        }
        communities[keep] = merged
        for rep, community in communities.items():
            if rep == keep:
                continue
            if ra in community["adj"] or rb in community["adj"]:
                community["adj"] -= {ra, rb}
                community["adj"].add(keep)
                merged["adj"].add(rep)
        merges.append(Merge(first=ra, second=rb, score=score))
        level_scores.append(modularity(graph, current_classes()))

    walk_leaves = tuple(reps) + tuple(isolated)
    dendrogram = Dendrogram(
        leaves=walk_leaves, merges=tuple(merges), level_modularity=tuple(level_scores)
    )
    best = dendrogram.best_level()
    partition = make_partition(graph, dendrogram.partition_at(best), "walktrap")
    return partition, dendrogram


# ---------------------------------------------------------------------------
# stable communities and club-removal workflow


def stable_communities(
    partitions: Sequence[Partition | Iterable[Iterable[str]]], min_size: int = 3
) -> list[frozenset[str]]:
    """Meet (common refinement) of the partitions: maximal vertex groups
    co-classified by every input; groups below min_size are dropped."""
    if len(partitions) < 2:
        raise GraphAnalysisError("stable communities need at least 2 partitions")
    class_lists = []
    for partition in partitions:
        classes = (
            partition.classes
            if isinstance(partition, Partition)
            else _canonical_classes(partition)
        )
        class_lists.append(classes)
    universe = {label for cls in class_lists[0] for label in cls}
    for classes in class_lists[1:]:
        if {label for cls in classes for label in cls} != universe:
            raise GraphAnalysisError("partitions cover different vertex sets")
    keys: dict[str, list[int]] = {label: [] for label in universe}
    for classes in class_lists:
        for class_id, cls in enumerate(classes):
            for label in cls:
                keys[label].append(class_id)
    meet: dict[tuple[int, ...], set[str]] = {}
    for label, key in keys.items():
        meet.setdefault(tuple(key), set()).add(label)
    groups = [frozenset(group) for group in meet.values() if len(group) >= min_size]
    groups.sort(key=lambda group: (-len(group), min(group)))
    return groups


@dataclass(frozen=True)
class Group:
    name: str
    kind: str  # 'club' | 'community' | 'singleton'
    members: tuple[str, ...]


@dataclass(frozen=True)
class GroupSummary:
    """Groups plus inter-group edge counts, ready for DOT export."""

    groups: tuple[Group, ...]
    edge_counts: tuple[tuple[int, int, int], ...]  # (group_i, group_j, edges), i < j


@dataclass(frozen=True)
class RemovalAnalysis:
    excluded: tuple[str, ...]
    partitions: dict[str, Partition]
    stable: tuple[frozenset[str], ...] | None
    summaries: dict[str, GroupSummary]


def build_group_summary(
    graph: Graph, club: Iterable[str], classes: Iterable[frozenset[str]]
) -> GroupSummary:
    """Group the full graph into club + community classes and count the edges
    between every group pair (used for the modular summary figure)."""
    groups: list[Group] = []
    club_members = tuple(sorted(club))
    if club_members:
        groups.append(Group(name="club", kind="club", members=club_members))
    community_index = 0
    for cls in classes:
        members = tuple(sorted(cls))
        if len(members) == 1 and graph.degree(members[0]) <= 1:
            groups.append(Group(name=members[0], kind="singleton", members=members))
        else:
            community_index += 1
            groups.append(
                Group(name=f"community-{community_index}", kind="community", members=members)
            )
    owner: dict[str, int] = {}
    for gi, group in enumerate(groups):
        for label in group.members:
            owner[label] = gi
    counts: dict[tuple[int, int], int] = {}
    for a, b in graph.edges():
        ga, gb = owner.get(a), owner.get(b)
        if ga is None or gb is None or ga == gb:
            continue
        key = (min(ga, gb), max(ga, gb))
        counts[key] = counts.get(key, 0) + 1
    edge_counts = tuple((i, j, counts[(i, j)]) for i, j in sorted(counts))
    return GroupSummary(groups=tuple(groups), edge_counts=edge_counts)


def remove_and_partition(
    graph: Graph,
    excluded: Iterable[str],
    algorithms: Sequence[str] = ("fast-greedy", "spectral", "walktrap"),
    steps: int = 4,
    kmax: int | None = None,
    restarts: int = 16,
    seed: int = 0,
    min_size: int = 3,
) -> RemovalAnalysis:
    """Partition the graph minus the excluded vertices with each requested
    algorithm; report the partitions, their stable communities (when two or
    more algorithms ran), and per-algorithm group summaries over the full
    graph (club included)."""
    excluded_set = set(excluded)
    for label in excluded_set:
        if label not in graph:
            raise GraphAnalysisError(f"unknown vertex {label!r} in excluded set")
    remainder = [label for label in graph.labels if label not in excluded_set]
    if not remainder:
        raise GraphAnalysisError("nothing left to partition after removal")
    reduced = induced_subgraph(graph, remainder)

    partitions: dict[str, Partition] = {}
    for algorithm in algorithms:
        if algorithm == "fast-greedy":
            partitions[algorithm], _ = fast_greedy(reduced)
        elif algorithm == "spectral":
            partitions[algorithm] = spectral_partition(reduced, kmax=kmax, restarts=restarts, seed=seed)
        elif algorithm == "walktrap":
            partitions[algorithm], _ = walktrap(reduced, steps=steps)
        else:
            raise GraphAnalysisError(f"unknown algorithm {algorithm!r}")

    stable = None
    if len(partitions) >= 2:
        stable = tuple(stable_communities(list(partitions.values()), min_size=min_size))

    summaries = {
        name: build_group_summary(graph, excluded_set, partition.classes)
        for name, partition in partitions.items()
    }
    return RemovalAnalysis(
        excluded=tuple(sorted(excluded_set)),
        partitions=partitions,
        stable=stable,
        summaries=summaries,
    )


# ---------------------------------------------------------------------------
# scikit-learn style estimators


class FastGreedy(ClusterMixin, BaseEstimator):
    """Greedy modularity agglomeration with the estimator protocol."""

    def fit(self, X: Graph, y=None):
        self.partition_, self.dendrogram_ = fast_greedy(X)
        self.labels_ = partition_labels(X, self.partition_)
        self.modularity_ = self.partition_.modularity
        return self


class SpectralPartition(ClusterMixin, BaseEstimator):
    """Normalized-Laplacian spectral clustering with modularity-chosen k."""

    def __init__(self, kmax: int | None = None, restarts: int = 16, seed: int = 0):
        self.kmax = kmax
        self.restarts = restarts
        self.seed = seed

    def fit(self, X: Graph, y=None):
        self.partition_ = spectral_partition(
            X, kmax=self.kmax, restarts=self.restarts, seed=self.seed
        )
        self.labels_ = partition_labels(X, self.partition_)
        self.modularity_ = self.partition_.modularity
        return self


class Walktrap(ClusterMixin, BaseEstimator):
    """Random-walk agglomeration cut at maximal modularity."""

    def __init__(self, steps: int = 4):
        self.steps = steps

    def fit(self, X: Graph, y=None):
        self.partition_, self.dendrogram_ = walktrap(X, steps=self.steps)
        self.labels_ = partition_labels(X, self.partition_)
        self.modularity_ = self.partition_.modularity
        return self
