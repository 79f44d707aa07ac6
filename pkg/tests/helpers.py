"""Shared test machinery: brute-force oracles and planted-structure generators.

The oracles deliberately use the dumbest correct method available (pair
enumeration, simple-path DFS, Floyd-Warshall, exhaustive set partitions) so
they stay independent of the library code paths they check.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.optimize import linear_sum_assignment

from densegraph import rng
from densegraph.graph import Graph

INF = math.inf


def make_graph(pairs, extra=()) -> Graph:
    order: list[str] = []
    seen = set()
    for a, b in pairs:
        for label in (a, b):
            if label not in seen:
                seen.add(label)
                order.append(label)
    for label in extra:
        if label not in seen:
            seen.add(label)
            order.append(label)
    return Graph(order, pairs)


def random_graph(key: int, n: int, p: float, prefix: str = "v") -> Graph:
    width = max(2, len(str(n - 1)))
    labels = [f"{prefix}{i:0{width}d}" for i in range(n)]
    pairs = []
    counter = 0
    for i in range(n):
        for j in range(i + 1, n):
            if rng.uniform(key, counter) < p:
                pairs.append((labels[i], labels[j]))
            counter += 1
    return Graph(labels, pairs)


def random_graph_no_isolated(key: int, n: int, p: float, prefix: str = "v") -> Graph:
    """ER sample with every isolated vertex attached to a keyed random partner."""
    graph = random_graph(key, n, p, prefix)
    pairs = list(graph.edges())
    labels = list(graph.labels)
    counter = n * n
    for label in labels:
        if graph.degree(label) == 0:
            other = label
            while other == label:
                other = labels[rng.integer_below(key, counter, n)]
                counter += 1
            pairs.append((label, other))
    return Graph(labels, pairs)


def random_partition(key: int, labels, class_count: int) -> list[set[str]]:
    """Random assignment of labels into up to class_count classes (all nonempty)."""
    labels = list(labels)
    while True:
        classes: dict[int, set[str]] = {}
        for counter, label in enumerate(labels):
            classes.setdefault(rng.integer_below(key, counter, class_count), set()).add(label)
        if classes:
            return list(classes.values())


# ---------------------------------------------------------------------------
# oracles


def bf_distances(graph: Graph) -> dict[tuple[str, str], float]:
    """Floyd-Warshall hop distances (inf when unreachable)."""
    labels = graph.labels
    dist = {(a, b): (0 if a == b else INF) for a in labels for b in labels}
    for a, b in graph.edges():
        dist[(a, b)] = dist[(b, a)] = 1
    for k in labels:
        for i in labels:
            ik = dist[(i, k)]
            if ik is INF:
                continue
            for j in labels:
                through = ik + dist[(k, j)]
                if through < dist[(i, j)]:
                    dist[(i, j)] = through
    return dist


def _all_simple_paths(adj: dict[str, frozenset[str]], start: str, goal: str) -> list[tuple[str, ...]]:
    paths = []
    stack = [(start, (start,), {start})]
    while stack:
        vertex, path, visited = stack.pop()
        for nxt in sorted(adj[vertex]):
            if nxt == goal:
                paths.append(path + (nxt,))
            elif nxt not in visited:
                stack.append((nxt, path + (nxt,), visited | {nxt}))
    return paths


def bf_betweenness(graph: Graph) -> dict[str, Fraction]:
    """Exact betweenness by enumerating every simple path of every pair."""
    labels = graph.labels
    adj = {label: graph.neighbors(label) for label in labels}
    totals = {label: Fraction(0) for label in labels}
    for s, t in combinations(labels, 2):
        paths = _all_simple_paths(adj, s, t)
        if not paths:
            continue
        shortest = min(len(p) for p in paths)
        geodesics = [p for p in paths if len(p) == shortest]
        interior = Counter(v for p in geodesics for v in p[1:-1])
        for vertex, count in interior.items():
            totals[vertex] += Fraction(count, len(geodesics))
    return totals


def bf_modularity(graph: Graph, classes) -> float:
    """Direct edge counting over all vertex pairs (no neighbor-set reuse)."""
    classes = [set(c) for c in classes]
    owner = {}
    for index, cls in enumerate(classes):
        for label in cls:
            owner[label] = index
    m = 0
    internal = [0] * len(classes)
    degree_sum = [0] * len(classes)
    for a, b in combinations(graph.labels, 2):
        if graph.has_edge(a, b):
            m += 1
            degree_sum[owner[a]] += 1
            degree_sum[owner[b]] += 1
            if owner[a] == owner[b]:
                internal[owner[a]] += 1
    return sum(internal[c] / m - (degree_sum[c] / (2.0 * m)) ** 2 for c in range(len(classes)))


def bf_clustering(graph: Graph) -> tuple[float, float]:
    """(mean neighborhood density, 3*triangles/triples) by direct enumeration."""
    labels = graph.labels
    local_terms = []
    triangles = 0
    triples = 0
    for v in labels:
        nbrs = sorted(graph.neighbors(v))
        k = len(nbrs)
        if k < 2:
            local_terms.append(0.0)
            continue
        inside = sum(1 for a, b in combinations(nbrs, 2) if graph.has_edge(a, b))
        local_terms.append(inside / (k * (k - 1) / 2.0))
        triples += k * (k - 1) // 2
        triangles += inside  # summed over v this triple-counts each triangle
    transitivity = triangles / triples if triples else float("nan")
    return sum(local_terms) / len(labels), transitivity


def all_partitions(items):
    """Every set partition of items (use only for small item counts)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in all_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [partial[i] | {first}] + partial[i + 1 :]
        yield partial + [{first}]


def exhaustive_best_modularity(graph: Graph) -> float:
    best = -2.0
    for classes in all_partitions(graph.labels):
        best = max(best, bf_modularity(graph, classes))
    return best


def agreement(predicted, truth, n: int) -> float:
    """Fraction of vertices matched under the best class-to-class assignment."""
    predicted = [set(c) for c in predicted]
    truth = [set(c) for c in truth]
    overlap = np.zeros((len(predicted), len(truth)))
    for i, p in enumerate(predicted):
        for j, t in enumerate(truth):
            overlap[i, j] = len(p & t)
    rows, cols = linear_sum_assignment(-overlap)
    return overlap[rows, cols].sum() / n


# ---------------------------------------------------------------------------
# planted structures


def planted_partition_graph(key: int, blocks: int, block_size: int, p_in: float, p_out: float):
    """Graph with known block structure; returns (graph, block vertex sets)."""
    labels = [f"b{b}v{i:02d}" for b in range(blocks) for i in range(block_size)]
    block_of = {label: int(label[1]) for label in labels}
    pairs = []
    counter = 0
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            a, b = labels[i], labels[j]
            p = p_in if block_of[a] == block_of[b] else p_out
            if rng.uniform(key, counter) < p:
                pairs.append((a, b))
            counter += 1
    groups = [frozenset(l for l in labels if block_of[l] == b) for b in range(blocks)]
    return Graph(labels, pairs), groups


def planted_club_graph(key: int, periphery: int, p: float, clique_size: int):
    """Clique embedded in an ER periphery, clique degrees boosted to the top.

    Boost edges go to the currently lowest-degree periphery vertices, which
    keeps the periphery flat, and stop once every clique vertex clears the
    periphery maximum by 2.
    """
    club = [f"h{i:02d}" for i in range(clique_size)]
    periph = [f"p{i:02d}" for i in range(periphery)]
    edges = set()
    for i in range(clique_size):
        for j in range(i + 1, clique_size):
            edges.add((club[i], club[j]))
    degree = {v: 0 for v in periph}
    counter = 0
    for i in range(periphery):
        for j in range(i + 1, periphery):
            if rng.uniform(key, counter) < p:
                edges.add((periph[i], periph[j]))
                degree[periph[i]] += 1
                degree[periph[j]] += 1
            counter += 1
    club_degree = {v: clique_size - 1 for v in club}
    attached = {v: set() for v in club}
    for _ in range(10 * periphery):
        target = max(degree.values()) + 2
        pending = [v for v in club if club_degree[v] < target]
        if not pending:
            break
        for cv in pending:
            for q in sorted(periph, key=lambda q: (degree[q], q)):
                if q not in attached[cv]:
                    attached[cv].add(q)
                    edges.add((cv, q))
                    degree[q] += 1
                    club_degree[cv] += 1
                    break
    return Graph(club + periph, sorted(edges)), club


def two_block_club_graph(key: int, club_size: int = 5, block_size: int = 8,
                         p_in: float = 0.85, p_cross: float = 0.03):
    """Central clique plus two internally dense, mutually sparse blocks.

    Block members attach to a varying number of club vertices so club
    distances spread; returns (graph, club, block1, block2).
    """
    club = [f"h{i:02d}" for i in range(club_size)]
    block1 = [f"a{i:02d}" for i in range(block_size)]
    block2 = [f"z{i:02d}" for i in range(block_size)]
    edges = set()
    for i in range(club_size):
        for j in range(i + 1, club_size):
            edges.add((club[i], club[j]))
    counter = 0
    for block in (block1, block2):
        for i in range(block_size):
            for j in range(i + 1, block_size):
                if rng.uniform(key, counter) < p_in:
                    edges.add((block[i], block[j]))
                counter += 1
    for a in block1:
        for z in block2:
            if rng.uniform(key, counter) < p_cross:
                edges.add((a, z))
            counter += 1
    for block in (block1, block2):
        for i, vertex in enumerate(block):
            attach = 1 + (i % (club_size - 1))
            offset = rng.integer_below(key, counter, club_size)
            counter += 1
            for step in range(attach):
                edges.add((vertex, club[(offset + step) % club_size]))
    return Graph(club + block1 + block2, sorted(edges)), club, block1, block2


def missing_one_edge_club_graph():
    """Ten top-degree vertices forming a complete core except one edge.

    Deterministic: periphery is a 12-cycle, each core vertex picks up two
    periphery attachments, so the degree order starts with the core.
    """
    core = [f"c{i:02d}" for i in range(10)]
    periph = [f"p{i:02d}" for i in range(12)]
    edges = []
    for i in range(10):
        for j in range(i + 1, 10):
            if {i, j} == {8, 9}:
                continue  # the one missing internal edge
            edges.append((core[i], core[j]))
    for i in range(12):
        edges.append((periph[i], periph[(i + 1) % 12]))
    for k in range(10):
        edges.append((core[k], periph[(2 * k) % 12]))
        edges.append((core[k], periph[(2 * k + 1) % 12]))
    return Graph(core + periph, edges), core
