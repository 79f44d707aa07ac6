"""Partitioners against brute-force modularity search and planted structure."""

import numpy as np
import pytest

from densegraph import rng
from densegraph.community import (
    Dendrogram,
    FastGreedy,
    SpectralPartition,
    Walktrap,
    build_group_summary,
    fast_greedy,
    make_partition,
    modularity,
    partition_labels,
    remove_and_partition,
    spectral_partition,
    stable_communities,
    walktrap,
)
from densegraph.errors import GraphAnalysisError, UndefinedMetricError
from densegraph.graph import Graph

from .helpers import (
    agreement,
    bf_modularity,
    exhaustive_best_modularity,
    make_graph,
    planted_club_graph,
    planted_partition_graph,
    random_graph,
    random_partition,
)

K4 = make_graph([("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")])
TWO_K3 = make_graph([("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")])


def clique_pairs(labels):
    return [(a, b) for i, a in enumerate(labels) for b in labels[i + 1 :]]


def two_cliques_bridge(size):
    left = [f"l{i}" for i in range(size)]
    right = [f"r{i}" for i in range(size)]
    pairs = clique_pairs(left) + clique_pairs(right) + [(left[-1], right[0])]
    return Graph(left + right, pairs), frozenset(left), frozenset(right)


def test_modularity_frozen_examples():
    # two triangles joined by one edge: 2 * (3/7 - (7/14)^2) = 5/14
    g = make_graph([("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d"), ("c", "d")])
    assert modularity(g, [set("abc"), set("def")]) == pytest.approx(5 / 14)
    assert modularity(g, [set("abcdef")]) == pytest.approx(0.0)
    two_k4 = make_graph(clique_pairs(list("abcd")) + clique_pairs(list("efgh")))
    assert modularity(two_k4, [set("abcd"), set("efgh")]) == pytest.approx(0.5)


def test_modularity_validation():
    with pytest.raises(UndefinedMetricError):
        modularity(Graph(["a", "b"], []), [{"a", "b"}])
    with pytest.raises(GraphAnalysisError, match="cover"):
        modularity(K4, [{"a", "b"}])
    with pytest.raises(GraphAnalysisError, match="two classes"):
        modularity(K4, [{"a", "b", "c"}, {"c", "d"}])


def test_modularity_matches_direct_edge_counting():
    checked = 0
    for seed in range(25):
        g = random_graph(rng.domain_key(seed, "mod-oracle"), 10 + seed % 5, 0.35)
        if g.edge_count == 0:
            continue
        for k in (2, 3, 4, 5):
            classes = random_partition(rng.domain_key(seed * 10 + k, "mod-part"), g.labels, k)
            assert modularity(g, classes) == pytest.approx(bf_modularity(g, classes), abs=1e-12)
            checked += 1
    assert checked >= 100


def test_fast_greedy_recovers_cliques_and_components():
    g, left, right = two_cliques_bridge(5)
    partition, dendrogram = fast_greedy(g)
    assert set(partition.classes) == {left, right}
    # brute force confirms this is the modularity maximum for this graph
    assert partition.modularity == pytest.approx(
        max(bf_modularity(g, [left, right]), modularity(g, [set(g.labels)]))
    )
    partition, _ = fast_greedy(TWO_K3)
    assert set(partition.classes) == {frozenset("abc"), frozenset("def")}
    assert partition.modularity == pytest.approx(0.5)
    partition, _ = fast_greedy(K4)
    assert len(partition.classes) == 1 and partition.modularity == 0.0


def test_fast_greedy_hits_exhaustive_maximum_on_small_fixtures():
    # all fixtures verified to have an optimal partition on the greedy path
    fixtures = [
        K4,
        TWO_K3,
        make_graph([("a", "b"), ("b", "c"), ("c", "d")]),
        make_graph([("hub", x) for x in "abcde"]),
        Graph([f"c{i}" for i in range(6)], [(f"c{i}", f"c{(i + 1) % 6}") for i in range(6)]),
        make_graph(clique_pairs(list("abcd")) + clique_pairs(list("efgh")) + [("d", "e")]),
        random_graph(rng.domain_key(1, "fixture"), 8, 0.4),
        random_graph(rng.domain_key(2, "fixture"), 8, 0.55),
    ]
    for g in fixtures:
        partition, _ = fast_greedy(g)
        assert partition.modularity == pytest.approx(exhaustive_best_modularity(g), abs=1e-12)


def test_dendrogram_levels_cover_vertex_set():
    g = random_graph(rng.domain_key(9, "dendro"), 12, 0.3)
    if g.edge_count == 0:
        pytest.skip("empty sample")
    for build in (fast_greedy, walktrap):
        _, dendrogram = build(g)
        assert isinstance(dendrogram, Dendrogram)
        for level in range(dendrogram.levels):
            classes = dendrogram.partition_at(level)
            assert set().union(*classes) == set(g.labels)
            assert sum(len(c) for c in classes) == g.vertex_count
        assert len(dendrogram.partition_at(dendrogram.levels - 1)) <= 2  # last level: one class per component side
        assert len(dendrogram.partition_at(0)) == g.vertex_count


def test_spectral_fixtures():
    g, left, right = two_cliques_bridge(4)
    partition = spectral_partition(g, seed=0)
    assert set(partition.classes) == {left, right}
    assert partition.modularity == pytest.approx(exhaustive_best_modularity(g), abs=1e-12)
    complete = make_graph(clique_pairs([f"k{i}" for i in range(6)]))
    partition = spectral_partition(complete, seed=0)
    assert len(partition.classes) == 1 and partition.modularity == 0.0
    disconnected = spectral_partition(TWO_K3, seed=0)
    assert set(disconnected.classes) == {frozenset("abc"), frozenset("def")}


def test_spectral_planted_partition_smoke():
    scores = []
    for seed in range(8):
        g, blocks = planted_partition_graph(rng.domain_key(seed, "planted-smoke"), 4, 8, 0.9, 0.05)
        partition = spectral_partition(g, seed=seed)
        scores.append(agreement(partition.classes, blocks, g.vertex_count))
    assert np.mean(scores) >= 0.95


def test_walktrap_fixtures():
    g, left, right = two_cliques_bridge(5)
    partition, _ = walktrap(g, steps=4)
    assert set(partition.classes) == {left, right}
    partition, _ = walktrap(TWO_K3, steps=4)
    assert set(partition.classes) == {frozenset("abc"), frozenset("def")}
    partition, _ = walktrap(Graph(["a", "b"], [("a", "b")]), steps=4)
    assert len(partition.classes) == 1
    with pytest.raises(GraphAnalysisError):
        walktrap(g, steps=0)


def test_walktrap_isolated_vertices_stay_singletons():
    g = make_graph([("a", "b"), ("b", "c"), ("c", "a")], extra=("z",))
    partition, _ = walktrap(g, steps=3)
    assert frozenset(["z"]) in partition.classes


def test_stable_communities_examples():
    identical = [[{"a", "b"}, {"c", "d", "e"}]] * 2
    assert stable_communities(identical, min_size=2) == [
        frozenset({"c", "d", "e"}),
        frozenset({"a", "b"}),
    ]
    crossing = [
        [{"a", "b"}, {"c", "d"}],
        [{"a", "c"}, {"b", "d"}],
    ]
    assert stable_communities(crossing, min_size=2) == []
    three = [
        [{"a", "b", "c"}, {"d", "e"}, {"f"}],
        [{"a", "b", "c", "d", "e"}, {"f"}],
        [{"a", "b", "c"}, {"d", "e", "f"}],
    ]
    assert stable_communities(three, min_size=2) == [
        frozenset({"a", "b", "c"}),
        frozenset({"d", "e"}),
    ]
    with pytest.raises(GraphAnalysisError):
        stable_communities([[{"a"}]])
    with pytest.raises(GraphAnalysisError, match="different vertex sets"):
        stable_communities([[{"a", "b"}], [{"a", "c"}]])


def test_stable_communities_order_invariant_and_refining():
    # full randomized sweep lives in the acceptance suite
    labels = [f"v{i:02d}" for i in range(12)]
    parts = [random_partition(rng.domain_key(i, "meet"), labels, 3) for i in range(3)]
    reference = stable_communities(parts, min_size=1)
    for order in ((0, 1, 2), (2, 1, 0), (1, 0, 2)):
        assert stable_communities([parts[i] for i in order], min_size=1) == reference
    for group in reference:
        for part in parts:
            assert any(group <= frozenset(cls) for cls in part)


def test_remove_and_partition_empty_exclusion_matches_direct():
    g, left, right = two_cliques_bridge(4)
    analysis = remove_and_partition(g, (), seed=0)
    direct, _ = fast_greedy(g)
    assert analysis.partitions["fast-greedy"].classes == direct.classes
    assert analysis.partitions["spectral"].classes == spectral_partition(g, seed=0).classes
    assert analysis.excluded == ()


def test_remove_and_partition_planted_blocks():
    key = rng.domain_key(11, "removal")
    club_graph, club = planted_club_graph(key, periphery=20, p=0.15, clique_size=6)
    # overlay two dense blocks on the periphery so removal reveals them
    periph = [l for l in club_graph.labels if l.startswith("p")]
    b1, b2 = set(periph[:10]), set(periph[10:])
    pairs = set(map(tuple, club_graph.edges()))
    counter = 0
    for block in (sorted(b1), sorted(b2)):
        for i, a in enumerate(block):
            for b in block[i + 1 :]:
                if rng.uniform(key, counter) < 0.8:
                    pairs.add((a, b))
                counter += 1
    g = Graph(club_graph.labels, sorted(pairs))
    analysis = remove_and_partition(g, club, min_size=3, seed=0)
    assert analysis.stable is not None
    top_two = set(analysis.stable[:2])
    assert agreement(top_two, [frozenset(b1), frozenset(b2)], len(periph)) >= 0.9

    with pytest.raises(GraphAnalysisError):
        remove_and_partition(g, g.labels)
    with pytest.raises(GraphAnalysisError, match="unknown vertex"):
        remove_and_partition(g, ["ghost"])


def test_group_summary_counts_match_brute_tally():
    g, blocks = planted_partition_graph(rng.domain_key(4, "summary"), 3, 6, 0.85, 0.1)
    summary = build_group_summary(g, club=(), classes=blocks)
    assert [grp.kind for grp in summary.groups] == ["community"] * 3
    members = [set(grp.members) for grp in summary.groups]
    for i, j, count in summary.edge_counts:
        brute = sum(
            1 for a, b in g.edges()
            if (a in members[i] and b in members[j]) or (a in members[j] and b in members[i])
        )
        assert count == brute


def test_group_summary_kinds():
    g = make_graph([("a", "b"), ("b", "c"), ("c", "a"), ("c", "pendant")], extra=("island",))
    summary = build_group_summary(
        g, club=("a", "b"), classes=[frozenset({"c"}), frozenset({"pendant"}), frozenset({"island"})]
    )
    kinds = {grp.name: grp.kind for grp in summary.groups}
    assert kinds["club"] == "club"
    assert kinds["pendant"] == "singleton"
    assert kinds["island"] == "singleton"
    assert kinds["community-1"] == "community"  # c is well-connected, not a disk


def test_estimator_wrappers():
    g, left, right = two_cliques_bridge(4)
    for estimator in (FastGreedy(), SpectralPartition(seed=0), Walktrap(steps=4)):
        labels = estimator.fit_predict(g)
        assert len(labels) == g.vertex_count
        assert set(estimator.partition_.classes) == {left, right}
        assert estimator.modularity_ == estimator.partition_.modularity
        grouped = {}
        for label, cls in zip(g.labels, labels):
            grouped.setdefault(cls, set()).add(label)
        assert set(map(frozenset, grouped.values())) == {left, right}
    assert SpectralPartition(kmax=4, restarts=8, seed=3).get_params() == {
        "kmax": 4,
        "restarts": 8,
        "seed": 3,
    }
    assert np.array_equal(partition_labels(g, FastGreedy().fit(g).partition_),
                          FastGreedy().fit_predict(g))


def test_make_partition_canonical_order():
    g = TWO_K3
    partition = make_partition(g, [{"d", "e", "f"}, {"a", "b", "c"}], "manual")
    assert partition.classes == (frozenset("abc"), frozenset("def"))  # size tie: smallest label first
    assert partition.method == "manual"
