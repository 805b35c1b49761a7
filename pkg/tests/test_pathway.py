from __future__ import annotations

import pytest

from pathway_engine.corpus import SynthConfig, generate_synthetic
from pathway_engine.influence import CommunityAssignment
from pathway_engine.pathway import (UNASSIGNED, aggregate_to_community,
                                    build_user_pathway, window_pathways)


class TestUserPathway:
    def test_lone_source_single_node(self, fixture_corpus):
        graph = build_user_pathway(fixture_corpus,
                                   "https://orgb.example/harbor-reopens")
        assert [n.id for n in graph.nodes] == ["dave"]
        assert graph.edges == []

    def test_chain_in_timestamp_order(self, fixture_corpus):
        graph = build_user_pathway(fixture_corpus,
                                   "https://orga.example/lockdown-extended")
        assert [(e.src, e.dst) for e in graph.edges] == [
            ("alice", "bob"), ("bob", "carol")]
        assert [e.timestamp for e in graph.edges] == [1200, 1300]

    def test_unknown_url(self, fixture_corpus):
        with pytest.raises(KeyError):
            build_user_pathway(fixture_corpus, "https://nope")

    def test_matches_ground_truth_cascade(self, corpus42):
        corpus, truth = corpus42
        url = sorted(corpus.articles)[0]
        graph = build_user_pathway(corpus, url)
        got = {(e.src, e.dst, e.timestamp) for e in graph.edges}
        expected = {(e.parent_author, e.child_author,
                     corpus.posts[e.child_post_id].timestamp)
                    for e in truth.cascades[url]}
        assert got == expected

    def test_every_article_conserves_edge_count(self, corpus42):
        corpus, truth = corpus42
        for url in corpus.articles:
            graph = build_user_pathway(corpus, url)
            assert len(graph.edges) == len(truth.cascades[url])

    def test_timestamps_monotone_along_paths(self, corpus42):
        corpus, _ = corpus42
        for pid, post in corpus.posts.items():
            if post.parent_id is not None:
                assert post.timestamp >= corpus.posts[post.parent_id].timestamp


class TestAggregate:
    def test_parallel_edges_collapse(self, fixture_corpus):
        graph = build_user_pathway(fixture_corpus,
                                   "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map(
            {"alice": "A", "bob": "B", "carol": "A"})
        community = aggregate_to_community(graph, assignment)
        weights = {(e.src, e.dst): e.weight for e in community.edges}
        assert weights == {("A", "B"): 1, ("B", "A"): 1}

    def test_self_loop_from_same_community(self, fixture_corpus):
        graph = build_user_pathway(fixture_corpus,
                                   "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map(
            {"alice": "A", "bob": "A", "carol": "A"})
        community = aggregate_to_community(graph, assignment)
        assert [(e.src, e.dst, e.weight) for e in community.edges] == [
            ("A", "A", 2)]
        assert community.edges[0].timestamp == 1200  # earliest collapse

    def test_unassigned_bucket(self, fixture_corpus):
        graph = build_user_pathway(fixture_corpus,
                                   "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map({"alice": "A"})
        community = aggregate_to_community(graph, assignment)
        assert {(e.src, e.dst) for e in community.edges} == {
            ("A", UNASSIGNED), (UNASSIGNED, UNASSIGNED)}

    def test_weight_conservation(self, corpus42, assignment42):
        corpus, _ = corpus42
        for url in sorted(corpus.articles)[:10]:
            user_graph = build_user_pathway(corpus, url)
            community = aggregate_to_community(user_graph, assignment42)
            assert sum(e.weight for e in community.edges) == len(user_graph.edges)

    def test_rejects_community_level_input(self, fixture_corpus):
        graph = build_user_pathway(fixture_corpus,
                                   "https://orga.example/lockdown-extended")
        community = aggregate_to_community(
            graph, CommunityAssignment.from_map({}))
        with pytest.raises(ValueError):
            aggregate_to_community(community, CommunityAssignment.from_map({}))


class TestWindows:
    def test_single_window_when_span_fits(self, fixture_corpus):
        assignment = CommunityAssignment.from_map(
            {"alice": "A", "bob": "A", "carol": "A", "dave": "B"})
        windows = window_pathways(fixture_corpus, assignment, 10_000)
        assert windows.n_windows == 1
        assert windows.windows[0] == {("A", "A"): 2}

    def test_empty_corpus(self):
        from pathway_engine.corpus import Corpus
        windows = window_pathways(Corpus(), CommunityAssignment.from_map({}),
                                  86400)
        assert windows.windows == []

    def test_bucketing_matches_brute_force(self, corpus42, assignment42, windows42):
        corpus, _ = corpus42
        t0 = corpus.min_timestamp()
        # independent full scan
        expected: list[dict] = [dict() for _ in range(windows42.n_windows)]
        for post in corpus.posts.values():
            if post.parent_id is None:
                continue
            parent = corpus.posts[post.parent_id]
            idx = (post.timestamp - t0) // 86400
            key = (assignment42.by_user.get(parent.author_id, UNASSIGNED),
                   assignment42.by_user.get(post.author_id, UNASSIGNED))
            expected[idx][key] = expected[idx].get(key, 0) + 1
        assert windows42.windows == expected

    def test_every_edge_in_exactly_one_window(self, corpus42, windows42):
        corpus, _ = corpus42
        total_edges = sum(1 for p in corpus.posts.values()
                          if p.parent_id is not None)
        assert sum(sum(w.values()) for w in windows42.windows) == total_edges

    def test_invalid_window_length(self, fixture_corpus):
        with pytest.raises(ValueError):
            window_pathways(fixture_corpus, CommunityAssignment.from_map({}), 0)


class TestSerialization:
    def test_windows_round_trip(self, windows42):
        from pathway_engine.pathway import WindowedGraphs
        payload = windows42.to_dict()
        back = WindowedGraphs.from_dict(payload)
        assert back.window_length == windows42.window_length
        assert back.windows == windows42.windows

    def test_pathway_graph_dict_shape(self, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        payload = build_user_pathway(corpus, url).to_dict()
        assert set(payload) == {"article_url", "level", "nodes", "edges"}
        assert all(set(e) == {"src", "dst", "weight", "timestamp"}
                   for e in payload["edges"])
