"""Read-only engine snapshot behind the HTTP API.

Everything derives deterministically from the loaded corpus and the
optional model files; caches are memoized lazily under a lock, so repeated
requests return identical payloads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..corpus import Corpus, load_corpus
from ..events import (EventOntology, RepresentativeOpinion, default_ontology,
                      extract_events, select_representative_opinion)
from ..forecast import ForecastModel, RolloutTrace, forecast_rollout
from ..influence import (CommunityAssignment, IPScores, assign_communities,
                         build_interaction_graph, influence_passivity)
from ..pathway import (PathwayGraph, WindowedGraphs, aggregate_to_community,
                       build_user_pathway, window_pathways)
from ..susceptibility import (HashingEmbedder, SusceptibilityModel, SusScore,
                              community_susceptibility, score_user)

DEFAULT_WINDOW_LENGTH = 86_400


class EngineError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def not_found(message: str) -> EngineError:
    return EngineError(404, "not_found", message)


def bad_request(message: str) -> EngineError:
    return EngineError(400, "bad_request", message)


def model_missing(message: str) -> EngineError:
    return EngineError(503, "model_missing", message)


@dataclass
class EngineState:
    corpus: Corpus
    assignment: CommunityAssignment
    ip_scores: dict[str, IPScores]
    ontology: EventOntology
    forecast_model: ForecastModel | None = None
    sus_model: SusceptibilityModel | None = None
    window_length: int = DEFAULT_WINDOW_LENGTH
    windows: WindowedGraphs | None = None

    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _user_pathways: dict[str, PathwayGraph] = field(default_factory=dict, repr=False)
    _community_pathways: dict[str, PathwayGraph] = field(default_factory=dict, repr=False)
    _user_scores: dict[str, SusScore] = field(default_factory=dict, repr=False)
    _community_scores: dict[str, SusScore] | None = field(default=None, repr=False)
    _embedder: HashingEmbedder | None = field(default=None, repr=False)

    @classmethod
    def load(cls, corpus_path: str | Path,
             forecast_model_path: str | Path | None = None,
             sus_model_path: str | Path | None = None,
             ontology_path: str | Path | None = None,
             window_length: int = DEFAULT_WINDOW_LENGTH,
             max_iter: int = 1000, tol: float = 1e-8) -> "EngineState":
        corpus = load_corpus(corpus_path)
        org_ids = sorted(corpus.organizations)
        assignment = (assign_communities(corpus, org_ids)
                      if org_ids else CommunityAssignment())
        ip_scores = {}
        for org_id in org_ids:
            arts = [a for a in corpus.articles.values() if a.org_id == org_id]
            if not arts:
                continue
            graph = build_interaction_graph(corpus, org_id)
            ip_scores[org_id] = influence_passivity(graph, max_iter=max_iter, tol=tol)
        state = cls(
            corpus=corpus,
            assignment=assignment,
            ip_scores=ip_scores,
            ontology=(EventOntology.from_json(ontology_path)
                      if ontology_path else default_ontology()),
            forecast_model=(ForecastModel.from_json(forecast_model_path)
                            if forecast_model_path else None),
            sus_model=(SusceptibilityModel.from_json(sus_model_path)
                       if sus_model_path else None),
            window_length=window_length,
        )
        state.windows = window_pathways(corpus, assignment, window_length)
        if state.sus_model is not None:
            state._embedder = HashingEmbedder(state.sus_model.dim)
        return state

    # -- pathways ---------------------------------------------------------

    def user_pathway(self, article_url: str) -> PathwayGraph:
        if article_url not in self.corpus.articles:
            raise not_found(f"unknown article {article_url!r}")
        with self._lock:
            if article_url not in self._user_pathways:
                self._user_pathways[article_url] = build_user_pathway(
                    self.corpus, article_url)
            return self._user_pathways[article_url]

    def community_pathway(self, article_url: str) -> PathwayGraph:
        user_level = self.user_pathway(article_url)
        with self._lock:
            if article_url not in self._community_pathways:
                self._community_pathways[article_url] = aggregate_to_community(
                    user_level, self.assignment)
            return self._community_pathways[article_url]

    def pathway_posts(self, article_url: str) -> dict[str, list[str]]:
        """Author -> their post ids inside one article's pathway."""
        by_author: dict[str, list[str]] = {}
        for root in self.corpus.url_index.get(article_url, []):
            stack = [root]
            while stack:
                pid = stack.pop()
                post = self.corpus.posts[pid]
                by_author.setdefault(post.author_id, []).append(pid)
                stack.extend(self._children(pid))
        for posts in by_author.values():
            posts.sort()
        return by_author

    # -- susceptibility ---------------------------------------------------

    @property
    def susceptibility_available(self) -> bool:
        return self.sus_model is not None

    def user_score(self, user_id: str) -> SusScore:
        if user_id not in self.corpus.users:
            raise not_found(f"unknown user {user_id!r}")
        if self.sus_model is None:
            raise model_missing("no susceptibility model loaded")
        with self._lock:
            if user_id not in self._user_scores:
                self._user_scores[user_id] = score_user(
                    self.sus_model, self.corpus, user_id, embedder=self._embedder)
            return self._user_scores[user_id]

    def community_scores(self) -> dict[str, SusScore]:
        if self.sus_model is None:
            raise model_missing("no susceptibility model loaded")
        scores = {uid: self.user_score(uid) for uid in self.assignment.by_user}
        with self._lock:
            if self._community_scores is None:
                self._community_scores = community_susceptibility(
                    scores, self.assignment)
            return self._community_scores

    # -- events & opinions ------------------------------------------------

    def post_events(self, post_id: str) -> list[dict]:
        post = self.corpus.posts.get(post_id)
        if post is None:
            raise not_found(f"unknown post {post_id!r}")
        mentions = extract_events(self.ontology, post.text)
        for m in mentions:
            m.post_id = post_id
        return [m.to_dict() for m in mentions]

    def opinion(self, article_url: str,
                community_id: str) -> RepresentativeOpinion | None:
        pathway = self.user_pathway(article_url)
        return select_representative_opinion(
            self.corpus, pathway, self.assignment, community_id)

    # -- forecasting ------------------------------------------------------

    def article_rollout(self, article_url: str, horizon: int,
                        theta: float) -> tuple[RolloutTrace, int]:
        if self.forecast_model is None:
            raise model_missing("no forecast model loaded")
        if article_url not in self.corpus.articles:
            raise not_found(f"unknown article {article_url!r}")
        if not self.windows or self.windows.n_windows < 2:
            raise bad_request("corpus has too little history to forecast from")
        start = self._article_last_window(article_url)
        trace = forecast_rollout(self.forecast_model, self.windows,
                                 start=start, horizon=horizon, theta=theta)
        return trace, start

    def _article_last_window(self, article_url: str) -> int:
        t0 = self.corpus.min_timestamp()
        last = 1
        for pid in self.corpus.url_index.get(article_url, []):
            stack = [pid]
            while stack:
                cur = stack.pop()
                post = self.corpus.posts[cur]
                if post.parent_id is not None:
                    last = max(last, (post.timestamp - t0) // self.window_length)
                stack.extend(self._children(cur))
        return min(last, self.windows.n_windows - 1)

    def _children(self, post_id: str) -> list[str]:
        with self._lock:
            if not hasattr(self, "_child_index"):
                index: dict[str, list[str]] = {}
                for pid in sorted(self.corpus.posts):
                    parent_id = self.corpus.posts[pid].parent_id
                    if parent_id is not None:
                        index.setdefault(parent_id, []).append(pid)
                self._child_index = index
            return self._child_index.get(post_id, [])
