from __future__ import annotations

import random

import pytest

from pathway_engine.corpus import (Corpus, NewsArticle, Organization, Post,
                                   SynthConfig, User, generate_synthetic)
from pathway_engine.forecast import ForecastHyper, train_link_predictor
from pathway_engine.influence import assign_communities
from pathway_engine.pathway import window_pathways
from pathway_engine.susceptibility import (SusHyper, extract_repost_pairs,
                                           sample_negative_pairs,
                                           train_susceptibility)

ACCEPTANCE_SEED = 42


@pytest.fixture(scope="session")
def corpus42():
    corpus, truth = generate_synthetic(SynthConfig(seed=ACCEPTANCE_SEED))
    return corpus, truth


@pytest.fixture(scope="session")
def assignment42(corpus42):
    corpus, _ = corpus42
    return assign_communities(corpus, sorted(corpus.organizations))


@pytest.fixture(scope="session")
def windows42(corpus42, assignment42):
    corpus, _ = corpus42
    return window_pathways(corpus, assignment42, 86400)


@pytest.fixture(scope="session")
def forecast_model42(windows42):
    return train_link_predictor(windows42, list(range(0, 10)), ForecastHyper())


@pytest.fixture(scope="session")
def sus_split42(corpus42):
    corpus, _ = corpus42
    pairs = extract_repost_pairs(corpus)
    rng = random.Random(42)
    shuffled = pairs[:]
    rng.shuffle(shuffled)
    split = int(0.8 * len(shuffled))
    train_pos, test_pos = shuffled[:split], shuffled[split:]
    test_neg, _ = sample_negative_pairs(corpus, test_pos, 1, seed=999)
    return train_pos, test_pos, test_neg


@pytest.fixture(scope="session")
def sus_model42(corpus42, sus_split42):
    corpus, _ = corpus42
    train_pos, _, _ = sus_split42
    return train_susceptibility(corpus, train_pos, SusHyper())


def make_fixture_corpus() -> Corpus:
    """Small handcrafted corpus: one org, a lockdown article, a 3-post cascade."""
    corpus = Corpus()
    corpus.organizations["orgA"] = Organization(id="orgA", name="Harbor Post",
                                                country="US")
    corpus.organizations["orgB"] = Organization(id="orgB", name="Civic Wire",
                                                country="UK")
    url1 = "https://orga.example/lockdown-extended"
    url2 = "https://orgb.example/harbor-reopens"
    corpus.articles[url1] = NewsArticle(url=url1, title="City lockdown extended",
                                        org_id="orgA", published_at=1000)
    corpus.articles[url2] = NewsArticle(url=url2, title="Harbor reopens to ships",
                                        org_id="orgB", published_at=2000)
    for uid in ("alice", "bob", "carol", "dave"):
        corpus.users[uid] = User(id=uid, handle=uid)
    corpus.posts["p1"] = Post(id="p1", author_id="alice", kind="source",
                              text="The city will lock down tomorrow " + url1,
                              timestamp=1100, like_count=3, article_url=url1)
    corpus.posts["p2"] = Post(id="p2", author_id="bob", kind="repost",
                              text="sharing the lockdown news",
                              timestamp=1200, like_count=9, parent_id="p1")
    corpus.posts["p3"] = Post(id="p3", author_id="carol", kind="reply",
                              text="Officials quarantined tourists at Heathrow",
                              timestamp=1300, like_count=5, parent_id="p2")
    corpus.posts["p4"] = Post(id="p4", author_id="dave", kind="source",
                              text="Harbor reopens " + url2,
                              timestamp=2100, like_count=1, article_url=url2)
    corpus.users["alice"].history_post_ids = ["p1"]
    corpus.users["bob"].history_post_ids = ["p2"]
    corpus.users["carol"].history_post_ids = ["p3"]
    corpus.users["dave"].history_post_ids = ["p4"]
    corpus.validate()
    return corpus


@pytest.fixture()
def fixture_corpus():
    return make_fixture_corpus()
