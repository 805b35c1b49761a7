"""Build the demo corpus + models the explorer's e2e test runs against.

Synthetic seed-42 corpus plus one handcrafted lockdown article whose posts
carry event triggers, so every panel has something to show.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from pathway_engine.corpus import NewsArticle, Post, SynthConfig, generate_synthetic, save_corpus
from pathway_engine.corpus.synthetic import EPOCH
from pathway_engine.forecast import ForecastHyper, train_link_predictor
from pathway_engine.influence import assign_communities
from pathway_engine.pathway import window_pathways
from pathway_engine.susceptibility import SusHyper, extract_repost_pairs, train_susceptibility

LOCKDOWN_URL = "https://org0.example/story/lockdown"


def add_lockdown_article(corpus) -> None:
    day13 = EPOCH + 13 * 86_400
    corpus.articles[LOCKDOWN_URL] = NewsArticle(
        url=LOCKDOWN_URL, title="City lockdown extended until further notice",
        org_id="org0", published_at=day13)
    posts = [
        Post(id="plock0", author_id="u000", kind="source",
             text="The city will lock down tomorrow " + LOCKDOWN_URL,
             timestamp=day13 + 600, like_count=40, article_url=LOCKDOWN_URL),
        Post(id="plock1", author_id="u003", kind="repost",
             text="Officials quarantined tourists at Heathrow",
             timestamp=day13 + 2_000, like_count=25, parent_id="plock0"),
        Post(id="plock2", author_id="u006", kind="reply",
             text="Italy fined travelers 400 euros",
             timestamp=day13 + 3_500, like_count=60, parent_id="plock0"),
        Post(id="plock3", author_id="u001", kind="repost",
             text="Nurses died in Rome on Monday",
             timestamp=day13 + 5_000, like_count=10, parent_id="plock1"),
    ]
    for post in posts:
        corpus.posts[post.id] = post
        corpus.users[post.author_id].history_post_ids.append(post.id)
        corpus.users[post.author_id].history_post_ids.sort()
    corpus.validate()


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out-dir", required=True)
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    corpus, _ = generate_synthetic(SynthConfig(seed=42))
    add_lockdown_article(corpus)
    save_corpus(corpus, out / "corpus.jsonl")

    assignment = assign_communities(corpus, sorted(corpus.organizations))
    windows = window_pathways(corpus, assignment, 86_400)
    forecast_model = train_link_predictor(windows, list(range(0, 10)),
                                          ForecastHyper())
    forecast_model.to_json(out / "forecast_model.json")

    sus_model = train_susceptibility(corpus, extract_repost_pairs(corpus),
                                     SusHyper())
    sus_model.to_json(out / "sus_model.json")
    print(f"demo ready in {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
