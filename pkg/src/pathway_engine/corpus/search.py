"""Keyword search over article titles."""

from __future__ import annotations

from .model import Corpus, NewsArticle


def search_articles(corpus: Corpus, keywords: list[str]) -> list[NewsArticle]:
    """Articles whose title contains at least one keyword (case-insensitive).

    Ranked by number of matched keywords descending, then by descending
    source-post count, then by url ascending.
    """
    if not keywords:
        raise ValueError("keywords must be nonempty")
    lowered = [k.lower() for k in keywords if k]
    results = []
    for url in sorted(corpus.articles):
        article = corpus.articles[url]
        title = article.title.lower()
        matches = sum(1 for k in lowered if k in title)
        if matches == 0:
            continue
        n_sources = len(corpus.url_index.get(url, []))
        results.append((-matches, -n_sources, url, article))
    results.sort(key=lambda item: item[:3])
    return [article for *_, article in results]
