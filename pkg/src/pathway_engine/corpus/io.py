"""Line-delimited JSON corpus interchange.

One JSON object per line with a ``record_type`` discriminator in
{organization, user, article, post}.  References are resolved only after the
whole file is read, so record order does not matter on load.  Save emits a
deterministic order: organizations, users, articles, posts, each sorted by id.
"""

from __future__ import annotations

import json
from pathlib import Path

from .model import Corpus, CorpusError, DuplicateIdError, NewsArticle, Organization, Post, User


class ParseError(CorpusError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def load_corpus(path: str | Path) -> Corpus:
    corpus = Corpus()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(line_no, f"invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise ParseError(line_no, "record is not a JSON object")
            try:
                _add_record(corpus, record)
            except DuplicateIdError:
                raise
            except KeyError as exc:
                raise ParseError(line_no, f"missing field {exc.args[0]!r}") from exc
    corpus.validate()
    return corpus


def _add_record(corpus: Corpus, record: dict) -> None:
    rtype = record.get("record_type")
    if rtype == "user":
        user = User(
            id=record["id"],
            handle=record["handle"],
            history_post_ids=list(record.get("history_post_ids", [])),
        )
        if user.id in corpus.users:
            raise DuplicateIdError(f"duplicate user id {user.id}")
        corpus.users[user.id] = user
    elif rtype == "post":
        post = Post(
            id=record["id"],
            author_id=record["author_id"],
            kind=record["kind"],
            text=record["text"],
            timestamp=int(record["timestamp"]),
            like_count=int(record.get("like_count", 0)),
            platform=record.get("platform", "twitter_like"),
            parent_id=record.get("parent_id"),
            article_url=record.get("article_url"),
        )
        if post.id in corpus.posts:
            raise DuplicateIdError(f"duplicate post id {post.id}")
        corpus.posts[post.id] = post
    elif rtype == "article":
        article = NewsArticle(
            url=record["url"],
            title=record["title"],
            org_id=record["org_id"],
            published_at=int(record["published_at"]),
        )
        if article.url in corpus.articles:
            raise DuplicateIdError(f"duplicate article url {article.url}")
        corpus.articles[article.url] = article
    elif rtype == "organization":
        org = Organization(id=record["id"], name=record["name"], country=record["country"])
        if org.id in corpus.organizations:
            raise DuplicateIdError(f"duplicate organization id {org.id}")
        corpus.organizations[org.id] = org
    else:
        raise CorpusError(f"unknown record_type {rtype!r}")


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for oid in sorted(corpus.organizations):
            org = corpus.organizations[oid]
            _write(fh, {"record_type": "organization", "id": org.id, "name": org.name,
                        "country": org.country})
        for uid in sorted(corpus.users):
            user = corpus.users[uid]
            _write(fh, {"record_type": "user", "id": user.id, "handle": user.handle,
                        "history_post_ids": user.history_post_ids})
        for url in sorted(corpus.articles):
            article = corpus.articles[url]
            _write(fh, {"record_type": "article", "url": article.url, "title": article.title,
                        "org_id": article.org_id, "published_at": article.published_at})
        for pid in sorted(corpus.posts):
            post = corpus.posts[pid]
            record = {"record_type": "post", "id": post.id, "author_id": post.author_id,
                      "kind": post.kind, "text": post.text, "timestamp": post.timestamp,
                      "like_count": post.like_count, "platform": post.platform}
            if post.parent_id is not None:
                record["parent_id"] = post.parent_id
            if post.article_url is not None:
                record["article_url"] = post.article_url
            _write(fh, record)


def _write(fh, record: dict) -> None:
    fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
    fh.write("\n")
