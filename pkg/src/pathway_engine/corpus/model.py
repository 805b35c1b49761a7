"""Core data model: users, posts, articles, organizations and the corpus container."""

from __future__ import annotations

from dataclasses import dataclass, field

POST_KINDS = ("source", "repost", "reply")
PLATFORMS = ("twitter_like", "reddit_like")


class CorpusError(Exception):
    """Base class for corpus construction/validation failures."""


class DuplicateIdError(CorpusError):
    pass


class DanglingReferenceError(CorpusError):
    pass


@dataclass
class User:
    id: str
    handle: str
    history_post_ids: list[str] = field(default_factory=list)


@dataclass
class Post:
    id: str
    author_id: str
    kind: str  # source | repost | reply
    text: str
    timestamp: int
    like_count: int = 0
    platform: str = "twitter_like"
    parent_id: str | None = None
    article_url: str | None = None


@dataclass
class NewsArticle:
    url: str
    title: str
    org_id: str
    published_at: int


@dataclass
class Organization:
    id: str
    name: str
    country: str


@dataclass
class Corpus:
    """Keyed collections plus a url -> source-post index.

    Immutable by convention after construction; ``validate()`` enforces the
    cross-reference invariants and (re)builds ``url_index``.
    """

    users: dict[str, User] = field(default_factory=dict)
    posts: dict[str, Post] = field(default_factory=dict)
    articles: dict[str, NewsArticle] = field(default_factory=dict)
    organizations: dict[str, Organization] = field(default_factory=dict)
    url_index: dict[str, list[str]] = field(default_factory=dict)

    def validate(self) -> None:
        for user in self.users.values():
            for pid in user.history_post_ids:
                post = self.posts.get(pid)
                if post is None:
                    raise DanglingReferenceError(
                        f"user {user.id} history references missing post {pid}"
                    )
                if post.author_id != user.id:
                    raise CorpusError(
                        f"user {user.id} history post {pid} authored by {post.author_id}"
                    )
        for post in self.posts.values():
            if post.author_id not in self.users:
                raise DanglingReferenceError(
                    f"post {post.id} references missing user {post.author_id}"
                )
            if post.kind not in POST_KINDS:
                raise CorpusError(f"post {post.id} has unknown kind {post.kind!r}")
            if post.platform not in PLATFORMS:
                raise CorpusError(f"post {post.id} has unknown platform {post.platform!r}")
            if post.like_count < 0:
                raise CorpusError(f"post {post.id} has negative like_count")
            if post.kind == "source":
                if post.parent_id is not None:
                    raise CorpusError(f"source post {post.id} must not have a parent")
                if not post.article_url:
                    raise CorpusError(f"source post {post.id} must carry an article_url")
                if post.article_url not in self.articles:
                    raise DanglingReferenceError(
                        f"post {post.id} references missing article {post.article_url}"
                    )
            else:
                if post.parent_id is None:
                    raise CorpusError(f"{post.kind} post {post.id} must have a parent")
                parent = self.posts.get(post.parent_id)
                if parent is None:
                    raise DanglingReferenceError(
                        f"post {post.id} references missing parent {post.parent_id}"
                    )
                if post.timestamp < parent.timestamp:
                    raise CorpusError(
                        f"post {post.id} predates its parent {parent.id}"
                    )
        for article in self.articles.values():
            if article.org_id not in self.organizations:
                raise DanglingReferenceError(
                    f"article {article.url} references missing organization {article.org_id}"
                )
        self._check_acyclic()
        self.rebuild_url_index()

    def _check_acyclic(self) -> None:
        # Every repost/reply chain must terminate at a source post.
        state: dict[str, int] = {}  # 0 = visiting, 1 = done
        for pid in self.posts:
            chain = []
            cur: str | None = pid
            while cur is not None:
                if state.get(cur) == 1:
                    break
                if state.get(cur) == 0:
                    raise CorpusError(f"parent cycle detected at post {cur}")
                state[cur] = 0
                chain.append(cur)
                cur = self.posts[cur].parent_id
            for seen in chain:
                state[seen] = 1

    def rebuild_url_index(self) -> None:
        index: dict[str, list[str]] = {}
        for pid in sorted(self.posts):
            post = self.posts[pid]
            if post.kind == "source" and post.article_url:
                index.setdefault(post.article_url, []).append(pid)
        self.url_index = index

    def root_of(self, post_id: str) -> Post:
        """Follow parent links up to the pathway's source post."""
        post = self.posts[post_id]
        while post.parent_id is not None:
            post = self.posts[post.parent_id]
        return post

    def min_timestamp(self) -> int | None:
        if not self.posts:
            return None
        return min(p.timestamp for p in self.posts.values())

    def max_timestamp(self) -> int | None:
        if not self.posts:
            return None
        return max(p.timestamp for p in self.posts.values())
