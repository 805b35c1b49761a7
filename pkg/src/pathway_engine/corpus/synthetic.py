"""Seeded synthetic corpora with planted communities, cascades and susceptibility.

The generator is a pure function of its config: a single ``random.Random``
(Mersenne Twister, CPython's stable stdlib generator) drives every draw, and
all iteration is over sorted ids.  Structure planted for downstream recovery:

* users are partitioned round-robin into ``n_orgs`` communities;
* each user carries a hidden susceptibility s* ~ U(-spread, +spread) and,
  when reached by a cascade, engages with probability
  clamp(repost_prob + 0.3*s*, 0, 1);
* each org's source posts rotate among three anchor members (the org's
  correspondent accounts), which also gives them distinct mention counts for
  the interaction graphs;
* cascades grow in rounds from one source post per article; engager
  candidates are drawn mostly from the article org's community (0.82), then
  the next community in the org cycle (0.16), then anyone; an engager
  attaches to the source post itself most of the time (as reposts do on real
  platforms), otherwise it prefers a same-community parent with probability
  0.8, falling back to the host community's parents;
* post text mixes per-article topic tokens with per-user stance tokens
  (hype vs doubt in proportion to s*), so both repost behaviour and planted
  susceptibility are recoverable from text.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .model import Corpus, NewsArticle, Organization, Post, User

EPOCH = 1_590_000_000  # corpus time origin (mid-May 2020)
ARTICLE_SPACING = 28_800  # one article per org per day at 8h offsets
ROUND_DRAWS = (24, 16, 10)  # engager candidate draws per cascade round

SOURCE_ATTACH = 0.92  # reposts mostly target the original post
SAME_PARENT_PREF = 0.8
OWN_COMMUNITY_DRAW = 0.82
NEXT_COMMUNITY_DRAW = 0.16
REPOST_SHARE = 0.8  # engagement is a repost (else a reply)
SUSCEPTIBILITY_WEIGHT = 0.3

ORG_NAMES = ("Harbor Post", "Civic Wire", "Meridian Times", "Summit Herald",
             "Coastal Chronicle", "Northfield Gazette", "Atlas Review")
ORG_COUNTRIES = ("US", "UK", "IN", "BR", "FR", "DE", "ES")

TOPIC_WORDS = (
    "harbor", "market", "museum", "railway", "stadium", "hospital", "ballot",
    "drought", "festival", "reservoir", "satellite", "refinery", "orchard",
    "summit", "tunnel", "glacier", "archive", "foundry", "observatory",
    "lighthouse", "aqueduct", "granary", "courthouse", "terminal", "bazaar",
    "cannery", "shipyard", "quarry", "vineyard", "plateau",
)
CHANNELS = ("masks", "testing", "travel", "schools", "economy", "hospitals",
            "variants", "reopening", "borders", "stimulus", "remote", "sports",
            "aid", "research", "housing", "energy")
HYPE_TOKENS = ("shocking", "miracle", "exposed", "urgent", "viral", "wakeup")
DOUBT_TOKENS = ("verify", "skeptical", "factcheck", "unlikely", "evidence", "debunked")

STANCE_TOKENS_PER_POST = 4


@dataclass
class SynthConfig:
    n_orgs: int = 3
    n_users: int = 90
    n_articles: int = 45
    cascade_depth: int = 3
    repost_prob: float = 0.4
    seed: int = 0
    true_susceptibility_spread: float = 1.0

    def validate(self) -> None:
        if min(self.n_orgs, self.n_users, self.n_articles) < 1:
            raise ValueError("n_orgs, n_users and n_articles must be >= 1")
        if self.cascade_depth < 0:
            raise ValueError("cascade_depth must be >= 0")
        if not 0.0 <= self.repost_prob <= 1.0:
            raise ValueError("repost_prob must be in [0, 1]")
        if not 0.0 < self.true_susceptibility_spread <= 1.0:
            raise ValueError("true_susceptibility_spread must be in (0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


class CascadeEdge(NamedTuple):
    parent_post_id: str
    child_post_id: str
    parent_author: str
    child_author: str


@dataclass
class GroundTruth:
    """Planted structure the downstream modules are expected to recover."""

    community: dict[str, str] = field(default_factory=dict)  # user id -> org id
    susceptibility: dict[str, float] = field(default_factory=dict)
    cascades: dict[str, list[CascadeEdge]] = field(default_factory=dict)  # url -> edges


def generate_synthetic(config: SynthConfig) -> tuple[Corpus, GroundTruth]:
    config.validate()
    rng = random.Random(config.seed)
    corpus = Corpus()
    truth = GroundTruth()

    for o in range(config.n_orgs):
        org = Organization(
            id=f"org{o}",
            name=ORG_NAMES[o % len(ORG_NAMES)],
            country=ORG_COUNTRIES[o % len(ORG_COUNTRIES)],
        )
        corpus.organizations[org.id] = org

    members: dict[str, list[str]] = {f"org{o}": [] for o in range(config.n_orgs)}
    for i in range(config.n_users):
        uid = f"u{i:03d}"
        org_id = f"org{i % config.n_orgs}"
        corpus.users[uid] = User(id=uid, handle=f"user{i:03d}")
        members[org_id].append(uid)
        truth.community[uid] = org_id
        s = rng.uniform(-config.true_susceptibility_spread,
                        config.true_susceptibility_spread)
        truth.susceptibility[uid] = s

    all_users = sorted(corpus.users)
    post_counter = 0

    def next_post_id() -> str:
        nonlocal post_counter
        pid = f"p{post_counter:05d}"
        post_counter += 1
        return pid

    def stance_tokens(uid: str) -> list[str]:
        # polarized: users committed beyond |s*| = 2/3 use one vocabulary only
        hype_rate = min(1.0, max(0.0, 0.5 + 0.75 * truth.susceptibility[uid]))
        out = []
        for _ in range(STANCE_TOKENS_PER_POST):
            pool = HYPE_TOKENS if rng.random() < hype_rate else DOUBT_TOKENS
            out.append(rng.choice(pool))
        return out

    def clickbait_tokens() -> list[str]:
        # headline bait: source posts lean on the hype vocabulary
        return [rng.choice(HYPE_TOKENS) for _ in range(3)]

    for k in range(config.n_articles):
        org_id = f"org{k % config.n_orgs}"
        org = corpus.organizations[org_id]
        topics = (TOPIC_WORDS[(2 * k) % len(TOPIC_WORDS)],
                  TOPIC_WORDS[(2 * k + 1) % len(TOPIC_WORDS)])
        url = f"https://{org_id}.example/story/{k}"
        published = EPOCH + k * ARTICLE_SPACING
        corpus.articles[url] = NewsArticle(
            url=url,
            title=f"{org.name} covers the {topics[0]} {topics[1]} development",
            org_id=org_id,
            published_at=published,
        )

        # the org's correspondent accounts: its three most-hype members, so
        # clickbait-heavy source feeds match their own posting style
        anchors = sorted(members[org_id],
                         key=lambda uid: -truth.susceptibility[uid])[:3] or all_users
        seed_author = anchors[(k // config.n_orgs) % len(anchors)]
        story_tag = f"story{k}"
        channel = CHANNELS[k % len(CHANNELS)]
        body = ["covid", org_id, channel, channel, story_tag, story_tag]
        source = Post(
            id=next_post_id(),
            author_id=seed_author,
            kind="source",
            text=" ".join([*body, *clickbait_tokens(), url]),
            timestamp=published + rng.randint(600, 3600),
            like_count=rng.randint(0, 100),
            article_url=url,
        )
        corpus.posts[source.id] = source
        truth.cascades[url] = []

        next_comm = f"org{(k + 1) % config.n_orgs}"
        participants = {seed_author}
        cascade: list[tuple[Post, int]] = [(source, 0)]  # (post, depth)
        for round_idx in range(config.cascade_depth):
            draws = ROUND_DRAWS[min(round_idx, len(ROUND_DRAWS) - 1)]
            new_posts: list[tuple[Post, int]] = []
            for _ in range(draws):
                roll = rng.random()
                if roll < OWN_COMMUNITY_DRAW:
                    candidates = members[org_id]
                elif roll < OWN_COMMUNITY_DRAW + NEXT_COMMUNITY_DRAW:
                    candidates = members[next_comm]
                else:
                    candidates = all_users
                if not candidates:
                    candidates = all_users
                target = rng.choice(candidates)
                if target in participants:
                    continue
                p_engage = min(1.0, max(0.0, config.repost_prob +
                                        SUSCEPTIBILITY_WEIGHT *
                                        truth.susceptibility[target]))
                if rng.random() >= p_engage:
                    continue
                pool = [(p, dep) for p, dep in cascade if dep < config.cascade_depth]
                if rng.random() < SOURCE_ATTACH:
                    parent, parent_depth = source, 0
                else:
                    target_comm = truth.community[target]
                    same = [(p, dep) for p, dep in pool
                            if truth.community[p.author_id] == target_comm]
                    if same and rng.random() < SAME_PARENT_PREF:
                        parent, parent_depth = same[rng.randrange(len(same))]
                    else:
                        host = [(p, dep) for p, dep in pool
                                if truth.community[p.author_id] == org_id]
                        chosen = host or pool
                        parent, parent_depth = chosen[rng.randrange(len(chosen))]
                participants.add(target)
                kind = "repost" if rng.random() < REPOST_SHARE else "reply"
                child = Post(
                    id=next_post_id(),
                    author_id=target,
                    kind=kind,
                    text=" ".join([*body, *stance_tokens(target)]),
                    timestamp=parent.timestamp + rng.randint(300, 7200),
                    like_count=rng.randint(0, 100),
                    parent_id=parent.id,
                )
                corpus.posts[child.id] = child
                truth.cascades[url].append(CascadeEdge(
                    parent_post_id=parent.id,
                    child_post_id=child.id,
                    parent_author=parent.author_id,
                    child_author=target,
                ))
                new_posts.append((child, parent_depth + 1))
            cascade.extend(new_posts)

    for uid in all_users:
        corpus.users[uid].history_post_ids = sorted(
            pid for pid, post in corpus.posts.items() if post.author_id == uid
        )

    corpus.validate()
    return corpus, truth
