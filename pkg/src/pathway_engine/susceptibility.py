"""User susceptibility scoring from repost behaviour.

Text goes through a deterministic sign-hashing embedder (sha256 buckets, L2
normalized); a small tanh MLP maps a (user, content) embedding pair to a
signed score in (-1, 1); the repost probability couples that score with the
embeddings' inner product through a sigmoid.  Training distinguishes
reposted pairs from sampled non-reposted ones with binary cross-entropy,
differentiated through both the MLP and the product coupling.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus.model import Corpus
from .influence import CommunityAssignment

logger = logging.getLogger(__name__)

DEFAULT_DIM = 64
DEFAULT_HIDDEN = 32

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class HashingEmbedder:
    """Feature-hashing sentence embedder.

    Tokens are lowercased alphanumeric runs; each token lands in bucket
    int(sha256(token)[:4]) % dim with sign +1 when sha256(token)[4] is even,
    -1 otherwise.  Counts are accumulated and L2-normalized; the empty text
    embeds to the zero vector.  Fully deterministic and portable.
    """

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim

    def embed_text(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim)
        for token in _TOKEN_RE.findall(text.lower()):
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            bucket = int.from_bytes(digest[:4], "big") % self.dim
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            vec[bucket] += sign
        return _l2_normalize(vec)

    def embed_user(self, corpus: Corpus, user_id: str) -> np.ndarray:
        user = corpus.users.get(user_id)
        if user is None:
            raise KeyError(f"unknown user {user_id!r}")
        if not user.history_post_ids:
            return np.zeros(self.dim)
        mean = np.mean([self.embed_text(corpus.posts[pid].text)
                        for pid in user.history_post_ids], axis=0)
        return _l2_normalize(mean)


def _l2_normalize(vec: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    return vec / norm if norm > 0 else vec


def embed_text(text: str, dim: int = DEFAULT_DIM) -> np.ndarray:
    return HashingEmbedder(dim).embed_text(text)


def embed_user(corpus: Corpus, user_id: str, dim: int = DEFAULT_DIM) -> np.ndarray:
    return HashingEmbedder(dim).embed_user(corpus, user_id)


@dataclass
class SusScore:
    value: float

    @property
    def percentage(self) -> float:
        return self.value * 100.0


@dataclass
class SusceptibilityModel:
    w1: np.ndarray  # (hidden, 2 * dim)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden,)
    b2: float
    metadata: dict = field(default_factory=dict)

    @property
    def hidden_size(self) -> int:
        return self.w1.shape[0]

    @property
    def dim(self) -> int:
        return self.w1.shape[1] // 2

    @classmethod
    def initialize(cls, seed: int, dim: int = DEFAULT_DIM,
                   hidden: int = DEFAULT_HIDDEN) -> "SusceptibilityModel":
        rng = np.random.default_rng(seed)
        return cls(
            w1=rng.uniform(-0.1, 0.1, size=(hidden, 2 * dim)),
            b1=rng.uniform(-0.1, 0.1, size=hidden),
            w2=rng.uniform(-0.1, 0.1, size=hidden),
            b2=float(rng.uniform(-0.1, 0.1)),
            metadata={"seed": seed},
        )

    def sus_value(self, eu: np.ndarray, ec: np.ndarray) -> float:
        z = self._concat(eu, ec)
        hidden = np.tanh(self.w1 @ z + self.b1)
        return float(np.tanh(self.w2 @ hidden + self.b2))

    def _concat(self, eu: np.ndarray, ec: np.ndarray) -> np.ndarray:
        if len(eu) + len(ec) != self.w1.shape[1]:
            raise ValueError(
                f"embedding dims {len(eu)}+{len(ec)} do not match model "
                f"input {self.w1.shape[1]}")
        return np.concatenate([eu, ec])

    def to_json(self, path: str | Path) -> None:
        payload = {
            "w1": self.w1.tolist(), "b1": self.b1.tolist(),
            "w2": self.w2.tolist(), "b2": self.b2,
            "shape": {"hidden": self.hidden_size, "dim": self.dim},
            "metadata": self.metadata,
        }
        Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")

    @classmethod
    def from_json(cls, path: str | Path) -> "SusceptibilityModel":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        model = cls(
            w1=np.asarray(payload["w1"], dtype=float),
            b1=np.asarray(payload["b1"], dtype=float),
            w2=np.asarray(payload["w2"], dtype=float),
            b2=float(payload["b2"]),
            metadata=payload.get("metadata", {}),
        )
        shape = payload.get("shape", {})
        if shape and (shape.get("hidden") != model.hidden_size
                      or shape.get("dim") != model.dim):
            raise ValueError("model file shape metadata disagrees with arrays")
        return model


def sus_score(model: SusceptibilityModel, eu: np.ndarray, ec: np.ndarray) -> SusScore:
    return SusScore(value=model.sus_value(eu, ec))


def repost_probability(model: SusceptibilityModel, eu: np.ndarray,
                       ec: np.ndarray) -> float:
    inner = float(np.dot(eu, ec))
    return float(1.0 / (1.0 + np.exp(-inner * model.sus_value(eu, ec))))


@dataclass
class SusHyper:
    lr: float = 0.5
    epochs: int = 30
    negatives_per_positive: int = 1
    seed: int = 42
    batch_size: int = 32
    dim: int = DEFAULT_DIM
    hidden: int = DEFAULT_HIDDEN


def extract_repost_pairs(corpus: Corpus) -> list[tuple[str, str]]:
    """All (reposting user, reposted post) pairs, in deterministic order."""
    pairs = []
    for pid in sorted(corpus.posts):
        post = corpus.posts[pid]
        if post.kind == "repost" and post.parent_id is not None:
            pairs.append((post.author_id, post.parent_id))
    return pairs


def sample_negative_pairs(corpus: Corpus, positives: list[tuple[str, str]],
                          negatives_per_positive: int, seed: int,
                          ) -> tuple[list[tuple[str, str]], int]:
    """Per positive, draw contents its user never reposted (nor authored).

    Returns the sampled pairs and the number of positives skipped for lack
    of candidates.
    """
    rng = random.Random(seed)
    all_posts = sorted(corpus.posts)
    reposted_by: dict[str, set[str]] = {}
    for uid, pid in extract_repost_pairs(corpus):
        reposted_by.setdefault(uid, set()).add(pid)

    negatives: list[tuple[str, str]] = []
    skipped = 0
    for uid, _ in positives:
        excluded = reposted_by.get(uid, set())
        drawn = 0
        for _ in range(20 * negatives_per_positive):  # rejection sampling
            pid = rng.choice(all_posts)
            if pid in excluded or corpus.posts[pid].author_id == uid:
                continue
            negatives.append((uid, pid))
            drawn += 1
            if drawn == negatives_per_positive:
                break
        if drawn == 0:
            skipped += 1
    return negatives, skipped


def pair_forward(model: SusceptibilityModel, EU: np.ndarray, EC: np.ndarray,
                 ) -> np.ndarray:
    """Vectorized repost probability for stacked embedding pairs."""
    Z = np.hstack([EU, EC])
    H = np.tanh(Z @ model.w1.T + model.b1)
    S = np.tanh(H @ model.w2 + model.b2)
    G = np.sum(EU * EC, axis=1)
    return 1.0 / (1.0 + np.exp(-G * S))


def loss_and_gradients(model: SusceptibilityModel, EU: np.ndarray,
                       EC: np.ndarray, y: np.ndarray) -> tuple[float, dict]:
    """Mean binary cross-entropy and its analytic parameter gradients."""
    n = len(y)
    Z = np.hstack([EU, EC])
    H = np.tanh(Z @ model.w1.T + model.b1)
    pre_s = H @ model.w2 + model.b2
    S = np.tanh(pre_s)
    G = np.sum(EU * EC, axis=1)
    P = 1.0 / (1.0 + np.exp(-G * S))

    eps = 1e-12
    loss = float(-np.mean(y * np.log(P + eps) + (1 - y) * np.log(1 - P + eps)))

    # dL/d(G*S) = (P - y) / n; chain through S = tanh(pre_s)
    d_pre_s = (P - y) * G * (1.0 - S ** 2) / n
    grad_w2 = H.T @ d_pre_s
    grad_b2 = float(np.sum(d_pre_s))
    d_h = np.outer(d_pre_s, model.w2) * (1.0 - H ** 2)
    grad_w1 = d_h.T @ Z
    grad_b1 = d_h.sum(axis=0)
    return loss, {"w1": grad_w1, "b1": grad_b1, "w2": grad_w2, "b2": grad_b2}


def train_susceptibility(corpus: Corpus, positives: list[tuple[str, str]],
                         hyper: SusHyper | None = None,
                         embedder: HashingEmbedder | None = None,
                         ) -> SusceptibilityModel:
    """Contrastive training on repost vs sampled non-repost pairs."""
    hyper = hyper or SusHyper()
    if not positives:
        raise ValueError("positives must be nonempty")
    embedder = embedder or HashingEmbedder(hyper.dim)

    negatives, skipped = sample_negative_pairs(
        corpus, positives, hyper.negatives_per_positive, hyper.seed)
    if skipped:
        logger.warning("skipped %d positives with no negative candidates", skipped)

    user_vecs: dict[str, np.ndarray] = {}
    post_vecs: dict[str, np.ndarray] = {}
    for uid, pid in positives + negatives:
        if uid not in user_vecs:
            user_vecs[uid] = embedder.embed_user(corpus, uid)
        if pid not in post_vecs:
            post_vecs[pid] = embedder.embed_text(corpus.posts[pid].text)

    pairs = positives + negatives
    EU = np.stack([user_vecs[u] for u, _ in pairs])
    EC = np.stack([post_vecs[p] for _, p in pairs])
    y = np.concatenate([np.ones(len(positives)), np.zeros(len(negatives))])

    model = SusceptibilityModel.initialize(hyper.seed, dim=embedder.dim,
                                           hidden=hyper.hidden)
    rng = np.random.default_rng(hyper.seed)
    n = len(y)
    losses = []
    for _ in range(hyper.epochs):
        order = rng.permutation(n)
        for lo in range(0, n, hyper.batch_size):
            batch = order[lo:lo + hyper.batch_size]
            _, grads = loss_and_gradients(model, EU[batch], EC[batch], y[batch])
            model.w1 -= hyper.lr * grads["w1"]
            model.b1 -= hyper.lr * grads["b1"]
            model.w2 -= hyper.lr * grads["w2"]
            model.b2 -= hyper.lr * grads["b2"]
        losses.append(loss_and_gradients(model, EU, EC, y)[0])
    model.metadata.update({
        "epochs": hyper.epochs, "lr": hyper.lr,
        "negatives_per_positive": hyper.negatives_per_positive,
        "skipped_positives": skipped, "loss_curve": losses,
    })
    return model


def evaluate_repost_f1(model: SusceptibilityModel, corpus: Corpus,
                       positives: list[tuple[str, str]],
                       negatives: list[tuple[str, str]],
                       embedder: HashingEmbedder | None = None) -> float:
    """F1 of the p >= 0.5 repost classifier; 0 when precision+recall is 0."""
    embedder = embedder or HashingEmbedder(model.dim)
    user_vecs: dict[str, np.ndarray] = {}

    def predict(uid: str, pid: str) -> bool:
        if uid not in user_vecs:
            user_vecs[uid] = embedder.embed_user(corpus, uid)
        ec = embedder.embed_text(corpus.posts[pid].text)
        return repost_probability(model, user_vecs[uid], ec) >= 0.5

    tp = sum(1 for uid, pid in positives if predict(uid, pid))
    fn = len(positives) - tp
    fp = sum(1 for uid, pid in negatives if predict(uid, pid))
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2 * precision * recall / (precision + recall)


def score_user(model: SusceptibilityModel, corpus: Corpus, user_id: str,
               embedder: HashingEmbedder | None = None) -> SusScore:
    """A user's displayed susceptibility in [-1, 1].

    Mean trained repost propensity over the corpus's source posts (the
    canonical content sample), mapped from (0, 1) to the signed range:
    a user most likely to repost anything scores toward +1.  Users without
    history score through the zero embedding.
    """
    embedder = embedder or HashingEmbedder(model.dim)
    eu = embedder.embed_user(corpus, user_id)
    references = [pid for pid in sorted(corpus.posts)
                  if corpus.posts[pid].kind == "source"]
    if not references:
        return SusScore(value=model.sus_value(eu, np.zeros(embedder.dim)))
    probs = [repost_probability(model, eu, embedder.embed_text(corpus.posts[pid].text))
             for pid in references]
    return SusScore(value=float(2.0 * np.mean(probs) - 1.0))


def community_susceptibility(scores: dict[str, SusScore],
                             assignment: CommunityAssignment,
                             ) -> dict[str, SusScore]:
    """Unweighted mean member score per community; empty communities absent."""
    out: dict[str, SusScore] = {}
    for community in sorted(assignment.members):
        members = assignment.members[community]
        values = [scores[uid].value for uid in members if uid in scores]
        if values:
            out[community] = SusScore(value=float(np.mean(values)))
    return out
