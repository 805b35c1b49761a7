"""Temporal link prediction over windowed community graphs.

A transparent logistic model over six per-edge features stands in for a
learned graph encoder; the training/evaluation protocol (windowed splits,
negative sampling, rank-statistic AUC, autoregressive rollout) is the part
that matters and is preserved behind the ``score_edge`` seam.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .pathway import WindowedGraphs

FEATURE_NAMES = (
    "hist_frequency",   # fraction of past windows containing the edge
    "recency",          # 1 / (t - last window containing the edge), 0 if never
    "common_relays",    # |out(src) ∩ in(dst)| in the previous window
    "jaccard",          # Jaccard(out(src), in(dst)) in the previous window
    "log_degree_product",  # log(1 + outdeg(src) * indeg(dst)), previous window
    "bias",
)
N_FEATURES = len(FEATURE_NAMES)


@dataclass
class ForecastHyper:
    lr: float = 0.1
    epochs: int = 50
    negatives_per_positive: int = 5
    seed: int = 42
    batch_size: int = 32


@dataclass
class ForecastModel:
    weights: np.ndarray  # shape (6,)
    metadata: dict = field(default_factory=dict)

    def score(self, features: np.ndarray) -> float:
        return _sigmoid(float(np.dot(self.weights, features)))

    def score_many(self, features: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 + np.exp(-(features @ self.weights)))

    def to_json(self, path: str | Path) -> None:
        payload = {"weights": [float(w) for w in self.weights],
                   "feature_names": list(FEATURE_NAMES),
                   "metadata": self.metadata}
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

    @classmethod
    def from_json(cls, path: str | Path) -> "ForecastModel":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        weights = np.asarray(payload["weights"], dtype=float)
        if weights.shape != (N_FEATURES,):
            raise ValueError(f"expected {N_FEATURES} weights, got {weights.shape}")
        return cls(weights=weights, metadata=payload.get("metadata", {}))


@dataclass
class RolloutStep:
    step: int
    edges: list[tuple[str, str, float]]  # (src, dst, probability), sorted


@dataclass
class RolloutTrace:
    start: int
    horizon: int
    theta: float
    steps: list[RolloutStep] = field(default_factory=list)

    def total_edges(self) -> int:
        return sum(len(s.edges) for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "horizon": self.horizon,
            "theta": self.theta,
            "steps": [{"step": s.step,
                       "edges": [{"src": a, "dst": b, "probability": p}
                                 for a, b, p in s.edges]}
                      for s in self.steps],
        }


def extract_edge_features(windows: WindowedGraphs, t: int,
                          edge: tuple[str, str]) -> np.ndarray:
    """Features for predicting ``edge`` in window ``t`` from windows < t only."""
    if t < 1:
        raise ValueError("feature extraction needs a previous window (t >= 1)")
    if t > windows.n_windows:
        raise ValueError(f"window index {t} beyond history of {windows.n_windows}")
    return _features(windows.windows[:t], edge)


def _features(history: list[dict[tuple[str, str], int]],
              edge: tuple[str, str]) -> np.ndarray:
    t = len(history)
    containing = [i for i, win in enumerate(history) if edge in win]
    f1 = len(containing) / t
    f2 = 1.0 / (t - containing[-1]) if containing else 0.0

    prev = history[-1]
    out_src = {d for (s, d) in prev if s == edge[0]}
    in_dst = {s for (s, d) in prev if d == edge[1]}
    f3 = float(len(out_src & in_dst))
    union = out_src | in_dst
    f4 = len(out_src & in_dst) / len(union) if union else 0.0
    f5 = math.log1p(len(out_src) * len(in_dst))
    return np.array([f1, f2, f3, f4, f5, 1.0], dtype=float)


def _nodes_up_to(windows: list[dict[tuple[str, str], int]], t: int) -> list[str]:
    nodes: set[str] = set()
    for win in windows[:t + 1]:
        for (s, d) in win:
            nodes.add(s)
            nodes.add(d)
    return sorted(nodes)


def _sample_absent(present: set[tuple[str, str]], universe: list[str],
                   count: int, rng: random.Random) -> list[tuple[str, str]]:
    absent = [(a, b) for a in universe for b in universe if (a, b) not in present]
    if not absent:
        return []
    return [rng.choice(absent) for _ in range(count)]


def build_training_set(windows: WindowedGraphs, train_range: list[int],
                       negatives_per_positive: int, seed: int,
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrix and labels pooled over the usable training windows.

    Window 0 carries no history and only ever serves as context; it is
    skipped when it appears in the range.
    """
    rng = random.Random(seed)
    rows, labels = [], []
    for t in sorted(train_range):
        if t < 1 or t >= windows.n_windows:
            continue
        present = set(windows.windows[t])
        positives = sorted(present)
        if not positives:
            continue
        universe = _nodes_up_to(windows.windows, t)
        negatives = _sample_absent(present, universe,
                                   negatives_per_positive * len(positives), rng)
        for edge in positives:
            rows.append(_features(windows.windows[:t], edge))
            labels.append(1.0)
        for edge in negatives:
            rows.append(_features(windows.windows[:t], edge))
            labels.append(0.0)
    if not any(labels):
        raise ValueError("degenerate training set: no positive edges in range")
    return np.asarray(rows), np.asarray(labels)


def train_link_predictor(windows: WindowedGraphs, train_range: list[int],
                         hyper: ForecastHyper | None = None) -> ForecastModel:
    """Logistic regression on edge features via seeded mini-batch descent."""
    hyper = hyper or ForecastHyper()
    if len(train_range) < 2:
        raise ValueError("train_range must contain at least 2 windows")
    X, y = build_training_set(windows, train_range,
                              hyper.negatives_per_positive, hyper.seed)
    rng = np.random.default_rng(hyper.seed)
    w = np.zeros(N_FEATURES)
    n = len(y)
    losses = []
    for _ in range(hyper.epochs):
        order = rng.permutation(n)
        for lo in range(0, n, hyper.batch_size):
            batch = order[lo:lo + hyper.batch_size]
            Xb, yb = X[batch], y[batch]
            p = 1.0 / (1.0 + np.exp(-(Xb @ w)))
            w -= hyper.lr * (Xb.T @ (p - yb)) / len(batch)
        losses.append(_log_loss(X, y, w))
    return ForecastModel(
        weights=w,
        metadata={"train_windows": sorted(train_range), "lr": hyper.lr,
                  "epochs": hyper.epochs,
                  "negatives_per_positive": hyper.negatives_per_positive,
                  "seed": hyper.seed, "loss_curve": losses},
    )


def _log_loss(X: np.ndarray, y: np.ndarray, w: np.ndarray) -> float:
    p = np.clip(1.0 / (1.0 + np.exp(-(X @ w))), 1e-12, 1 - 1e-12)
    return float(-np.mean(y * np.log(p) + (1 - y) * np.log(1 - p)))


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def auc_rank(pos_scores: list[float], neg_scores: list[float]) -> float:
    """AUC via the Mann-Whitney rank statistic; ties counted half."""
    if not pos_scores or not neg_scores:
        raise ValueError("AUC needs at least one positive and one negative score")
    scores = np.asarray(list(pos_scores) + list(neg_scores))
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores))
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0  # average rank, 1-based
        i = j + 1
    n_pos, n_neg = len(pos_scores), len(neg_scores)
    rank_sum = float(ranks[:n_pos].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def collect_eval_scores(model: ForecastModel, windows: WindowedGraphs,
                        test_range: list[int], negatives_per_positive: int = 5,
                        seed: int = 7) -> tuple[list[float], list[float]]:
    rng = random.Random(seed)
    pos_scores: list[float] = []
    neg_scores: list[float] = []
    for t in sorted(test_range):
        if t < 1 or t >= windows.n_windows:
            continue
        present = set(windows.windows[t])
        positives = sorted(present)
        universe = _nodes_up_to(windows.windows, t)
        negatives = _sample_absent(present, universe,
                                   negatives_per_positive * len(positives), rng)
        for edge in positives:
            pos_scores.append(model.score(_features(windows.windows[:t], edge)))
        for edge in negatives:
            neg_scores.append(model.score(_features(windows.windows[:t], edge)))
    return pos_scores, neg_scores


def evaluate_auc(model: ForecastModel, windows: WindowedGraphs,
                 test_range: list[int], negatives_per_positive: int = 5,
                 seed: int = 7) -> float:
    """Pooled rank-statistic AUC over the test windows.

    The negative-sampling law matches training but draws from an independent
    seeded stream; overlap with the recorded training range is rejected.
    """
    trained_on = set(model.metadata.get("train_windows", []))
    overlap = trained_on & set(test_range)
    if overlap:
        raise ValueError(f"test range overlaps training windows {sorted(overlap)}")
    pos_scores, neg_scores = collect_eval_scores(
        model, windows, test_range, negatives_per_positive, seed)
    if not pos_scores:
        raise ValueError("no positive edges in test range")
    if not neg_scores:
        raise ValueError("no negative samples in test range")
    return auc_rank(pos_scores, neg_scores)


def forecast_rollout(model: ForecastModel, windows: WindowedGraphs, start: int,
                     horizon: int, theta: float) -> RolloutTrace:
    """Autoregressive multi-step prediction.

    Step k scores every candidate pair (nodes active in the last 3 windows of
    the running history, plus every edge ever seen) and admits those with
    probability >= theta as the predicted window start+k, which then joins
    the history before the next step.
    """
    if start < 1:
        raise ValueError("start must be >= 1")
    if start >= windows.n_windows:
        raise ValueError(f"start window {start} beyond history of {windows.n_windows}")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not 0.0 < theta <= 1.0:
        raise ValueError("theta must be in (0, 1]")

    history = [dict(win) for win in windows.windows[:start + 1]]
    steps: list[RolloutStep] = []
    seen_edges = {edge for win in history for edge in win}
    for k in range(1, horizon + 1):
        active: set[str] = set()
        for win in history[-3:]:
            for (s, d) in win:
                active.add(s)
                active.add(d)
        candidates = {(a, b) for a in active for b in active} | seen_edges
        admitted = []
        for edge in sorted(candidates):
            p = model.score(_features(history, edge))
            if p >= theta:
                admitted.append((edge[0], edge[1], p))
        steps.append(RolloutStep(step=k, edges=admitted))
        predicted = {(s, d): 1 for (s, d, _) in admitted}
        history.append(predicted)
        seen_edges |= set(predicted)
    return RolloutTrace(start=start, horizon=horizon, theta=theta, steps=steps)
