"""Per-organization interaction graphs and Influence-Passivity ranking.

Edge weights follow the classical relay model: a user i who mentioned Q_i of
the organization's article URLs and had S_ij of them reposted by j confers
w_ij = S_ij / Q_i.  Acceptance rates u normalize incoming weight per target,
rejection rates v normalize rejected weight per source, and the two scores
are iterated HITS-style (P from the previous I, then I from the fresh P,
then L1 normalization) until the combined per-node change drops below tol.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus.model import Corpus


@dataclass
class InteractionGraph:
    org_id: str
    nodes: list[str] = field(default_factory=list)
    # S[(i, j)] = number of distinct org URLs mentioned by i and reposted by j
    S: dict[tuple[str, str], int] = field(default_factory=dict)
    # Q[i] = number of distinct org URLs mentioned in i's source posts
    Q: dict[str, int] = field(default_factory=dict)

    def weight(self, i: str, j: str) -> float:
        return self.S[(i, j)] / self.Q[i]

    def edges(self) -> list[tuple[str, str]]:
        return sorted(self.S)


@dataclass
class IPScores:
    influence: dict[str, float]
    passivity: dict[str, float]
    iterations_used: int
    converged: bool


@dataclass
class CommunityAssignment:
    by_user: dict[str, str] = field(default_factory=dict)
    members: dict[str, list[str]] = field(default_factory=dict)

    @classmethod
    def from_map(cls, by_user: dict[str, str]) -> "CommunityAssignment":
        members: dict[str, list[str]] = {}
        for uid in sorted(by_user):
            members.setdefault(by_user[uid], []).append(uid)
        return cls(by_user=dict(by_user), members=members)


def build_interaction_graph(corpus: Corpus, org_id: str) -> InteractionGraph:
    """Project the repost relation for one organization into a weighted digraph.

    Nodes are users who authored a source post with one of the org's URLs or
    who reposted/replied anywhere in such a post's pathway.  An edge i -> j
    exists when j directly reposted at least one of i's source posts; S counts
    distinct URLs, so repeated reposts of the same story do not add weight.
    """
    if org_id not in corpus.organizations:
        raise KeyError(f"unknown organization {org_id!r}")
    org_urls = {url for url, art in corpus.articles.items() if art.org_id == org_id}

    mentioned: dict[str, set[str]] = {}  # user -> distinct org URLs in their source posts
    reposted: dict[tuple[str, str], set[str]] = {}  # (i, j) -> URLs of i reposted by j
    nodes: set[str] = set()

    for pid in sorted(corpus.posts):
        post = corpus.posts[pid]
        if post.kind == "source" and post.article_url in org_urls:
            mentioned.setdefault(post.author_id, set()).add(post.article_url)
            nodes.add(post.author_id)
        elif post.kind in ("repost", "reply"):
            root = corpus.root_of(pid)
            if root.article_url in org_urls:
                nodes.add(post.author_id)
                if post.kind == "repost":
                    parent = corpus.posts[post.parent_id]
                    if (parent.kind == "source" and parent.article_url in org_urls
                            and parent.author_id != post.author_id):
                        key = (parent.author_id, post.author_id)
                        reposted.setdefault(key, set()).add(parent.article_url)

    graph = InteractionGraph(org_id=org_id)
    graph.nodes = sorted(nodes)
    graph.Q = {i: len(urls) for i, urls in mentioned.items()}
    graph.S = {edge: len(urls) for edge, urls in sorted(reposted.items())}
    return graph


def acceptance_rejection_rates(
    graph: InteractionGraph,
) -> dict[tuple[str, str], tuple[float, float]]:
    """Per-edge (u, v) rates; 0/0 denominators yield 0 by convention."""
    in_weight: dict[str, float] = {}
    out_rejected: dict[str, float] = {}
    weights = {}
    for (i, j) in graph.S:
        w = graph.weight(i, j)
        weights[(i, j)] = w
        in_weight[j] = in_weight.get(j, 0.0) + w
        out_rejected[i] = out_rejected.get(i, 0.0) + (1.0 - w)

    rates = {}
    for (i, j), w in weights.items():
        u = w / in_weight[j] if in_weight[j] > 0 else 0.0
        v = (1.0 - w) / out_rejected[i] if out_rejected[i] > 0 else 0.0
        rates[(i, j)] = (u, v)
    return rates


def influence_passivity(graph: InteractionGraph, max_iter: int = 1000,
                        tol: float = 1e-8) -> IPScores:
    """Iterate the I/P fixed point to convergence.

    Per iteration: P_i = sum over in-edges (j, i) of v_ji * I_j using the
    previous I, then I_i = sum over out-edges (i, j) of u_ij * P_j using the
    fresh P, then each vector is L1-normalized (skipped when its sum is 0).
    Stops when max_i(|dI_i| + |dP_i|) < tol.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    nodes = graph.nodes
    if not nodes:
        return IPScores(influence={}, passivity={}, iterations_used=0, converged=True)

    rates = acceptance_rejection_rates(graph)
    out_edges: dict[str, list[tuple[str, float]]] = {n: [] for n in nodes}  # i -> (j, u_ij)
    in_edges: dict[str, list[tuple[str, float]]] = {n: [] for n in nodes}  # i -> (j, v_ji)
    for (i, j), (u, v) in rates.items():
        out_edges[i].append((j, u))
        in_edges[j].append((i, v))

    influence = {n: 1.0 for n in nodes}
    passivity = {n: 1.0 for n in nodes}
    converged = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        new_p = {n: sum(v * influence[j] for j, v in in_edges[n]) for n in nodes}
        new_i = {n: sum(u * new_p[j] for j, u in out_edges[n]) for n in nodes}
        _l1_normalize(new_p)
        _l1_normalize(new_i)
        delta = max(abs(new_i[n] - influence[n]) + abs(new_p[n] - passivity[n])
                    for n in nodes)
        influence, passivity = new_i, new_p
        if delta < tol:
            converged = True
            break
    return IPScores(influence=influence, passivity=passivity,
                    iterations_used=iterations, converged=converged)


def _l1_normalize(vec: dict[str, float]) -> None:
    total = sum(vec.values())
    if total > 0:
        for key in vec:
            vec[key] /= total


def assign_communities(corpus: Corpus, org_ids: list[str]) -> CommunityAssignment:
    """Assign each engaged user to the org with their highest engagement count.

    Engagement = authoring any post whose pathway root carries one of the
    org's article URLs.  Ties break toward the ascending org id; users with
    no engagement stay unassigned.
    """
    if not org_ids:
        raise ValueError("org_ids must be nonempty")
    org_of_url = {url: art.org_id for url, art in corpus.articles.items()
                  if art.org_id in set(org_ids)}

    counts: dict[str, dict[str, int]] = {}
    for pid in sorted(corpus.posts):
        post = corpus.posts[pid]
        root = corpus.root_of(pid)
        org = org_of_url.get(root.article_url or "")
        if org is None:
            continue
        per_user = counts.setdefault(post.author_id, {})
        per_user[org] = per_user.get(org, 0) + 1

    by_user = {}
    for uid in sorted(counts):
        per_user = counts[uid]
        best = min(per_user, key=lambda org: (-per_user[org], org))
        by_user[uid] = best
    return CommunityAssignment.from_map(by_user)
