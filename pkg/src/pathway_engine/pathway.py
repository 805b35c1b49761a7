"""Information pathway graphs: per-article user forests, community aggregation,
and time-windowed community graphs for forecasting."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .corpus.model import Corpus
from .influence import CommunityAssignment

UNASSIGNED = "unassigned"


@dataclass
class PathwayNode:
    id: str
    kind: str  # "user" | "community"


@dataclass
class PathwayEdge:
    src: str
    dst: str
    weight: int
    timestamp: int


@dataclass
class PathwayGraph:
    article_url: str
    level: str  # "user" | "community"
    nodes: list[PathwayNode] = field(default_factory=list)
    edges: list[PathwayEdge] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "article_url": self.article_url,
            "level": self.level,
            "nodes": [{"id": n.id, "kind": n.kind} for n in self.nodes],
            "edges": [{"src": e.src, "dst": e.dst, "weight": e.weight,
                       "timestamp": e.timestamp} for e in self.edges],
        }


@dataclass
class WindowedGraphs:
    """Consecutive, non-overlapping windows over the corpus time span.

    ``windows[i]`` maps a community edge (src, dst) to its interaction count
    inside window i; the child post's timestamp decides the window.
    """

    window_length: int
    windows: list[dict[tuple[str, str], int]] = field(default_factory=list)

    @property
    def n_windows(self) -> int:
        return len(self.windows)

    def to_dict(self) -> dict:
        return {
            "window_length": self.window_length,
            "windows": [
                {"index": i,
                 "edges": [{"src": s, "dst": d, "weight": w}
                           for (s, d), w in sorted(win.items())]}
                for i, win in enumerate(self.windows)
            ],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "WindowedGraphs":
        windows: list[dict[tuple[str, str], int]] = []
        for win in payload["windows"]:
            windows.append({(e["src"], e["dst"]): int(e["weight"])
                            for e in win["edges"]})
        return cls(window_length=int(payload["window_length"]), windows=windows)


def build_user_pathway(corpus: Corpus, article_url: str) -> PathwayGraph:
    """User-level propagation forest for one article.

    Nodes are the authors of all posts reachable from the article's source
    posts via parent links; each non-root post contributes one edge
    (parent author -> child author) stamped with the child's timestamp.
    """
    if article_url not in corpus.articles:
        raise KeyError(f"unknown article url {article_url!r}")

    children: dict[str, list[str]] = {}
    for pid in sorted(corpus.posts):
        parent_id = corpus.posts[pid].parent_id
        if parent_id is not None:
            children.setdefault(parent_id, []).append(pid)

    roots = corpus.url_index.get(article_url, [])
    first_seen: dict[str, int] = {}
    edges: list[PathwayEdge] = []
    queue = deque(roots)
    while queue:
        pid = queue.popleft()
        post = corpus.posts[pid]
        first_seen.setdefault(post.author_id, post.timestamp)
        first_seen[post.author_id] = min(first_seen[post.author_id], post.timestamp)
        if post.parent_id is not None:
            parent = corpus.posts[post.parent_id]
            edges.append(PathwayEdge(src=parent.author_id, dst=post.author_id,
                                     weight=1, timestamp=post.timestamp))
        queue.extend(children.get(pid, []))

    nodes = [PathwayNode(id=uid, kind="user")
             for uid in sorted(first_seen, key=lambda u: (first_seen[u], u))]
    edges.sort(key=lambda e: (e.timestamp, e.src, e.dst))
    return PathwayGraph(article_url=article_url, level="user", nodes=nodes, edges=edges)


def aggregate_to_community(pathway: PathwayGraph,
                           assignment: CommunityAssignment) -> PathwayGraph:
    """Contract a user pathway onto communities.

    Parallel edges collapse into one weighted edge keeping the earliest
    timestamp; users without an assignment map to the reserved community
    ``unassigned``.  Intra-community spread becomes a self-loop.
    """
    if pathway.level != "user":
        raise ValueError("aggregate_to_community expects a user-level pathway")
    comm = lambda uid: assignment.by_user.get(uid, UNASSIGNED)

    collapsed: dict[tuple[str, str], PathwayEdge] = {}
    for edge in pathway.edges:
        key = (comm(edge.src), comm(edge.dst))
        found = collapsed.get(key)
        if found is None:
            collapsed[key] = PathwayEdge(src=key[0], dst=key[1],
                                         weight=edge.weight, timestamp=edge.timestamp)
        else:
            found.weight += edge.weight
            found.timestamp = min(found.timestamp, edge.timestamp)

    order: dict[str, int] = {}  # community -> rank of its first user node
    for node in pathway.nodes:
        order.setdefault(comm(node.id), len(order))
    nodes = [PathwayNode(id=cid, kind="community")
             for cid in sorted(order, key=order.get)]
    edges = sorted(collapsed.values(), key=lambda e: (e.timestamp, e.src, e.dst))
    return PathwayGraph(article_url=pathway.article_url, level="community",
                        nodes=nodes, edges=edges)


def window_pathways(corpus: Corpus, assignment: CommunityAssignment,
                    window_length: int) -> WindowedGraphs:
    """Bucket every article's community-level interactions into time windows.

    Windows are anchored at the corpus minimum timestamp and cover the whole
    span; per-window weights are summed across articles.
    """
    if window_length <= 0:
        raise ValueError("window_length must be > 0")
    t0 = corpus.min_timestamp()
    if t0 is None:
        return WindowedGraphs(window_length=window_length, windows=[])
    t_max = corpus.max_timestamp()
    n_windows = (t_max - t0) // window_length + 1
    windows: list[dict[tuple[str, str], int]] = [{} for _ in range(n_windows)]

    comm = lambda uid: assignment.by_user.get(uid, UNASSIGNED)
    for pid in sorted(corpus.posts):
        post = corpus.posts[pid]
        if post.parent_id is None:
            continue
        parent = corpus.posts[post.parent_id]
        idx = (post.timestamp - t0) // window_length
        key = (comm(parent.author_id), comm(post.author_id))
        windows[idx][key] = windows[idx].get(key, 0) + 1
    return WindowedGraphs(window_length=window_length, windows=windows)
