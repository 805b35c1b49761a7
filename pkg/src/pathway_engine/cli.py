"""Command-line entry point.

Batch subcommands operate on local files through the library; ``serve``
starts the HTTP service.  Run ``pathway-engine <command> --help`` for the
per-command options.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import SynthConfig, generate_synthetic, load_corpus, save_corpus
from .events import EventOntology, default_ontology, extract_events
from .forecast import (ForecastHyper, ForecastModel, evaluate_auc,
                       forecast_rollout, train_link_predictor)
from .influence import (CommunityAssignment, assign_communities,
                        build_interaction_graph, influence_passivity)
from .pathway import (WindowedGraphs, aggregate_to_community,
                      build_user_pathway, window_pathways)
from .susceptibility import (HashingEmbedder, SusHyper, SusceptibilityModel,
                             extract_repost_pairs, score_user, sus_score,
                             train_susceptibility)


def _parse_range(spec: str) -> list[int]:
    """Window ranges as 'a..b' (inclusive) or comma-separated indices."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in spec.split(",") if part]


def _load_assignment(path: str) -> CommunityAssignment:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return CommunityAssignment.from_map(payload["assignment"])


def cmd_synth(args) -> int:
    config = SynthConfig(n_orgs=args.n_orgs, n_users=args.n_users,
                         n_articles=args.n_articles,
                         cascade_depth=args.cascade_depth,
                         repost_prob=args.repost_prob, seed=args.seed,
                         true_susceptibility_spread=args.spread)
    corpus, truth = generate_synthetic(config)
    save_corpus(corpus, args.out)
    if args.truth_out:
        payload = {
            "community": truth.community,
            "susceptibility": truth.susceptibility,
            "cascades": {url: [list(edge) for edge in edges]
                         for url, edges in truth.cascades.items()},
        }
        Path(args.truth_out).write_text(json.dumps(payload, indent=2) + "\n",
                                        encoding="utf-8")
    print(f"wrote {len(corpus.posts)} posts, {len(corpus.users)} users, "
          f"{len(corpus.articles)} articles to {args.out}")
    return 0


def cmd_communities(args) -> int:
    corpus = load_corpus(args.corpus)
    org_ids = []
    for chunk in args.orgs:
        org_ids.extend(part for part in chunk.split(",") if part)
    assignment = assign_communities(corpus, org_ids)
    out: dict = {}
    for org_id in org_ids:
        graph = build_interaction_graph(corpus, org_id)
        scores = influence_passivity(graph, max_iter=args.max_iter, tol=args.tol)
        out[org_id] = {uid: {"influence": scores.influence[uid],
                             "passivity": scores.passivity[uid]}
                       for uid in sorted(scores.influence)}
    out["assignment"] = assignment.by_user
    Path(args.out).write_text(json.dumps(out, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {args.out}: {len(assignment.by_user)} users assigned "
          f"across {len(org_ids)} orgs")
    return 0


def cmd_pathways(args) -> int:
    corpus = load_corpus(args.corpus)
    graph = build_user_pathway(corpus, args.url)
    if args.level == "community":
        if not args.assignment:
            print("error: --assignment is required for community level",
                  file=sys.stderr)
            return 2
        graph = aggregate_to_community(graph, _load_assignment(args.assignment))
    Path(args.out).write_text(json.dumps(graph.to_dict(), indent=2) + "\n",
                              encoding="utf-8")
    print(f"wrote {args.out}: {len(graph.nodes)} nodes, {len(graph.edges)} edges")
    return 0


def cmd_windows(args) -> int:
    corpus = load_corpus(args.corpus)
    assignment = (_load_assignment(args.assignment) if args.assignment
                  else assign_communities(corpus, sorted(corpus.organizations)))
    windows = window_pathways(corpus, assignment, args.window_length)
    Path(args.out).write_text(json.dumps(windows.to_dict(), indent=2) + "\n",
                              encoding="utf-8")
    print(f"wrote {args.out}: {windows.n_windows} windows")
    return 0


def _read_windows(path: str) -> WindowedGraphs:
    return WindowedGraphs.from_dict(
        json.loads(Path(path).read_text(encoding="utf-8")))


def cmd_train_forecast(args) -> int:
    windows = _read_windows(args.windows)
    hyper = ForecastHyper(lr=args.lr, epochs=args.epochs,
                          negatives_per_positive=args.negatives, seed=args.seed)
    model = train_link_predictor(windows, _parse_range(args.train), hyper)
    model.to_json(args.out)
    print(f"wrote {args.out}; final log-loss "
          f"{model.metadata['loss_curve'][-1]:.4f}")
    return 0


def cmd_eval_forecast(args) -> int:
    windows = _read_windows(args.windows)
    model = ForecastModel.from_json(args.model)
    auc = evaluate_auc(model, windows, _parse_range(args.test),
                       negatives_per_positive=args.negatives, seed=args.seed)
    print(f"{auc:.4f}")
    return 0


def cmd_forecast(args) -> int:
    windows = _read_windows(args.windows)
    model = ForecastModel.from_json(args.model)
    trace = forecast_rollout(model, windows, start=args.start,
                             horizon=args.horizon, theta=args.theta)
    Path(args.out).write_text(json.dumps(trace.to_dict(), indent=2) + "\n",
                              encoding="utf-8")
    print(f"wrote {args.out}: {trace.total_edges()} predicted edges "
          f"over {args.horizon} steps")
    return 0


def cmd_train_sus(args) -> int:
    corpus = load_corpus(args.corpus)
    if args.pairs:
        positives = []
        with open(args.pairs, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    record = json.loads(line)
                    positives.append((record["user_id"], record["post_id"]))
    else:
        positives = extract_repost_pairs(corpus)
    hyper = SusHyper(lr=args.lr, epochs=args.epochs,
                     negatives_per_positive=args.negatives, seed=args.seed,
                     hidden=args.hidden, dim=args.dim)
    model = train_susceptibility(corpus, positives, hyper)
    model.to_json(args.out)
    print(f"wrote {args.out}; trained on {len(positives)} positives, "
          f"final loss {model.metadata['loss_curve'][-1]:.4f}")
    return 0


def cmd_score_sus(args) -> int:
    corpus = load_corpus(args.corpus)
    model = SusceptibilityModel.from_json(args.model)
    embedder = HashingEmbedder(model.dim)
    if args.content:
        post = corpus.posts.get(args.content)
        if post is None:
            print(f"error: unknown post {args.content!r}", file=sys.stderr)
            return 2
        score = sus_score(model, embedder.embed_user(corpus, args.user),
                          embedder.embed_text(post.text))
    else:
        score = score_user(model, corpus, args.user, embedder=embedder)
    print(f"{score.value:+.4f} ({score.percentage:+.1f}%)")
    return 0


def cmd_extract_events(args) -> int:
    corpus = load_corpus(args.corpus)
    ontology = (EventOntology.from_json(args.ontology) if args.ontology
                else default_ontology())
    count = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for pid in sorted(corpus.posts):
            for mention in extract_events(ontology, corpus.posts[pid].text):
                mention.post_id = pid
                fh.write(json.dumps(mention.to_dict(), sort_keys=True) + "\n")
                count += 1
    print(f"wrote {count} mentions to {args.out}")
    return 0


def resolve_port(cli_port: int) -> int:
    """PATHWAY_ENGINE_PORT wins over --port when set."""
    return int(os.environ.get("PATHWAY_ENGINE_PORT", cli_port))


def cmd_serve(args) -> int:
    import uvicorn

    from .service import EngineState, create_app

    state = EngineState.load(
        args.corpus, forecast_model_path=args.forecast_model,
        sus_model_path=args.sus_model, ontology_path=args.ontology,
        window_length=args.window_length)
    app = create_app(state, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=resolve_port(args.port),
                log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathway-engine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-orgs", type=int, default=3)
    p.add_argument("--n-users", type=int, default=90)
    p.add_argument("--n-articles", type=int, default=45)
    p.add_argument("--cascade-depth", type=int, default=3)
    p.add_argument("--repost-prob", type=float, default=0.4)
    p.add_argument("--spread", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.add_argument("--truth-out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("communities",
                       help="influence/passivity scores and community assignment")
    p.add_argument("--corpus", required=True)
    p.add_argument("--orgs", nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("pathways", help="per-article pathway graph JSON")
    p.add_argument("--corpus", required=True)
    p.add_argument("--url", required=True)
    p.add_argument("--level", choices=("user", "community"), default="user")
    p.add_argument("--assignment")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pathways)

    p = sub.add_parser("windows", help="windowed community graphs JSON")
    p.add_argument("--corpus", required=True)
    p.add_argument("--assignment")
    p.add_argument("--window-length", type=int, default=86400)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("train-forecast", help="train the temporal link predictor")
    p.add_argument("--windows", required=True)
    p.add_argument("--train", required=True, help="window range, e.g. 0..9")
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_forecast)

    p = sub.add_parser("eval-forecast", help="print link-prediction AUC")
    p.add_argument("--windows", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True, help="window range, e.g. 10..12")
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_eval_forecast)

    p = sub.add_parser("forecast", help="autoregressive rollout trace JSON")
    p.add_argument("--windows", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--horizon", type=int, default=3)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("train-sus", help="train the susceptibility model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--pairs", help="JSONL of {user_id, post_id} positives; "
                                   "defaults to the corpus repost pairs")
    p.add_argument("--lr", type=float, default=0.5)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--negatives", type=int, default=1)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--hidden", type=int, default=32)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_sus)

    p = sub.add_parser("score-sus", help="print a susceptibility score")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--user", required=True)
    p.add_argument("--content", help="post id; omit for the user's overall score")
    p.set_defaults(func=cmd_score_sus)

    p = sub.add_parser("extract-events", help="event mentions JSONL for all posts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--ontology")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract_events)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--forecast-model")
    p.add_argument("--sus-model")
    p.add_argument("--ontology")
    p.add_argument("--window-length", type=int, default=86400)
    p.add_argument("--static", help="directory with the UI bundle")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
