"""FastAPI application over a read-only EngineState."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..corpus import search_articles
from .engine import EngineError, EngineState, bad_request, not_found
from .schemas import (ArticleOut, ArticlesResponse, CommunityResponse, EdgeOut,
                      ErrorResponse, EventMentionOut, ForecastEdgeOut,
                      ForecastRequest, ForecastResponse, ForecastStepOut,
                      MemberScoreOut, NodeOut, OpinionOut, PathwayResponse,
                      PostEventsResponse, SusScoreOut,
                      UserSusceptibilityResponse)


def create_app(state: EngineState, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="pathway-engine", docs_url="/docs")

    @app.exception_handler(EngineError)
    async def engine_error_handler(_: Request, exc: EngineError):
        body = ErrorResponse(status=exc.status, code=exc.code, message=exc.message)
        return JSONResponse(status_code=exc.status, content=body.model_dump())

    @app.get("/api/articles", response_model=ArticlesResponse)
    def articles(q: str = ""):
        keywords = [w for w in q.split() if w]
        if not keywords:
            raise bad_request("query parameter q must be nonempty")
        hits = search_articles(state.corpus, keywords)
        return ArticlesResponse(articles=[
            ArticleOut(url=a.url, title=a.title, org_id=a.org_id,
                       published_at=a.published_at,
                       source_post_count=len(state.corpus.url_index.get(a.url, [])))
            for a in hits])

    @app.get("/api/pathways/{article_url:path}", response_model=PathwayResponse)
    def pathways(article_url: str, level: str = "user"):
        if level not in ("user", "community"):
            raise bad_request(f"level must be 'user' or 'community', got {level!r}")
        if level == "user":
            graph = state.user_pathway(article_url)
            posts_of = state.pathway_posts(article_url)
            nodes = [NodeOut(id=n.id, kind=n.kind,
                             annotations=_user_annotations(
                                 state, n.id, posts_of.get(n.id, [])))
                     for n in graph.nodes]
        else:
            graph = state.community_pathway(article_url)
            nodes = [NodeOut(id=n.id, kind=n.kind,
                             annotations=_community_annotations(state, article_url, n.id))
                     for n in graph.nodes]
        return PathwayResponse(
            article_url=graph.article_url, level=graph.level,
            susceptibility_available=state.susceptibility_available,
            nodes=nodes,
            edges=[EdgeOut(src=e.src, dst=e.dst, weight=e.weight,
                           timestamp=e.timestamp) for e in graph.edges])

    @app.post("/api/forecast", response_model=ForecastResponse)
    def forecast(request: ForecastRequest):
        if not 1 <= request.horizon <= 20:
            raise bad_request("horizon must be between 1 and 20")
        if not 0.0 < request.theta < 1.0:
            raise bad_request("theta must be in (0, 1)")
        trace, start = state.article_rollout(request.article, request.horizon,
                                             request.theta)
        model = state.forecast_model
        return ForecastResponse(
            article=request.article, start_window=start,
            horizon=trace.horizon, theta=trace.theta,
            steps=[ForecastStepOut(
                step=s.step, window=start + s.step,
                edges=[ForecastEdgeOut(src=a, dst=b, probability=round(p, 6))
                       for a, b, p in s.edges])
                   for s in trace.steps],
            provenance={
                "model_seed": model.metadata.get("seed"),
                "train_windows": model.metadata.get("train_windows"),
                "window_length": state.window_length,
            })

    @app.get("/api/users/{user_id}/susceptibility",
             response_model=UserSusceptibilityResponse)
    def user_susceptibility(user_id: str):
        score = state.user_score(user_id)
        return UserSusceptibilityResponse(
            user_id=user_id,
            community=state.assignment.by_user.get(user_id),
            score=SusScoreOut(value=score.value,
                              percentage=round(score.percentage, 1)))

    @app.get("/api/communities/{community_id}", response_model=CommunityResponse)
    def community(community_id: str):
        members = state.assignment.members.get(community_id)
        if members is None:
            raise not_found(f"unknown community {community_id!r}")
        mean = None
        if state.susceptibility_available:
            score = state.community_scores().get(community_id)
            if score is not None:
                mean = SusScoreOut(value=score.value,
                                   percentage=round(score.percentage, 1))
        scores = state.ip_scores.get(community_id)
        top_influence, top_passivity = [], []
        if scores is not None:
            top_influence = _top_members(scores.influence, scores.passivity)
            top_passivity = _top_members(scores.passivity, scores.influence,
                                         swap=True)
        opinions = []
        for url in sorted(state.corpus.articles):
            opinion = state.opinion(url, community_id)
            if opinion is not None:
                opinions.append(OpinionOut(
                    article_url=url, post_id=opinion.post_id,
                    like_count=opinion.like_count, text=opinion.text))
        return CommunityResponse(
            community_id=community_id, member_count=len(members),
            mean_susceptibility=mean, top_influence=top_influence,
            top_passivity=top_passivity, opinions=opinions)

    @app.get("/api/posts/{post_id}/events", response_model=PostEventsResponse)
    def post_events(post_id: str):
        mentions = state.post_events(post_id)
        return PostEventsResponse(
            post_id=post_id, text=state.corpus.posts[post_id].text,
            mentions=[EventMentionOut(**m) for m in mentions])

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="static")

    return app


def _user_annotations(state: EngineState, user_id: str,
                      post_ids: list[str]) -> dict:
    annotations: dict = {
        "community": state.assignment.by_user.get(user_id),
        "post_ids": post_ids,
    }
    if state.susceptibility_available:
        score = state.user_score(user_id)
        annotations["susceptibility"] = {
            "value": score.value, "percentage": round(score.percentage, 1)}
    return annotations


def _community_annotations(state: EngineState, article_url: str,
                           community_id: str) -> dict:
    annotations: dict = {
        "member_count": len(state.assignment.members.get(community_id, [])),
    }
    if state.susceptibility_available:
        score = state.community_scores().get(community_id)
        if score is not None:
            annotations["mean_susceptibility"] = {
                "value": score.value, "percentage": round(score.percentage, 1)}
    opinion = state.opinion(article_url, community_id)
    if opinion is not None:
        annotations["representative_opinion"] = {
            "post_id": opinion.post_id, "like_count": opinion.like_count,
            "text": opinion.text}
    return annotations


def _top_members(primary: dict[str, float], secondary: dict[str, float],
                 swap: bool = False, limit: int = 10) -> list[MemberScoreOut]:
    ranked = sorted(primary, key=lambda uid: (-primary[uid], uid))[:limit]
    out = []
    for uid in ranked:
        influence = secondary[uid] if swap else primary[uid]
        passivity = primary[uid] if swap else secondary[uid]
        out.append(MemberScoreOut(user_id=uid, influence=influence,
                                  passivity=passivity))
    return out
