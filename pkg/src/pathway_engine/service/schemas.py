"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ArticleOut(BaseModel):
    url: str
    title: str
    org_id: str
    published_at: int
    source_post_count: int


class ArticlesResponse(BaseModel):
    ok: bool = True
    articles: list[ArticleOut]


class NodeOut(BaseModel):
    id: str
    kind: str
    annotations: dict = Field(default_factory=dict)


class EdgeOut(BaseModel):
    src: str
    dst: str
    weight: int
    timestamp: int


class PathwayResponse(BaseModel):
    ok: bool = True
    article_url: str
    level: str
    susceptibility_available: bool
    nodes: list[NodeOut]
    edges: list[EdgeOut]


class ForecastRequest(BaseModel):
    article: str
    horizon: int = 3
    theta: float = 0.5


class ForecastEdgeOut(BaseModel):
    src: str
    dst: str
    probability: float


class ForecastStepOut(BaseModel):
    step: int
    window: int
    edges: list[ForecastEdgeOut]


class ForecastResponse(BaseModel):
    ok: bool = True
    article: str
    start_window: int
    horizon: int
    theta: float
    steps: list[ForecastStepOut]
    provenance: dict


class SusScoreOut(BaseModel):
    value: float
    percentage: float


class UserSusceptibilityResponse(BaseModel):
    ok: bool = True
    user_id: str
    community: str | None
    score: SusScoreOut


class MemberScoreOut(BaseModel):
    user_id: str
    influence: float
    passivity: float


class OpinionOut(BaseModel):
    article_url: str
    post_id: str
    like_count: int
    text: str


class CommunityResponse(BaseModel):
    ok: bool = True
    community_id: str
    member_count: int
    mean_susceptibility: SusScoreOut | None
    top_influence: list[MemberScoreOut]
    top_passivity: list[MemberScoreOut]
    opinions: list[OpinionOut]


class SpanOut(BaseModel):
    start: int
    end: int
    text: str


class ArgumentOut(BaseModel):
    role: str
    start: int
    end: int
    text: str


class EventMentionOut(BaseModel):
    post_id: str
    event_type: str
    trigger: SpanOut
    arguments: list[ArgumentOut]


class PostEventsResponse(BaseModel):
    ok: bool = True
    post_id: str
    text: str
    mentions: list[EventMentionOut]


class ErrorResponse(BaseModel):
    ok: bool = False
    status: int
    code: str
    message: str
