// Typed client for the engine's JSON API. The UI displays server numbers
// verbatim and computes nothing itself.

export interface ArticleOut {
  url: string;
  title: string;
  org_id: string;
  published_at: number;
  source_post_count: number;
}

export interface SusScoreOut {
  value: number;
  percentage: number;
}

export interface NodeOut {
  id: string;
  kind: string;
  annotations: {
    community?: string | null;
    post_ids?: string[];
    susceptibility?: SusScoreOut;
    member_count?: number;
    mean_susceptibility?: SusScoreOut;
    representative_opinion?: { post_id: string; like_count: number; text: string };
  };
}

export interface EdgeOut {
  src: string;
  dst: string;
  weight: number;
  timestamp: number;
}

export interface PathwayOut {
  ok: boolean;
  article_url: string;
  level: 'user' | 'community';
  susceptibility_available: boolean;
  nodes: NodeOut[];
  edges: EdgeOut[];
}

export interface ForecastEdgeOut {
  src: string;
  dst: string;
  probability: number;
}

export interface ForecastOut {
  ok: boolean;
  article: string;
  start_window: number;
  horizon: number;
  theta: number;
  steps: { step: number; window: number; edges: ForecastEdgeOut[] }[];
  provenance: Record<string, unknown>;
}

export interface CommunityOut {
  ok: boolean;
  community_id: string;
  member_count: number;
  mean_susceptibility: SusScoreOut | null;
  top_influence: { user_id: string; influence: number; passivity: number }[];
  top_passivity: { user_id: string; influence: number; passivity: number }[];
  opinions: { article_url: string; post_id: string; like_count: number; text: string }[];
}

export interface UserSusOut {
  ok: boolean;
  user_id: string;
  community: string | null;
  score: SusScoreOut;
}

export interface MentionOut {
  post_id: string;
  event_type: string;
  trigger: { start: number; end: number; text: string };
  arguments: { role: string; start: number; end: number; text: string }[];
}

export interface PostEventsOut {
  ok: boolean;
  post_id: string;
  text: string;
  mentions: MentionOut[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(readonly base: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, 'unreachable', `engine not reachable: ${err}`);
    }
    const body = await response.json().catch(() => null);
    if (!response.ok || !body || body.ok === false) {
      throw new ApiError(
        body?.status ?? response.status,
        body?.code ?? 'internal',
        body?.message ?? `request failed: ${path}`,
      );
    }
    return body as T;
  }

  searchArticles(query: string): Promise<{ ok: boolean; articles: ArticleOut[] }> {
    return this.request(`/api/articles?q=${encodeURIComponent(query)}`);
  }

  pathway(articleUrl: string, level: 'user' | 'community'): Promise<PathwayOut> {
    return this.request(`/api/pathways/${articleUrl}?level=${level}`);
  }

  forecast(article: string, horizon: number, theta: number): Promise<ForecastOut> {
    return this.request('/api/forecast', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ article, horizon, theta }),
    });
  }

  community(id: string): Promise<CommunityOut> {
    return this.request(`/api/communities/${encodeURIComponent(id)}`);
  }

  userSusceptibility(id: string): Promise<UserSusOut> {
    return this.request(`/api/users/${encodeURIComponent(id)}/susceptibility`);
  }

  postEvents(postId: string): Promise<PostEventsOut> {
    return this.request(`/api/posts/${encodeURIComponent(postId)}/events`);
  }
}
