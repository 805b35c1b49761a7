// Shareable view state: everything needed to reproduce a view lives in the
// URL hash, so any state is a deep link.

export interface ViewState {
  articles: string[];
  level: 'user' | 'community';
  selectedNode: string | null;
  horizon: number;
  theta: number;
  susceptibilityColoring: boolean;
  showForecast: boolean;
}

export const DEFAULT_STATE: ViewState = {
  articles: [],
  level: 'user',
  selectedNode: null,
  horizon: 3,
  theta: 0.5,
  susceptibilityColoring: true,
  showForecast: false,
};

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.articles.length) params.set('articles', state.articles.join(','));
  params.set('level', state.level);
  if (state.selectedNode) params.set('node', state.selectedNode);
  params.set('horizon', String(state.horizon));
  params.set('theta', String(state.theta));
  params.set('sus', state.susceptibilityColoring ? '1' : '0');
  params.set('forecast', state.showForecast ? '1' : '0');
  return params.toString();
}

export function decodeState(encoded: string): ViewState {
  const params = new URLSearchParams(encoded);
  const articles = (params.get('articles') ?? '')
    .split(',')
    .filter((a) => a.length > 0);
  const level = params.get('level') === 'community' ? 'community' : 'user';
  const horizon = clampInt(params.get('horizon'), 1, 20, DEFAULT_STATE.horizon);
  const theta = clampFloat(params.get('theta'), 0.01, 0.99, DEFAULT_STATE.theta);
  return {
    articles,
    level,
    selectedNode: params.get('node'),
    horizon,
    theta,
    susceptibilityColoring: params.get('sus') !== '0',
    showForecast: params.get('forecast') === '1',
  };
}

function clampInt(raw: string | null, lo: number, hi: number, fallback: number): number {
  const value = raw === null ? NaN : parseInt(raw, 10);
  if (Number.isNaN(value)) return fallback;
  return Math.min(hi, Math.max(lo, value));
}

function clampFloat(raw: string | null, lo: number, hi: number, fallback: number): number {
  const value = raw === null ? NaN : parseFloat(raw);
  if (Number.isNaN(value)) return fallback;
  return Math.min(hi, Math.max(lo, value));
}
