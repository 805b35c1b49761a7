// Application wiring: search, article selection, pathway rendering, level
// toggle, forecast overlay, detail and event panels. Pure client of /api —
// every displayed number comes from the server.

import { ApiClient, ApiError } from './api.js';
import type { ForecastOut, NodeOut, PathwayOut } from './api.js';
import { renderForecastOverlay, renderGraph } from './graphview.js';
import { renderCommunityDetail, renderEventPanel, renderUserDetail } from './panels.js';
import { DEFAULT_STATE, decodeState, encodeState, type ViewState } from './state.js';

export class App {
  state: ViewState = { ...DEFAULT_STATE };
  private pathway: PathwayOut | null = null;
  private svg: SVGSVGElement | null = null;
  private fetchSeq = 0; // stale-response discard

  constructor(
    readonly api: ApiClient,
    readonly root: HTMLElement,
    private readonly syncUrl: boolean = true,
  ) {}

  mount(): void {
    this.root.innerHTML = `
      <header>
        <h1>information pathways</h1>
        <form id="search-form">
          <input id="search-box" type="search" placeholder="search articles by keyword" />
          <button type="submit">search</button>
        </form>
        <div id="error-banner" class="banner hidden"></div>
      </header>
      <main>
        <aside id="article-list"></aside>
        <section id="graph-section">
          <div id="controls">
            <label><input type="radio" name="level" value="user" checked /> users</label>
            <label><input type="radio" name="level" value="community" /> communities</label>
            <label id="forecast-controls" class="hidden">
              <input type="checkbox" id="forecast-toggle" /> forecast
              horizon <input type="number" id="horizon" min="1" max="20" value="3" />
              θ <input type="range" id="theta" min="0.05" max="0.95" step="0.05" value="0.5" />
              <span id="theta-value">0.50</span>
            </label>
            <span id="overlay-count" class="hidden"></span>
          </div>
          <div id="graph"></div>
          <div id="legend">
            <span class="legend-label">susceptibility</span>
            <span class="swatch" data-extreme="negative"></span> −100%
            <span class="legend-gradient"></span>
            <span class="swatch" data-extreme="positive"></span> +100%
          </div>
        </section>
        <aside id="side-panels">
          <div id="detail-panel"><p class="empty-state">select a node</p></div>
          <div id="event-panel"><p class="empty-state">select a post via a user node</p></div>
        </aside>
      </main>`;
    this.bind();
    if (this.syncUrl && window.location.hash.length > 1) {
      this.state = decodeState(window.location.hash.slice(1));
      this.applyStateToControls();
      if (this.state.articles.length) void this.loadPathway();
    }
  }

  private $(selector: string): HTMLElement {
    return this.root.querySelector(selector) as HTMLElement;
  }

  private bind(): void {
    this.$('#search-form').addEventListener('submit', (event) => {
      event.preventDefault();
      const query = (this.$('#search-box') as HTMLInputElement).value.trim();
      if (query) void this.search(query);
    });
    for (const radio of this.root.querySelectorAll<HTMLInputElement>('input[name=level]')) {
      radio.addEventListener('change', () => {
        this.state.level = radio.value as 'user' | 'community';
        this.state.showForecast = false;
        (this.$('#forecast-toggle') as HTMLInputElement).checked = false;
        void this.loadPathway(); // re-fetch, selection preserved
      });
    }
    this.$('#forecast-toggle').addEventListener('change', () => {
      this.state.showForecast = (this.$('#forecast-toggle') as HTMLInputElement).checked;
      void this.refreshForecast();
    });
    this.$('#horizon').addEventListener('change', () => {
      this.state.horizon = parseInt((this.$('#horizon') as HTMLInputElement).value, 10);
      void this.refreshForecast();
    });
    this.$('#theta').addEventListener('input', () => {
      this.state.theta = parseFloat((this.$('#theta') as HTMLInputElement).value);
      this.$('#theta-value').textContent = this.state.theta.toFixed(2);
      void this.refreshForecast();
    });
  }

  private applyStateToControls(): void {
    const level = this.root.querySelector<HTMLInputElement>(
      `input[name=level][value=${this.state.level}]`,
    );
    if (level) level.checked = true;
    (this.$('#horizon') as HTMLInputElement).value = String(this.state.horizon);
    (this.$('#theta') as HTMLInputElement).value = String(this.state.theta);
    this.$('#theta-value').textContent = this.state.theta.toFixed(2);
    (this.$('#forecast-toggle') as HTMLInputElement).checked = this.state.showForecast;
  }

  private pushUrl(): void {
    if (this.syncUrl) window.history.replaceState(null, '', '#' + encodeState(this.state));
  }

  private showError(message: string): void {
    const banner = this.$('#error-banner');
    banner.textContent = message;
    banner.classList.remove('hidden');
  }

  private clearError(): void {
    this.$('#error-banner').classList.add('hidden');
  }

  async search(query: string): Promise<void> {
    try {
      const result = await this.api.searchArticles(query);
      this.clearError();
      const list = this.$('#article-list');
      list.replaceChildren();
      if (!result.articles.length) {
        const empty = document.createElement('p');
        empty.className = 'empty-state';
        empty.textContent = 'no matching articles';
        list.appendChild(empty);
        return;
      }
      for (const article of result.articles) {
        const item = document.createElement('button');
        item.className = 'article-item';
        item.dataset.url = article.url;
        item.textContent = `${article.title} · ${article.source_post_count} sources`;
        item.addEventListener('click', () => {
          this.state.articles = [article.url];
          this.state.selectedNode = null;
          void this.loadPathway();
        });
        list.appendChild(item);
      }
    } catch (err) {
      this.showError(this.describe(err));
    }
  }

  async loadPathway(): Promise<void> {
    const article = this.state.articles[0];
    if (!article) return;
    const seq = ++this.fetchSeq;
    try {
      const pathway = await this.api.pathway(article, this.state.level);
      if (seq !== this.fetchSeq) return; // stale response, a newer fetch won
      this.pathway = pathway;
      this.clearError();
      this.svg = renderGraph(this.$('#graph'), pathway, {
        coloring: this.state.susceptibilityColoring,
        callbacks: { onNodeClick: (node) => void this.selectNode(node) },
      });
      this.$('#forecast-controls').classList.toggle(
        'hidden',
        this.state.level !== 'community',
      );
      this.pushUrl();
      if (this.state.showForecast && this.state.level === 'community') {
        await this.refreshForecast();
      }
    } catch (err) {
      // keep the previous graph on errors; just surface the banner
      this.showError(this.describe(err));
    }
  }

  async refreshForecast(): Promise<void> {
    if (!this.svg || !this.pathway || this.state.level !== 'community') return;
    const counter = this.$('#overlay-count');
    if (!this.state.showForecast) {
      const overlay = this.svg.querySelector('g.forecast-overlay');
      overlay?.replaceChildren();
      counter.classList.add('hidden');
      this.pushUrl();
      return;
    }
    try {
      const forecast: ForecastOut = await this.api.forecast(
        this.state.articles[0],
        this.state.horizon,
        this.state.theta,
      );
      this.clearError();
      const drawn = renderForecastOverlay(this.svg, this.pathway, forecast);
      counter.textContent = `${drawn} predicted edges`;
      counter.classList.remove('hidden');
      this.pushUrl();
    } catch (err) {
      if (err instanceof ApiError && err.code === 'model_missing') {
        this.showError(
          'forecast model not loaded — start the engine with ' +
            '--forecast-model model.json (train one with: pathway-engine train-forecast)',
        );
      } else {
        this.showError(this.describe(err));
      }
    }
  }

  async selectNode(node: NodeOut): Promise<void> {
    this.state.selectedNode = node.id;
    this.pushUrl();
    const detail = this.$('#detail-panel');
    try {
      if (node.kind === 'community') {
        renderCommunityDetail(detail, await this.api.community(node.id));
      } else {
        renderUserDetail(detail, await this.api.userSusceptibility(node.id));
        await this.showEventsForPosts(node.annotations.post_ids ?? []);
      }
      this.clearError();
    } catch (err) {
      this.showError(this.describe(err));
    }
  }

  /** Event panel for the node's posts: first post with mentions, else first. */
  private async showEventsForPosts(postIds: string[]): Promise<void> {
    if (!postIds.length) return;
    let fallback = null;
    for (const postId of postIds) {
      const events = await this.api.postEvents(postId);
      if (events.mentions.length) {
        renderEventPanel(this.$('#event-panel'), events);
        return;
      }
      fallback = fallback ?? events;
    }
    if (fallback) renderEventPanel(this.$('#event-panel'), fallback);
  }

  async showEvents(postId: string): Promise<void> {
    try {
      renderEventPanel(this.$('#event-panel'), await this.api.postEvents(postId));
      this.clearError();
    } catch (err) {
      this.showError(this.describe(err));
    }
  }

  private describe(err: unknown): string {
    if (err instanceof ApiError) return `${err.code}: ${err.message}`;
    return String(err);
  }
}
