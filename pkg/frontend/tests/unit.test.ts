import { describe, expect, it } from 'vitest';

import {
  SCALE_NEGATIVE_EXTREME,
  SCALE_NEUTRAL,
  SCALE_POSITIVE_EXTREME,
  susceptibilityColor,
} from '../src/color.js';
import { layeredLayout, circularLayout } from '../src/layout.js';
import { highlightSegments } from '../src/panels.js';
import { DEFAULT_STATE, decodeState, encodeState } from '../src/state.js';
import type { MentionOut, NodeOut } from '../src/api.js';

describe('susceptibility color scale', () => {
  it('hits both extremes at -1 and +1', () => {
    expect(susceptibilityColor(-1)).toBe('rgb(33, 102, 172)');
    expect(susceptibilityColor(1)).toBe('rgb(178, 24, 43)');
    expect(SCALE_NEGATIVE_EXTREME).not.toBe(SCALE_POSITIVE_EXTREME);
  });

  it('is neutral at zero', () => {
    expect(susceptibilityColor(0)).toBe(SCALE_NEUTRAL);
    expect(SCALE_NEUTRAL).toBe('rgb(245, 245, 245)');
  });

  it('clamps out-of-range values', () => {
    expect(susceptibilityColor(-5)).toBe(SCALE_NEGATIVE_EXTREME);
    expect(susceptibilityColor(5)).toBe(SCALE_POSITIVE_EXTREME);
  });

  it('diverges monotonically toward each end', () => {
    const red = (c: string) => parseInt(c.slice(4), 10);
    expect(red(susceptibilityColor(0.2))).toBeGreaterThan(red(susceptibilityColor(0.9)) - 255);
    expect(susceptibilityColor(0.5)).not.toBe(susceptibilityColor(-0.5));
  });
});

describe('view state deep links', () => {
  it('round-trips every field', () => {
    const state = {
      articles: ['https://org0.example/story/3', 'https://org1.example/story/4'],
      level: 'community' as const,
      selectedNode: 'org1',
      horizon: 7,
      theta: 0.65,
      susceptibilityColoring: false,
      showForecast: true,
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it('decodes an empty hash to defaults', () => {
    expect(decodeState('')).toEqual({ ...DEFAULT_STATE, articles: [] });
  });

  it('clamps forecast parameters into the server-accepted range', () => {
    const decoded = decodeState('horizon=99&theta=7.5');
    expect(decoded.horizon).toBeLessThanOrEqual(20);
    expect(decoded.theta).toBeLessThan(1.0);
    expect(decoded.theta).toBeGreaterThan(0.0);
  });
});

const node = (id: string): NodeOut => ({ id, kind: 'user', annotations: {} });

describe('layouts', () => {
  it('layered layout is deterministic and places roots left', () => {
    const nodes = [node('root'), node('mid'), node('leaf')];
    const edges = [
      { src: 'root', dst: 'mid', weight: 1, timestamp: 1 },
      { src: 'mid', dst: 'leaf', weight: 1, timestamp: 2 },
    ];
    const a = layeredLayout(nodes, edges);
    const b = layeredLayout(nodes, edges);
    expect(a.positions).toEqual(b.positions);
    expect(a.positions.get('root')!.x).toBeLessThan(a.positions.get('mid')!.x);
    expect(a.positions.get('mid')!.x).toBeLessThan(a.positions.get('leaf')!.x);
  });

  it('self-loops do not advance depth', () => {
    const nodes = [node('a')];
    const edges = [{ src: 'a', dst: 'a', weight: 3, timestamp: 1 }];
    const layout = layeredLayout(nodes, edges);
    expect(layout.positions.get('a')).toBeDefined();
  });

  it('circular layout spreads nodes over distinct positions', () => {
    const nodes = [node('a'), node('b'), node('c')];
    const layout = circularLayout(nodes);
    const points = [...layout.positions.values()];
    expect(new Set(points.map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`)).size).toBe(3);
  });
});

describe('event highlight segmentation', () => {
  const mention = (start: number, end: number): MentionOut => ({
    post_id: 'p',
    event_type: 'lock_down',
    trigger: { start, end, text: '' },
    arguments: [],
  });

  it('splits text so highlighted parts equal the span contents', () => {
    const text = 'The city will lock down tomorrow';
    const segments = highlightSegments(text, [mention(14, 23)]);
    expect(segments.map((s) => s.text).join('')).toBe(text);
    expect(segments.filter((s) => s.highlight).map((s) => s.text)).toEqual(['lock down']);
  });

  it('handles mentions at the text boundaries', () => {
    const text = 'lockdown now';
    const segments = highlightSegments(text, [mention(0, 8)]);
    expect(segments[0]).toEqual({ text: 'lockdown', highlight: true });
    expect(segments.map((s) => s.text).join('')).toBe(text);
  });

  it('keeps multiple mentions in document order', () => {
    const text = 'lockdown then quarantine';
    const segments = highlightSegments(text, [mention(14, 24), mention(0, 8)]);
    expect(segments.filter((s) => s.highlight).map((s) => s.text)).toEqual([
      'lockdown',
      'quarantine',
    ]);
  });
});
