// Deterministic layouts. Pathways are shallow forests, so a layered
// (depth-column) layout reads better than a force simulation and needs no
// physics: roots left, children in discovery order.

import type { EdgeOut, NodeOut } from './api.js';

export interface Point {
  x: number;
  y: number;
}

export interface LayoutResult {
  positions: Map<string, Point>;
  width: number;
  height: number;
}

const COLUMN_GAP = 170;
const ROW_GAP = 64;
const MARGIN = 60;

export function layeredLayout(nodes: NodeOut[], edges: EdgeOut[]): LayoutResult {
  const depth = new Map<string, number>();
  const incoming = new Set(edges.map((e) => e.dst));
  for (const node of nodes) {
    if (!incoming.has(node.id)) depth.set(node.id, 0);
  }
  // propagate depth along edges (edges arrive timestamp-sorted)
  let changed = true;
  let guard = 0;
  while (changed && guard < nodes.length + 2) {
    changed = false;
    guard += 1;
    for (const edge of edges) {
      const from = depth.get(edge.src);
      if (from === undefined) continue;
      const proposed = edge.src === edge.dst ? from : from + 1;
      const current = depth.get(edge.dst);
      if (current === undefined || proposed < current) {
        depth.set(edge.dst, proposed);
        changed = true;
      }
    }
  }
  for (const node of nodes) {
    if (!depth.has(node.id)) depth.set(node.id, 0);
  }

  const columns = new Map<number, string[]>();
  for (const node of nodes) {
    const d = depth.get(node.id)!;
    if (!columns.has(d)) columns.set(d, []);
    columns.get(d)!.push(node.id);
  }
  const positions = new Map<string, Point>();
  let maxRows = 1;
  for (const [d, ids] of columns) {
    maxRows = Math.max(maxRows, ids.length);
    ids.forEach((id, row) => {
      positions.set(id, { x: MARGIN + d * COLUMN_GAP, y: MARGIN + row * ROW_GAP });
    });
  }
  const maxDepth = Math.max(...columns.keys());
  return {
    positions,
    width: MARGIN * 2 + maxDepth * COLUMN_GAP + 60,
    height: MARGIN * 2 + (maxRows - 1) * ROW_GAP + 20,
  };
}

export function circularLayout(nodes: NodeOut[]): LayoutResult {
  const n = Math.max(nodes.length, 1);
  const radius = Math.max(90, 40 * n);
  const cx = radius + MARGIN;
  const cy = radius * 0.75 + MARGIN;
  const positions = new Map<string, Point>();
  nodes.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    positions.set(node.id, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * 0.75 * Math.sin(angle),
    });
  });
  return { positions, width: cx + radius + MARGIN, height: cy + radius * 0.75 + MARGIN };
}

export function layoutFor(level: 'user' | 'community', nodes: NodeOut[],
                          edges: EdgeOut[]): LayoutResult {
  return level === 'community' ? circularLayout(nodes) : layeredLayout(nodes, edges);
}
