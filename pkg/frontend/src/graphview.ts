// SVG rendering of a pathway graph with optional susceptibility fill and a
// dashed forecast overlay.

import type { EdgeOut, ForecastOut, NodeOut, PathwayOut } from './api.js';
import { susceptibilityColor, SCALE_NEUTRAL } from './color.js';
import { layoutFor, type Point } from './layout.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface GraphCallbacks {
  onNodeClick?: (node: NodeOut) => void;
}

function nodeScore(node: NodeOut): number | null {
  const a = node.annotations;
  if (a.susceptibility) return a.susceptibility.value;
  if (a.mean_susceptibility) return a.mean_susceptibility.value;
  return null;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function edgePath(a: Point, b: Point, selfLoop: boolean): string {
  if (selfLoop) {
    return `M ${a.x} ${a.y - 18} C ${a.x + 52} ${a.y - 60}, ${a.x - 52} ${a.y - 60}, ${a.x} ${a.y - 18}`;
  }
  const mx = (a.x + b.x) / 2;
  const my = (a.y + b.y) / 2 - 18;
  return `M ${a.x} ${a.y} Q ${mx} ${my} ${b.x} ${b.y}`;
}

export function renderGraph(
  container: HTMLElement,
  pathway: PathwayOut,
  options: { coloring: boolean; callbacks?: GraphCallbacks },
): SVGSVGElement {
  const { positions, width, height } = layoutFor(pathway.level, pathway.nodes, pathway.edges);
  const svg = svgEl('svg');
  svg.setAttribute('class', 'graph');
  svg.setAttribute('viewBox', `0 0 ${Math.max(width, 420)} ${Math.max(height, 280)}`);
  svg.setAttribute('data-level', pathway.level);

  const edgeLayer = svgEl('g');
  edgeLayer.setAttribute('class', 'edges');
  for (const edge of pathway.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const path = svgEl('path');
    path.setAttribute('class', 'edge');
    path.setAttribute('d', edgePath(a, b, edge.src === edge.dst));
    path.setAttribute('fill', 'none');
    path.setAttribute('stroke-width', String(Math.min(1 + Math.log1p(edge.weight) * 1.6, 7)));
    path.setAttribute('data-src', edge.src);
    path.setAttribute('data-dst', edge.dst);
    path.setAttribute('data-weight', String(edge.weight));
    edgeLayer.appendChild(path);
    if (pathway.level === 'community' && edge.weight > 1) {
      const label = svgEl('text');
      label.setAttribute('class', 'edge-label');
      label.setAttribute('x', String((a.x + b.x) / 2));
      label.setAttribute('y', String((a.y + b.y) / 2 - (edge.src === edge.dst ? 52 : 22)));
      label.textContent = `×${edge.weight}`;
      edgeLayer.appendChild(label);
    }
  }
  svg.appendChild(edgeLayer);

  const overlayLayer = svgEl('g');
  overlayLayer.setAttribute('class', 'forecast-overlay');
  svg.appendChild(overlayLayer);

  const nodeLayer = svgEl('g');
  nodeLayer.setAttribute('class', 'nodes');
  for (const node of pathway.nodes) {
    const p = positions.get(node.id)!;
    const group = svgEl('g');
    group.setAttribute('class', 'node');
    group.setAttribute('data-id', node.id);
    const circle = svgEl('circle');
    circle.setAttribute('cx', String(p.x));
    circle.setAttribute('cy', String(p.y));
    circle.setAttribute('r', pathway.level === 'community' ? '22' : '14');
    const score = options.coloring ? nodeScore(node) : null;
    circle.setAttribute('fill', score === null ? SCALE_NEUTRAL : susceptibilityColor(score));
    if (score !== null) circle.setAttribute('data-score', String(score));
    group.appendChild(circle);
    const label = svgEl('text');
    label.setAttribute('x', String(p.x));
    label.setAttribute('y', String(p.y + (pathway.level === 'community' ? 38 : 28)));
    label.setAttribute('class', 'node-label');
    label.textContent = node.id;
    group.appendChild(label);
    group.addEventListener('click', () => options.callbacks?.onNodeClick?.(node));
    nodeLayer.appendChild(group);
  }
  svg.appendChild(nodeLayer);

  container.replaceChildren(svg);
  return svg;
}

/** Draw predicted edges dashed, labeled with step and probability. */
export function renderForecastOverlay(
  svg: SVGSVGElement,
  pathway: PathwayOut,
  forecast: ForecastOut,
): number {
  const overlay = svg.querySelector('g.forecast-overlay');
  if (!overlay) return 0;
  overlay.replaceChildren();
  const { positions } = layoutFor(pathway.level, pathway.nodes, pathway.edges);
  let drawn = 0;
  for (const step of forecast.steps) {
    for (const edge of step.edges) {
      const a = positions.get(edge.src);
      const b = positions.get(edge.dst);
      if (!a || !b) continue; // predicted edge between communities not in view
      const path = document.createElementNS(SVG_NS, 'path');
      path.setAttribute('class', 'predicted-edge');
      path.setAttribute('d', edgePath(a, b, edge.src === edge.dst));
      path.setAttribute('fill', 'none');
      path.setAttribute('stroke-dasharray', '6 4');
      path.setAttribute('data-step', String(step.step));
      path.setAttribute('data-probability', edge.probability.toFixed(3));
      overlay.appendChild(path);
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('class', 'predicted-label');
      label.setAttribute('x', String((a.x + b.x) / 2 + 6));
      label.setAttribute('y', String((a.y + b.y) / 2 - (edge.src === edge.dst ? 64 : 34)));
      label.textContent = `+${step.step} @ ${edge.probability.toFixed(2)}`;
      overlay.appendChild(label);
      drawn += 1;
    }
  }
  return drawn;
}
