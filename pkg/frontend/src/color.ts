// Diverging color scale for signed susceptibility, anchored at 0:
// -100% deep blue, 0 near-white, +100% deep red.

const NEGATIVE_END: [number, number, number] = [33, 102, 172];
const NEUTRAL: [number, number, number] = [245, 245, 245];
const POSITIVE_END: [number, number, number] = [178, 24, 43];

function mix(a: [number, number, number], b: [number, number, number], t: number): string {
  const channel = (i: number) => Math.round(a[i] + (b[i] - a[i]) * t);
  return `rgb(${channel(0)}, ${channel(1)}, ${channel(2)})`;
}

/** value in [-1, 1]; values outside are clamped. */
export function susceptibilityColor(value: number): string {
  const v = Math.max(-1, Math.min(1, value));
  if (v < 0) return mix(NEUTRAL, NEGATIVE_END, -v);
  return mix(NEUTRAL, POSITIVE_END, v);
}

export const SCALE_NEGATIVE_EXTREME = susceptibilityColor(-1);
export const SCALE_POSITIVE_EXTREME = susceptibilityColor(1);
export const SCALE_NEUTRAL = susceptibilityColor(0);
