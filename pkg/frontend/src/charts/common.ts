import { MARGIN, SvgBuilder } from "../svg.js";

export interface RenderOptions {
  ci?: boolean; // confidence shading (default on)
  n1?: number; // share selection for the dynamics chart
  n2?: number;
}

export function groupIndices(values: number[], wanted: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < values.length; i++) {
    if (values[i] === wanted) out.push(i);
  }
  return out;
}

export function legend(svg: SvgBuilder, entries: Array<[string, string]>): void {
  let y = MARGIN.top + 6;
  const x = svg.width - MARGIN.right - 108;
  for (const [label, color] of entries) {
    svg.line(x, y, x + 18, y, color, 2);
    svg.text(x + 24, y + 3.5, label, { anchor: "start", size: 10 });
    y += 14;
  }
}

/** Two-sided blue/red ramp for will strengths in [-1, 1]. */
export function strengthColor(alpha: number): string {
  const t = Math.max(-1, Math.min(1, alpha));
  const mix = (a: number, b: number, w: number) => Math.round(a + (b - a) * w);
  let r: number, g: number, b: number;
  if (t < 0) {
    // blue (hare) toward grey
    const w = t + 1; // 0..1
    r = mix(33, 224, w);
    g = mix(102, 224, w);
    b = mix(172, 224, w);
  } else {
    const w = t; // 0..1
    r = mix(224, 178, w);
    g = mix(224, 24, w);
    b = mix(224, 43, w);
  }
  return `#${((1 << 24) + (r << 16) + (g << 8) + b).toString(16).slice(1)}`;
}

/** Blue->yellow->red value ramp for heatmaps, t in [0, 1]. */
export function heatColor(t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const stops: Array<[number, [number, number, number]]> = [
    [0.0, [49, 54, 149]],
    [0.5, [255, 224, 144]],
    [1.0, [165, 0, 38]],
  ];
  let lo = stops[0];
  let hi = stops[stops.length - 1];
  for (let i = 0; i < stops.length - 1; i++) {
    if (clamped >= stops[i][0] && clamped <= stops[i + 1][0]) {
      lo = stops[i];
      hi = stops[i + 1];
      break;
    }
  }
  const w = (clamped - lo[0]) / (hi[0] - lo[0] || 1);
  const channel = (index: number) =>
    Math.round(lo[1][index] + (hi[1][index] - lo[1][index]) * w);
  return `#${((1 << 24) + (channel(0) << 16) + (channel(1) << 8) + channel(2))
    .toString(16)
    .slice(1)}`;
}
