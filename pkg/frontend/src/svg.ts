/**
 * Minimal deterministic SVG emission: fixed canvas, fixed-precision
 * coordinates, no timestamps, so identical inputs give identical bytes.
 */

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { top: 28, right: 24, bottom: 44, left: 56 };

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
];

export function fmt(value: number): string {
  return value.toFixed(2);
}

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

export function logScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const lo = Math.log10(Math.max(domain[0], 1e-12));
  const hi = Math.log10(Math.max(domain[1], 1e-12));
  const inner = linearScale([lo, hi], range);
  const scale = ((value: number) =>
    inner(Math.log10(Math.max(value, 1e-12)))) as Scale;
  scale.domain = domain;
  return scale;
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const unit = err >= 7.5 ? step * 10 : err >= 3 ? step * 5 : err >= 1.5 ? step * 2 : step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / unit) * unit; v <= hi + 1e-9; v += unit) {
    out.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return out;
}

export function tickLabel(value: number): string {
  if (value !== 0 && (Math.abs(value) >= 10000 || Math.abs(value) < 0.01)) {
    return value.toExponential(1);
  }
  return String(Math.round(value * 1000) / 1000);
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(
    readonly width = WIDTH,
    readonly height = HEIGHT,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica,Arial,sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
      // diagonal hatching for excluded regions
      `<defs><pattern id="hatch" width="6" height="6" patternTransform="rotate(45)" ` +
        `patternUnits="userSpaceOnUse"><line x1="0" y1="0" x2="0" y2="6" ` +
        `stroke="#999999" stroke-width="1.5"/></pattern></defs>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash?: string): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash?: string): void {
    const text = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${text}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  polygon(points: Array<[number, number]>, fill: string, opacity = 1): void {
    const text = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polygon points="${text}" fill="${fill}" fill-opacity="${opacity}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, opacity = 1): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(Math.max(w, 0))}" ` +
        `height="${fmt(Math.max(h, 0))}" fill="${fill}" fill-opacity="${opacity}"/>`,
    );
  }

  circle(x: number, y: number, r: number, fill: string, stroke = "none"): void {
    this.parts.push(
      `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${fill}" stroke="${stroke}"/>`,
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    options: { anchor?: string; size?: number; fill?: string; rotate?: number } = {},
  ): void {
    const anchor = options.anchor ?? "middle";
    const size = options.size ?? 11;
    const fill = options.fill ?? "#222222";
    const transform = options.rotate
      ? ` transform="rotate(${options.rotate} ${fmt(x)} ${fmt(y)})"`
      : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" font-size="${size}" ` +
        `fill="${fill}"${transform}>${escapeXml(content)}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export interface Frame {
  svg: SvgBuilder;
  x: Scale;
  y: Scale;
}

/** Axes and a plot frame for standard x/y charts. */
export function frame(
  svg: SvgBuilder,
  xDomain: [number, number],
  yDomain: [number, number],
  options: {
    xLabel?: string;
    yLabel?: string;
    title?: string;
    logY?: boolean;
    yTickValues?: number[];
  } = {},
): Frame {
  const x = linearScale(xDomain, [MARGIN.left, svg.width - MARGIN.right]);
  const makeY = options.logY ? logScale : linearScale;
  const y = makeY(yDomain, [svg.height - MARGIN.bottom, MARGIN.top]);

  const x0 = MARGIN.left;
  const x1 = svg.width - MARGIN.right;
  const y0 = svg.height - MARGIN.bottom;
  const y1 = MARGIN.top;
  svg.line(x0, y0, x1, y0, "#222222");
  svg.line(x0, y0, x0, y1, "#222222");

  for (const tick of ticks(xDomain[0], xDomain[1])) {
    const px = x(tick);
    svg.line(px, y0, px, y0 + 4, "#222222");
    svg.text(px, y0 + 16, tickLabel(tick));
  }
  const yTicks =
    options.yTickValues ??
    (options.logY
      ? logTicks(yDomain[0], yDomain[1])
      : ticks(yDomain[0], yDomain[1]));
  for (const tick of yTicks) {
    const py = y(tick);
    svg.line(x0 - 4, py, x0, py, "#222222");
    svg.text(x0 - 7, py + 3.5, tickLabel(tick), { anchor: "end", size: 10 });
    svg.line(x0, py, x1, py, "#eeeeee");
  }
  if (options.xLabel) {
    svg.text((x0 + x1) / 2, svg.height - 10, options.xLabel, { size: 12 });
  }
  if (options.yLabel) {
    svg.text(16, (y0 + y1) / 2, options.yLabel, { size: 12, rotate: -90 });
  }
  if (options.title) {
    svg.text((x0 + x1) / 2, 16, options.title, { size: 13 });
  }
  return { svg, x, y };
}

export function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  const first = Math.floor(Math.log10(Math.max(lo, 1e-12)));
  const last = Math.ceil(Math.log10(Math.max(hi, 1e-12)));
  for (let p = first; p <= last; p++) {
    out.push(Math.pow(10, p));
  }
  return out;
}

/** Shaded confidence band around a line given (x, mean, halfwidth) triples. */
export function ciBand(
  frame: Frame,
  points: Array<[number, number, number]>,
  color: string,
): void {
  const upper = points.map(
    ([px, mean, ci]) => [frame.x(px), frame.y(mean + ci)] as [number, number],
  );
  const lower = points
    .slice()
    .reverse()
    .map(([px, mean, ci]) => [frame.x(px), frame.y(Math.max(mean - ci, frame.y.domain[0]))] as [number, number]);
  frame.svg.polygon(upper.concat(lower), color, 0.15);
}
