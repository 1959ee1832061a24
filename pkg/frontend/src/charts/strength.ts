import { Table, column, distinct, requireColumns } from "../csv.js";
import { PALETTE, SvgBuilder, ciBand, frame } from "../svg.js";
import { legend, groupIndices, RenderOptions } from "./common.js";

/** Payoff vs will strength, one line per threshold, optional CI band. */
export function renderStrength(table: Table, options: RenderOptions = {}): string {
  requireColumns(table, ["theta", "alpha", "mean", "ci95"]);
  const theta = column(table, "theta");
  const alpha = column(table, "alpha");
  const mean = column(table, "mean");
  const ci = column(table, "ci95");

  const svg = new SvgBuilder();
  const f = frame(svg, [Math.min(...alpha), Math.max(...alpha)], [0, 1], {
    xLabel: "will strength",
    yLabel: "normalized group payoff",
    title: "Group payoff vs will strength",
  });

  const thetas = distinct(theta).sort((a, b) => a - b);
  thetas.forEach((value, seriesIndex) => {
    const idx = groupIndices(theta, value).sort((a, b) => alpha[a] - alpha[b]);
    const color = PALETTE[seriesIndex % PALETTE.length];
    if (options.ci !== false) {
      ciBand(f, idx.map((i) => [alpha[i], mean[i], ci[i]]), color);
    }
    f.svg.polyline(idx.map((i) => [f.x(alpha[i]), f.y(mean[i])]), color);
    for (const i of idx) {
      f.svg.circle(f.x(alpha[i]), f.y(mean[i]), 2, color);
    }
  });
  legend(svg, thetas.map((value, i) => [`theta=${value}`, PALETTE[i % PALETTE.length]]));
  return svg.render();
}
