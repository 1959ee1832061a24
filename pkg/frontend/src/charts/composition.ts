import { Table, column, distinct, requireColumns } from "../csv.js";
import { PALETTE, SvgBuilder, ciBand, frame } from "../svg.js";
import { RenderOptions, groupIndices, legend } from "./common.js";

const COLUMNS = ["theta", "n_willed_stag", "n_rational", "n_willed_hare", "mean", "ci95"];

/** Payoff vs threshold, one line per number of stag-committed agents. */
export function renderComposition(table: Table, options: RenderOptions = {}): string {
  requireColumns(table, COLUMNS);
  const theta = column(table, "theta");
  const stagCount = column(table, "n_willed_stag");
  const mean = column(table, "mean");
  const ci = column(table, "ci95");

  const svg = new SvgBuilder();
  const f = frame(svg, [Math.min(...theta), Math.max(...theta)], [0, 1], {
    xLabel: "coordination threshold",
    yLabel: "normalized group payoff",
    title: "Group payoff vs threshold by committed-hunter count",
  });

  const counts = distinct(stagCount).sort((a, b) => a - b);
  counts.forEach((count, seriesIndex) => {
    const idx = groupIndices(stagCount, count).sort((a, b) => theta[a] - theta[b]);
    const color = PALETTE[seriesIndex % PALETTE.length];
    if (options.ci !== false) {
      ciBand(f, idx.map((i) => [theta[i], mean[i], ci[i]]), color);
    }
    f.svg.polyline(idx.map((i) => [f.x(theta[i]), f.y(mean[i])]), color);
    for (const i of idx) {
      f.svg.circle(f.x(theta[i]), f.y(mean[i]), 2, color);
    }
  });
  legend(svg, counts.map((count, i) => [`committed=${count}`, PALETTE[i % PALETTE.length]]));
  return svg.render();
}
