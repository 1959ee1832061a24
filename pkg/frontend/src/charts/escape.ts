import { Table, column, requireColumns } from "../csv.js";
import { SvgBuilder, ciBand, frame } from "../svg.js";
import { RenderOptions } from "./common.js";

const COLUMNS = ["n1", "sigma", "mean_tau", "ci95", "censored_fraction", "barrier"];

/**
 * Mean escape time vs committed-cooperator share on a log scale; censored
 * points (mean pinned at the trial ceiling) render as open markers.
 */
export function renderEscape(table: Table, options: RenderOptions = {}): string {
  requireColumns(table, COLUMNS);
  const n1 = column(table, "n1");
  const tau = column(table, "mean_tau");
  const ci = column(table, "ci95");
  const censored = column(table, "censored_fraction");
  const sigma = column(table, "sigma");

  const order = n1.map((_, i) => i).sort((a, b) => n1[a] - n1[b]);
  const floor = Math.max(Math.min(...tau) / 2, 1e-3);
  const ceil = Math.max(...tau) * 2;

  const svg = new SvgBuilder();
  const f = frame(svg, [Math.min(...n1), Math.max(...n1)], [floor, ceil], {
    xLabel: "committed cooperator share",
    yLabel: "mean escape time",
    title: `Escape time vs committed share (sigma=${sigma[0]})`,
    logY: true,
  });

  if (options.ci !== false) {
    ciBand(
      f,
      order.map((i) => [n1[i], tau[i], Math.min(ci[i], tau[i] - floor)]),
      "#1f77b4",
    );
  }
  f.svg.polyline(order.map((i) => [f.x(n1[i]), f.y(tau[i])]), "#1f77b4", 2);
  let anyCensored = false;
  for (const i of order) {
    const fullyMeasured = censored[i] === 0;
    if (!fullyMeasured) anyCensored = true;
    f.svg.circle(
      f.x(n1[i]),
      f.y(tau[i]),
      3.5,
      fullyMeasured ? "#1f77b4" : "white",
      "#1f77b4",
    );
  }
  if (anyCensored) {
    f.svg.text(
      svg.width / 2,
      30,
      "open markers: censored trials included at the cutoff",
      { size: 10, fill: "#666666" },
    );
  }
  return svg.render();
}
