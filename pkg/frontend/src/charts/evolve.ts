import { Table, column, distinct, requireColumns } from "../csv.js";
import { MARGIN, SvgBuilder, frame, linearScale, tickLabel } from "../svg.js";
import { RenderOptions, groupIndices, legend, strengthColor } from "./common.js";

/**
 * Stacked will-strength distribution per threshold with the population mean
 * tracked as a dashed line (right-hand strength axis).
 */
export function renderEvolveDist(table: Table, _options: RenderOptions = {}): string {
  requireColumns(table, ["theta", "alpha_bin", "population_share", "mean_alpha"]);
  const theta = column(table, "theta");
  const alphaBin = column(table, "alpha_bin");
  const share = column(table, "population_share");
  const meanAlpha = column(table, "mean_alpha");

  const thetas = distinct(theta).sort((a, b) => a - b);
  const svg = new SvgBuilder();
  const f = frame(
    svg,
    [Math.min(...thetas) - 0.5, Math.max(...thetas) + 0.5],
    [0, 1],
    {
      xLabel: "coordination threshold",
      yLabel: "population share",
      title: "Evolved will-strength distribution",
    },
  );
  const barWidth = Math.min(
    48,
    (svg.width - MARGIN.left - MARGIN.right) / (thetas.length + 1),
  );

  const meanPoints: Array<[number, number]> = [];
  for (const t of thetas) {
    const idx = groupIndices(theta, t).sort((a, b) => alphaBin[a] - alphaBin[b]);
    let cursor = 0;
    for (const i of idx) {
      if (share[i] <= 0) continue;
      const y0 = f.y(cursor);
      const y1 = f.y(cursor + share[i]);
      svg.rect(f.x(t) - barWidth / 2, y1, barWidth, y0 - y1, strengthColor(alphaBin[i]));
      cursor += share[i];
    }
    meanPoints.push([t, meanAlpha[idx[0]]]);
  }

  // right-hand axis maps strength [-1, 1] onto the frame height
  const strengthScale = linearScale([-1, 1], [svg.height - MARGIN.bottom, MARGIN.top]);
  const axisX = svg.width - MARGIN.right;
  for (const tick of [-1, -0.5, 0, 0.5, 1]) {
    svg.line(axisX, strengthScale(tick), axisX + 4, strengthScale(tick), "#222222");
    svg.text(axisX + 7, strengthScale(tick) + 3.5, tickLabel(tick), {
      anchor: "start",
      size: 9,
    });
  }
  svg.polyline(
    meanPoints.map(([t, a]) => [f.x(t), strengthScale(a)]),
    "#222222",
    1.5,
    "5,3",
  );
  for (const [t, a] of meanPoints) {
    svg.circle(f.x(t), strengthScale(a), 2.5, "#222222");
  }
  legend(svg, [
    ["strength +1", strengthColor(1)],
    ["strength 0", strengthColor(0)],
    ["strength -1", strengthColor(-1)],
    ["mean (right axis)", "#222222"],
  ]);
  return svg.render();
}

/**
 * Individual payoffs of the strongest- vs weakest-willed members, with
 * dashed reference lines for evolved-group and all-rational payoffs.
 */
export function renderEvolvePayoff(table: Table, _options: RenderOptions = {}): string {
  requireColumns(table, [
    "theta", "max_alpha_payoff", "min_alpha_payoff", "group_payoff", "rational_baseline",
  ]);
  const theta = column(table, "theta");
  const maxPay = column(table, "max_alpha_payoff");
  const minPay = column(table, "min_alpha_payoff");
  const group = column(table, "group_payoff");
  const baseline = column(table, "rational_baseline");

  const top = Math.max(...maxPay, ...minPay, ...group, ...baseline, 0.1) * 1.15;
  const thetas = distinct(theta).sort((a, b) => a - b);
  const svg = new SvgBuilder();
  const f = frame(svg, [Math.min(...thetas) - 0.5, Math.max(...thetas) + 0.5], [0, top], {
    xLabel: "coordination threshold",
    yLabel: "payoff",
    title: "Strongest vs weakest committed members",
  });
  const slot = Math.min(
    52,
    (svg.width - MARGIN.left - MARGIN.right) / (thetas.length + 1),
  );
  const barWidth = slot * 0.38;

  thetas.forEach((t) => {
    const i = groupIndices(theta, t)[0];
    const xc = f.x(t);
    svg.rect(xc - barWidth - 1, f.y(maxPay[i]), barWidth, f.y(0) - f.y(maxPay[i]), "#b2182b");
    svg.rect(xc + 1, f.y(minPay[i]), barWidth, f.y(0) - f.y(minPay[i]), "#2166ac");
    svg.line(xc - slot / 2, f.y(group[i]), xc + slot / 2, f.y(group[i]), "#222222", 1.5, "5,3");
    svg.line(xc - slot / 2, f.y(baseline[i]), xc + slot / 2, f.y(baseline[i]), "#777777", 1.5, "2,3");
  });
  legend(svg, [
    ["max-strength payoff", "#b2182b"],
    ["min-strength payoff", "#2166ac"],
    ["evolved group", "#222222"],
    ["rational baseline", "#777777"],
  ]);
  return svg.render();
}
