import { Table, column, columnText, distinct, requireColumns } from "../csv.js";
import { HEIGHT, MARGIN, SvgBuilder, WIDTH, linearScale, ticks, tickLabel } from "../svg.js";
import { RenderOptions } from "./common.js";

/**
 * Canonical default payoff matrices, matching the analysis engine; the
 * equilibria CSV carries only game names, so the payoff-difference lines
 * are reconstructed from these. Differential:  a*x + b.
 */
const GAME_COEFFS: Record<string, { a: number; b: number; label: string }> = {
  stag_hunt: { a: 4, b: -3, label: "Stag Hunt" },
  snowdrift: { a: -3, b: 2, label: "Snowdrift" },
  prisoners_dilemma: { a: -1, b: -1, label: "Prisoner's Dilemma" },
};

const COLUMNS = ["game", "n1", "n2", "x_star", "classification"];

/**
 * Payoff-differential curves with hatched infeasible regions and the
 * equilibria reported for the selected committed shares (filled = stable,
 * open = unstable).
 */
export function renderDynamics(table: Table, options: RenderOptions = {}): string {
  requireColumns(table, COLUMNS);
  const games = columnText(table, "game");
  const n1s = column(table, "n1");
  const n2s = column(table, "n2");
  const xStars = column(table, "x_star");
  const classes = columnText(table, "classification");

  for (const game of distinct(games)) {
    if (!(game in GAME_COEFFS)) {
      throw new Error(`unknown game "${game}" in equilibria CSV`);
    }
  }
  const wantN1 = options.n1 ?? 0.2;
  const wantN2 = options.n2 ?? 0.1;

  const panelGames = distinct(games);
  const svg = new SvgBuilder(WIDTH, HEIGHT);
  const panelWidth = (WIDTH - MARGIN.left - MARGIN.right) / panelGames.length;
  svg.text(WIDTH / 2, 16, `Drift and equilibria at n1=${wantN1}, n2=${wantN2}`, {
    size: 13,
  });

  panelGames.forEach((game, panel) => {
    const { a, b, label } = GAME_COEFFS[game];
    const left = MARGIN.left + panel * panelWidth + 8;
    const right = MARGIN.left + (panel + 1) * panelWidth - 8;
    const x = linearScale([0, 1], [left, right]);
    const values = [a * 0 + b, a * 1 + b, 0];
    const lo = Math.min(...values) - 0.5;
    const hi = Math.max(...values) + 0.5;
    const y = linearScale([lo, hi], [HEIGHT - MARGIN.bottom, MARGIN.top + 14]);

    // frame and zero line
    svg.line(left, y(lo), left, y(hi), "#222222");
    svg.line(left, y(0), right, y(0), "#999999", 1, "3,3");
    svg.line(left, HEIGHT - MARGIN.bottom, right, HEIGHT - MARGIN.bottom, "#222222");
    for (const tick of [0, 0.5, 1]) {
      svg.text(x(tick), HEIGHT - MARGIN.bottom + 14, tickLabel(tick), { size: 9 });
    }
    for (const tick of ticks(lo, hi, 4)) {
      svg.text(left - 4, y(tick) + 3, tickLabel(tick), { anchor: "end", size: 8 });
    }

    // hatched infeasible regions [0, n1] and [1-n2, 1]
    if (wantN1 > 0) {
      svg.raw(
        `<rect x="${x(0).toFixed(2)}" y="${y(hi).toFixed(2)}" width="${(
          x(wantN1) - x(0)
        ).toFixed(2)}" height="${(y(lo) - y(hi)).toFixed(2)}" fill="url(#hatch)" fill-opacity="0.6"/>`,
      );
    }
    if (wantN2 > 0) {
      svg.raw(
        `<rect x="${x(1 - wantN2).toFixed(2)}" y="${y(hi).toFixed(2)}" width="${(
          x(1) - x(1 - wantN2)
        ).toFixed(2)}" height="${(y(lo) - y(hi)).toFixed(2)}" fill="url(#hatch)" fill-opacity="0.6"/>`,
      );
    }

    svg.polyline(
      [
        [x(0), y(b)],
        [x(1), y(a + b)],
      ],
      "#1f77b4",
      2,
    );

    let markers = 0;
    for (let i = 0; i < games.length; i++) {
      if (games[i] !== game || n1s[i] !== wantN1 || n2s[i] !== wantN2) continue;
      markers += 1;
      const stable = classes[i] !== "interior_unstable";
      svg.circle(
        x(xStars[i]),
        y(a * xStars[i] + b),
        4,
        stable ? "#d62728" : "white",
        "#d62728",
      );
    }
    if (markers === 0) {
      throw new Error(
        `no equilibria rows for ${game} at n1=${wantN1}, n2=${wantN2}`,
      );
    }
    svg.text((left + right) / 2, MARGIN.top + 8, label, { size: 11 });
  });
  svg.text(WIDTH / 2, HEIGHT - 8, "cooperating share", { size: 12 });
  svg.text(14, HEIGHT / 2, "payoff differential", { size: 12, rotate: -90 });
  return svg.render();
}
