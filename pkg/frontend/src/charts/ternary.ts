import { Table, column, requireColumns } from "../csv.js";
import { HEIGHT, SvgBuilder, WIDTH, fmt } from "../svg.js";
import { RenderOptions, heatColor } from "./common.js";

const COLUMNS = ["theta", "n_willed_stag", "n_rational", "n_willed_hare", "mean", "ci95"];

interface SimplexPoint {
  stag: number;
  rational: number;
  hare: number;
  mean: number;
}

/**
 * Barycentric payoff landscape over (stag-committed, rational,
 * hare-committed) compositions: micro-triangles between grid points are
 * filled with the mean of their vertices, plus value-colored grid dots.
 */
export function renderTernary(table: Table, _options: RenderOptions = {}): string {
  requireColumns(table, COLUMNS);
  const stag = column(table, "n_willed_stag");
  const rational = column(table, "n_rational");
  const hare = column(table, "n_willed_hare");
  const mean = column(table, "mean");
  const theta = column(table, "theta");

  const total = stag[0] + rational[0] + hare[0];
  const points: SimplexPoint[] = stag.map((s, i) => ({
    stag: s,
    rational: rational[i],
    hare: hare[i],
    mean: mean[i],
  }));
  const byKey = new Map<string, SimplexPoint>();
  for (const p of points) byKey.set(`${p.stag}:${p.hare}`, p);
  const steps = [...new Set(points.map((p) => p.stag))].sort((a, b) => a - b);
  const step = steps.length > 1 ? steps[1] - steps[0] : total;

  // corners: rational bottom-left, hare-committed bottom-right, stag top
  const size = Math.min(WIDTH, HEIGHT) - 110;
  const cx = WIDTH / 2;
  const baseY = HEIGHT - 58;
  const h = (size * Math.sqrt(3)) / 2;
  const corner = {
    rational: [cx - size / 2, baseY] as [number, number],
    hare: [cx + size / 2, baseY] as [number, number],
    stag: [cx, baseY - h] as [number, number],
  };
  const place = (p: { stag: number; rational: number; hare: number }): [number, number] => {
    const ws = p.stag / total;
    const wr = p.rational / total;
    const wh = p.hare / total;
    return [
      ws * corner.stag[0] + wr * corner.rational[0] + wh * corner.hare[0],
      ws * corner.stag[1] + wr * corner.rational[1] + wh * corner.hare[1],
    ];
  };

  const lo = Math.min(...mean);
  const hi = Math.max(...mean);
  const norm = (value: number) => (hi > lo ? (value - lo) / (hi - lo) : 0.5);

  const svg = new SvgBuilder();
  svg.text(WIDTH / 2, 16, `Payoff landscape at theta=${theta[0]}`, { size: 13 });

  // interpolated fill: upward and downward micro-triangles on the grid
  for (let s = 0; s <= total; s += step) {
    for (let hcount = 0; s + hcount <= total; hcount += step) {
      const a = byKey.get(`${s}:${hcount}`);
      const up1 = byKey.get(`${s + step}:${hcount}`);
      const up2 = byKey.get(`${s}:${hcount + step}`);
      if (a && up1 && up2) {
        svg.polygon(
          [place(a), place(up1), place(up2)],
          heatColor(norm((a.mean + up1.mean + up2.mean) / 3)),
          0.9,
        );
      }
      const down3 = byKey.get(`${s + step}:${hcount + step}`);
      if (up1 && up2 && down3) {
        svg.polygon(
          [place(up1), place(up2), place(down3)],
          heatColor(norm((up1.mean + up2.mean + down3.mean) / 3)),
          0.9,
        );
      }
    }
  }
  for (const p of points) {
    const [x, y] = place(p);
    svg.circle(x, y, 3.5, heatColor(norm(p.mean)), "#333333");
  }

  svg.polygon(
    [corner.stag, corner.rational, corner.hare],
    "none",
  );
  svg.raw(
    `<polygon points="${[corner.stag, corner.rational, corner.hare]
      .map(([x, y]) => `${fmt(x)},${fmt(y)}`)
      .join(" ")}" fill="none" stroke="#222222"/>`,
  );
  svg.text(corner.stag[0], corner.stag[1] - 8, "all stag-committed");
  svg.text(corner.rational[0] - 6, corner.rational[1] + 16, "all rational", {
    anchor: "end",
  });
  svg.text(corner.hare[0] + 6, corner.hare[1] + 16, "all hare-committed", {
    anchor: "start",
  });

  // vertical color ramp
  const rampX = WIDTH - 46;
  const rampTop = 70;
  const rampH = 200;
  for (let i = 0; i < 40; i++) {
    svg.rect(rampX, rampTop + (rampH / 40) * i, 12, rampH / 40 + 0.5, heatColor(1 - i / 39));
  }
  svg.text(rampX + 6, rampTop - 6, fmt(hi), { size: 9 });
  svg.text(rampX + 6, rampTop + rampH + 12, fmt(lo), { size: 9 });
  return svg.render();
}
