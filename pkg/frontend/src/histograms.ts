/**
 * Overlaid magic histograms at several snapshot times, color-coded by
 * time: early snapshots spread over the range, late snapshots pile up
 * near the steady-state value.
 */

import { writeFileSync } from "node:fs";
import { HistogramSnapshot, readHistograms } from "./csv.js";
import { linearScale, Svg, viridis } from "./svg.js";

export interface HistogramFigureOptions {
  histogramsPath: string;
  outPath: string;
}

export interface HistogramFigureResult {
  svg: string;
  snapshots: number;
  /** count-weighted mean bin center of the latest snapshot */
  lateTimeCenter: number;
}

const PLOT_W = 460;
const PLOT_H = 320;
const MARGIN = { left: 55, right: 25, top: 25, bottom: 50 };

function weightedCenter(snap: HistogramSnapshot): number {
  let mass = 0;
  let sum = 0;
  snap.counts.forEach((c, i) => {
    mass += c;
    sum += c * 0.5 * (snap.binLow[i] + snap.binHigh[i]);
  });
  return mass > 0 ? sum / mass : NaN;
}

export function renderHistograms(opts: HistogramFigureOptions): HistogramFigureResult {
  const snaps = readHistograms(opts.histogramsPath);
  if (snaps.length === 0) {
    throw new Error(`${opts.histogramsPath}: no histogram rows`);
  }

  const width = MARGIN.left + PLOT_W + MARGIN.right;
  const height = MARGIN.top + PLOT_H + MARGIN.bottom;
  const svg = new Svg(width, height);

  const lo = Math.min(...snaps.map((s) => s.binLow[0]));
  const hi = Math.max(...snaps.map((s) => s.binHigh[s.binHigh.length - 1]));
  const cmax = Math.max(...snaps.flatMap((s) => s.counts));
  const sx = linearScale([lo, hi], [MARGIN.left, MARGIN.left + PLOT_W]);
  const sc = linearScale([0, cmax * 1.05], [MARGIN.top + PLOT_H, MARGIN.top]);

  const tEnd = snaps[snaps.length - 1].time;
  snaps.forEach((snap) => {
    const color = viridis(tEnd > 0 ? snap.time / tEnd : 0);
    snap.counts.forEach((c, i) => {
      if (c === 0) return;
      const x = sx(snap.binLow[i]);
      const w = sx(snap.binHigh[i]) - x;
      svg.rect(x, sc(c), w, sc(0) - sc(c), {
        class: "bar", fill: color, opacity: 0.55,
        "data-time": snap.time.toFixed(4),
      });
    });
  });

  // reference levels of the two canonical magic states
  for (const level of [Math.log2(4 / 3), Math.log2(3 / 2)]) {
    if (level >= lo && level <= hi) {
      svg.line(sx(level), MARGIN.top, sx(level), MARGIN.top + PLOT_H, {
        stroke: "#888888", "stroke-dasharray": "5 4",
      });
    }
  }

  svg.rect(MARGIN.left, MARGIN.top, PLOT_W, PLOT_H, { fill: "none", stroke: "black" });
  svg.text(MARGIN.left + PLOT_W / 2, height - 14, "magic M2", {
    "text-anchor": "middle", "font-size": 13,
  });
  svg.text(16, MARGIN.top + PLOT_H / 2, "count", {
    "text-anchor": "middle", "font-size": 13,
    transform: `rotate(-90 16 ${MARGIN.top + PLOT_H / 2})`,
  });
  snaps.forEach((snap, k) => {
    const color = viridis(tEnd > 0 ? snap.time / tEnd : 0);
    svg.rect(MARGIN.left + 10, MARGIN.top + 10 + 18 * k, 12, 12, { fill: color });
    svg.text(MARGIN.left + 28, MARGIN.top + 20 + 18 * k, `t = ${snap.time.toFixed(2)}`, {
      "font-size": 12,
    });
  });

  const out = svg.toString();
  writeFileSync(opts.outPath, out);
  return {
    svg: out,
    snapshots: snaps.length,
    lateTimeCenter: weightedCenter(snaps[snaps.length - 1]),
  };
}
