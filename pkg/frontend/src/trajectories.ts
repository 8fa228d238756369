/**
 * Two-panel trajectory figure: the x = 0 Bloch-disk cross-section with a
 * gray fan of single trajectories and the time-colored mean path, plus the
 * magic time series (magic of the mean state and mean of the per-path
 * magic) with the two reference levels log2(4/3) and log2(3/2).
 */

import { existsSync, writeFileSync } from "node:fs";
import { readMeanPath, readTrajectories, Trajectory } from "./csv.js";
import { linearScale, Svg, viridis } from "./svg.js";

export interface TrajectoryFigureOptions {
  meanPath: string;
  trajectoriesPath?: string;
  outPath: string;
}

export interface TrajectoryFigureResult {
  svg: string;
  fanSize: number;
  finalSreOfMean: number;
  finalMeanOfSre: number;
}

const M2_H = Math.log2(4 / 3);
const M2_T = Math.log2(3 / 2);

const PANEL = 340;
const GAP = 70;
const MARGIN = { left: 55, right: 30, top: 30, bottom: 50 };

export function renderTrajectories(opts: TrajectoryFigureOptions): TrajectoryFigureResult {
  const mean = readMeanPath(opts.meanPath);
  const fan: Trajectory[] =
    opts.trajectoriesPath && existsSync(opts.trajectoriesPath)
      ? readTrajectories(opts.trajectoriesPath)
      : [];

  const width = MARGIN.left + PANEL + GAP + PANEL + MARGIN.right;
  const height = MARGIN.top + PANEL + MARGIN.bottom;
  const svg = new Svg(width, height);

  // left panel: (y, z) disk
  const cx = MARGIN.left + PANEL / 2;
  const cy = MARGIN.top + PANEL / 2;
  const sy = linearScale([-1, 1], [cx - PANEL / 2, cx + PANEL / 2]);
  const sz = linearScale([-1, 1], [cy + PANEL / 2, cy - PANEL / 2]);
  svg.circle(cx, cy, PANEL / 2, { fill: "#f8f8f8", stroke: "black" });
  svg.line(sy(-1), sz(0), sy(1), sz(0), { stroke: "#dddddd" });
  svg.line(sy(0), sz(-1), sy(0), sz(1), { stroke: "#dddddd" });

  for (const traj of fan) {
    svg.polyline(
      traj.points.map(([, y, z]) => [sy(y), sz(z)] as [number, number]),
      { class: "fan", stroke: "#999999", "stroke-width": 0.6, opacity: 0.6 },
    );
  }
  // time-colored mean path drawn as short colored segments
  const tEnd = mean.t[mean.t.length - 1];
  for (let k = 1; k < mean.t.length; k++) {
    const [, y0, z0] = mean.mean[k - 1];
    const [, y1, z1] = mean.mean[k];
    svg.line(sy(y0), sz(z0), sy(y1), sz(z1), {
      stroke: viridis(mean.t[k] / tEnd), "stroke-width": 2.5,
    });
  }
  svg.text(cx, height - 14, "Bloch disk (x = 0 section): y vs z", {
    "text-anchor": "middle", "font-size": 13,
  });

  // right panel: magic vs time
  const px = MARGIN.left + PANEL + GAP;
  const st = linearScale([0, tEnd], [px, px + PANEL]);
  const sm = linearScale([0, M2_T * 1.08], [MARGIN.top + PANEL, MARGIN.top]);
  svg.rect(px, MARGIN.top, PANEL, PANEL, { fill: "none", stroke: "black" });

  for (const [level, label] of [[M2_H, "log2(4/3)"], [M2_T, "log2(3/2)"]] as const) {
    svg.line(st(0), sm(level), st(tEnd), sm(level), {
      stroke: "#888888", "stroke-dasharray": "5 4",
    });
    svg.text(st(tEnd) - 4, sm(level) - 4, label, {
      "text-anchor": "end", "font-size": 11, fill: "#555555",
    });
  }

  svg.polyline(
    mean.t.map((t, k) => [st(t), sm(mean.sreOfMean[k])] as [number, number]),
    { class: "sre-of-mean", stroke: "#d62728", "stroke-width": 2 },
  );
  svg.polyline(
    mean.t.map((t, k) => [st(t), sm(mean.meanOfSre[k])] as [number, number]),
    { class: "mean-of-sre", stroke: "#1f77b4", "stroke-width": 2 },
  );
  svg.text(px + PANEL / 2, height - 14, "magic vs time tJ", {
    "text-anchor": "middle", "font-size": 13,
  });
  svg.text(px + 8, MARGIN.top + 16, "red: M2 of mean state, blue: mean of per-path M2", {
    "font-size": 11, fill: "#333333",
  });

  const out = svg.toString();
  writeFileSync(opts.outPath, out);
  return {
    svg: out,
    fanSize: fan.length,
    finalSreOfMean: mean.sreOfMean[mean.sreOfMean.length - 1],
    finalMeanOfSre: mean.meanOfSre[mean.meanOfSre.length - 1],
  };
}
