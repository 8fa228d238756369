/**
 * Phase-diagram heatmap: steady magic (or any sweep quantity) over the
 * (noise strength, decay rate) plane, with the two transition lines and a
 * star at the located maximum from the sweep metadata.
 */

import { existsSync, writeFileSync } from "node:fs";
import { readAxes, readMatrix, readSweepMetadata } from "./csv.js";
import { linearScale, Svg, ticks, viridis } from "./svg.js";

export interface PhaseDiagramOptions {
  matrixPath: string;
  axesPath: string;
  metaPath?: string;
  outPath: string;
  /** fill for undefined (NaN) cells */
  maskColor?: string;
}

export interface PhaseDiagramResult {
  svg: string;
  nanCells: number;
  star?: { gamma: number; Gamma: number; value: number };
}

const MARGIN = { left: 60, right: 110, top: 30, bottom: 50 };
const PLOT_W = 420;
const PLOT_H = 360;

export function renderPhaseDiagram(opts: PhaseDiagramOptions): PhaseDiagramResult {
  const matrix = readMatrix(opts.matrixPath);
  const { gamma, Gamma } = readAxes(opts.axesPath);
  if (matrix.length !== Gamma.length || matrix[0].length !== gamma.length) {
    throw new Error(
      `matrix is ${matrix.length}x${matrix[0].length} but axes have ` +
      `${Gamma.length}x${gamma.length} values`,
    );
  }
  const meta = opts.metaPath && existsSync(opts.metaPath)
    ? readSweepMetadata(opts.metaPath)
    : {};
  const maskColor = opts.maskColor ?? "#bbbbbb";

  const width = MARGIN.left + PLOT_W + MARGIN.right;
  const height = MARGIN.top + PLOT_H + MARGIN.bottom;
  const svg = new Svg(width, height);

  const flat = matrix.flat().filter((v) => Number.isFinite(v));
  const vmax = Math.max(...flat);
  const vmin = Math.min(...flat, 0);

  // cell-centered scales: y grows downward, large Gamma on top
  const sx = linearScale([gamma[0], gamma[gamma.length - 1]], [MARGIN.left, MARGIN.left + PLOT_W]);
  const sy = linearScale([Gamma[0], Gamma[Gamma.length - 1]], [MARGIN.top + PLOT_H, MARGIN.top]);
  const cellW = PLOT_W / (gamma.length - 1);
  const cellH = PLOT_H / (Gamma.length - 1);

  let nanCells = 0;
  matrix.forEach((row, i) => {
    row.forEach((v, j) => {
      const fill = Number.isFinite(v) ? viridis((v - vmin) / (vmax - vmin)) : maskColor;
      if (!Number.isFinite(v)) nanCells += 1;
      svg.rect(sx(gamma[j]) - cellW / 2, sy(Gamma[i]) - cellH / 2, cellW, cellH, { fill });
    });
  });

  // transition lines: decay-rate coalescence at Gamma = 2J and the
  // noise-induced boundary gamma Gamma = 1/2
  if (Gamma[0] <= 2 && 2 <= Gamma[Gamma.length - 1]) {
    svg.line(sx.range[0], sy(2), sx.range[1], sy(2), {
      stroke: "white", "stroke-dasharray": "6 4", "stroke-width": 1.5,
    });
  }
  const boundary: Array<[number, number]> = [];
  for (const g of gamma) {
    if (g > 0) {
      const G = 0.5 / g;
      if (G >= Gamma[0] && G <= Gamma[Gamma.length - 1]) boundary.push([sx(g), sy(G)]);
    }
  }
  if (boundary.length > 1) {
    svg.polyline(boundary, { stroke: "white", "stroke-width": 2 });
  }

  let star: PhaseDiagramResult["star"];
  if (meta.maximum) {
    star = meta.maximum;
    svg.star(sx(star.gamma), sy(star.Gamma), 9, {
      fill: "white", stroke: "black", "stroke-width": 0.8,
    });
  }

  // axes, ticks and labels
  svg.rect(MARGIN.left, MARGIN.top, PLOT_W, PLOT_H, {
    fill: "none", stroke: "black", "stroke-width": 1,
  });
  for (const t of ticks(sx.domain[0], sx.domain[1])) {
    svg.line(sx(t), MARGIN.top + PLOT_H, sx(t), MARGIN.top + PLOT_H + 5, { stroke: "black" });
    svg.text(sx(t), MARGIN.top + PLOT_H + 20, t.toString(), {
      "text-anchor": "middle", "font-size": 12,
    });
  }
  for (const t of ticks(sy.domain[0], sy.domain[1])) {
    svg.line(MARGIN.left - 5, sy(t), MARGIN.left, sy(t), { stroke: "black" });
    svg.text(MARGIN.left - 10, sy(t) + 4, t.toString(), {
      "text-anchor": "end", "font-size": 12,
    });
  }
  svg.text(MARGIN.left + PLOT_W / 2, height - 12, "noise strength γJ", {
    "text-anchor": "middle", "font-size": 14,
  });
  svg.text(16, MARGIN.top + PLOT_H / 2, "decay rate Γ/J", {
    "text-anchor": "middle", "font-size": 14,
    transform: `rotate(-90 16 ${MARGIN.top + PLOT_H / 2})`,
  });

  // color bar
  const barX = MARGIN.left + PLOT_W + 30;
  const steps = 64;
  for (let k = 0; k < steps; k++) {
    const y = MARGIN.top + PLOT_H - ((k + 1) / steps) * PLOT_H;
    svg.rect(barX, y, 18, PLOT_H / steps + 0.5, { fill: viridis(k / (steps - 1)) });
  }
  svg.rect(barX, MARGIN.top, 18, PLOT_H, { fill: "none", stroke: "black" });
  svg.text(barX + 24, MARGIN.top + 10, vmax.toFixed(3), { "font-size": 11 });
  svg.text(barX + 24, MARGIN.top + PLOT_H, vmin.toFixed(3), { "font-size": 11 });

  const out = svg.toString();
  writeFileSync(opts.outPath, out);
  return { svg: out, nanCells, star };
}
