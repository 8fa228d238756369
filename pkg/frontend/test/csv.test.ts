import { describe, expect, it } from "vitest";
import { join } from "node:path";
import {
  readAxes,
  readHistograms,
  readMatrix,
  readMeanPath,
  readSweepMetadata,
  readTrajectories,
} from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures");

describe("sweep file readers", () => {
  it("reads the matrix with axes-consistent shape", () => {
    const matrix = readMatrix(join(FIXTURES, "sweep/matrix.csv"));
    const { gamma, Gamma } = readAxes(join(FIXTURES, "sweep/axes.csv"));
    expect(matrix.length).toBe(Gamma.length);
    expect(matrix[0].length).toBe(gamma.length);
    expect(gamma[0]).toBe(0);
    expect(Gamma[Gamma.length - 1]).toBeCloseTo(8, 10);
  });

  it("maps empty cells to NaN", () => {
    const matrix = readMatrix(join(FIXTURES, "sweep/matrix.csv"));
    const flat = matrix.flat();
    expect(flat.some((v) => Number.isNaN(v))).toBe(true);
    expect(flat.some((v) => Number.isFinite(v))).toBe(true);
  });

  it("reads the located maximum from the metadata sidecar", () => {
    const meta = readSweepMetadata(join(FIXTURES, "sweep/sweep.meta.json"));
    expect(meta.maximum).toBeDefined();
    expect(meta.maximum!.value).toBeGreaterThan(0.4);
  });
});

describe("trajectory file readers", () => {
  it("reads the mean path with all columns", () => {
    const mean = readMeanPath(join(FIXTURES, "traj_real/mean.csv"));
    expect(mean.t.length).toBe(601);
    expect(mean.t[0]).toBe(0);
    expect(mean.mean[0]).toEqual([0, 0, 0]);
    expect(mean.sreOfMean.length).toBe(601);
    expect(mean.meanOfSre.length).toBe(601);
  });

  it("groups the long-format trajectory file by path", () => {
    const fan = readTrajectories(join(FIXTURES, "traj_real/trajectories.csv"));
    expect(fan.length).toBe(10); // stride 10 over 100 trajectories
    for (const traj of fan) {
      expect(traj.points.length).toBe(601);
    }
  });

  it("groups histograms by snapshot time", () => {
    const snaps = readHistograms(join(FIXTURES, "traj_real/histograms.csv"));
    expect(snaps.length).toBe(3);
    for (const snap of snaps) {
      expect(snap.counts.length).toBe(50);
      expect(snap.counts.reduce((a, b) => a + b, 0)).toBe(100);
      expect(snap.binLow[0]).toBeCloseTo(0, 10);
      expect(snap.binHigh[49]).toBeCloseTo(Math.log2(1.5), 10);
    }
    expect(snaps[0].time).toBeLessThan(snaps[2].time);
  });
});
