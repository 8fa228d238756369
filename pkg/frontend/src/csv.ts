/**
 * Readers for the CSV/JSON files produced by the simulation CLI.
 *
 * All files are comma-separated with a header row; empty cells encode
 * undefined (NaN) values.  These readers only reshape the data, they do
 * not compute anything new.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export interface Table {
  header: string[];
  rows: string[][];
}

export function readTable(path: string): Table {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new Error(`failed to parse ${path}: ${parsed.errors[0].message}`);
  }
  const [header, ...rows] = parsed.data;
  return { header, rows };
}

function toNumber(cell: string): number {
  return cell === "" ? NaN : Number(cell);
}

/** Phase-diagram matrix: rows indexed by Gamma, columns by gamma. */
export function readMatrix(path: string): number[][] {
  const { rows } = readTable(path);
  return rows.map((row) => row.map(toNumber));
}

/** Axis values from the long-format axes file (axis, index, value). */
export function readAxes(path: string): { gamma: number[]; Gamma: number[] } {
  const { rows } = readTable(path);
  const gamma: number[] = [];
  const Gamma: number[] = [];
  for (const [axis, index, value] of rows) {
    const target = axis === "gamma" ? gamma : Gamma;
    target[Number(index)] = Number(value);
  }
  return { gamma, Gamma };
}

export interface MeanPath {
  t: number[];
  mean: Array<[number, number, number]>;
  weightedMean: Array<[number, number, number]>;
  sreOfMean: number[];
  meanOfSre: number[];
}

export function readMeanPath(path: string): MeanPath {
  const { header, rows } = readTable(path);
  const col = (name: string) => {
    const i = header.indexOf(name);
    if (i < 0) throw new Error(`${path}: missing column '${name}'`);
    return i;
  };
  const [it, ix, iy, iz] = [col("t"), col("x"), col("y"), col("z")];
  const [iwx, iwy, iwz] = [col("x_weighted"), col("y_weighted"), col("z_weighted")];
  const [ism, ims] = [col("sre_of_mean"), col("mean_of_sre")];
  return {
    t: rows.map((r) => toNumber(r[it])),
    mean: rows.map((r) => [toNumber(r[ix]), toNumber(r[iy]), toNumber(r[iz])]),
    weightedMean: rows.map((r) => [toNumber(r[iwx]), toNumber(r[iwy]), toNumber(r[iwz])]),
    sreOfMean: rows.map((r) => toNumber(r[ism])),
    meanOfSre: rows.map((r) => toNumber(r[ims])),
  };
}

export interface Trajectory {
  id: number;
  t: number[];
  points: Array<[number, number, number]>;
}

/** Long-format per-trajectory file grouped back into individual paths. */
export function readTrajectories(path: string): Trajectory[] {
  const { header, rows } = readTable(path);
  if (header[0] !== "trajectory") {
    throw new Error(`${path}: expected a long-format trajectory file`);
  }
  const byId = new Map<number, Trajectory>();
  for (const row of rows) {
    const id = Number(row[0]);
    let traj = byId.get(id);
    if (!traj) {
      traj = { id, t: [], points: [] };
      byId.set(id, traj);
    }
    traj.t.push(toNumber(row[1]));
    traj.points.push([toNumber(row[2]), toNumber(row[3]), toNumber(row[4])]);
  }
  return [...byId.values()].sort((a, b) => a.id - b.id);
}

export interface HistogramSnapshot {
  time: number;
  binLow: number[];
  binHigh: number[];
  counts: number[];
}

/** Histogram file (time, bin_low, bin_high, count) grouped by snapshot. */
export function readHistograms(path: string): HistogramSnapshot[] {
  const { rows } = readTable(path);
  const byTime = new Map<number, HistogramSnapshot>();
  for (const [time, lo, hi, count] of rows) {
    const t = Number(time);
    let snap = byTime.get(t);
    if (!snap) {
      snap = { time: t, binLow: [], binHigh: [], counts: [] };
      byTime.set(t, snap);
    }
    snap.binLow.push(Number(lo));
    snap.binHigh.push(Number(hi));
    snap.counts.push(Number(count));
  }
  return [...byTime.values()].sort((a, b) => a.time - b.time);
}

export interface SweepMetadata {
  maximum?: { gamma: number; Gamma: number; value: number };
  [key: string]: unknown;
}

export function readSweepMetadata(path: string): SweepMetadata {
  return JSON.parse(readFileSync(path, "utf8")) as SweepMetadata;
}
