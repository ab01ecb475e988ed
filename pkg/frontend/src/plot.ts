import { writeFileSync } from "fs";
import {
  assertGroupColumn,
  dumpPoints,
  groupPoints,
  loadSweepCsvs,
  toPoints,
} from "./data.js";
import { GroupColumn, Point } from "./schema.js";
import { buildChart } from "./svg.js";

export interface CurveSpec {
  csvPaths: string[];
  groupBy: string;
  out: string;
  dumpPointsPath?: string;
  title?: string;
}

const GROUP_LABELS: Record<GroupColumn, string> = {
  inner_len: "window",
  detector: "detector",
  ka: "Ka",
};

function finish(spec: CurveSpec, points: Point[], svg: string): Point[] {
  writeFileSync(spec.out, svg);
  if (spec.dumpPointsPath) {
    writeFileSync(spec.dumpPointsPath, dumpPoints(points));
  }
  return points;
}

/** PUPE vs Eb/N0 curves (log-scale PUPE axis, shaded 95% CI bands). */
export function plotPupeCurves(spec: CurveSpec): Point[] {
  const groupBy = assertGroupColumn(spec.groupBy);
  const rows = loadSweepCsvs(spec.csvPaths);
  const points = toPoints(rows, groupBy, "eb_n0_db", "pupe");
  const svg = buildChart({
    title: spec.title ?? "PUPE vs Eb/N0",
    xLabel: "Eb/N0 (dB)",
    yLabel: "PUPE",
    yScale: "log",
    groups: groupPoints(points),
    groupLabel: GROUP_LABELS[groupBy],
    ciBands: true,
  });
  return finish(spec, points, svg);
}

/** Required Eb/N0 (meeting the target PUPE) vs load Ka. */
export function plotRequiredEbn0(spec: CurveSpec): Point[] {
  const groupBy = assertGroupColumn(spec.groupBy);
  const rows = loadSweepCsvs(spec.csvPaths);
  const points = toPoints(rows, groupBy, "ka", "eb_n0_db");
  const svg = buildChart({
    title: spec.title ?? "Required Eb/N0 vs load",
    xLabel: "Ka (arrivals per packet duration)",
    yLabel: "Required Eb/N0 (dB)",
    yScale: "linear",
    groups: groupPoints(points),
    groupLabel: GROUP_LABELS[groupBy],
    ciBands: false,
  });
  return finish(spec, points, svg);
}
