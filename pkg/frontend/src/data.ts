import { readFileSync } from "fs";
import Papa from "papaparse";
import {
  CSV_COLUMNS,
  GROUP_COLUMNS,
  GroupColumn,
  Point,
  SweepRow,
  SweepRowSchema,
} from "./schema.js";

/** Parse harness CSV text into validated rows; source order is preserved. */
export function parseSweepCsv(text: string): SweepRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  for (const col of CSV_COLUMNS) {
    if (!fields.includes(col)) {
      throw new Error(`missing column "${col}" (found: ${fields.join(",")})`);
    }
  }
  if (parsed.data.length === 0) {
    throw new Error("no data rows");
  }
  return parsed.data.map((raw, i) => {
    const candidate: Record<string, unknown> = { detector: raw.detector };
    for (const col of CSV_COLUMNS) {
      if (col !== "detector") candidate[col] = Number(raw[col]);
    }
    const res = SweepRowSchema.safeParse(candidate);
    if (!res.success) {
      throw new Error(`row ${i + 1} invalid: ${res.error.issues[0].message}`);
    }
    return res.data;
  });
}

export function loadSweepCsvs(paths: string[]): SweepRow[] {
  const rows = paths.flatMap((p) => parseSweepCsv(readFileSync(p, "utf-8")));
  if (rows.length === 0) throw new Error("no data rows");
  return rows;
}

export function assertGroupColumn(name: string): GroupColumn {
  if (!(GROUP_COLUMNS as readonly string[]).includes(name)) {
    throw new Error(
      `unknown group column "${name}" (expected one of ${GROUP_COLUMNS.join(", ")})`
    );
  }
  return name as GroupColumn;
}

/**
 * Project rows onto plotted points: x from `xColumn`, y/ci from the PUPE
 * columns (or the Eb/N0 column for required-Eb/N0 curves), one group per
 * distinct value of `groupBy`. Source order within a group is preserved.
 */
export function toPoints(
  rows: SweepRow[],
  groupBy: GroupColumn,
  xColumn: "eb_n0_db" | "ka",
  yColumn: "pupe" | "eb_n0_db"
): Point[] {
  return rows.map((r) => ({
    group: String(r[groupBy]),
    x: r[xColumn],
    y: r[yColumn],
    ciLo: yColumn === "pupe" ? r.ci_lo : r.eb_n0_db,
    ciHi: yColumn === "pupe" ? r.ci_hi : r.eb_n0_db,
  }));
}

export function groupPoints(points: Point[]): Map<string, Point[]> {
  const out = new Map<string, Point[]>();
  for (const p of points) {
    const arr = out.get(p.group);
    if (arr) arr.push(p);
    else out.set(p.group, [p]);
  }
  return out;
}

/** Serialize plotted points; the round-trip counterpart of the plot. */
export function dumpPoints(points: Point[]): string {
  const lines = ["group,x,y,ci_lo,ci_hi"];
  for (const p of points) {
    lines.push(`${p.group},${p.x},${p.y},${p.ciLo},${p.ciHi}`);
  }
  return lines.join("\n") + "\n";
}

export function parseDumpedPoints(text: string): Point[] {
  const lines = text.trim().split("\n");
  if (lines[0] !== "group,x,y,ci_lo,ci_hi") {
    throw new Error(`unexpected points header "${lines[0]}"`);
  }
  return lines.slice(1).map((line) => {
    const [group, x, y, ciLo, ciHi] = line.split(",");
    return {
      group,
      x: Number(x),
      y: Number(y),
      ciLo: Number(ciLo),
      ciHi: Number(ciHi),
    };
  });
}
