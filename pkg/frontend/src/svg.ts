/** Minimal deterministic SVG line-chart builder (no plotting library). */

import { Point } from "./schema.js";

export interface ChartOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  yScale: "linear" | "log";
  /** groups in first-seen order, each with points in source order */
  groups: Map<string, Point[]>;
  /** label prefix in the legend, e.g. "window" or "detector" */
  groupLabel: string;
  /** shade ciLo..ciHi bands (skipped when the band is degenerate) */
  ciBands: boolean;
  /** floor for log-scale positioning of zero values; data is never altered */
  logFloor?: number;
}

const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#f77f00", "#7209b7", "#555"];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const nice = [1, 2, 5, 10].map((m) => m * mag);
  const step = nice.find((n) => n >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 0.01; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(min)); e <= Math.ceil(Math.log10(max)); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

function fmt(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-2 || Math.abs(v) >= 1e4)) {
    return v.toExponential(0);
  }
  return v % 1 === 0 ? String(v) : String(Number(v.toPrecision(3)));
}

export function buildChart(opts: ChartOpts): string {
  const { groups, yScale } = opts;
  const all = [...groups.values()].flat();
  if (all.length === 0) throw new Error("no data rows");

  const W = 700, H = 420;
  const ml = 64, mr = 20, mt = 34, mb = 92;
  const pw = W - ml - mr;
  const ph = H - mt - mb;

  const xs = all.map((p) => p.x);
  let xMin = Math.min(...xs), xMax = Math.max(...xs);
  if (xMin === xMax) { xMin -= 1; xMax += 1; }
  const xOf = (v: number) => ml + ((v - xMin) / (xMax - xMin)) * pw;

  const yVals = all.flatMap((p) => (opts.ciBands ? [p.y, p.ciLo, p.ciHi] : [p.y]));
  const floor = opts.logFloor ?? 1e-5;
  let yMin: number, yMax: number, yOf: (v: number) => number, yTicks: number[];
  if (yScale === "log") {
    const positive = yVals.filter((v) => v > 0);
    yMin = positive.length ? Math.min(...positive, floor * 10) : floor;
    yMin = Math.max(Math.min(yMin, 1e-1), floor);
    yMax = Math.max(...yVals, yMin * 10, 1e-1);
    const lo = Math.log10(yMin), hi = Math.log10(yMax);
    yOf = (v: number) =>
      mt + ph - ((Math.log10(Math.max(v, yMin)) - lo) / (hi - lo || 1)) * ph;
    yTicks = decadeTicks(yMin, yMax);
  } else {
    yMin = Math.min(...yVals);
    yMax = Math.max(...yVals);
    if (yMin === yMax) { yMin -= 1; yMax += 1; }
    const pad = (yMax - yMin) * 0.08;
    yMin -= pad; yMax += pad;
    yOf = (v: number) => mt + ph - ((v - yMin) / (yMax - yMin)) * ph;
    yTicks = niceTicks(yMin, yMax, 6);
  }

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
      `viewBox="0 0 ${W} ${H}" font-family="Helvetica,Arial,sans-serif">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="20" text-anchor="middle" font-size="14" ` +
      `font-weight="bold">${esc(opts.title)}</text>`
  );

  // gridlines + axis labels
  for (const t of yTicks) {
    const y = yOf(t);
    parts.push(
      `<line x1="${ml}" y1="${y.toFixed(2)}" x2="${ml + pw}" y2="${y.toFixed(2)}" ` +
        `stroke="#ddd" stroke-width="0.5"/>`
    );
    parts.push(
      `<text x="${ml - 6}" y="${(y + 3.5).toFixed(2)}" text-anchor="end" ` +
        `font-size="10">${esc(fmt(t))}</text>`
    );
  }
  for (const t of niceTicks(xMin, xMax, 8)) {
    const x = xOf(t);
    parts.push(
      `<line x1="${x.toFixed(2)}" y1="${mt}" x2="${x.toFixed(2)}" y2="${mt + ph}" ` +
        `stroke="#eee" stroke-width="0.5"/>`
    );
    parts.push(
      `<text x="${x.toFixed(2)}" y="${mt + ph + 14}" text-anchor="middle" ` +
        `font-size="10">${esc(fmt(t))}</text>`
    );
  }
  parts.push(
    `<rect x="${ml}" y="${mt}" width="${pw}" height="${ph}" fill="none" ` +
      `stroke="#333" stroke-width="1"/>`
  );
  parts.push(
    `<text x="${ml + pw / 2}" y="${mt + ph + 32}" text-anchor="middle" ` +
      `font-size="12">${esc(opts.xLabel)}</text>`
  );
  parts.push(
    `<text x="16" y="${mt + ph / 2}" text-anchor="middle" font-size="12" ` +
      `transform="rotate(-90 16 ${mt + ph / 2})">${esc(opts.yLabel)}</text>`
  );

  // curves
  let ci = 0;
  for (const [name, pts] of groups) {
    const color = PALETTE[ci % PALETTE.length];
    ci += 1;
    if (opts.ciBands && pts.some((p) => p.ciHi > p.ciLo)) {
      const upper = pts.map((p) => `${xOf(p.x).toFixed(2)},${yOf(p.ciHi).toFixed(2)}`);
      const lower = [...pts]
        .reverse()
        .map((p) => `${xOf(p.x).toFixed(2)},${yOf(p.ciLo).toFixed(2)}`);
      parts.push(
        `<polygon points="${upper.concat(lower).join(" ")}" fill="${color}" ` +
          `opacity="0.12"/>`
      );
    }
    if (pts.length > 1) {
      const d = pts
        .map((p, i) => `${i ? "L" : "M"}${xOf(p.x).toFixed(2)} ${yOf(p.y).toFixed(2)}`)
        .join(" ");
      parts.push(
        `<path d="${d}" fill="none" stroke="${color}" stroke-width="1.6"/>`
      );
    }
    for (const p of pts) {
      parts.push(
        `<circle cx="${xOf(p.x).toFixed(2)}" cy="${yOf(p.y).toFixed(2)}" r="3" ` +
          `fill="${color}"/>`
      );
    }
  }

  // legend
  let lx = ml;
  const ly = H - 40;
  let i = 0;
  for (const name of groups.keys()) {
    const color = PALETTE[i % PALETTE.length];
    i += 1;
    const label = `${opts.groupLabel}=${name}`;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" stroke="${color}" ` +
        `stroke-width="2"/>`
    );
    parts.push(
      `<text x="${lx + 22}" y="${ly + 3.5}" font-size="11">${esc(label)}</text>`
    );
    lx += 30 + label.length * 6.2;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
