import { z } from "zod";

/** Column order of the simulation harness CSV output. */
export const CSV_COLUMNS = [
  "eb_n0_db",
  "ka",
  "n",
  "n_c",
  "inner_len",
  "detector",
  "trials",
  "arrivals",
  "misses",
  "pupe",
  "ci_lo",
  "ci_hi",
  "seed",
] as const;

export type ColumnName = (typeof CSV_COLUMNS)[number];

export const SweepRowSchema = z.object({
  eb_n0_db: z.number(),
  ka: z.number(),
  n: z.number().int().positive(),
  n_c: z.number().int().positive(),
  inner_len: z.number().int().min(2),
  detector: z.enum(["energy", "preamble"]),
  trials: z.number().int().positive(),
  arrivals: z.number().int().nonnegative(),
  misses: z.number().int().nonnegative(),
  pupe: z.number().min(0).max(1),
  ci_lo: z.number().min(0).max(1),
  ci_hi: z.number().min(0).max(1),
  seed: z.number().int(),
});

export type SweepRow = z.infer<typeof SweepRowSchema>;

/** Columns a curve family may be split on. */
export const GROUP_COLUMNS = ["inner_len", "detector", "ka"] as const;
export type GroupColumn = (typeof GROUP_COLUMNS)[number];

/** One plotted point; exactly what --dump-points emits. */
export interface Point {
  group: string;
  x: number;
  y: number;
  ciLo: number;
  ciHi: number;
}
