#!/usr/bin/env node
import yargs, { type Argv } from "yargs";
import { hideBin } from "yargs/helpers";
import { plotPupeCurves, plotRequiredEbn0 } from "./plot.js";

interface PlotArgs {
  csv: string[];
  out: string;
  "dump-points"?: string;
  title?: string;
  group: string;
}

function common(y: Argv, defaultGroup: string): Argv<PlotArgs> {
  return y
    .option("csv", {
      type: "string",
      array: true,
      demandOption: true,
      describe: "harness sweep CSV file(s)",
    })
    .option("out", {
      type: "string",
      demandOption: true,
      describe: "output SVG path",
    })
    .option("dump-points", {
      type: "string",
      describe: "also write the plotted (group,x,y,ci) tuples as CSV",
    })
    .option("title", { type: "string" })
    .option("group", {
      type: "string",
      default: defaultGroup,
      describe: "column to split curves on (inner_len | detector | ka)",
    }) as Argv<PlotArgs>;
}

function run(
  plot: typeof plotPupeCurves,
  argv: PlotArgs
): void {
  const pts = plot({
    csvPaths: argv.csv,
    groupBy: argv.group,
    out: argv.out,
    dumpPointsPath: argv["dump-points"],
    title: argv.title,
  });
  console.log(`wrote ${argv.out} (${pts.length} points)`);
}

await yargs(hideBin(process.argv))
  .scriptName("aura-plots")
  .command(
    "pupe",
    "PUPE vs Eb/N0 curves (log y, CI bands)",
    (y) => common(y, "inner_len"),
    (argv) => run(plotPupeCurves, argv)
  )
  .command(
    "minebn0",
    "required Eb/N0 vs load Ka",
    (y) => common(y, "detector"),
    (argv) => run(plotRequiredEbn0, argv)
  )
  .demandCommand(1)
  .strict()
  .fail((msg, err) => {
    console.error(err?.message ?? msg);
    process.exit(1);
  })
  .parseAsync();
