#!/usr/bin/env node
/**
 * Command line front end.
 *
 *   evalplots pairwise A.csv B.csv --out scatter.svg
 *   evalplots ranks A.csv B.csv C.csv [--out report.txt]
 *   evalplots timings A.csv B.csv --out timings.svg
 *
 * Method names default to the file basenames; pass --labels to override
 * (comma separated, one per file).
 */

import { writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import type { MethodResults } from "./csv.js";
import { readResults } from "./csv.js";
import { buildComparison } from "./compare.js";
import { renderReport } from "./report.js";
import { plotPairwise, plotTimings } from "./svg.js";

const USAGE = `usage:
  evalplots pairwise <a.csv> <b.csv> --out <scatter.svg> [--labels a,b]
  evalplots ranks <csv...> [--out <report.txt>] [--labels ...]
  evalplots timings <csv...> --out <timings.svg> [--labels ...]`;

function readMethods(paths: string[], labels?: string): MethodResults[] {
  let names: (string | undefined)[] = paths.map(() => undefined);
  if (labels !== undefined) {
    const given = labels.split(",").map((s) => s.trim());
    if (given.length !== paths.length || given.some((s) => s === "")) {
      throw new Error(
        `--labels needs ${paths.length} comma separated names, got ${JSON.stringify(labels)}`,
      );
    }
    names = given;
  }
  const methods = paths.map((path, i) => readResults(path, names[i]));
  const seen = new Set<string>();
  for (const method of methods) {
    if (seen.has(method.name)) {
      throw new Error(
        `method name ${JSON.stringify(method.name)} appears twice; disambiguate with --labels`,
      );
    }
    seen.add(method.name);
  }
  return methods;
}

function cmdPairwise(args: string[]): number {
  const { values, positionals } = parseArgs({
    args,
    options: { out: { type: "string" }, labels: { type: "string" } },
    allowPositionals: true,
  });
  if (positionals.length !== 2 || values.out === undefined) {
    throw new Error(`pairwise needs two CSVs and --out\n${USAGE}`);
  }
  const [a, b] = readMethods(positionals, values.labels);
  const { svg, counts, datasets } = plotPairwise(a, b);
  writeFileSync(values.out, svg);
  console.log(
    `${a.name} vs ${b.name}: W/D/L ${counts.wins}/${counts.draws}/${counts.losses} ` +
      `over ${datasets.length} datasets -> ${values.out}`,
  );
  return 0;
}

function cmdRanks(args: string[]): number {
  const { values, positionals } = parseArgs({
    args,
    options: { out: { type: "string" }, labels: { type: "string" } },
    allowPositionals: true,
  });
  if (positionals.length < 2) {
    throw new Error(`ranks needs at least two CSVs\n${USAGE}`);
  }
  const methods = readMethods(positionals, values.labels);
  const report = renderReport(buildComparison(methods));
  if (values.out === undefined) {
    process.stdout.write(report);
  } else {
    writeFileSync(values.out, report);
    console.log(`report for ${methods.length} methods -> ${values.out}`);
  }
  return 0;
}

function cmdTimings(args: string[]): number {
  const { values, positionals } = parseArgs({
    args,
    options: { out: { type: "string" }, labels: { type: "string" } },
    allowPositionals: true,
  });
  if (positionals.length === 0 || values.out === undefined) {
    throw new Error(`timings needs at least one CSV and --out\n${USAGE}`);
  }
  const methods = readMethods(positionals, values.labels);
  writeFileSync(values.out, plotTimings(methods));
  console.log(`timing chart for ${methods.length} method(s) -> ${values.out}`);
  return 0;
}

const COMMANDS: Record<string, (args: string[]) => number> = {
  pairwise: cmdPairwise,
  ranks: cmdRanks,
  timings: cmdTimings,
};

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  const handler = command === undefined ? undefined : COMMANDS[command];
  if (handler === undefined) {
    console.error(USAGE);
    return command === "--help" || command === "-h" ? 0 : 1;
  }
  try {
    return handler(rest);
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(main(process.argv.slice(2)));
}
