/**
 * Reader for the results CSVs written by the convpool CLI. One file holds
 * the runs of one method (one transform configuration), one row per
 * dataset/resample pair.
 */

import { readFileSync } from "node:fs";
import { basename } from "node:path";

import Papa from "papaparse";

export const CSV_COLUMNS = [
  "dataset",
  "resample",
  "num_features",
  "representations",
  "pooling",
  "seed",
  "threads",
  "t_fit",
  "t_apply_train",
  "t_apply_test",
  "t_clf",
  "t_pred",
  "acc_train",
  "acc_test",
] as const;

export const TIMING_COLUMNS = [
  "t_fit",
  "t_apply_train",
  "t_apply_test",
  "t_clf",
  "t_pred",
] as const;

export type TimingColumn = (typeof TIMING_COLUMNS)[number];

export interface ResultRow {
  dataset: string;
  resample: number;
  num_features: number;
  representations: string;
  pooling: string;
  seed: number;
  threads: number;
  t_fit: number;
  t_apply_train: number;
  t_apply_test: number;
  t_clf: number;
  t_pred: number;
  acc_train: number;
  acc_test: number;
}

/** One method's results: its display name and parsed rows. */
export interface MethodResults {
  name: string;
  rows: ResultRow[];
}

const INT_COLUMNS = new Set(["resample", "num_features", "seed", "threads"]);
const ACC_COLUMNS = new Set(["acc_train", "acc_test"]);

function parseNumber(
  source: string,
  line: number,
  column: string,
  raw: string,
): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new Error(`${source}:${line}: ${column} ${JSON.stringify(raw)} is not a number`);
  }
  if (INT_COLUMNS.has(column) && !Number.isInteger(value)) {
    throw new Error(`${source}:${line}: ${column} ${raw} is not an integer`);
  }
  if (ACC_COLUMNS.has(column) && (value < 0 || value > 1)) {
    throw new Error(`${source}:${line}: ${column} ${raw} is outside [0, 1]`);
  }
  if (column.startsWith("t_") && value < 0) {
    throw new Error(`${source}:${line}: ${column} ${raw} is negative`);
  }
  return value;
}

/** Parse results CSV text. `source` names the input in error messages. */
export function parseResults(text: string, source = "<string>"): ResultRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    const line = first.row === undefined ? "?" : first.row + 2;
    throw new Error(`${source}:${line}: ${first.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  if (
    fields.length !== CSV_COLUMNS.length ||
    CSV_COLUMNS.some((c, i) => fields[i] !== c)
  ) {
    throw new Error(
      `${source}: unexpected results header ${JSON.stringify(fields.join(","))}`,
    );
  }

  return parsed.data.map((record, i) => {
    const line = i + 2; // 1-based, after the header
    const row: Record<string, string | number> = {};
    for (const column of CSV_COLUMNS) {
      const raw = record[column];
      if (raw === undefined) {
        throw new Error(`${source}:${line}: missing ${column}`);
      }
      row[column] =
        column === "dataset" || column === "representations" || column === "pooling"
          ? raw
          : parseNumber(source, line, column, raw);
    }
    if ((row.resample as number) < 0) {
      throw new Error(`${source}:${line}: resample ${row.resample} is negative`);
    }
    return row as unknown as ResultRow;
  });
}

/** Load one method's results; the name defaults to the file's basename. */
export function readResults(path: string, name?: string): MethodResults {
  const rows = parseResults(readFileSync(path, "utf8"), path);
  return { name: name ?? basename(path).replace(/\.csv$/i, ""), rows };
}

/** Mean test accuracy per dataset, averaged over that dataset's resamples. */
export function meanTestAccuracy(rows: ResultRow[]): Map<string, number> {
  const sums = new Map<string, { total: number; count: number }>();
  for (const row of rows) {
    const entry = sums.get(row.dataset) ?? { total: 0, count: 0 };
    entry.total += row.acc_test;
    entry.count += 1;
    sums.set(row.dataset, entry);
  }
  const means = new Map<string, number>();
  for (const [dataset, { total, count }] of sums) {
    means.set(dataset, total / count);
  }
  return means;
}

/** Mean seconds per run for each timing stage, over all rows. */
export function meanStageTimes(rows: ResultRow[]): Record<TimingColumn, number> {
  if (rows.length === 0) {
    throw new Error("no rows to average");
  }
  const out = {} as Record<TimingColumn, number>;
  for (const column of TIMING_COLUMNS) {
    let total = 0;
    for (const row of rows) {
      total += row[column];
    }
    out[column] = total / rows.length;
  }
  return out;
}
