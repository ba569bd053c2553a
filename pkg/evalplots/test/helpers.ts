import { CSV_COLUMNS } from "../src/csv.js";
import type { MethodResults, ResultRow } from "../src/csv.js";

export interface RowSpec {
  dataset: string;
  acc_test: number;
  resample?: number;
  acc_train?: number;
  t_fit?: number;
  t_apply_train?: number;
  t_apply_test?: number;
  t_clf?: number;
  t_pred?: number;
}

export function makeRow(spec: RowSpec): ResultRow {
  return {
    dataset: spec.dataset,
    resample: spec.resample ?? 0,
    num_features: 49728,
    representations: "base+first_diff",
    pooling: "ppv+mpv+mipv+lspv",
    seed: 0,
    threads: 1,
    t_fit: spec.t_fit ?? 0.5,
    t_apply_train: spec.t_apply_train ?? 1.25,
    t_apply_test: spec.t_apply_test ?? 1.0,
    t_clf: spec.t_clf ?? 0.25,
    t_pred: spec.t_pred ?? 0.125,
    acc_train: spec.acc_train ?? 1,
    acc_test: spec.acc_test,
  };
}

export function method(name: string, specs: RowSpec[]): MethodResults {
  return { name, rows: specs.map(makeRow) };
}

/** Render rows to CSV text with the exact schema header. */
export function csvText(specs: RowSpec[]): string {
  const lines = [CSV_COLUMNS.join(",")];
  for (const spec of specs) {
    const row = makeRow(spec) as unknown as Record<string, string | number>;
    lines.push(CSV_COLUMNS.map((c) => String(row[c])).join(","));
  }
  return lines.join("\n") + "\n";
}
