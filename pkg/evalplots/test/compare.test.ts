import { describe, expect, it } from "vitest";

import {
  buildComparison,
  pairwiseCounts,
  rankRow,
  sharedDatasets,
} from "../src/compare.js";
import type { MethodResults, ResultRow } from "../src/csv.js";
import { method } from "./helpers.js";
import type { RowSpec } from "./helpers.js";

/**
 * Spreadsheet-style recount, written independently of compare.ts: pivot
 * rows into dataset -> [sum, count] cells, average, then count sign(a - b).
 */
function recount(a: MethodResults, b: MethodResults) {
  const pivot = (rows: ResultRow[]) => {
    const cells: Record<string, [number, number]> = {};
    for (const r of rows) {
      const cell = (cells[r.dataset] ??= [0, 0]);
      cell[0] += r.acc_test;
      cell[1] += 1;
    }
    return cells;
  };
  const cellsA = pivot(a.rows);
  const cellsB = pivot(b.rows);
  const tally = { wins: 0, draws: 0, losses: 0 };
  for (const dataset of Object.keys(cellsA).sort()) {
    const meanA = cellsA[dataset][0] / cellsA[dataset][1];
    const meanB = cellsB[dataset][0] / cellsB[dataset][1];
    const sign = Math.sign(meanA - meanB);
    if (sign > 0) tally.wins += 1;
    else if (sign < 0) tally.losses += 1;
    else tally.draws += 1;
  }
  return tally;
}

// small deterministic PRNG so the fuzz cases are reproducible
function lcg(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
}

describe("pairwiseCounts", () => {
  it("identical results are all draws", () => {
    const specs: RowSpec[] = [
      { dataset: "A", acc_test: 0.9 },
      { dataset: "B", acc_test: 0.72 },
      { dataset: "C", acc_test: 0.5 },
    ];
    expect(pairwiseCounts(method("x", specs), method("y", specs))).toEqual({
      wins: 0,
      draws: 3,
      losses: 0,
    });
  });

  it("a uniform +0.01 shift wins everywhere, by orientation", () => {
    const base: RowSpec[] = [
      { dataset: "A", acc_test: 0.9 },
      { dataset: "B", acc_test: 0.72 },
      { dataset: "C", acc_test: 0.5 },
      { dataset: "D", acc_test: 0.31 },
    ];
    const shifted = base.map((s) => ({ ...s, acc_test: s.acc_test + 0.01 }));
    const lo = method("lo", base);
    const hi = method("hi", shifted);
    expect(pairwiseCounts(hi, lo)).toEqual({ wins: 4, draws: 0, losses: 0 });
    expect(pairwiseCounts(lo, hi)).toEqual({ wins: 0, draws: 0, losses: 4 });
  });

  it("matches a hand-computed tally on a mixed table", () => {
    // Hand tally over the six datasets below, method a vs method b:
    //   Wren  a (0.9+0.8)/2=0.85  b (0.8+0.8)/2=0.80  -> a wins
    //   Swift a 0.70              b (0.7+0.7)/2=0.70  -> draw
    //   Heron a (0.5+0.6+0.7)/3   b 0.65              -> a loses
    //   Crane a 1.00              b (0.9+1.0)/2=0.95  -> a wins
    //   Finch a (0.9+0.9)/2=0.90  b 0.90              -> draw
    //   Raven a 0.30              b 0.40              -> a loses
    // Wins 2 (Wren, Crane), draws 2 (Swift, Finch), losses 2 (Heron, Raven).
    const a = method("a", [
      { dataset: "Wren", resample: 0, acc_test: 0.9 },
      { dataset: "Wren", resample: 1, acc_test: 0.8 },
      { dataset: "Swift", acc_test: 0.7 },
      { dataset: "Heron", resample: 0, acc_test: 0.5 },
      { dataset: "Heron", resample: 1, acc_test: 0.6 },
      { dataset: "Heron", resample: 2, acc_test: 0.7 },
      { dataset: "Crane", acc_test: 1.0 },
      { dataset: "Finch", resample: 0, acc_test: 0.9 },
      { dataset: "Finch", resample: 1, acc_test: 0.9 },
      { dataset: "Raven", acc_test: 0.3 },
    ]);
    const b = method("b", [
      { dataset: "Wren", resample: 0, acc_test: 0.8 },
      { dataset: "Wren", resample: 1, acc_test: 0.8 },
      { dataset: "Swift", resample: 0, acc_test: 0.7 },
      { dataset: "Swift", resample: 1, acc_test: 0.7 },
      { dataset: "Heron", acc_test: 0.65 },
      { dataset: "Crane", resample: 0, acc_test: 0.9 },
      { dataset: "Crane", resample: 1, acc_test: 1.0 },
      { dataset: "Finch", acc_test: 0.9 },
      { dataset: "Raven", acc_test: 0.4 },
    ]);
    const counts = pairwiseCounts(a, b);
    expect(counts).toEqual({ wins: 2, draws: 2, losses: 2 });
    expect(counts).toEqual(recount(a, b));
  });

  it("agrees with the independent recount on randomized tables", () => {
    for (let seed = 1; seed <= 25; seed += 1) {
      const rand = lcg(seed);
      const datasets = ["D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8"];
      const spec = (): RowSpec[] =>
        datasets.flatMap((dataset) => {
          const resamples = 1 + Math.floor(rand() * 3);
          return Array.from({ length: resamples }, (_, i) => ({
            dataset,
            resample: i,
            // one decimal place so exact ties actually occur
            acc_test: Math.round(rand() * 10) / 10,
          }));
        });
      const a = method("a", spec());
      const b = method("b", spec());
      const counts = pairwiseCounts(a, b);
      expect(counts).toEqual(recount(a, b));
      expect(counts.wins + counts.draws + counts.losses).toBe(datasets.length);
    }
  });
});

describe("sharedDatasets", () => {
  it("lists the difference on mismatch", () => {
    const a = method("left", [
      { dataset: "A", acc_test: 1 },
      { dataset: "B", acc_test: 1 },
    ]);
    const b = method("right", [
      { dataset: "B", acc_test: 1 },
      { dataset: "C", acc_test: 1 },
      { dataset: "D", acc_test: 1 },
    ]);
    expect(() => sharedDatasets([a, b])).toThrow(
      /dataset sets differ: only in left: A; only in right: C, D/,
    );
  });

  it("returns the sorted shared set", () => {
    const a = method("a", [
      { dataset: "Zeta", acc_test: 1 },
      { dataset: "Alpha", acc_test: 1 },
    ]);
    const b = method("b", [
      { dataset: "Alpha", acc_test: 0.5 },
      { dataset: "Zeta", acc_test: 0.5 },
    ]);
    expect(sharedDatasets([a, b])).toEqual(["Alpha", "Zeta"]);
  });

  it("refuses empty methods", () => {
    expect(() => sharedDatasets([method("a", [])])).toThrow(/has no datasets/);
  });
});

describe("rankRow", () => {
  it("ranks distinct values with 1 as best", () => {
    expect(rankRow([0.9, 0.8, 0.7])).toEqual([1, 2, 3]);
    expect(rankRow([0.7, 0.9, 0.8])).toEqual([3, 1, 2]);
  });

  it("ties share the average rank", () => {
    expect(rankRow([0.5, 0.5, 0.5])).toEqual([2, 2, 2]);
    expect(rankRow([0.6, 0.7, 0.7])).toEqual([3, 1.5, 1.5]);
    expect(rankRow([1.0, 0.9, 0.9])).toEqual([1, 2.5, 2.5]);
  });

  it("always sums to M(M+1)/2, with values inside [1, M]", () => {
    for (let seed = 1; seed <= 40; seed += 1) {
      const rand = lcg(seed * 7919);
      const m = 2 + Math.floor(rand() * 6);
      const values = Array.from(
        { length: m },
        () => Math.round(rand() * 4) / 4,
      );
      const ranks = rankRow(values);
      expect(ranks.reduce((p, q) => p + q, 0)).toBe((m * (m + 1)) / 2);
      for (const rank of ranks) {
        expect(rank).toBeGreaterThanOrEqual(1);
        expect(rank).toBeLessThanOrEqual(m);
      }
    }
  });
});

describe("buildComparison", () => {
  it("two methods, one dominant: mean ranks 1 and 2", () => {
    const base: RowSpec[] = [
      { dataset: "A", acc_test: 0.8 },
      { dataset: "B", acc_test: 0.6 },
      { dataset: "C", acc_test: 0.4 },
    ];
    const better = base.map((s) => ({ ...s, acc_test: s.acc_test + 0.1 }));
    const table = buildComparison([method("strong", better), method("weak", base)]);
    expect(table.meanRanks).toEqual([1, 2]);
    expect(table.counts[0][1]).toEqual({ wins: 3, draws: 0, losses: 0 });
    expect(table.counts[1][0]).toEqual({ wins: 0, draws: 0, losses: 3 });
  });

  it("three identical methods all rank 2", () => {
    const specs: RowSpec[] = [
      { dataset: "A", acc_test: 0.8 },
      { dataset: "B", acc_test: 0.6 },
    ];
    const table = buildComparison([
      method("x", specs),
      method("y", specs),
      method("z", specs),
    ]);
    expect(table.meanRanks).toEqual([2, 2, 2]);
  });

  it("matches a hand-computed five-dataset toy table", () => {
    // Ranks per dataset (1 = highest accuracy, ties averaged):
    //   D1: alpha 0.9, beta 0.8, gamma 0.7  -> 1, 2, 3
    //   D2: all 0.5                          -> 2, 2, 2
    //   D3: alpha 0.6, beta 0.7, gamma 0.7  -> 3, 1.5, 1.5
    //   D4: alpha 0.2, beta 0.1, gamma 0.3  -> 2, 3, 1
    //   D5: alpha 1.0, beta 0.9, gamma 0.9  -> 1, 2.5, 2.5
    // Means: alpha 9/5 = 1.8, beta 11/5 = 2.2, gamma 10/5 = 2.0.
    const accs: Record<string, number[]> = {
      D1: [0.9, 0.8, 0.7],
      D2: [0.5, 0.5, 0.5],
      D3: [0.6, 0.7, 0.7],
      D4: [0.2, 0.1, 0.3],
      D5: [1.0, 0.9, 0.9],
    };
    const pick = (m: number): RowSpec[] =>
      Object.entries(accs).map(([dataset, row]) => ({ dataset, acc_test: row[m] }));
    const table = buildComparison([
      method("alpha", pick(0)),
      method("beta", pick(1)),
      method("gamma", pick(2)),
    ]);
    expect(table.meanRanks[0]).toBeCloseTo(1.8, 12);
    expect(table.meanRanks[1]).toBeCloseTo(2.2, 12);
    expect(table.meanRanks[2]).toBeCloseTo(2.0, 12);
    expect(table.datasets).toEqual(["D1", "D2", "D3", "D4", "D5"]);
    expect(table.means[0]).toEqual([0.9, 0.8, 0.7]);
  });

  it("per-dataset ranks sum to M(M+1)/2 on randomized tables", () => {
    for (let seed = 1; seed <= 10; seed += 1) {
      const rand = lcg(seed * 104729);
      const m = 2 + Math.floor(rand() * 4);
      const datasets = Array.from({ length: 6 }, (_, i) => `D${i}`);
      const methods = Array.from({ length: m }, (_, k) =>
        method(
          `m${k}`,
          datasets.map((dataset) => ({
            dataset,
            acc_test: Math.round(rand() * 5) / 5,
          })),
        ),
      );
      const table = buildComparison(methods);
      for (const row of table.means) {
        expect(rankRow(row).reduce((p, q) => p + q, 0)).toBe((m * (m + 1)) / 2);
      }
      // mean ranks inherit the same total
      const total = table.meanRanks.reduce((p, q) => p + q, 0);
      expect(total).toBeCloseTo((m * (m + 1)) / 2, 10);
    }
  });

  it("tallies are antisymmetric and the diagonal is all draws", () => {
    const rand = lcg(31);
    const datasets = ["A", "B", "C", "D", "E"];
    const methods = Array.from({ length: 3 }, (_, k) =>
      method(
        `m${k}`,
        datasets.map((dataset) => ({
          dataset,
          acc_test: Math.round(rand() * 4) / 4,
        })),
      ),
    );
    const table = buildComparison(methods);
    for (let i = 0; i < 3; i += 1) {
      expect(table.counts[i][i]).toEqual({ wins: 0, draws: 5, losses: 0 });
      for (let j = 0; j < 3; j += 1) {
        expect(table.counts[i][j].wins).toBe(table.counts[j][i].losses);
        expect(table.counts[i][j].draws).toBe(table.counts[j][i].draws);
      }
    }
  });

  it("rejects fewer than two methods and colliding names", () => {
    const specs: RowSpec[] = [{ dataset: "A", acc_test: 1 }];
    expect(() => buildComparison([method("only", specs)])).toThrow(/at least 2/);
    expect(() =>
      buildComparison([method("dup", specs), method("dup", specs)]),
    ).toThrow(/method names collide: dup/);
  });
});
