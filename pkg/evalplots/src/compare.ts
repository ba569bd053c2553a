/**
 * Method comparison over a shared dataset set: win/draw/loss tallies and
 * average ranks. Draws are exact ties of the per-dataset mean accuracies;
 * rank 1 is best and tied methods share the average of their positions.
 */

import type { MethodResults } from "./csv.js";
import { meanTestAccuracy } from "./csv.js";

export interface PairwiseCounts {
  wins: number;
  draws: number;
  losses: number;
}

export interface ComparisonTable {
  methods: string[];
  /** Sorted dataset names, identical across methods. */
  datasets: string[];
  /** means[d][m]: mean test accuracy of method m on dataset d. */
  means: number[][];
  /** counts[i][j]: wins/draws/losses of method i against method j. */
  counts: PairwiseCounts[][];
  /** Mean rank per method across datasets. */
  meanRanks: number[];
}

function describeDifference(
  nameA: string,
  onlyA: string[],
  nameB: string,
  onlyB: string[],
): string {
  const parts = [];
  if (onlyA.length > 0) {
    parts.push(`only in ${nameA}: ${onlyA.join(", ")}`);
  }
  if (onlyB.length > 0) {
    parts.push(`only in ${nameB}: ${onlyB.join(", ")}`);
  }
  return parts.join("; ");
}

/** The shared sorted dataset list; throws when any method deviates from it. */
export function sharedDatasets(methods: MethodResults[]): string[] {
  if (methods.length === 0) {
    throw new Error("no methods given");
  }
  const reference = [...meanTestAccuracy(methods[0].rows).keys()].sort();
  if (reference.length === 0) {
    throw new Error(`${methods[0].name} has no datasets`);
  }
  for (const method of methods.slice(1)) {
    const datasets = new Set(meanTestAccuracy(method.rows).keys());
    const onlyRef = reference.filter((d) => !datasets.has(d));
    const onlyThis = [...datasets].filter((d) => !reference.includes(d)).sort();
    if (onlyRef.length > 0 || onlyThis.length > 0) {
      throw new Error(
        `dataset sets differ: ` +
          describeDifference(methods[0].name, onlyRef, method.name, onlyThis),
      );
    }
  }
  return reference;
}

/** Wins/draws/losses of `a` against `b` over per-dataset mean accuracies. */
export function pairwiseCounts(a: MethodResults, b: MethodResults): PairwiseCounts {
  const datasets = sharedDatasets([a, b]);
  const meansA = meanTestAccuracy(a.rows);
  const meansB = meanTestAccuracy(b.rows);
  const counts = { wins: 0, draws: 0, losses: 0 };
  for (const dataset of datasets) {
    const accA = meansA.get(dataset)!;
    const accB = meansB.get(dataset)!;
    if (accA > accB) {
      counts.wins += 1;
    } else if (accA < accB) {
      counts.losses += 1;
    } else {
      counts.draws += 1;
    }
  }
  return counts;
}

/**
 * Ranks of one dataset's accuracies: 1 for the highest, ties averaged, so
 * the ranks always sum to M(M+1)/2.
 */
export function rankRow(values: number[]): number[] {
  const order = values
    .map((value, index) => ({ value, index }))
    .sort((p, q) => q.value - p.value);
  const ranks = new Array<number>(values.length);
  let i = 0;
  while (i < order.length) {
    let j = i;
    while (j + 1 < order.length && order[j + 1].value === order[i].value) {
      j += 1;
    }
    // positions i..j (0-based) share the average of ranks i+1..j+1
    const shared = (i + 1 + (j + 1)) / 2;
    for (let k = i; k <= j; k += 1) {
      ranks[order[k].index] = shared;
    }
    i = j + 1;
  }
  return ranks;
}

/** Build the full comparison: means, pairwise tallies, and mean ranks. */
export function buildComparison(methods: MethodResults[]): ComparisonTable {
  if (methods.length < 2) {
    throw new Error(`need at least 2 methods, got ${methods.length}`);
  }
  const names = methods.map((m) => m.name);
  const collisions = names.filter((n, i) => names.indexOf(n) !== i);
  if (collisions.length > 0) {
    throw new Error(`method names collide: ${[...new Set(collisions)].join(", ")}`);
  }

  const datasets = sharedDatasets(methods);
  const byMethod = methods.map((m) => meanTestAccuracy(m.rows));
  const means = datasets.map((dataset) =>
    byMethod.map((accs) => accs.get(dataset)!),
  );

  const rankTotals = new Array<number>(methods.length).fill(0);
  for (const row of means) {
    const ranks = rankRow(row);
    for (let m = 0; m < ranks.length; m += 1) {
      rankTotals[m] += ranks[m];
    }
  }
  const meanRanks = rankTotals.map((total) => total / datasets.length);

  const counts = names.map((_, i) =>
    names.map((_, j) => {
      const tally = { wins: 0, draws: 0, losses: 0 };
      for (const row of means) {
        if (row[i] > row[j]) {
          tally.wins += 1;
        } else if (row[i] < row[j]) {
          tally.losses += 1;
        } else {
          tally.draws += 1;
        }
      }
      return tally;
    }),
  );

  return { methods: names, datasets, means, counts, meanRanks };
}
