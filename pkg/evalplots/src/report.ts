/** Plain-text rendering of a comparison table. */

import type { ComparisonTable } from "./compare.js";

function pad(text: string, width: number): string {
  return text.length >= width ? text : text + " ".repeat(width - text.length);
}

export function renderReport(table: ComparisonTable): string {
  const { methods, datasets, means, counts, meanRanks } = table;
  const nameWidth = Math.max(8, ...methods.map((m) => m.length)) + 2;
  const lines: string[] = [];

  lines.push(
    `${methods.length} methods across ${datasets.length} datasets`,
    "",
    "mean rank (1 is best, ties share the average)",
  );
  const order = meanRanks
    .map((rank, index) => ({ rank, index }))
    .sort((p, q) => p.rank - q.rank || methods[p.index].localeCompare(methods[q.index]));
  for (const { rank, index } of order) {
    lines.push(`  ${rank.toFixed(3)}  ${methods[index]}`);
  }

  lines.push("", "wins/draws/losses of the row method against the column method");
  lines.push(
    "  " + pad("", nameWidth) + methods.map((m) => pad(m, nameWidth)).join(""),
  );
  methods.forEach((rowName, i) => {
    const cells = methods.map((_, j) => {
      if (i === j) {
        return pad("-", nameWidth);
      }
      const c = counts[i][j];
      return pad(`${c.wins}/${c.draws}/${c.losses}`, nameWidth);
    });
    lines.push("  " + pad(rowName, nameWidth) + cells.join(""));
  });

  lines.push("", "per-dataset mean test accuracy");
  const datasetWidth = Math.max(8, ...datasets.map((d) => d.length)) + 2;
  lines.push(
    "  " + pad("", datasetWidth) + methods.map((m) => pad(m, nameWidth)).join(""),
  );
  datasets.forEach((dataset, d) => {
    const cells = means[d].map((v) => pad(v.toFixed(4), nameWidth));
    lines.push("  " + pad(dataset, datasetWidth) + cells.join(""));
  });

  return lines.join("\n") + "\n";
}
