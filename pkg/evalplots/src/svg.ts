/**
 * Hand-rolled SVG output. Two charts: a pairwise accuracy scatter on the
 * unit square (diagonal, dotted lines 0.05 above and below it, one point
 * per dataset, win/draw/loss annotation), and stacked bars of mean
 * per-stage seconds for each method.
 */

import type { MethodResults, TimingColumn } from "./csv.js";
import { TIMING_COLUMNS, meanStageTimes, meanTestAccuracy } from "./csv.js";
import type { PairwiseCounts } from "./compare.js";
import { pairwiseCounts, sharedDatasets } from "./compare.js";

const FONT = "font-family=\"sans-serif\"";

export function escapeText(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export interface PairwisePlot {
  svg: string;
  counts: PairwiseCounts;
  datasets: string[];
}

/**
 * Scatter of per-dataset mean accuracies, method `a` on the horizontal
 * axis. The tallies in the annotation and the returned counts are those
 * of the horizontal method.
 */
export function plotPairwise(a: MethodResults, b: MethodResults): PairwisePlot {
  const datasets = sharedDatasets([a, b]);
  const counts = pairwiseCounts(a, b);
  const meansA = meanTestAccuracy(a.rows);
  const meansB = meanTestAccuracy(b.rows);

  const size = 480;
  const margin = { left: 64, right: 24, top: 48, bottom: 56 };
  const width = margin.left + size + margin.right;
  const height = margin.top + size + margin.bottom;
  const x = (v: number) => margin.left + v * size;
  const y = (v: number) => margin.top + (1 - v) * size;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<rect x="${x(0)}" y="${y(1)}" width="${size}" height="${size}" fill="none" stroke="#444"/>`,
  );

  // axis ticks every 0.2
  for (let tick = 0; tick <= 5; tick += 1) {
    const v = tick / 5;
    const label = v.toFixed(1);
    parts.push(
      `<line x1="${x(v)}" y1="${y(0)}" x2="${x(v)}" y2="${y(0) + 5}" stroke="#444"/>`,
      `<text x="${x(v)}" y="${y(0) + 20}" text-anchor="middle" font-size="12" ${FONT}>${label}</text>`,
      `<line x1="${x(0) - 5}" y1="${y(v)}" x2="${x(0)}" y2="${y(v)}" stroke="#444"/>`,
      `<text x="${x(0) - 9}" y="${y(v) + 4}" text-anchor="end" font-size="12" ${FONT}>${label}</text>`,
    );
  }

  parts.push(
    `<line class="diagonal" x1="${x(0)}" y1="${y(0)}" x2="${x(1)}" y2="${y(1)}" stroke="#888"/>`,
  );
  // dotted intervals 0.05 above and below the diagonal, clipped to the square
  parts.push(
    `<line class="band" x1="${x(0)}" y1="${y(0.05)}" x2="${x(0.95)}" y2="${y(1)}" stroke="#888" stroke-dasharray="2 4"/>`,
    `<line class="band" x1="${x(0.05)}" y1="${y(0)}" x2="${x(1)}" y2="${y(0.95)}" stroke="#888" stroke-dasharray="2 4"/>`,
  );

  for (const dataset of datasets) {
    const px = x(meansA.get(dataset)!);
    const py = y(meansB.get(dataset)!);
    parts.push(
      `<circle class="pt" cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="4" fill="#1f77b4" fill-opacity="0.75"><title>${escapeText(dataset)}</title></circle>`,
    );
  }

  const nameA = escapeText(a.name);
  const nameB = escapeText(b.name);
  parts.push(
    `<text x="${x(0.5)}" y="${height - 12}" text-anchor="middle" font-size="14" ${FONT}>${nameA} mean test accuracy</text>`,
    `<text x="16" y="${y(0.5)}" text-anchor="middle" font-size="14" ${FONT} transform="rotate(-90 16 ${y(0.5)})">${nameB} mean test accuracy</text>`,
    `<text class="tally" x="${x(0.97)}" y="${y(0.03)}" text-anchor="end" font-size="13" ${FONT}>${nameA} W/D/L: ${counts.wins}/${counts.draws}/${counts.losses} over ${datasets.length} datasets</text>`,
  );
  parts.push("</svg>");
  return { svg: parts.join("\n") + "\n", counts, datasets };
}

const STAGE_COLORS: Record<TimingColumn, string> = {
  t_fit: "#4c78a8",
  t_apply_train: "#f58518",
  t_apply_test: "#e45756",
  t_clf: "#72b7b2",
  t_pred: "#54a24b",
};

/** Stacked bars of mean seconds per run, one bar per method. */
export function plotTimings(methods: MethodResults[]): string {
  if (methods.length === 0) {
    throw new Error("no methods given");
  }
  const stageMeans = methods.map((m) => meanStageTimes(m.rows));
  const totals = stageMeans.map((stages) =>
    TIMING_COLUMNS.reduce((acc, c) => acc + stages[c], 0),
  );
  const maxTotal = Math.max(...totals);
  const scale = maxTotal > 0 ? 420 / maxTotal : 0;

  const barHeight = 26;
  const gap = 18;
  const left = 150;
  const legendHeight = 28;
  const height = 16 + legendHeight + methods.length * (barHeight + gap);
  const width = left + 420 + 110;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  let lx = left;
  for (const column of TIMING_COLUMNS) {
    parts.push(
      `<rect x="${lx}" y="10" width="12" height="12" fill="${STAGE_COLORS[column]}"/>`,
      `<text x="${lx + 16}" y="20" font-size="12" ${FONT}>${column}</text>`,
    );
    lx += 16 + column.length * 7 + 18;
  }

  methods.forEach((method, i) => {
    const top = 16 + legendHeight + i * (barHeight + gap);
    parts.push(
      `<text x="${left - 8}" y="${top + barHeight / 2 + 4}" text-anchor="end" font-size="13" ${FONT}>${escapeText(method.name)}</text>`,
    );
    let bx = left;
    for (const column of TIMING_COLUMNS) {
      const w = stageMeans[i][column] * scale;
      parts.push(
        `<rect class="stage" x="${bx.toFixed(2)}" y="${top}" width="${w.toFixed(2)}" height="${barHeight}" fill="${STAGE_COLORS[column]}"><title>${column}: ${stageMeans[i][column].toPrecision(3)}s</title></rect>`,
      );
      bx += w;
    }
    parts.push(
      `<text x="${(bx + 6).toFixed(2)}" y="${top + barHeight / 2 + 4}" font-size="12" ${FONT}>${totals[i].toPrecision(3)}s</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
