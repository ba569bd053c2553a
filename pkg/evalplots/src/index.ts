export {
  CSV_COLUMNS,
  TIMING_COLUMNS,
  meanStageTimes,
  meanTestAccuracy,
  parseResults,
  readResults,
} from "./csv.js";
export type { MethodResults, ResultRow, TimingColumn } from "./csv.js";
export {
  buildComparison,
  pairwiseCounts,
  rankRow,
  sharedDatasets,
} from "./compare.js";
export type { ComparisonTable, PairwiseCounts } from "./compare.js";
export { renderReport } from "./report.js";
export { plotPairwise, plotTimings } from "./svg.js";
export type { PairwisePlot } from "./svg.js";
export { main } from "./cli.js";
