export { parseCsv, readTable, groupBy, num } from "./csv.js";
export {
  FIGURE_KINDS,
  render,
  renderConvergence,
  renderDiscrepancy,
  renderQuantile,
  renderScatter,
  renderSingleRun,
} from "./figures.js";
export type { FigureKind, FigureSpec } from "./figures.js";
