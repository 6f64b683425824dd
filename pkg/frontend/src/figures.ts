/**
 * Figure renderers for the report CSVs.
 *
 * Each renderer reads documented CSV schemas, never recomputes statistics,
 * and writes one SVG. Deleting this package changes no numeric output
 * anywhere: slopes and RMSE values are read from the report files as-is.
 */
import { readFileSync, writeFileSync } from "node:fs";

import { groupBy, num, readTable, type Row } from "./csv.js";
import { Chart, linearScale, log2Scale, type SeriesStyle } from "./svg.js";

export const FIGURE_KINDS = [
  "convergence",
  "singlerun",
  "discrepancy",
  "quantile",
  "scatter",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  output: string;
  /** slope-fit JSON emitted next to convergence CSVs */
  slopes?: string;
  /** cells per axis for the scatter grid overlay */
  grid?: number;
}

/** Line styles per sampling method (broken blue MC, red LHS, green QMC). */
const METHOD_STYLES: Record<string, SeriesStyle> = {
  mc: { color: "#1f5bd6", dash: "6 4", width: 1.5, marker: "diamond" },
  lhs: { color: "#d62728", width: 2.4, marker: "circle" },
  "maxmin-lhs": { color: "#a03030", dash: "2 3", width: 2.0, marker: "circle" },
  sobol: { color: "#1a9641", width: 1.3, marker: "square" },
};

function styleFor(method: string): SeriesStyle {
  return METHOD_STYLES[method] ?? { color: "#777", width: 1.5, marker: "circle" };
}

const LOG2 = Math.log2;

interface SlopeFit {
  alpha: number;
  c: number;
  r2?: number;
}

function readSlopes(path: string | undefined): Record<string, SlopeFit> {
  if (!path) return {};
  const payload = JSON.parse(readFileSync(path, "utf8")) as Record<
    string,
    Record<string, unknown>
  >;
  const fits: Record<string, SlopeFit> = {};
  for (const [method, entry] of Object.entries(payload)) {
    if (typeof entry.alpha === "number" && typeof entry.c === "number") {
      fits[method] = {
        alpha: entry.alpha,
        c: entry.c,
        r2: typeof entry.r2 === "number" ? entry.r2 : undefined,
      };
    }
  }
  return fits;
}

function bounds(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

function renderRmseChart(
  rows: Row[],
  title: string,
  fits: Record<string, SlopeFit>,
  output: string,
): void {
  const byMethod = groupBy(rows, "method");
  const xs = rows.map((r) => num(r, "log2N"));
  const ys = rows.map((r) => LOG2(num(r, "rmse")));
  const [xLo, xHi] = bounds(xs);
  const [yLo, yHi] = bounds(ys);

  const chart = new Chart();
  const x = log2Scale(xLo, xHi, chart.plotLeft, chart.plotRight);
  const y = log2Scale(yLo - 0.4, yHi + 0.4, chart.plotBottom, chart.plotTop, 8);
  chart.title(title);
  chart.axes(x, y, "number of sampled points N", "RMSE");

  const legend: { label: string; style: SeriesStyle }[] = [];
  for (const [method, group] of byMethod) {
    const style = styleFor(method);
    const points = group
      .map((r): [number, number] => [num(r, "log2N"), LOG2(num(r, "rmse"))])
      .sort((a, b) => a[0] - b[0]);
    chart.series(points, x, y, style);
    const fit = fits[method];
    let label = method;
    if (fit) {
      // trend line of the fitted power law c * N^-alpha
      const trend: [number, number][] = [
        [xLo, LOG2(fit.c) - fit.alpha * xLo],
        [xHi, LOG2(fit.c) - fit.alpha * xHi],
      ];
      chart.series(trend, x, y, { color: style.color, dash: "2 5", width: 1 }, "trend");
      label += ` (α=${fit.alpha.toFixed(2)}`;
      if (fit.r2 !== undefined) label += `, R²=${fit.r2.toFixed(3)}`;
      label += ")";
    }
    legend.push({ label, style });
  }
  chart.legend(legend);
  writeFileSync(output, chart.render());
}

export function renderConvergence(spec: FigureSpec): void {
  const table = readTable(spec.input, ["method", "function", "dim", "log2N", "rmse"]);
  const name = `${table.rows[0].function} (n=${table.rows[0].dim})`;
  renderRmseChart(
    table.rows,
    `RMSE vs N, ${name}`,
    readSlopes(spec.slopes),
    spec.output,
  );
}

export function renderSingleRun(spec: FigureSpec): void {
  const table = readTable(spec.input, [
    "method",
    "function",
    "dim",
    "log2N",
    "estimate",
    "exact",
  ]);
  const rows = table.rows;
  const xs = rows.map((r) => num(r, "log2N"));
  const ys = rows.map((r) => num(r, "estimate"));
  const exact = num(rows[0], "exact");
  const [xLo, xHi] = bounds(xs);
  const [yLo, yHi] = bounds([...ys, exact]);
  const pad = (yHi - yLo) * 0.08;

  const chart = new Chart();
  const x = log2Scale(xLo, xHi, chart.plotLeft, chart.plotRight);
  const y = linearScale(yLo - pad, yHi + pad, chart.plotBottom, chart.plotTop);
  chart.title(
    `Single-run estimates, ${rows[0].function} (n=${rows[0].dim})`,
  );
  chart.axes(x, y, "number of sampled points N", "integral estimate");
  chart.series(
    [
      [xLo, exact],
      [xHi, exact],
    ],
    x,
    y,
    { color: "#555", dash: "3 3", width: 1 },
    "exact",
  );

  const legend: { label: string; style: SeriesStyle }[] = [];
  for (const [method, group] of groupBy(rows, "method")) {
    const style = styleFor(method);
    const points = group
      .map((r): [number, number] => [num(r, "log2N"), num(r, "estimate")])
      .sort((a, b) => a[0] - b[0]);
    chart.series(points, x, y, style);
    legend.push({ label: method, style });
  }
  chart.legend(legend);
  writeFileSync(spec.output, chart.render());
}

function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = sorted.length >> 1;
  return sorted.length % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

export function renderDiscrepancy(spec: FigureSpec): void {
  const table = readTable(spec.input, ["method", "dim", "log2N", "replicate", "l2"]);
  const chart = new Chart();
  const rows = table.rows;
  const xs = rows.map((r) => num(r, "log2N"));
  const ys = rows.map((r) => LOG2(num(r, "l2")));
  const [xLo, xHi] = bounds(xs);
  const [yLo, yHi] = bounds(ys);
  const x = log2Scale(xLo, xHi, chart.plotLeft, chart.plotRight);
  const y = log2Scale(yLo - 0.4, yHi + 0.4, chart.plotBottom, chart.plotTop, 8);
  chart.title(`L2 discrepancy vs N (n=${rows[0].dim})`);
  chart.axes(x, y, "number of sampled points N", "L2 discrepancy");

  const legend: { label: string; style: SeriesStyle }[] = [];
  for (const [method, group] of groupBy(rows, "method")) {
    const style = styleFor(method);
    const perN = groupBy(group, "log2N");
    const points: [number, number][] = [];
    for (const [log2n, reps] of perN) {
      points.push([Number(log2n), LOG2(median(reps.map((r) => num(r, "l2"))))]);
    }
    points.sort((a, b) => a[0] - b[0]);
    chart.series(points, x, y, style);
    legend.push({ label: method, style });
  }
  chart.legend(legend);
  writeFileSync(spec.output, chart.render());
}

export function renderQuantile(spec: FigureSpec): void {
  const table = readTable(spec.input, [
    "method",
    "function",
    "dim",
    "quantile",
    "log2N",
    "rmse",
  ]);
  const levels = [...groupBy(table.rows, "quantile").keys()];
  const panel = 440;
  const chart = new Chart(panel * levels.length, 400);
  chart.title(`Quantile RMSE vs N (n=${table.rows[0].dim})`);

  levels.forEach((level, index) => {
    const rows = table.rows.filter((r) => r.quantile === level);
    const xs = rows.map((r) => num(r, "log2N"));
    const ys = rows.map((r) => LOG2(num(r, "rmse")));
    const [xLo, xHi] = bounds(xs);
    const [yLo, yHi] = bounds(ys);
    const left = index * panel + chart.margin.left;
    const right = (index + 1) * panel - chart.margin.right;
    const x = log2Scale(xLo, xHi, left, right);
    const y = log2Scale(yLo - 0.4, yHi + 0.4, chart.plotBottom, chart.plotTop, 8);

    chart.raw(
      `<rect x="${left}" y="${chart.plotTop}" width="${right - left}" ` +
        `height="${chart.plotBottom - chart.plotTop}" fill="none" stroke="#333"/>`,
    );
    for (const tick of x.ticks()) {
      const px = x.toPixel(tick.value);
      chart.raw(
        `<text x="${px.toFixed(2)}" y="${chart.plotBottom + 16}" ` +
          `text-anchor="middle" style="font:11px sans-serif">${tick.label}</text>`,
      );
    }
    for (const tick of y.ticks()) {
      const py = y.toPixel(tick.value);
      chart.text(left - 40, py + 3, tick.label);
    }
    chart.text(left + 8, chart.plotTop + 16, `quantile = ${level}`);
    for (const [method, group] of groupBy(rows, "method")) {
      const points = group
        .map((r): [number, number] => [num(r, "log2N"), LOG2(num(r, "rmse"))])
        .sort((a, b) => a[0] - b[0]);
      chart.series(points, x, y, styleFor(method));
    }
  });
  writeFileSync(spec.output, chart.render());
}

export function renderScatter(spec: FigureSpec): void {
  const table = readTable(spec.input, ["x1", "x2"]);
  const grid = spec.grid ?? 0;
  const size = 420;
  const margin = 30;
  const side = size - 2 * margin;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" height="${size}" ` +
      `viewBox="0 0 ${size} ${size}">`,
    `<rect width="${size}" height="${size}" fill="white"/>`,
    `<rect x="${margin}" y="${margin}" width="${side}" height="${side}" ` +
      `fill="none" stroke="#333"/>`,
  ];
  for (let k = 1; k < grid; k++) {
    const offset = margin + (side * k) / grid;
    parts.push(
      `<line x1="${offset}" y1="${margin}" x2="${offset}" y2="${margin + side}" ` +
        `stroke="#bbb" stroke-width="0.7"/>`,
      `<line x1="${margin}" y1="${offset}" x2="${margin + side}" y2="${offset}" ` +
        `stroke="#bbb" stroke-width="0.7"/>`,
    );
  }
  for (const row of table.rows) {
    const px = margin + num(row, "x1") * side;
    const py = margin + (1 - num(row, "x2")) * side;
    parts.push(
      `<circle class="pt" cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="3.5" fill="#1f5bd6"/>`,
    );
  }
  parts.push("</svg>", "");
  writeFileSync(spec.output, parts.join("\n"));
}

const RENDERERS: Record<FigureKind, (spec: FigureSpec) => void> = {
  convergence: renderConvergence,
  singlerun: renderSingleRun,
  discrepancy: renderDiscrepancy,
  quantile: renderQuantile,
  scatter: renderScatter,
};

/** Render one figure; throws (without writing) on schema or data errors. */
export function render(spec: FigureSpec): string {
  const renderer = RENDERERS[spec.kind];
  if (!renderer) {
    throw new Error(`unknown figure kind "${spec.kind}"`);
  }
  renderer(spec);
  return spec.output;
}
