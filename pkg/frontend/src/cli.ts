/**
 * Command line: render report CSVs into SVG figures.
 *
 *   node dist/cli.js --kind convergence --input convergence.csv \
 *       [--slopes slopes.json] --outdir figures/
 *
 * Kinds: convergence | singlerun | discrepancy | quantile | scatter.
 * Output file is <outdir>/<kind>.svg unless --name overrides it.
 */
import { mkdirSync } from "node:fs";
import { join } from "node:path";

import { FIGURE_KINDS, render, type FigureKind, type FigureSpec } from "./figures.js";

function usage(message?: string): never {
  if (message) console.error(`error: ${message}`);
  console.error(
    "usage: render --kind KIND --input FILE.csv [--slopes FILE.json] " +
      "[--grid CELLS] [--name FILE.svg] --outdir DIR",
  );
  process.exit(2);
}

export function parseArgs(argv: string[]): FigureSpec {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      usage(`bad argument ${key}`);
    }
    flags.set(key.slice(2), value);
  }
  const kind = flags.get("kind") as FigureKind | undefined;
  if (!kind || !FIGURE_KINDS.includes(kind)) {
    usage(`--kind must be one of ${FIGURE_KINDS.join(", ")}`);
  }
  const input = flags.get("input") ?? usage("--input is required");
  const outdir = flags.get("outdir") ?? usage("--outdir is required");
  const name = flags.get("name") ?? `${kind}.svg`;
  const spec: FigureSpec = { kind, input, output: join(outdir, name) };
  const slopes = flags.get("slopes");
  if (slopes) spec.slopes = slopes;
  const grid = flags.get("grid");
  if (grid) {
    spec.grid = Number(grid);
    if (!Number.isInteger(spec.grid) || spec.grid < 0) {
      usage("--grid must be a non-negative integer");
    }
  }
  mkdirSync(outdir, { recursive: true });
  return spec;
}

export function main(argv: string[]): number {
  const spec = parseArgs(argv);
  try {
    const output = render(spec);
    console.log(output);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
