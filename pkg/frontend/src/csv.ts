/**
 * Strict reader for the report CSVs.
 *
 * The schemas are plain comma-separated text without quoting; every file
 * is validated against the columns its figure kind requires, and a missing
 * column is reported by name.
 */
import { readFileSync } from "node:fs";

export type Row = Record<string, string>;

export interface Table {
  columns: string[];
  rows: Row[];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: no header line");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: Row[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new Error(
        `CSV row ${i + 1} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    const row: Row = {};
    columns.forEach((c, j) => (row[c] = cells[j]));
    rows.push(row);
  }
  return { columns, rows };
}

export function readTable(path: string, required: string[]): Table {
  const table = parseCsv(readFileSync(path, "utf8"));
  for (const column of required) {
    if (!table.columns.includes(column)) {
      throw new Error(`${path}: missing column "${column}"`);
    }
  }
  if (table.rows.length === 0) {
    throw new Error(`${path}: empty CSV, nothing to plot`);
  }
  return table;
}

export function num(row: Row, column: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new Error(`column "${column}": non-numeric value "${row[column]}"`);
  }
  return value;
}

/** Rows grouped by the value of a key column, preserving first-seen order. */
export function groupBy(rows: Row[], column: string): Map<string, Row[]> {
  const groups = new Map<string, Row[]>();
  for (const row of rows) {
    const key = row[column];
    const bucket = groups.get(key);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(key, [row]);
    }
  }
  return groups;
}
