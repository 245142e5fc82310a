/** Reading of the solver's study and raster CSV files. */

import { readFileSync } from "node:fs";

export interface Table {
  columns: string[];
  /** column name -> values (strings preserved; use num() for floats) */
  rows: Record<string, string>[];
}

export class CsvError extends Error {}

/** Parse a CSV with `#` comment lines and a header row. */
export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0 && !l.startsWith("#"));
  if (lines.length === 0) {
    throw new CsvError("empty CSV: no header row");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: Record<string, string>[] = [];
  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new CsvError(
        `row has ${parts.length} fields, header has ${columns.length}: ${line}`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((c, i) => (row[c] = parts[i].trim()));
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new CsvError("empty CSV: header but no data rows");
  }
  return { columns, rows };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, "utf-8"));
}

export function num(row: Record<string, string>, column: string): number {
  const v = Number(row[column]);
  if (!Number.isFinite(v)) {
    throw new CsvError(`column ${column} is not numeric: ${row[column]}`);
  }
  return v;
}

export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    if (!table.columns.includes(name)) {
      throw new CsvError(
        `missing column ${name}; available: ${table.columns.join(", ")}`,
      );
    }
  }
}
