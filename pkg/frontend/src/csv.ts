import { readFileSync } from "node:fs";

/** One CLI result file: `# key=value` metadata, a header, data rows. */
export interface ResultTable {
  metadata: Record<string, string>;
  columns: string[];
  rows: string[][];
}

export function parseResultCsv(text: string): ResultTable {
  const metadata: Record<string, string> = {};
  const rows: string[][] = [];
  let columns: string[] | null = null;
  for (const line of text.split(/\r?\n/)) {
    if (line === "") continue;
    if (line.startsWith("# ")) {
      const body = line.slice(2);
      const eq = body.indexOf("=");
      if (eq < 0) throw new Error(`metadata line without '=': ${line}`);
      metadata[body.slice(0, eq)] = body.slice(eq + 1);
      continue;
    }
    if (columns === null) {
      columns = line.split(",");
      continue;
    }
    rows.push(line.split(","));
  }
  if (columns === null) throw new Error("no header row found");
  return { metadata, columns, rows };
}

export function loadTable(path: string): ResultTable {
  return parseResultCsv(readFileSync(path, "utf8"));
}

export function stringColumn(table: ResultTable, name: string): string[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' (have ${table.columns.join(", ")})`);
  }
  return table.rows.map((row) => row[idx]);
}

export function numericColumn(table: ResultTable, name: string): number[] {
  return stringColumn(table, name).map((raw, i) => {
    const value = Number(raw);
    if (!Number.isFinite(value)) {
      throw new Error(`row ${i} of column '${name}' is not finite: '${raw}'`);
    }
    return value;
  });
}
