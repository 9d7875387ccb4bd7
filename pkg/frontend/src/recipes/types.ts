import echarts = require("echarts");
import type { ResultTable } from "../csv.js";

// echarts publishes its option types behind an `export =` namespace, so they
// are re-exported here once instead of being imported in every recipe module.
export type EChartsOption = echarts.EChartsOption;
export type SeriesOption = echarts.SeriesOption;

/** One input CSV and the metadata it must carry to be accepted. */
export interface InputSpec {
  file: string;
  expect: Record<string, string>;
}

export interface FigureRecipe {
  id: string;
  title: string;
  inputs: InputSpec[];
  /** Pure presentation: tables in, chart option out.  Never computes physics. */
  build(tables: ResultTable[]): EChartsOption;
}

/** Reject a table whose provenance does not match the recipe. */
export function checkTable(
  recipe: FigureRecipe,
  spec: InputSpec,
  table: ResultTable,
): void {
  for (const [key, value] of Object.entries(spec.expect)) {
    const got = table.metadata[key];
    if (got !== value) {
      throw new Error(
        `${recipe.id}: ${spec.file} must come from 'gsfm ${spec.expect.command}' ` +
          `with ${key}=${value}, got ${key}=${got ?? "<missing>"}`,
      );
    }
  }
  if (table.rows.length === 0) {
    throw new Error(`${recipe.id}: ${spec.file} has no data rows`);
  }
}

export function checkTables(recipe: FigureRecipe, tables: ResultTable[]): void {
  if (tables.length !== recipe.inputs.length) {
    throw new Error(
      `${recipe.id}: expected ${recipe.inputs.length} tables, got ${tables.length}`,
    );
  }
  recipe.inputs.forEach((spec, i) => checkTable(recipe, spec, tables[i]));
}
