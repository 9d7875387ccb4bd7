// The runtime bundle flags __esModule without a default export, so only a
// plain require binding works in both node and vitest.
import echarts = require("echarts");
import type { ResultTable } from "./csv.js";
import { checkTables, type FigureRecipe } from "./recipes/index.js";

export const WIDTH = 900;
export const HEIGHT = 560;

/** Validate the tables against the recipe and render a standalone SVG. */
export function renderSvg(recipe: FigureRecipe, tables: ResultTable[]): string {
  checkTables(recipe, tables);
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: WIDTH,
    height: HEIGHT,
  });
  try {
    chart.setOption({ animation: false, ...recipe.build(tables) });
    return stableIds(chart.renderToSVGString());
  } finally {
    chart.dispose();
  }
}

// zrender mints SVG class names and clip ids from process-global counters, so
// the bytes depend on how many charts were rendered before this one.  Renumber
// them in order of first appearance to make repeated runs emit identical files.
function stableIds(svg: string): string {
  const assigned = new Map<string, string>();
  const counters = new Map<string, number>();
  return svg.replace(/\bzr\d+-(cls-|c)(\d+)\b/g, (token, kind: string) => {
    let name = assigned.get(token);
    if (name === undefined) {
      const n = counters.get(kind) ?? 0;
      counters.set(kind, n + 1);
      name = `zr-${kind}${n}`;
      assigned.set(token, name);
    }
    return name;
  });
}
