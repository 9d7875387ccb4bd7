import { numericColumn, stringColumn, type ResultTable } from "../csv.js";
import type { EChartsOption, FigureRecipe, SeriesOption } from "./types.js";

const COEF_SETTINGS: [string, string, string][] = [
  ["fig4a", "100.0", "100"],
  ["fig4b", "100.0", "1000"],
  ["fig4c", "1000.0", "100"],
  ["fig4d", "1000.0", "1000"],
];

function coefficientSeries(table: ResultTable): SeriesOption[] {
  const windows = stringColumn(table, "window");
  const ks = numericColumn(table, "k");
  const mags = numericColumn(table, "abs_c");
  const byWindow = new Map<string, [number, number][]>();
  windows.forEach((w, i) => {
    const data = byWindow.get(w) ?? [];
    data.push([ks[i], mags[i]]);
    byWindow.set(w, data);
  });
  return [...byWindow.entries()].map(([w, data]) => ({
    name: `window ${w}`,
    type: "line",
    showSymbol: false,
    data,
  }));
}

function coefficientRecipe(id: string, t: string, m: string): FigureRecipe {
  return {
    id,
    title: `Coefficient magnitudes, T=${Number(t)}, M=${m}`,
    inputs: [
      {
        file: `coef_T${Number(t)}_M${m}.csv`,
        expect: { command: "coefficients", n: "4", t, m },
      },
    ],
    build([table]): EChartsOption {
      return {
        title: { text: this.title },
        legend: { top: 28 },
        xAxis: { type: "value", name: "k" },
        yAxis: { type: "value", name: "|c_k|" },
        series: coefficientSeries(table),
      };
    },
  };
}

export const fig4 = COEF_SETTINGS.map(([id, t, m]) => coefficientRecipe(id, t, m));
