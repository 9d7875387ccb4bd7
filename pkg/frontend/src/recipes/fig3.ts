import { numericColumn, type ResultTable } from "../csv.js";
import type { EChartsOption, FigureRecipe, SeriesOption } from "./types.js";

function histogram(table: ResultTable, column: string): SeriesOption {
  const freqs = numericColumn(table, "freq");
  const counts = numericColumn(table, column);
  return {
    name: column,
    type: "bar",
    barWidth: "80%",
    data: freqs.map((f, i) => [f, counts[i]] as [number, number]),
  };
}

function histogramOption(title: string, series: SeriesOption[]): EChartsOption {
  return {
    title: { text: title },
    xAxis: { type: "value", name: "frequency" },
    yAxis: { type: "value", name: "count" },
    series,
  };
}

export const fig3a: FigureRecipe = {
  id: "fig3a",
  title: "Mode spectrum of the annealing map (M=5)",
  inputs: [
    {
      file: "spectrum_gsp_m5.csv",
      expect: { command: "spectrum", kind: "gsp", n: "4", m: "5", gap: "false" },
    },
  ],
  build([table]) {
    return histogramOption(this.title, [histogram(table, "count_unweighted")]);
  },
};

export const fig3b: FigureRecipe = {
  id: "fig3b",
  title: "Gap spectrum of the annealing map (M=5)",
  inputs: [
    {
      file: "spectrum_gsp_m5_gap.csv",
      expect: { command: "spectrum", kind: "gsp", n: "4", m: "5", gap: "true" },
    },
  ],
  build([table]) {
    return histogramOption(this.title, [histogram(table, "count_unweighted")]);
  },
};

export const fig3c: FigureRecipe = {
  id: "fig3c",
  title: "Gap spectrum of the site-weighted rotation map",
  inputs: [
    {
      file: "spectrum_tower_gap.csv",
      expect: { command: "spectrum", kind: "tower", n: "4", gap: "true" },
    },
  ],
  build([table]) {
    return histogramOption(this.title, [histogram(table, "count_unweighted")]);
  },
};

export const fig3d: FigureRecipe = {
  id: "fig3d",
  title: "Model degree against register size",
  inputs: [
    {
      file: "scaling_poly.csv",
      expect: { command: "scaling", gap_model: "poly", c: "1.0" },
    },
    {
      file: "scaling_exp.csv",
      expect: { command: "scaling", gap_model: "exp", c: "1.0" },
    },
  ],
  build([poly, expo]) {
    const ns = numericColumn(poly, "n");
    const mk = (name: string, ys: number[], dashed = false): SeriesOption => ({
      name,
      type: "line",
      showSymbol: true,
      lineStyle: dashed ? { type: "dashed" } : undefined,
      data: ns.map((n, i) => [n, ys[i]] as [number, number]),
    });
    return {
      title: { text: this.title },
      legend: { top: 28 },
      xAxis: { type: "value", name: "N" },
      yAxis: { type: "log", name: "degree" },
      series: [
        mk("rotation map", numericColumn(poly, "rotation_degree")),
        mk("annealing, poly gap", numericColumn(poly, "gsp_degree")),
        mk("annealing, exp gap", numericColumn(expo, "gsp_degree"), true),
      ],
    };
  },
};

export const fig3 = [fig3a, fig3b, fig3c, fig3d];
