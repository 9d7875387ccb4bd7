import { numericColumn, type ResultTable } from "../csv.js";
import type { EChartsOption, FigureRecipe, SeriesOption } from "./types.js";

function pairs(xs: number[], ys: number[]): [number, number][] {
  return xs.map((x, i) => [x, ys[i]]);
}

function line(
  name: string,
  xs: number[],
  ys: number[],
  dashed = false,
): SeriesOption {
  return {
    name,
    type: "line",
    showSymbol: false,
    lineStyle: dashed ? { type: "dashed" } : undefined,
    data: pairs(xs, ys),
  };
}

const SCAN_SETTINGS: [string, string][] = [
  ["10.0", "100"],
  ["100.0", "1000"],
  ["1000.0", "10000"],
];

export const fig2a: FigureRecipe = {
  id: "fig2a",
  title: "Ground-state magnetization per site",
  inputs: [{ file: "magnetization.csv", expect: { command: "magnetization", n: "4" } }],
  build([table]) {
    return {
      title: { text: this.title },
      xAxis: { type: "value", name: "x" },
      yAxis: { type: "value", name: "|m|" },
      series: [
        line("|m|", numericColumn(table, "x"), numericColumn(table, "mag_abs_per_site")),
      ],
    };
  },
};

export const fig2b: FigureRecipe = {
  id: "fig2b",
  title: "Prepared-state fidelity across the feature window",
  inputs: SCAN_SETTINGS.map(([t, m]) => ({
    file: `scan_T${Number(t)}_M${m}.csv`,
    expect: { command: "fidelity-scan", n: "4", t, m, reference: "exact" },
  })),
  build(tables) {
    const series: SeriesOption[] = [];
    for (const table of tables) {
      const label = `T=${Number(table.metadata.t)}, M=${table.metadata.m}`;
      const xs = numericColumn(table, "x");
      series.push(line(`F ${label}`, xs, numericColumn(table, "F")));
      series.push(line(`F~ ${label}`, xs, numericColumn(table, "F_approx"), true));
    }
    return {
      title: { text: this.title },
      legend: { top: 28 },
      xAxis: { type: "value", name: "x" },
      yAxis: { type: "value", name: "fidelity", min: 0, max: 1 },
      series,
    };
  },
};

export const fig2c: FigureRecipe = {
  id: "fig2c",
  title: "Infidelity against total evolution time",
  inputs: [
    {
      file: "infid_fixed100.csv",
      expect: { command: "infidelity-vs-t", n: "4", x: "1.9", m_rule: "fixed:100" },
    },
    {
      file: "infid_prop.csv",
      expect: { command: "infidelity-vs-t", n: "4", x: "1.9", m_rule: "prop:0.01" },
    },
  ],
  build(tables) {
    const series: SeriesOption[] = [];
    for (const table of tables) {
      const rule = table.metadata.m_rule;
      const ts = numericColumn(table, "T");
      series.push(line(`1-F (${rule})`, ts, numericColumn(table, "infid")));
      series.push(
        line(`1-F~ (${rule})`, ts, numericColumn(table, "infid_approx"), true),
      );
    }
    return {
      title: { text: this.title },
      legend: { top: 28 },
      xAxis: { type: "log", name: "T" },
      yAxis: { type: "log", name: "infidelity" },
      series,
    };
  },
};

export const fig2d: FigureRecipe = {
  id: "fig2d",
  title: "Basis-state occupations of the prepared state",
  inputs: [
    {
      file: "basis_T1000_M10000.csv",
      expect: { command: "basis", n: "4", t: "1000.0", m: "10000" },
    },
  ],
  build([table]) {
    const xs = numericColumn(table, "x");
    const series = table.columns
      .filter((name) => name.startsWith("phi_"))
      .map((name) => line(name, xs, numericColumn(table, name)));
    return {
      title: { text: this.title },
      xAxis: { type: "value", name: "x" },
      yAxis: { type: "value", name: "occupation" },
      series,
    };
  },
};

export const fig2 = [fig2a, fig2b, fig2c, fig2d];
