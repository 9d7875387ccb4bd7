import { fig2 } from "./fig2.js";
import { fig3 } from "./fig3.js";
import { fig4 } from "./fig4.js";
import type { FigureRecipe } from "./types.js";

export { checkTable, checkTables } from "./types.js";
export type { FigureRecipe, InputSpec } from "./types.js";

export const FAMILIES: Record<string, FigureRecipe[]> = {
  fig2,
  fig3,
  fig4,
};

export const RECIPES: FigureRecipe[] = [...fig2, ...fig3, ...fig4];

export function findRecipes(selector: string): FigureRecipe[] {
  if (selector in FAMILIES) return FAMILIES[selector];
  const exact = RECIPES.filter((r) => r.id === selector);
  if (exact.length === 0) {
    throw new Error(
      `unknown figure '${selector}' (know ${RECIPES.map((r) => r.id).join(", ")})`,
    );
  }
  return exact;
}
