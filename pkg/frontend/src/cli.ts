import { existsSync, mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { loadTable } from "./csv.js";
import { findRecipes, RECIPES, type FigureRecipe } from "./recipes/index.js";
import { renderSvg } from "./render.js";

interface Args {
  dataDir: string;
  outDir: string;
  selectors: string[];
}

function parseArgs(argv: string[]): Args {
  const args: Args = { dataDir: "testdata/golden", outDir: "out", selectors: [] };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--data") args.dataDir = argv[++i];
    else if (arg === "--out") args.outDir = argv[++i];
    else if (arg.startsWith("--")) throw new Error(`unknown flag ${arg}`);
    else args.selectors.push(arg);
  }
  return args;
}

function renderOne(recipe: FigureRecipe, dataDir: string, outDir: string): string {
  const tables = recipe.inputs.map((spec) => {
    const path = join(dataDir, spec.file);
    if (!existsSync(path)) {
      throw new Error(
        `${recipe.id}: missing ${path}; generate it with 'gsfm ${spec.expect.command}'`,
      );
    }
    return loadTable(path);
  });
  const target = join(outDir, `${recipe.id}.svg`);
  writeFileSync(target, renderSvg(recipe, tables));
  return target;
}

export function main(argv: string[]): number {
  let args: Args;
  let recipes: FigureRecipe[];
  try {
    args = parseArgs(argv);
    recipes =
      args.selectors.length === 0
        ? RECIPES
        : args.selectors.flatMap((sel) => findRecipes(sel));
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 2;
  }
  mkdirSync(args.outDir, { recursive: true });
  let failures = 0;
  for (const recipe of recipes) {
    try {
      console.error(`rendered ${renderOne(recipe, args.dataDir, args.outDir)}`);
    } catch (err) {
      console.error(err instanceof Error ? err.message : String(err));
      failures += 1;
    }
  }
  return failures === 0 ? 0 : 1;
}

process.exitCode = main(process.argv.slice(2));
