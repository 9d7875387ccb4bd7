import { defineConfig } from "vitest/config";

// The compiled CLI requires echarts' CJS bundle; the ESM entry has no default
// export, so point vitest at the same bundle node uses.
export default defineConfig({
  resolve: {
    alias: {
      echarts: "echarts/dist/echarts.js",
    },
  },
});
