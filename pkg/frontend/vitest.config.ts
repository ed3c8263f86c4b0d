import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // Each suite spawns a real core process and the acceptance suite
    // parses a multi-megabyte log, so the defaults are too tight.
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
