import { execFileSync } from "node:child_process";
import { existsSync, mkdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const TESTS_DIR = dirname(fileURLToPath(import.meta.url));

export function pythonBin(): string {
  return process.env.PMCORE_PYTHON ?? "python3";
}

export function fixturePath(name: string): string {
  return join(TESTS_DIR, "fixtures", name);
}

/**
 * Absolute path of the sepsis corpus log (15,214 events). Prefers the
 * copy the core test suite materializes under tests/_corpus; when that
 * is absent the generator is invoked once into a local cache.
 */
export function ensureSepsis(): string {
  const shared = join(TESTS_DIR, "..", "..", "tests", "_corpus", "sepsis.xes");
  if (existsSync(shared)) return shared;
  const cached = join(TESTS_DIR, ".cache", "sepsis.xes");
  if (!existsSync(cached)) {
    mkdirSync(dirname(cached), { recursive: true });
    execFileSync(pythonBin(), ["-m", "pmcore._fixtures", "sepsis", cached], {
      stdio: "inherit",
    });
  }
  return cached;
}
