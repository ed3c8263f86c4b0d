import { execFile } from "node:child_process";
import { promisify } from "node:util";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CoreClient } from "../src/client.js";
import { discoverAlphappp, roundtripProjection } from "../src/discover.js";
import { DoubleDestroyError } from "../src/errors.js";
import { loadLog, withLog } from "../src/log.js";
import { readXes } from "../src/table.js";
import { ensureSepsis, fixturePath, pythonBin } from "./testdata.js";

const run = promisify(execFile);
const LOAN = fixturePath("loan.xes");

let client: CoreClient;
let sepsis: string;

beforeAll(() => {
  sepsis = ensureSepsis();
  client = new CoreClient();
});
afterAll(async () => {
  await client.close();
});

describe("acceptance", () => {
  it("reads the sepsis log as 15,214 rows, equal to the core event count", async () => {
    const table = await readXes(client, sepsis);
    expect(table.rows).toBe(15_214);
    const stats = await withLog(client, sepsis, (log) => log.stats());
    expect(stats.events).toBe(15_214);
    expect(table.rows).toBe(stats.events);
  });

  it("discovers the same net as the command line", async () => {
    const variant = "0.5|b0.4|t0.1|r0.9";
    const { stdout } = await run(pythonBin(), [
      "-m",
      "pmcore.cli",
      "discover",
      LOAN,
      "--variant",
      variant,
    ]);
    const cliNet: unknown = JSON.parse(stdout);
    const net = await withLog(client, LOAN, async (log) =>
      discoverAlphappp(client, await log.projection(), variant),
    );
    expect(net).toEqual(cliNet);
  });

  it("translates a double unload into DoubleDestroyError", async () => {
    const log = await loadLog(client, LOAN);
    await log.unload();
    await expect(log.unload()).rejects.toBeInstanceOf(DoubleDestroyError);
  });

  it("round-trips the sepsis activity projection within 50 ms", async () => {
    const proj = await withLog(client, sepsis, (log) => log.projection());
    // first pass checks identity and warms the path, then five timed trips
    const copy = await roundtripProjection(client, proj);
    expect(copy).toEqual(proj);
    const samples: number[] = [];
    for (let i = 0; i < 5; i++) {
      const start = performance.now();
      await roundtripProjection(client, proj);
      samples.push(performance.now() - start);
    }
    samples.sort((a, b) => a - b);
    expect(samples[2]!).toBeLessThanOrEqual(50);
  });
});
