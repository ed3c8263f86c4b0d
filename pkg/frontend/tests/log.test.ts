import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CoreClient } from "../src/client.js";
import { DoubleDestroyError, UnknownHandleError } from "../src/errors.js";
import { loadLog, withLog, type LogHandle } from "../src/log.js";
import { fixturePath } from "./testdata.js";

const LOAN = fixturePath("loan.xes");

let client: CoreClient;

beforeAll(() => {
  client = new CoreClient();
});
afterAll(async () => {
  await client.close();
});

describe("LogHandle", () => {
  it("loads a log and reports its statistics", async () => {
    const log = await loadLog(client, LOAN);
    expect(await log.stats()).toEqual({
      events: 57,
      activities: 5,
      cases: 14,
      variants: 3,
    });
    await log.unload();
  });

  it("projects onto activities", async () => {
    const log = await loadLog(client, LOAN);
    const proj = await log.projection();
    // alphabet in first-appearance order; variant counts sum to 14 cases
    expect(proj.alphabet).toEqual(["register", "check", "approve", "archive", "reject"]);
    expect(proj.variants).toEqual([
      [[0, 1, 2, 3], 8],
      [[0, 1, 4, 3], 5],
      [[0, 1, 1, 2, 3], 1],
    ]);
    await log.unload();
  });

  it("a handle stays dead after unload", async () => {
    const log = await loadLog(client, LOAN);
    await log.unload();
    await expect(log.stats()).rejects.toBeInstanceOf(UnknownHandleError);
  });

  it("unloading twice raises DoubleDestroyError", async () => {
    const log = await loadLog(client, LOAN);
    await log.unload();
    const err = await log.unload().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(DoubleDestroyError);
    expect((err as DoubleDestroyError).code).toBe("DoubleDestroy");
  });

  it("never hands out the same handle twice", async () => {
    const first = await loadLog(client, LOAN);
    await first.unload();
    const second = await loadLog(client, LOAN);
    expect(second.id).not.toBe(first.id);
    await second.unload();
  });

  it("rejects an empty path locally", async () => {
    await expect(loadLog(client, "")).rejects.toThrow(TypeError);
  });
});

describe("withLog", () => {
  it("unloads after the body returns", async () => {
    let captured: LogHandle | undefined;
    const events = await withLog(client, LOAN, async (log) => {
      captured = log;
      return (await log.stats()).events;
    });
    expect(events).toBe(57);
    await expect(captured!.stats()).rejects.toBeInstanceOf(UnknownHandleError);
  });

  it("unloads when the body throws", async () => {
    let captured: LogHandle | undefined;
    await expect(
      withLog(client, LOAN, async (log) => {
        captured = log;
        throw new Error("body failed");
      }),
    ).rejects.toThrow("body failed");
    await expect(captured!.stats()).rejects.toBeInstanceOf(UnknownHandleError);
  });
});
