import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CoreClient } from "../src/client.js";
import { discoverAlphappp, roundtripProjection } from "../src/discover.js";
import { InvariantViolationError, VariantParseError } from "../src/errors.js";
import type { ActivityProjection } from "../src/protocol.js";

const SEQUENCE: ActivityProjection = {
  alphabet: ["a", "b"],
  variants: [[[0, 1], 3]],
};

let client: CoreClient;

beforeAll(() => {
  client = new CoreClient();
});
afterAll(async () => {
  await client.close();
});

describe("discoverAlphappp", () => {
  it("returns an accepting net for a plain sequence", async () => {
    const net = await discoverAlphappp(client, SEQUENCE, "1.0|b1.0|t0.0|r1.0");
    const labels = net.transitions.map((t) => t.label).sort();
    expect(labels).toEqual(["a", "b"]);
    expect(net.places.length).toBeGreaterThan(0);
    expect(Object.values(net.initial_marking)).toEqual([1]);
    expect(net.final_markings).toHaveLength(1);
  });

  it("is deterministic across calls", async () => {
    const first = await discoverAlphappp(client, SEQUENCE, "1.0|b0.5|t0.5|r0.5");
    const second = await discoverAlphappp(client, SEQUENCE, "1.0|b0.5|t0.5|r0.5");
    expect(second).toEqual(first);
  });

  it("rejects malformed projections locally, before any round trip", () => {
    const bad = [
      { variants: [] },
      { alphabet: "ab", variants: [] },
      { alphabet: ["a", 1], variants: [] },
      { alphabet: ["a"], variants: [[[0], 1, 9]] },
      { alphabet: ["a"], variants: [[[0.5], 1]] },
      { alphabet: ["a"], variants: [[[0], "1"]] },
    ];
    for (const projection of bad) {
      expect(() =>
        discoverAlphappp(client, projection as unknown as ActivityProjection, "1.0|b1.0|t0.0|r1.0"),
      ).toThrow(TypeError);
    }
    expect(() => discoverAlphappp(client, SEQUENCE, "")).toThrow(TypeError);
  });

  it("leaves consistency checks to the core", async () => {
    // well-shaped but the index points outside the alphabet
    const inconsistent: ActivityProjection = { alphabet: ["a"], variants: [[[5], 1]] };
    const err = await discoverAlphappp(client, inconsistent, "1.0|b1.0|t0.0|r1.0").catch(
      (e: unknown) => e,
    );
    expect(err).toBeInstanceOf(InvariantViolationError);
  });

  it("surfaces bad variant text as VariantParseError", async () => {
    await expect(discoverAlphappp(client, SEQUENCE, "fast please")).rejects.toBeInstanceOf(
      VariantParseError,
    );
  });
});

describe("roundtripProjection", () => {
  it("returns an equal, independent copy", async () => {
    const copy = await roundtripProjection(client, SEQUENCE);
    expect(copy).toEqual(SEQUENCE);
    expect(copy).not.toBe(SEQUENCE);
    copy.variants[0]![1] = 99;
    expect(SEQUENCE.variants[0]![1]).toBe(3);
  });
});
