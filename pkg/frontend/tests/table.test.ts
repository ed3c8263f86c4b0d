import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CoreClient } from "../src/client.js";
import { EventTable, readXes } from "../src/table.js";
import { fixturePath } from "./testdata.js";

const LOAN = fixturePath("loan.xes");

describe("readXes", () => {
  let client: CoreClient;
  let table: EventTable;

  beforeAll(async () => {
    client = new CoreClient();
    table = await readXes(client, LOAN);
  });
  afterAll(async () => {
    await client.close();
  });

  it("produces one row per event with the mandatory columns first", () => {
    expect(table.rows).toBe(57);
    expect(table.names).toEqual([
      "case:concept:name",
      "concept:name",
      "time:timestamp",
      "case:amount",
    ]);
  });

  it("reports a kind per column", () => {
    expect(table.kinds).toEqual({
      "case:concept:name": "text",
      "concept:name": "text",
      "time:timestamp": "timestamp",
      "case:amount": "integer",
    });
  });

  it("delivers timestamps as ISO-8601 text in UTC", () => {
    const stamps = table.column("time:timestamp");
    expect(stamps[0]).toBe("2024-03-01T08:00:00+00:00");
    expect(stamps.every((s) => typeof s === "string" && s.endsWith("+00:00"))).toBe(true);
  });

  it("broadcasts trace attributes to every row of their case", () => {
    const cases = table.column("case:concept:name");
    const amounts = table.column("case:amount");
    for (let i = 0; i < table.rows; i++) {
      if (cases[i] === "c01") expect(amounts[i]).toBe(1200);
      if (cases[i] === "c14") expect(amounts[i]).toBe(980);
    }
  });

  it("keeps scalar log attributes alongside the table", () => {
    expect(table.logAttributes).toEqual({
      "concept:name": "loan",
      source: "fixtures",
      revision: 3,
    });
  });

  it("materializes rows as fresh objects", () => {
    const first = table.row(0);
    expect(first).toEqual({
      "case:concept:name": "c01",
      "concept:name": "register",
      "time:timestamp": "2024-03-01T08:00:00+00:00",
      "case:amount": 1200,
    });
    first["concept:name"] = "tampered";
    expect(table.row(0)["concept:name"]).toBe("register");
  });

  it("hands out column copies, not views", () => {
    const col = table.column("concept:name");
    col[0] = "tampered";
    expect(table.column("concept:name")[0]).toBe("register");
  });

  it("iterates rows in document order", () => {
    const rows = [...table];
    expect(rows).toHaveLength(57);
    expect(rows[0]!["concept:name"]).toBe("register");
    expect(rows[56]!["concept:name"]).toBe("archive");
  });

  it("range-checks row and column access", () => {
    expect(() => table.row(57)).toThrow(RangeError);
    expect(() => table.row(-1)).toThrow(RangeError);
    expect(() => table.row(1.5)).toThrow(RangeError);
    expect(() => table.column("no:such:column")).toThrow(RangeError);
  });

  it("rejects an empty path locally", async () => {
    await expect(readXes(client, "")).rejects.toThrow(TypeError);
  });
});
