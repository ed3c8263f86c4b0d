import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CoreClient, withClient } from "../src/client.js";
import { ClientError, IoError, SchemaViolationError } from "../src/errors.js";

describe("requests", () => {
  let client: CoreClient;

  beforeAll(() => {
    client = new CoreClient();
  });
  afterAll(async () => {
    await client.close();
  });

  it("answers ping", async () => {
    await client.ping();
    const raw = await client.request("ping");
    expect(raw).toEqual({ pong: true });
  });

  it("correlates pipelined requests", async () => {
    const replies = await Promise.all(
      Array.from({ length: 10 }, () => client.request("ping")),
    );
    expect(replies).toHaveLength(10);
    for (const reply of replies) expect(reply).toEqual({ pong: true });
  });

  it("turns an unknown op into SchemaViolationError", async () => {
    const err = await client.request("no_such_op").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(SchemaViolationError);
  });

  it("turns a missing file into IoError", async () => {
    const err = await client
      .request("load_log", { path: "/no/such/file.xes" })
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(IoError);
    expect((err as IoError).code).toBe("Io");
  });

  it("keeps working after an error reply", async () => {
    await expect(client.request("no_such_op")).rejects.toThrow();
    await client.ping();
  });
});

describe("lifecycle", () => {
  it("close drains the process and reports exit 0", async () => {
    const client = new CoreClient();
    await client.ping();
    expect(await client.close()).toBe(0);
  });

  it("close is idempotent", async () => {
    const client = new CoreClient();
    const [first, second] = await Promise.all([client.close(), client.close()]);
    expect(first).toBe(0);
    expect(second).toBe(0);
  });

  it("rejects requests after close", async () => {
    const client = new CoreClient();
    await client.close();
    await expect(client.request("ping")).rejects.toBeInstanceOf(ClientError);
  });

  it("a bad interpreter path fails requests instead of hanging", async () => {
    const client = new CoreClient({ pythonPath: "/no/such/interpreter" });
    await expect(client.request("ping")).rejects.toBeInstanceOf(ClientError);
    await client.close();
  });
});

describe("withClient", () => {
  it("closes after the body returns", async () => {
    let seen: CoreClient | undefined;
    const out = await withClient(async (client) => {
      seen = client;
      await client.ping();
      return 7;
    });
    expect(out).toBe(7);
    await expect(seen!.request("ping")).rejects.toBeInstanceOf(ClientError);
  });

  it("closes after the body throws", async () => {
    let seen: CoreClient | undefined;
    await expect(
      withClient(async (client) => {
        seen = client;
        throw new Error("body failed");
      }),
    ).rejects.toThrow("body failed");
    await expect(seen!.request("ping")).rejects.toBeInstanceOf(ClientError);
  });
});
