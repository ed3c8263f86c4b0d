/**
 * Client for the core stdio server (`python -m pmcore.ipc`).
 *
 * One request is one JSON object on one line; the reply mirrors the
 * request id. The server answers in order, but replies are correlated
 * by id anyway so callers may pipeline requests freely. All data is
 * copied through JSON text, so results never alias core memory.
 */

import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface } from "node:readline";

import { ClientError, translateError } from "./errors.js";
import type { Reply } from "./protocol.js";

export interface ClientOptions {
  /** Interpreter to run; defaults to $PMCORE_PYTHON, then "python3". */
  pythonPath?: string;
}

interface Pending {
  resolve(value: unknown): void;
  reject(error: Error): void;
}

const STDERR_TAIL = 20;

export class CoreClient {
  private readonly child: ChildProcessWithoutNullStreams;
  private readonly pending = new Map<number, Pending>();
  private readonly stderrTail: string[] = [];
  private nextId = 1;
  private closed = false;
  private readonly exited: Promise<number | null>;

  constructor(options: ClientOptions = {}) {
    const python = options.pythonPath ?? process.env.PMCORE_PYTHON ?? "python3";
    this.child = spawn(python, ["-m", "pmcore.ipc"], {
      stdio: ["pipe", "pipe", "pipe"],
    });
    // swallow stream-level stdin errors (EPIPE on shutdown); write
    // callbacks and the exit handler still report failures
    this.child.stdin.on("error", () => {});

    createInterface({ input: this.child.stdout }).on("line", (line) => {
      this.dispatch(line);
    });
    createInterface({ input: this.child.stderr }).on("line", (line) => {
      this.stderrTail.push(line);
      if (this.stderrTail.length > STDERR_TAIL) this.stderrTail.shift();
    });

    this.exited = new Promise((resolve) => {
      this.child.once("close", (code) => {
        this.closed = true;
        this.failAll(this.transportError(`core process exited (code ${code})`));
        resolve(code);
      });
      this.child.once("error", (err) => {
        this.closed = true;
        this.failAll(new ClientError(`failed to run core process: ${err.message}`));
        resolve(null);
      });
    });
  }

  /** Send one operation and await its result. */
  request<T = unknown>(op: string, params: Record<string, unknown> = {}): Promise<T> {
    if (this.closed) {
      return Promise.reject(new ClientError("client is closed"));
    }
    const id = this.nextId++;
    // id and op last so params cannot clobber the envelope
    const line = JSON.stringify({ ...params, id, op }) + "\n";
    return new Promise<T>((resolve, reject) => {
      this.pending.set(id, { resolve: resolve as (v: unknown) => void, reject });
      this.child.stdin.write(line, (err) => {
        if (err && this.pending.delete(id)) {
          reject(new ClientError(`write to core process failed: ${err.message}`));
        }
      });
    });
  }

  async ping(): Promise<void> {
    const result = await this.request<{ pong?: unknown }>("ping");
    if (result?.pong !== true) {
      throw new ClientError("core process gave a bad ping reply");
    }
  }

  /** Close stdin and wait for the process to drain and exit. */
  close(): Promise<number | null> {
    if (!this.closed) {
      this.closed = true;
      this.child.stdin.end();
    }
    return this.exited;
  }

  private dispatch(line: string): void {
    let reply: Reply;
    try {
      reply = JSON.parse(line) as Reply;
    } catch {
      this.failAll(this.transportError("core process wrote a non-JSON line"));
      return;
    }
    // The wrapper only ever sends well-formed requests, so a reply that
    // carries no known id means something else corrupted the stream.
    const entry = typeof reply.id === "number" ? this.pending.get(reply.id) : undefined;
    if (!entry) {
      this.failAll(this.transportError(`unmatched reply id ${JSON.stringify(reply.id)}`));
      return;
    }
    this.pending.delete(reply.id as number);
    if (reply.ok) {
      entry.resolve(reply.result);
    } else {
      entry.reject(translateError(reply.error, reply.detail));
    }
  }

  private failAll(error: Error): void {
    const waiting = [...this.pending.values()];
    this.pending.clear();
    for (const entry of waiting) entry.reject(error);
  }

  private transportError(what: string): ClientError {
    const tail = this.stderrTail.length ? `; stderr: ${this.stderrTail.join(" | ")}` : "";
    return new ClientError(what + tail);
  }
}

/**
 * Run `fn` against a fresh client and always close the process after,
 * whether the body returns or throws.
 */
export async function withClient<T>(
  fn: (client: CoreClient) => Promise<T>,
  options: ClientOptions = {},
): Promise<T> {
  const client = new CoreClient(options);
  try {
    return await fn(client);
  } finally {
    await client.close();
  }
}
