import type { CoreClient } from "./client.js";
import type { ActivityProjection, LogStats } from "./protocol.js";

/**
 * A log loaded into the core process, addressed by an opaque integer
 * handle. Handles are never reused, so using one after unload fails
 * loudly (UnknownHandleError) instead of touching fresh data, and a
 * second unload raises DoubleDestroyError.
 */
export class LogHandle {
  constructor(
    private readonly client: CoreClient,
    readonly id: number,
  ) {}

  stats(): Promise<LogStats> {
    return this.client.request<LogStats>("log_stats", { handle: this.id });
  }

  projection(): Promise<ActivityProjection> {
    return this.client.request<ActivityProjection>("project", { handle: this.id });
  }

  async unload(): Promise<void> {
    await this.client.request("unload_log", { handle: this.id });
  }
}

export async function loadLog(client: CoreClient, path: string): Promise<LogHandle> {
  if (typeof path !== "string" || path.length === 0) {
    throw new TypeError("path must be a non-empty string");
  }
  const { handle } = await client.request<{ handle: number }>("load_log", { path });
  return new LogHandle(client, handle);
}

/**
 * Load a log, run `fn` with its handle, and unload afterwards even if
 * the body throws. Unloading inside the body makes the automatic
 * unload fail with DoubleDestroyError, so leave release to this helper.
 */
export async function withLog<T>(
  client: CoreClient,
  path: string,
  fn: (log: LogHandle) => Promise<T>,
): Promise<T> {
  const log = await loadLog(client, path);
  try {
    return await fn(log);
  } finally {
    await log.unload();
  }
}
