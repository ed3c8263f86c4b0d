import type { CoreClient } from "./client.js";
import type { ColumnKind, Scalar, TablePayload } from "./protocol.js";

/**
 * Column-major event table parsed out of an XES file, one row per event.
 * The data is owned by this object: accessors hand out copies, and
 * nothing here points back into the core process.
 */
export class EventTable {
  readonly names: string[];
  readonly kinds: Record<string, ColumnKind>;
  readonly rows: number;
  readonly logAttributes: Record<string, Scalar>;
  private readonly cols: Record<string, Scalar[]>;

  constructor(payload: TablePayload) {
    this.names = [...payload.names];
    this.kinds = { ...payload.kinds };
    this.rows = payload.rows;
    this.logAttributes = { ...payload.log_attributes };
    this.cols = payload.columns;
  }

  column(name: string): Scalar[] {
    const col = this.cols[name];
    if (!col) {
      throw new RangeError(`no column named ${JSON.stringify(name)}`);
    }
    return [...col];
  }

  row(index: number): Record<string, Scalar> {
    if (!Number.isInteger(index) || index < 0 || index >= this.rows) {
      throw new RangeError(`row ${index} out of range for ${this.rows} rows`);
    }
    const out: Record<string, Scalar> = {};
    for (const name of this.names) {
      out[name] = this.cols[name]![index]!;
    }
    return out;
  }

  *[Symbol.iterator](): Iterator<Record<string, Scalar>> {
    for (let i = 0; i < this.rows; i++) {
      yield this.row(i);
    }
  }
}

/**
 * Parse an XES file (plain or gzip) into an event table plus the
 * log-level scalar attributes. Timestamps arrive as ISO-8601 text.
 */
export async function readXes(client: CoreClient, path: string): Promise<EventTable> {
  if (typeof path !== "string" || path.length === 0) {
    throw new TypeError("path must be a non-empty string");
  }
  const payload = await client.request<TablePayload>("read_table", { path });
  return new EventTable(payload);
}
