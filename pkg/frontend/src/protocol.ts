// Shapes exchanged with the core process. Everything here is plain JSON
// data; nothing holds a reference into core memory.

export type Scalar = string | number | boolean | null;

export interface ActivityProjection {
  alphabet: string[];
  variants: Array<[number[], number]>;
}

export interface LogStats {
  events: number;
  activities: number;
  cases: number;
  variants: number;
}

export interface NetTransition {
  id: string;
  label: string | null;
}

export interface AcceptingNet {
  places: string[];
  transitions: NetTransition[];
  arcs: Array<[string, string, number]>;
  initial_marking: Record<string, number>;
  final_markings: Array<Record<string, number>>;
}

export type ColumnKind = "text" | "integer" | "float" | "boolean" | "timestamp";

export interface TablePayload {
  names: string[];
  kinds: Record<string, ColumnKind>;
  rows: number;
  columns: Record<string, Scalar[]>;
  log_attributes: Record<string, Scalar>;
}

export interface OkReply {
  id: number;
  ok: true;
  result: unknown;
}

export interface ErrReply {
  id: number | null;
  ok: false;
  error: string;
  detail: string;
}

export type Reply = OkReply | ErrReply;

function isIntArray(v: unknown): v is number[] {
  return Array.isArray(v) && v.every((x) => Number.isInteger(x));
}

/**
 * Cheap local shape check so obvious misuse fails before a round trip.
 * Only structure is verified; consistency (indices inside the alphabet,
 * count ranges) is the core's job and surfaces as InvariantViolationError.
 */
export function checkProjection(p: ActivityProjection): void {
  if (typeof p !== "object" || p === null || Array.isArray(p)) {
    throw new TypeError("projection must be an object");
  }
  if (!Array.isArray(p.alphabet) || p.alphabet.some((a) => typeof a !== "string")) {
    throw new TypeError("projection.alphabet must be an array of strings");
  }
  if (!Array.isArray(p.variants)) {
    throw new TypeError("projection.variants must be an array");
  }
  for (const entry of p.variants) {
    if (!Array.isArray(entry) || entry.length !== 2 || !isIntArray(entry[0]) || !Number.isInteger(entry[1])) {
      throw new TypeError("each variant must be [indices, count] with integer entries");
    }
  }
}
