/**
 * Failures cross the process boundary as {"ok": false, "error": code,
 * "detail": text}. Each durable code gets its own class so callers can
 * catch by type; codes without a class land on the CoreError base.
 */

export class CoreError extends Error {
  constructor(readonly code: string, detail: string) {
    super(detail);
    this.name = new.target.name;
  }
}

export class IoError extends CoreError {}
export class MalformedXmlError extends CoreError {}
export class SchemaViolationError extends CoreError {}
export class InvariantViolationError extends CoreError {}
export class UnknownHandleError extends CoreError {}
export class DoubleDestroyError extends CoreError {}
export class VariantParseError extends CoreError {}

const BY_CODE: Record<string, new (code: string, detail: string) => CoreError> = {
  Io: IoError,
  MalformedXml: MalformedXmlError,
  SchemaViolation: SchemaViolationError,
  InvariantViolation: InvariantViolationError,
  UnknownHandle: UnknownHandleError,
  DoubleDestroy: DoubleDestroyError,
  ParseError: VariantParseError,
};

export function translateError(code: string, detail: string): CoreError {
  const cls = BY_CODE[code] ?? CoreError;
  return new cls(code, detail);
}

/** Transport problem: the core process is gone, unreachable, or spoke garbage. */
export class ClientError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "ClientError";
  }
}
