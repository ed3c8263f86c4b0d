export { CoreClient, withClient } from "./client.js";
export type { ClientOptions } from "./client.js";
export { LogHandle, loadLog, withLog } from "./log.js";
export { EventTable, readXes } from "./table.js";
export { discoverAlphappp, roundtripProjection } from "./discover.js";
export { checkProjection } from "./protocol.js";
export type {
  AcceptingNet,
  ActivityProjection,
  ColumnKind,
  LogStats,
  NetTransition,
  Scalar,
  TablePayload,
} from "./protocol.js";
export {
  ClientError,
  CoreError,
  DoubleDestroyError,
  InvariantViolationError,
  IoError,
  MalformedXmlError,
  SchemaViolationError,
  UnknownHandleError,
  VariantParseError,
  translateError,
} from "./errors.js";
