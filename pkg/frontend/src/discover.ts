import type { CoreClient } from "./client.js";
import { checkProjection } from "./protocol.js";
import type { AcceptingNet, ActivityProjection } from "./protocol.js";

/**
 * Discover an accepting Petri net from an activity projection. The
 * variant string selects the thresholds, e.g. "2.0|b0.5|t0.5|r0.5";
 * the core parses it and rejects bad values with VariantParseError.
 * All discovery logic runs in the core process.
 */
export function discoverAlphappp(
  client: CoreClient,
  projection: ActivityProjection,
  variant: string,
): Promise<AcceptingNet> {
  checkProjection(projection);
  if (typeof variant !== "string" || variant.length === 0) {
    throw new TypeError("variant must be a non-empty string");
  }
  return client.request<AcceptingNet>("discover", { projection, variant });
}

/** Push a projection through the boundary and back; returns the copy. */
export function roundtripProjection(
  client: CoreClient,
  projection: ActivityProjection,
): Promise<ActivityProjection> {
  checkProjection(projection);
  return client.request<ActivityProjection>("roundtrip_projection", { projection });
}
