import { describe, expect, it } from "vitest";

import {
  CoreError,
  DoubleDestroyError,
  InvariantViolationError,
  IoError,
  MalformedXmlError,
  SchemaViolationError,
  UnknownHandleError,
  VariantParseError,
  translateError,
} from "../src/errors.js";

describe("translateError", () => {
  it.each([
    ["Io", IoError],
    ["MalformedXml", MalformedXmlError],
    ["SchemaViolation", SchemaViolationError],
    ["InvariantViolation", InvariantViolationError],
    ["UnknownHandle", UnknownHandleError],
    ["DoubleDestroy", DoubleDestroyError],
    ["ParseError", VariantParseError],
  ] as const)("maps code %s to its own class", (code, cls) => {
    const err = translateError(code, "boom");
    expect(err).toBeInstanceOf(cls);
    expect(err.code).toBe(code);
    expect(err.message).toBe("boom");
  });

  it("keeps unknown codes on the base class", () => {
    const err = translateError("NotEnabled", "t9 is not enabled");
    expect(err).toBeInstanceOf(CoreError);
    expect(err.constructor).toBe(CoreError);
    expect(err.code).toBe("NotEnabled");
  });

  it("chains through CoreError to Error", () => {
    const err = translateError("DoubleDestroy", "handle 3 destroyed twice");
    expect(err).toBeInstanceOf(CoreError);
    expect(err).toBeInstanceOf(Error);
    expect(err.name).toBe("DoubleDestroyError");
  });
});
