import { describe, expect, it } from "vitest";

import {
  ApiClient,
  ApiError,
  parsePatchwork,
  serializePatchwork,
} from "../src/api.js";

function fakeFetch(routes: Record<string, (body: unknown) => unknown>) {
  const calls: { url: string; body: unknown }[] = [];
  const fn = async (url: string, init?: RequestInit) => {
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    calls.push({ url, body });
    const handler = routes[url];
    if (!handler) {
      return new Response(JSON.stringify({ detail: "not found" }), { status: 404 });
    }
    try {
      return new Response(JSON.stringify(handler(body)), { status: 200 });
    } catch (err) {
      return new Response(JSON.stringify({ detail: String(err) }), { status: 422 });
    }
  };
  return { fn, calls };
}

describe("api client", () => {
  it("posts evaluate payloads and returns evaluations", async () => {
    const { fn, calls } = fakeFetch({
      "/evaluate": () => ({ scheme: "<1>", p: 1, n: 0, loops: 1 }),
    });
    const client = new ApiClient("", fn);
    const ev = await client.evaluate({
      degree: 2,
      triangulation: "honeycomb2",
      signs: "111111",
    });
    expect(ev.scheme).toBe("<1>");
    expect(calls[0].body).toMatchObject({ signs: "111111" });
  });

  it("raises ApiError with the service detail", async () => {
    const { fn } = fakeFetch({});
    const client = new ApiClient("", fn);
    await expect(
      client.evaluate({ degree: 2, triangulation: "x", signs: "1" }),
    ).rejects.toThrowError(ApiError);
  });
});

describe("patchwork serialization", () => {
  it("parse/serialize is byte-stable", () => {
    const text = serializePatchwork({
      degree: 2,
      triangulation: {
        degree: 2,
        triangles: [
          [[0, 0], [0, 1], [1, 0]],
          [[0, 1], [1, 0], [1, 1]],
        ],
        lifting: [0, 1, 2, 0, 1, 0],
      },
      signs: "101001",
    });
    expect(serializePatchwork(parsePatchwork(text))).toBe(text);
    expect(text.endsWith("\n")).toBe(true);
  });

  it("rejects junk", () => {
    expect(() => parsePatchwork('{"degree": "x"}')).toThrow();
  });
});
