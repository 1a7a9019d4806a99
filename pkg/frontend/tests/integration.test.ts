/** End-to-end checks against a live evaluation service.  Start one with
 * `tcurves serve --port 8321` and re-run; without a reachable service the
 * suite skips. */

import { beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { toggleBit } from "../src/grid.js";

const BASE = process.env.TCURVES_API ?? "http://127.0.0.1:8321";

let alive = false;
const client = new ApiClient(BASE);

beforeAll(async () => {
  try {
    const res = await fetch(`${BASE}/catalog`, { signal: AbortSignal.timeout(1500) });
    alive = res.ok;
  } catch {
    alive = false;
  }
});

describe("live service walkthrough", () => {
  it("lists the six catalog triangulations", async (ctx) => {
    if (!alive) return ctx.skip();
    const entries = await client.catalog();
    expect(entries.map((e) => e.degree).sort()).toEqual([6, 6, 7, 7, 7, 7]);
  });

  it(
    "reproduces the degree-4 toggle walkthrough: <4> then <3>",
    async (ctx) => {
      if (!alive) return ctx.skip();
      // Harnack signs of degree 4, lex order
      const eta = "101010000101001";
      const tri = {
        degree: 4,
        triangulation: { degree: 4, triangles: honeycomb4() },
        signs: eta,
      };
      const ev = await client.evaluate(tri);
      expect(ev.scheme).toBe("<4>");
      const res = await client.toggle(tri, [1, 3]);
      expect(res.evaluation.scheme).toBe("<3>");
      expect(res.patchwork.signs).toBe(toggleBit(eta, 4, 1, 3));
      const back = await client.toggle(res.patchwork, [1, 3]);
      expect(back.evaluation.scheme).toBe("<4>");
      expect(back.patchwork.signs).toBe(eta);
    },
  );

  it("evaluates degree 7 in under 100 ms", async (ctx) => {
    if (!alive) return ctx.skip();
    const body = { degree: 7, triangulation: "honeycomb7", signs: "1".repeat(36) };
    await client.evaluate(body); // warm up
    const t0 = performance.now();
    const ev = await client.evaluate(body);
    const dt = performance.now() - t0;
    expect(ev.scheme).toBe("<J u 1<1<1>>>");
    expect(dt).toBeLessThan(100);
  });
});

function honeycomb4(): number[][][] {
  const tris: number[][][] = [];
  for (let x = 0; x < 4; x++) {
    for (let y = 0; y < 4 - x; y++) {
      tris.push([[x, y], [x + 1, y], [x, y + 1]]);
      if (x + y <= 2) {
        tris.push([[x + 1, y], [x, y + 1], [x + 1, y + 1]]);
      }
    }
  }
  return tris;
}
