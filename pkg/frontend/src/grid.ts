/** Diamond geometry: quadrant reflections of the triangulation, the sign
 * extension rule for display, and hit-testing of vertices and edges. */

import { TriangulationObject } from "./api.js";

export type Point = [number, number];

export const QUADRANTS: Point[] = [
  [1, 1],
  [-1, 1],
  [1, -1],
  [-1, -1],
];

export function trianglePoints(d: number): Point[] {
  const out: Point[] = [];
  for (let x = 0; x <= d; x++) {
    for (let y = 0; y <= d - x; y++) {
      out.push([x, y]);
    }
  }
  return out;
}

export function diamondPoints(d: number): Point[] {
  const out: Point[] = [];
  for (let x = -d; x <= d; x++) {
    for (let y = -(d - Math.abs(x)); y <= d - Math.abs(x); y++) {
      out.push([x, y]);
    }
  }
  return out;
}

/** Index of (x, y) in the lexicographic ordering of the triangle points. */
export function lexIndex(d: number, x: number, y: number): number {
  if (x < 0 || y < 0 || x + y > d) {
    throw new Error(`(${x}, ${y}) is outside the degree-${d} triangle`);
  }
  let idx = 0;
  for (let i = 0; i < x; i++) {
    idx += d + 1 - i;
  }
  return idx + y;
}

/** Extension of the sign vector to any diamond point:
 * s(i,-j) = s(i,j)+j, s(-i,j) = s(i,j)+i, s(-i,-j) = s(i,j)+i+j (mod 2). */
export function extendedSign(signs: string, d: number, x: number, y: number): number {
  const base = signs.charCodeAt(lexIndex(d, Math.abs(x), Math.abs(y))) - 48;
  let off = 0;
  if (x < 0) off += -x;
  if (y < 0) off += -y;
  return (base + off) & 1;
}

export function toggleBit(signs: string, d: number, x: number, y: number): string {
  const idx = lexIndex(d, x, y);
  const bit = signs[idx] === "1" ? "0" : "1";
  return signs.slice(0, idx) + bit + signs.slice(idx + 1);
}

export interface DisplayEdge {
  a: Point;
  b: Point;
  interior: boolean; // interior edge of the base triangulation (flippable candidate)
  key: string;
}

function edgeKey(a: Point, b: Point): string {
  const [p, q] = a[0] < b[0] || (a[0] === b[0] && a[1] <= b[1]) ? [a, b] : [b, a];
  return `${p[0]},${p[1]}|${q[0]},${q[1]}`;
}

/** All edges of the four reflected copies, deduplicated per geometric
 * position; base-triangle interior edges carry their preimage for flips. */
export function displayEdges(t: TriangulationObject): Map<string, DisplayEdge> {
  const counts = new Map<string, number>();
  const baseEdges = new Map<string, [Point, Point]>();
  for (const tri of t.triangles) {
    const pts = tri as unknown as Point[];
    for (const [i, j] of [
      [0, 1],
      [0, 2],
      [1, 2],
    ]) {
      const key = edgeKey(pts[i], pts[j]);
      counts.set(key, (counts.get(key) ?? 0) + 1);
      baseEdges.set(key, [pts[i], pts[j]]);
    }
  }
  const out = new Map<string, DisplayEdge>();
  for (const [sx, sy] of QUADRANTS) {
    for (const [key, [a, b]] of baseEdges) {
      const ra: Point = [sx * a[0], sy * a[1]];
      const rb: Point = [sx * b[0], sy * b[1]];
      const rkey = edgeKey(ra, rb);
      if (!out.has(rkey)) {
        out.set(rkey, {
          a: ra,
          b: rb,
          interior: counts.get(key) === 2,
          key: rkey,
        });
      }
    }
  }
  return out;
}

/** Base-triangle preimage of a display edge: both endpoints reflected back
 * by |.|; returns null when the reflected pair is not an edge of the base
 * triangulation (e.g. an axis edge viewed from the wrong side). */
export function basePreimage(edge: DisplayEdge): [Point, Point] {
  return [
    [Math.abs(edge.a[0]), Math.abs(edge.a[1])],
    [Math.abs(edge.b[0]), Math.abs(edge.b[1])],
  ];
}

export function nearestVertex(
  points: Point[],
  x: number,
  y: number,
  radius: number,
): Point | null {
  let best: Point | null = null;
  let bestD = radius * radius;
  for (const p of points) {
    const dd = (p[0] - x) ** 2 + (p[1] - y) ** 2;
    if (dd < bestD) {
      bestD = dd;
      best = p;
    }
  }
  return best;
}
