/** SVG board renderer: all four quadrants with signs, curve polylines,
 * shaded oval interiors, the root region highlight, and a distinct style for
 * the pseudo-line.  Produces markup strings so it stays testable without a
 * DOM; interactivity is attached by the app through data attributes. */

import { Evaluation, TriangulationObject } from "./api.js";
import { displayEdges, extendedSign, diamondPoints } from "./grid.js";

export interface BoardOptions {
  scale: number;
  pad: number;
}

export const DEFAULT_BOARD: BoardOptions = { scale: 34, pad: 0.9 };

export function boardSize(degree: number, opt: BoardOptions = DEFAULT_BOARD): number {
  return (2 * degree + 2 * opt.pad) * opt.scale;
}

function sx(degree: number, x: number, opt: BoardOptions): number {
  return (x + degree + opt.pad) * opt.scale;
}

function sy(degree: number, y: number, opt: BoardOptions): number {
  return (degree + opt.pad - y) * opt.scale;
}

export function renderBoard(
  degree: number,
  triangulation: TriangulationObject,
  signs: string,
  evaluation: Evaluation | null,
  opt: BoardOptions = DEFAULT_BOARD,
): string {
  const size = boardSize(degree, opt);
  const px = (x: number) => sx(degree, x, opt).toFixed(1);
  const py = (y: number) => sy(degree, y, opt).toFixed(1);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size.toFixed(0)}" ` +
      `height="${size.toFixed(0)}" viewBox="0 0 ${size.toFixed(0)} ${size.toFixed(0)}">`,
  ];

  // root region halo behind everything else
  if (evaluation) {
    const root = evaluation.regions.find((r) => r.is_root);
    if (root) {
      for (const [x, y] of root.vertices) {
        parts.push(
          `<circle cx="${px(x)}" cy="${py(y)}" r="${opt.scale * 0.34}" ` +
            `fill="#ffe08a" fill-opacity="0.55"/>`,
        );
      }
    }
  }

  const edges = displayEdges(triangulation);
  for (const e of edges.values()) {
    const cls = e.interior ? "edge interior" : "edge";
    parts.push(
      `<line x1="${px(e.a[0])}" y1="${py(e.a[1])}" x2="${px(e.b[0])}" ` +
        `y2="${py(e.b[1])}" class="${cls}" data-edge="${e.key}" ` +
        `stroke="#c8c8c8" stroke-width="1"/>`,
    );
  }
  const corners = [
    [degree, 0],
    [0, degree],
    [-degree, 0],
    [0, -degree],
    [degree, 0],
  ];
  parts.push(
    `<polyline fill="none" stroke="#777" stroke-width="1.8" points="` +
      corners.map(([x, y]) => `${px(x)},${py(y)}`).join(" ") +
      `"/>`,
  );

  if (evaluation) {
    for (const loop of evaluation.loop_list) {
      if (loop.kind === "oval") {
        for (const piece of loop.segments) {
          if (piece.length > 2 && samePoint(piece[0], piece[piece.length - 1])) {
            parts.push(
              `<polygon fill="#4a90d9" fill-opacity="0.16" stroke="none" points="` +
                piece.map(([x, y]) => `${px(x)},${py(y)}`).join(" ") +
                `"/>`,
            );
          }
        }
      }
    }
    for (const loop of evaluation.loop_list) {
      const style =
        loop.kind === "pseudo_line"
          ? `stroke="#b2182b" stroke-dasharray="7,4"`
          : `stroke="#1a3a8a"`;
      for (const piece of loop.segments) {
        parts.push(
          `<polyline fill="none" ${style} stroke-width="2.2" points="` +
            piece.map(([x, y]) => `${px(x)},${py(y)}`).join(" ") +
            `"/>`,
        );
      }
    }
  }

  for (const [x, y] of diamondPoints(degree)) {
    const bit = extendedSign(signs, degree, x, y);
    const inBase = x >= 0 && y >= 0;
    const fill = bit ? "#151515" : "#ffffff";
    const stroke = inBase ? "#000" : "#999";
    parts.push(
      `<circle cx="${px(x)}" cy="${py(y)}" r="4.2" fill="${fill}" ` +
        `stroke="${stroke}" stroke-width="1.1" class="vertex${inBase ? " base" : ""}" ` +
        `data-point="${x},${y}"/>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n");
}

function samePoint(a: number[], b: number[]): boolean {
  return Math.abs(a[0] - b[0]) < 1e-9 && Math.abs(a[1] - b[1]) < 1e-9;
}
