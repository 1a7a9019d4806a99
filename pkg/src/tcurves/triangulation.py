"""Unimodular triangulations of the degree-d triangle.

A triangulation is stored as a set of coordinate triples.  Includes the
validation report, edge/quadrangle structure, diagonal flips, the three
parametric families (honeycomb, bow tie, framed chessboard), seeded random
flip walks, and the catalog of triangulations shipped as data files.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional

from .lattice import (
    InvalidDegreeError,
    Point,
    check_degree,
    in_triangle,
    lattice_index,
    lattice_points,
    lattice_size,
)

Triangle = tuple[Point, Point, Point]
Edge = tuple[Point, Point]

CATALOG_KEYS = (
    "bat",
    "moth",
    "radiant",
    "split_radiant",
    "frayed_radiant",
    "honeycomb7",
)


class CatalogError(KeyError):
    pass


class NotFlippableError(ValueError):
    pass


def _norm_triangle(tri: Iterable[Point]) -> Triangle:
    pts = sorted(tuple(p) for p in tri)
    if len(pts) != 3:
        raise ValueError(f"triangle needs 3 vertices, got {pts}")
    return (pts[0], pts[1], pts[2])


def _norm_edge(a: Point, b: Point) -> Edge:
    return (a, b) if a <= b else (b, a)


def triangle_det(tri: Triangle) -> int:
    (x1, y1), (x2, y2), (x3, y3) = tri
    return (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)


@dataclass(frozen=True)
class Triangulation:
    degree: int
    triangles: tuple[Triangle, ...]
    lifting: Optional[tuple[int, ...]] = None

    @classmethod
    def from_triangles(
        cls,
        degree: int,
        triangles: Iterable[Iterable[Point]],
        lifting: Optional[Iterable[int]] = None,
    ) -> "Triangulation":
        check_degree(degree)
        tris = tuple(sorted(_norm_triangle(t) for t in triangles))
        lift = None if lifting is None else tuple(int(v) for v in lifting)
        if lift is not None and len(lift) != lattice_size(degree):
            raise ValueError(
                f"lifting has {len(lift)} entries, expected {lattice_size(degree)}"
            )
        return cls(degree, tris, lift)

    def triangle_set(self) -> frozenset[Triangle]:
        return frozenset(self.triangles)

    def edges(self) -> dict[Edge, list[Triangle]]:
        """Every edge together with the triangles containing it."""
        out: dict[Edge, list[Triangle]] = {}
        for tri in self.triangles:
            a, b, c = tri
            for e in (_norm_edge(a, b), _norm_edge(a, c), _norm_edge(b, c)):
                out.setdefault(e, []).append(tri)
        return out

    def interior_edges(self) -> list[Edge]:
        return sorted(e for e, ts in self.edges().items() if len(ts) == 2)

    def quadrangle(self, e: Edge) -> "InteriorEdgeQuadrangle":
        e = _norm_edge(*e)
        tris = self.edges().get(e)
        if tris is None:
            raise NotFlippableError(f"{e} is not an edge of the triangulation")
        if len(tris) != 2:
            raise NotFlippableError(f"{e} is a boundary edge")
        v, x = e
        (t,) = [p for p in tris[0] if p not in e]
        (w,) = [p for p in tris[1] if p not in e]
        c1 = _orient(t, w, v)
        c2 = _orient(t, w, x)
        convex = c1 * c2 < 0
        return InteriorEdgeQuadrangle(edge=(v, x), opposite=(t, w), convex=convex)

    def with_lifting(self, lifting: Iterable[int]) -> "Triangulation":
        return Triangulation.from_triangles(self.degree, self.triangles, lifting)

    def to_json_obj(self) -> dict:
        obj: dict = {
            "degree": self.degree,
            "triangles": [[list(p) for p in tri] for tri in self.triangles],
        }
        if self.lifting is not None:
            obj["lifting"] = list(self.lifting)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Triangulation":
        return cls.from_triangles(
            obj["degree"],
            [[tuple(p) for p in tri] for tri in obj["triangles"]],
            obj.get("lifting"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Triangulation":
        return cls.from_json_obj(json.loads(text))


@dataclass(frozen=True)
class InteriorEdgeQuadrangle:
    edge: tuple[Point, Point]
    opposite: tuple[Point, Point]
    convex: bool


@dataclass
class ValidationReport:
    degree: int
    triangle_count: int
    nonunimodular: list[Triangle] = field(default_factory=list)
    out_of_range: list[Point] = field(default_factory=list)
    unused_points: list[Point] = field(default_factory=list)
    bad_edges: list[Edge] = field(default_factory=list)
    area_ok: bool = True

    @property
    def unimodular(self) -> bool:
        return not self.nonunimodular

    @property
    def covers(self) -> bool:
        return (
            self.area_ok
            and not self.bad_edges
            and not self.out_of_range
            and self.triangle_count == self.degree * self.degree
        )

    @property
    def ok(self) -> bool:
        return self.unimodular and self.covers and not self.unused_points


def _orient(a: Point, b: Point, c: Point) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])


def validate(t: Triangulation) -> ValidationReport:
    """Check unimodularity, coverage of the triangle, and vertex usage.

    Coverage is certified combinatorially: total area d^2/2, every edge in at
    most two triangles, edges on the boundary of the triangle in exactly one.
    """
    d = t.degree
    report = ValidationReport(degree=d, triangle_count=len(t.triangles))

    used: set[Point] = set()
    total_area2 = 0
    for tri in t.triangles:
        det = triangle_det(tri)
        if abs(det) != 1:
            report.nonunimodular.append(tri)
        total_area2 += abs(det)
        for p in tri:
            used.add(p)
            if not in_triangle(p, d):
                report.out_of_range.append(p)

    report.area_ok = total_area2 == d * d

    for e, tris in t.edges().items():
        if len(tris) > 2:
            report.bad_edges.append(e)
        elif len(tris) == 1 and not _is_boundary_segment(e, d):
            report.bad_edges.append(e)
        elif len(tris) == 2 and _is_boundary_segment(e, d):
            report.bad_edges.append(e)

    report.unused_points = sorted(set(lattice_points(d)) - used)
    return report


def _is_boundary_segment(e: Edge, d: int) -> bool:
    (x1, y1), (x2, y2) = e
    return (
        (x1 == 0 and x2 == 0)
        or (y1 == 0 and y2 == 0)
        or (x1 + y1 == d and x2 + y2 == d)
    )


def flip(t: Triangulation, e: Edge) -> Triangulation:
    """Exchange the diagonal of the strictly convex quadrangle spanned by an
    interior edge.  The lifting (if any) is dropped: it certifies the old
    triangulation only."""
    quad = t.quadrangle(e)
    if not quad.convex:
        raise NotFlippableError(f"quadrangle of {e} is not strictly convex")
    v, x = quad.edge
    a, b = quad.opposite
    old1 = _norm_triangle((a, v, x))
    old2 = _norm_triangle((b, v, x))
    new1 = _norm_triangle((a, b, v))
    new2 = _norm_triangle((a, b, x))
    tris = set(t.triangles)
    tris.remove(old1)
    tris.remove(old2)
    tris.add(new1)
    tris.add(new2)
    return Triangulation.from_triangles(t.degree, tris)


def flippable_edges(t: Triangulation) -> list[Edge]:
    return [e for e in t.interior_edges() if t.quadrangle(e).convex]


def is_symmetric(t: Triangulation) -> bool:
    """True iff swapping coordinates maps the triangle set to itself."""
    mirrored = {
        _norm_triangle(tuple((y, x) for (x, y) in tri)) for tri in t.triangles
    }
    return mirrored == set(t.triangles)


def random_flip_walk(t: Triangulation, steps: int, seed: int) -> Triangulation:
    """Perform `steps` uniformly random flips; deterministic for a fixed seed.

    Maintains the edge-to-triangles map incrementally so long walks stay
    cheap; candidate edges are re-sorted each step to keep the choice
    independent of dict ordering.
    """
    rng = random.Random(seed)
    edge_map: dict[Edge, set[Triangle]] = {}
    tris = set(t.triangles)
    for tri in tris:
        a, b, c = tri
        for e in (_norm_edge(a, b), _norm_edge(a, c), _norm_edge(b, c)):
            edge_map.setdefault(e, set()).add(tri)

    def convex_diag(e: Edge) -> Optional[tuple[Point, Point]]:
        pair = edge_map[e]
        if len(pair) != 2:
            return None
        t1, t2 = pair
        (a,) = [p for p in t1 if p not in e]
        (b,) = [p for p in t2 if p not in e]
        if _orient(a, b, e[0]) * _orient(a, b, e[1]) < 0:
            return (a, b)
        return None

    for _ in range(steps):
        candidates = sorted(e for e in edge_map if convex_diag(e) is not None)
        if not candidates:
            break
        e = rng.choice(candidates)
        a, b = convex_diag(e)
        v, x = e
        removed = (_norm_triangle((a, v, x)), _norm_triangle((b, v, x)))
        added = (_norm_triangle((a, b, v)), _norm_triangle((a, b, x)))
        for tri in removed:
            tris.remove(tri)
            p, q, r = tri
            for edge in (_norm_edge(p, q), _norm_edge(p, r), _norm_edge(q, r)):
                edge_map[edge].discard(tri)
                if not edge_map[edge]:
                    del edge_map[edge]
        for tri in added:
            tris.add(tri)
            p, q, r = tri
            for edge in (_norm_edge(p, q), _norm_edge(p, r), _norm_edge(q, r)):
                edge_map.setdefault(edge, set()).add(tri)
    return Triangulation.from_triangles(t.degree, tris)


# ---------------------------------------------------------------------------
# parametric families


def honeycomb(d: int) -> Triangulation:
    """Chambers of the affine A2 line arrangement restricted to the triangle."""
    check_degree(d)
    tris: list[Triangle] = []
    for x in range(d):
        for y in range(d - x):
            tris.append(((x, y), (x + 1, y), (x, y + 1)))
            if x + y <= d - 2:
                tris.append(((x + 1, y), (x, y + 1), (x + 1, y + 1)))
    return Triangulation.from_triangles(d, tris)


def bow_tie(d: int) -> Triangulation:
    """The bow tie triangulation, refining the x=y split.

    The half below the diagonal is organized in horizontal rows: each diagonal
    point fans into the full row below it, and the strip left over is the fan
    of the boundary point at the row's right end.  The upper half does the
    same with columns, fanning from diagonal points into the next column.
    """
    check_degree(d)
    if d % 2 != 0:
        raise InvalidDegreeError(f"bow tie needs even degree, got {d}")
    k = d // 2
    tris: list[Triangle] = []
    for j in range(1, k + 1):
        for i in range(j - 1, d - j + 1):
            tris.append(((j, j), (i, j - 1), (i + 1, j - 1)))
        for i in range(j, d - j):
            tris.append(((d - j + 1, j - 1), (i, j), (i + 1, j)))
    for i in range(k):
        for j in range(i + 1, d - i - 1):
            tris.append(((i, i), (i + 1, j), (i + 1, j + 1)))
        for j in range(i, d - i):
            tris.append(((i + 1, d - i - 1), (i, j), (i, j + 1)))
    return Triangulation.from_triangles(d, tris)


# The framed chessboard is assembled from one fundamental tile: the square
# with corners (0,0), (2,2), (4,0), (2,-2), triangulated regularly by fixed
# integer heights.  The tile heights, centered at (2,0):
_TILE_HEIGHTS = {
    (2, 0): 0,
    (1, 0): 1,
    (2, 1): 1,
    (3, 0): 1,
    (2, -1): 1,
    (2, 2): 3,
    (2, -2): 3,
    (1, 1): 6,
    (3, 1): 6,
    (3, -1): 6,
    (1, -1): 6,
    (0, 0): 10,
    (4, 0): 10,
}


def _lower_hull_cells(heights: dict[Point, int]) -> list[Triangle]:
    """Maximal cells of the regular subdivision induced by integer heights,
    computed exactly by brute force over all triples."""
    pts = sorted(heights)
    cells = []
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = pts[i], pts[j], pts[k]
                det = _orient(a, b, c)
                if det == 0:
                    continue
                # plane z = (alpha*x + beta*y + gamma) / det through the lifts
                za, zb, zc = heights[a], heights[b], heights[c]
                alpha = (zb - za) * (c[1] - a[1]) - (zc - za) * (b[1] - a[1])
                beta = (zc - za) * (b[0] - a[0]) - (zb - za) * (c[0] - a[0])
                gamma = za * det - alpha * a[0] - beta * a[1]
                below = all(
                    heights[p] * det > (alpha * p[0] + beta * p[1] + gamma)
                    if det > 0
                    else heights[p] * det < (alpha * p[0] + beta * p[1] + gamma)
                    for p in pts
                    if p not in (a, b, c)
                )
                if below:
                    cells.append(_norm_triangle((a, b, c)))
    return cells


_TILE_CELLS: Optional[list[Triangle]] = None


def _tile_cells() -> list[Triangle]:
    global _TILE_CELLS
    if _TILE_CELLS is None:
        cells = _lower_hull_cells(_TILE_HEIGHTS)
        assert len(cells) == 16 and all(abs(triangle_det(t)) == 1 for t in cells)
        _TILE_CELLS = cells
    return _TILE_CELLS


def framed_chessboard(d: int) -> Triangulation:
    """Restriction of the framed chessboard triangulation of the quadrant.

    Tiles are the fundamental square translated by multiples of four, plus its
    transpose; a tile triangle survives iff all its vertices lie in the
    degree-d triangle (tile boundaries are flush with the axes and with the
    hypotenuse when 4 | d).
    """
    check_degree(d)
    if d % 4 != 0 or d < 8:
        raise InvalidDegreeError(
            f"framed chessboard needs degree divisible by 4, at least 8, got {d}"
        )
    cells = _tile_cells()
    tris: set[Triangle] = set()
    for a in range(-1, d // 4 + 1):
        for b in range(-1, d // 4 + 1):
            for (cx, cy) in ((2 + 4 * a, 4 * b), (4 * a, 2 + 4 * b)):
                # tiles below the x=y diagonal carry the fundamental pattern,
                # tiles above carry its reflection
                transpose = cx < cy
                for tri in cells:
                    pts = []
                    for (x, y) in tri:
                        u, v = x - 2, y
                        if transpose:
                            u, v = v, u
                        pts.append((cx + u, cy + v))
                    if all(in_triangle(p, d) for p in pts):
                        tris.add(_norm_triangle(pts))
    out = Triangulation.from_triangles(d, tris)
    assert len(out.triangles) == d * d
    return out


# ---------------------------------------------------------------------------
# catalog


def catalog(name: str) -> Triangulation:
    """Load one of the six triangulations shipped with the package."""
    if name not in CATALOG_KEYS:
        raise CatalogError(f"unknown catalog key {name!r}, have {CATALOG_KEYS}")
    text = resources.files("tcurves.data").joinpath(f"{name}.json").read_text()
    return Triangulation.from_json(text)


def catalog_degrees() -> dict[str, int]:
    return {name: catalog(name).degree for name in CATALOG_KEYS}


def lifting_at(t: Triangulation, p: Point) -> int:
    if t.lifting is None:
        raise ValueError("triangulation has no lifting")
    return t.lifting[lattice_index(t.degree)[p]]
