"""Glued cell surface on the projective plane and the patchworked curve.

Four reflected copies of a triangulation tile the diamond; identifying
antipodal boundary points yields a cell decomposition of RP^2.  A sign
distribution bicolors the vertices (per diamond position, not per identified
vertex: for odd degree the two positions of a boundary vertex carry opposite
signs while edge bicoloring stays well defined).  The curve is the union of
the dual edges crossing bicolored edges; regions are the monochrome
components of the 1-skeleton.

Loops are classified by their incident region count (one region: the loop is
one-sided, a pseudo-line; two: an oval).  A redundant classification by the
parity of boundary crossings, i.e. whether the lift of the loop to the
sphere double cover closes up, is checked on every build, as is the location
of the root region: the unique region whose preimage in the double cover is
connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lattice import (
    Point,
    diamond_points,
    identify,
    lattice_index,
    surface_vertices,
)
from .scheme import RealScheme, harnack_bound
from .signs import SignDistribution, orbit
from .triangulation import Edge, Triangulation, validate

Quadrant = tuple[int, int]
QUADRANTS: tuple[Quadrant, ...] = ((1, 1), (-1, 1), (1, -1), (-1, -1))


class PatchworkInputError(ValueError):
    pass


def _edge_key(p: Point, q: Point, d: int, glued: bool) -> tuple[Point, Point]:
    """Canonical key of a surface edge given one quadrant's view of it."""
    a = (p, q) if p <= q else (q, p)
    if glued:
        np_, nq = (-p[0], -p[1]), (-q[0], -q[1])
        b = (np_, nq) if np_ <= nq else (nq, np_)
        return min(a, b)
    return a


@dataclass
class SurfaceEdge:
    key: tuple[Point, Point]
    pa: int  # diamond position ids of one representative view
    pb: int
    va: int  # surface vertex ids
    vb: int
    glued: bool  # antipodally identified boundary edge
    tris: list[int]


@dataclass
class Surface:
    """Combinatorial structure of the glued surface for one triangulation."""

    degree: int
    positions: list[Point]
    pos_index: dict[Point, int]
    vertices: list[Point]  # canonical representatives, shared across all T
    pos_vertex: list[int]  # position id -> vertex id
    vertex_pos: list[int]  # vertex id -> one position id
    triangles: list[tuple[int, int, int]]  # position ids
    tri_quadrant: list[Quadrant]
    edges: list[SurfaceEdge]
    tri_edges: list[tuple[int, int, int]]
    sign_base: list[int]  # position id -> lex index in the triangle
    sign_off: list[int]  # position id -> extension offset mod 2

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)


_SURFACE_CACHE: dict[tuple[int, tuple], Surface] = {}


def build_surface(t: Triangulation) -> Surface:
    key = (t.degree, t.triangles)
    cached = _SURFACE_CACHE.get(key)
    if cached is not None:
        return cached

    d = t.degree
    report = validate(t)
    if not report.ok:
        raise PatchworkInputError(f"invalid triangulation: {report}")

    positions = diamond_points(d)
    pos_index = {p: i for i, p in enumerate(positions)}
    vertices = surface_vertices(d)
    vert_index = {v: i for i, v in enumerate(vertices)}
    pos_vertex = [vert_index[identify(p, d).representative] for p in positions]
    vertex_pos = [-1] * len(vertices)
    for i, v in enumerate(pos_vertex):
        if vertex_pos[v] < 0:
            vertex_pos[v] = i

    lex = lattice_index(d)
    sign_base = [lex[(abs(x), abs(y))] for (x, y) in positions]
    sign_off = [((-x if x < 0 else 0) + (-y if y < 0 else 0)) & 1 for (x, y) in positions]

    triangles: list[tuple[int, int, int]] = []
    tri_quadrant: list[Quadrant] = []
    edge_map: dict[tuple[Point, Point], SurfaceEdge] = {}
    tri_edges: list[tuple[int, int, int]] = []

    for quad in QUADRANTS:
        sx, sy = quad
        for tri in t.triangles:
            pts = [(sx * x, sy * y) for (x, y) in tri]
            tid = len(triangles)
            triangles.append(tuple(pos_index[p] for p in pts))
            tri_quadrant.append(quad)
            eids = []
            for i0, i1 in ((0, 1), (0, 2), (1, 2)):
                p, q = pts[i0], pts[i1]
                glued = (sx * p[0] + sy * p[1] == d) and (sx * q[0] + sy * q[1] == d)
                ekey = _edge_key(p, q, d, glued)
                se = edge_map.get(ekey)
                if se is None:
                    ka, kb = ekey
                    se = SurfaceEdge(
                        key=ekey,
                        pa=pos_index[ka],
                        pb=pos_index[kb],
                        va=pos_vertex[pos_index[ka]],
                        vb=pos_vertex[pos_index[kb]],
                        glued=glued,
                        tris=[],
                    )
                    edge_map[ekey] = se
                se.tris.append(tid)
                eids.append(se)
            tri_edges.append(tuple(eids))  # placeholder, re-indexed below

    edges = sorted(edge_map.values(), key=lambda e: e.key)
    eid_of = {e.key: i for i, e in enumerate(edges)}
    tri_edges = [tuple(eid_of[se.key] for se in trip) for trip in tri_edges]

    for e in edges:
        if len(e.tris) != 2:
            raise PatchworkInputError(
                f"surface edge {e.key} has {len(e.tris)} incident triangles"
            )

    surf = Surface(
        degree=d,
        positions=positions,
        pos_index=pos_index,
        vertices=vertices,
        pos_vertex=pos_vertex,
        vertex_pos=vertex_pos,
        triangles=triangles,
        tri_quadrant=tri_quadrant,
        edges=edges,
        tri_edges=tri_edges,
        sign_base=sign_base,
        sign_off=sign_off,
    )
    assert surf.euler_characteristic == 1
    assert len(triangles) == 4 * d * d and len(vertices) == 2 * d * d + 1
    if len(_SURFACE_CACHE) > 64:
        _SURFACE_CACHE.clear()
    _SURFACE_CACHE[key] = surf
    return surf


@dataclass
class Loop:
    index: int
    dual_edge_cycle: list[tuple[int, int]]  # (triangle id, crossed edge id)
    kind: str  # "oval" | "pseudo_line"
    incident_regions: tuple[int, ...]
    boundary_crossings: int


@dataclass
class Region:
    index: int
    vertices: frozenset[int]
    is_root: bool


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class Patchwork:
    degree: int
    triangulation: Triangulation
    signs: SignDistribution
    surface: Surface
    pos_signs: list[int]  # per diamond position
    bicolored: list[bool]  # per surface edge
    loops: list[Loop]
    regions: list[Region]
    root_region: int
    parent: dict[int, Optional[int]]  # region index -> parent region index
    children: dict[int, list[int]]
    scheme: RealScheme

    @property
    def ovals(self) -> int:
        return sum(1 for l in self.loops if l.kind == "oval")

    @property
    def pseudo_lines(self) -> int:
        return sum(1 for l in self.loops if l.kind == "pseudo_line")


def build(t: Triangulation, sigma: SignDistribution) -> Patchwork:
    """Construct the patchwork of (T, sigma) and classify its curve.

    All structural invariants are asserted on the way: they hold for every
    valid unimodular triangulation, regular or not.
    """
    if t.degree != sigma.degree:
        raise PatchworkInputError(
            f"degree mismatch: triangulation {t.degree}, signs {sigma.degree}"
        )
    d = t.degree
    surf = build_surface(t)

    pos_signs = [
        ((sigma.mask >> surf.sign_base[i]) & 1) ^ surf.sign_off[i]
        for i in range(len(surf.positions))
    ]
    bicolored = [pos_signs[e.pa] != pos_signs[e.pb] for e in surf.edges]

    # regions: monochrome components of the 1-skeleton
    uf = _UnionFind(len(surf.vertices))
    for e, bic in zip(surf.edges, bicolored):
        if not bic:
            uf.union(e.va, e.vb)
    region_root: dict[int, int] = {}
    region_vertices: dict[int, set[int]] = {}
    for v in range(len(surf.vertices)):
        r = uf.find(v)
        if r not in region_root:
            region_root[r] = len(region_root)
        region_vertices.setdefault(r, set()).add(v)
    n_regions = len(region_root)

    def region_of_vertex(v: int) -> int:
        return region_root[uf.find(v)]

    # sphere double cover: layer 0/1 per position, equator identified
    n_pos = len(surf.positions)
    cover_id = [[0, 0] for _ in range(n_pos)]
    for i, (x, y) in enumerate(surf.positions):
        cover_id[i][0] = i
        if abs(x) + abs(y) == d:
            cover_id[i][1] = surf.pos_index[(-x, -y)]
        else:
            cover_id[i][1] = n_pos + i
    cuf = _UnionFind(2 * n_pos)
    for e, bic in zip(surf.edges, bicolored):
        if not bic:
            cuf.union(cover_id[e.pa][0], cover_id[e.pb][0])
            cuf.union(cover_id[e.pa][1], cover_id[e.pb][1])

    root_candidates = []
    for r, rid in region_root.items():
        p = surf.vertex_pos[next(iter(region_vertices[r]))]
        if cuf.find(cover_id[p][0]) == cuf.find(cover_id[p][1]):
            root_candidates.append(rid)

    # curve loops: cycles in the dual graph through bicolored edges
    tri_bic: list[list[int]] = [[] for _ in surf.triangles]
    for eid, bic in enumerate(bicolored):
        if bic:
            for tid in surf.edges[eid].tris:
                tri_bic[tid].append(eid)
    for tid, eids in enumerate(tri_bic):
        assert len(eids) in (0, 2), "a triangle carries 0 or 2 bicolored edges"

    loops: list[Loop] = []
    seen_edge = [False] * len(surf.edges)
    for e0 in range(len(surf.edges)):
        if not bicolored[e0] or seen_edge[e0]:
            continue
        cycle: list[tuple[int, int]] = []
        crossings = 0
        tid = min(surf.edges[e0].tris)
        eid = e0
        while True:
            seen_edge[eid] = True
            cycle.append((tid, eid))
            if surf.edges[eid].glued:
                crossings += 1
            a, b = tri_bic[tid]
            nxt = b if a == eid else a
            t1, t2 = surf.edges[nxt].tris
            tid = t2 if t1 == tid else t1
            eid = nxt
            if eid == e0 and tid == min(surf.edges[e0].tris):
                break
        inc = set()
        for _, eid2 in cycle:
            e = surf.edges[eid2]
            inc.add(region_of_vertex(e.va))
            inc.add(region_of_vertex(e.vb))
        assert len(inc) in (1, 2), "a loop borders one or two regions"
        kind = "pseudo_line" if len(inc) == 1 else "oval"
        # redundant classification: the lift closes up iff it crosses the
        # equator an even number of times
        assert (kind == "pseudo_line") == (crossings % 2 == 1)
        loops.append(
            Loop(
                index=len(loops),
                dual_edge_cycle=cycle,
                kind=kind,
                incident_regions=tuple(sorted(inc)),
                boundary_crossings=crossings,
            )
        )

    n_ovals = sum(1 for l in loops if l.kind == "oval")
    n_pseudo = len(loops) - n_ovals
    assert n_pseudo == d % 2, "pseudo-line count equals the degree parity"
    assert n_regions == n_ovals + 1, "regions = ovals + 1"
    assert len(loops) >= 1, "a patchworked curve is never empty"
    assert len(loops) <= harnack_bound(d), "loop count within the classical bound"

    # Root region.  For even degree it is the unique region carrying a
    # noncontractible monochrome cycle, i.e. whose double-cover preimage is
    # connected.  For odd degree no region can carry one (it would have to
    # avoid the pseudo-line, yet two one-sided curves always intersect), so
    # the root is the single region bordering the pseudo-line instead.
    if n_pseudo:
        assert not root_candidates, "odd degree: every region lifts to two copies"
        pl = next(l for l in loops if l.kind == "pseudo_line")
        root = pl.incident_regions[0]
    else:
        assert len(root_candidates) == 1, "exactly one region lifts connectedly"
        root = root_candidates[0]

    # nesting: regions are nodes, ovals are edges, rooted at the root region
    adj: dict[int, list[tuple[int, int]]] = {r: [] for r in range(n_regions)}
    for l in loops:
        if l.kind == "oval":
            a, b = l.incident_regions
            adj[a].append((b, l.index))
            adj[b].append((a, l.index))
    parent: dict[int, Optional[int]] = {root: None}
    children: dict[int, list[int]] = {r: [] for r in range(n_regions)}
    stack = [root]
    order = []
    while stack:
        r = stack.pop()
        order.append(r)
        for (nbr, _lidx) in adj[r]:
            if nbr not in parent:
                parent[nbr] = r
                children[r].append(nbr)
                stack.append(nbr)
    assert len(order) == n_regions, "the oval multigraph on regions is a tree"

    def subtree(r: int):
        return tuple(subtree(c) for c in children[r])

    scheme = RealScheme.make(d % 2 == 1, [subtree(c) for c in children[root]])
    assert scheme.ovals == n_ovals

    regions = [
        Region(
            index=rid,
            vertices=frozenset(region_vertices[r]),
            is_root=(rid == root),
        )
        for r, rid in region_root.items()
    ]
    regions.sort(key=lambda reg: reg.index)

    return Patchwork(
        degree=d,
        triangulation=t,
        signs=sigma,
        surface=surf,
        pos_signs=pos_signs,
        bicolored=bicolored,
        loops=loops,
        regions=regions,
        root_region=root,
        parent=parent,
        children=children,
        scheme=scheme,
    )


def root_isotopic(p1: Patchwork, p2: Patchwork) -> bool:
    """Same scheme and the root regions share a surface vertex."""
    if p1.degree != p2.degree:
        raise PatchworkInputError("root isotopy compares equal degrees only")
    if p1.scheme != p2.scheme:
        return False
    r1 = p1.regions[p1.root_region].vertices
    r2 = p2.regions[p2.root_region].vertices
    return bool(r1 & r2)


def is_bridge_flip(t: Triangulation, sigma: SignDistribution, e: Edge) -> bool:
    """True iff some equivalent distribution makes the quadrangle's diagonal
    pairs monochromatic with opposite colors."""
    quad = t.quadrangle(e)
    if not quad.convex:
        from .triangulation import NotFlippableError

        raise NotFlippableError(f"edge {e} is not flippable")
    v, x = quad.edge
    a, b = quad.opposite
    for tau in orbit(sigma):
        if (
            tau.value_at(a) == tau.value_at(b)
            and tau.value_at(v) == tau.value_at(x)
            and tau.value_at(a) != tau.value_at(v)
        ):
            return True
    return False


def quadrant_curve(p: Patchwork, quadrant: Quadrant) -> frozenset:
    """Keys of the primal edges crossed by the curve inside one quadrant copy;
    glued edges belong to both adjacent quadrants."""
    out = set()
    for eid, bic in enumerate(p.bicolored):
        if not bic:
            continue
        e = p.surface.edges[eid]
        if any(p.surface.tri_quadrant[tid] == quadrant for tid in e.tris):
            out.add(e.key)
    return frozenset(out)


def quadrant_traces(
    p: Patchwork, quadrant: Quadrant, ignored: frozenset = frozenset()
) -> frozenset:
    """Connected pieces of the curve within a quadrant, each reported as the
    frozenset of crossed primal edge keys, with `ignored` keys contracted
    away.  Two patchworks agree in a quadrant iff these coincide."""
    surf = p.surface
    crossed = []
    for eid, bic in enumerate(p.bicolored):
        if bic and any(surf.tri_quadrant[tid] == quadrant for tid in surf.edges[eid].tris):
            crossed.append(eid)
    idx = {eid: i for i, eid in enumerate(crossed)}
    uf = _UnionFind(len(crossed))
    for tid, trip in enumerate(surf.tri_edges):
        if surf.tri_quadrant[tid] != quadrant:
            continue
        bics = [eid for eid in trip if p.bicolored[eid]]
        if len(bics) == 2:
            uf.union(idx[bics[0]], idx[bics[1]])
    comps: dict[int, set] = {}
    for eid in crossed:
        key = surf.edges[eid].key
        comps.setdefault(uf.find(idx[eid]), set()).add(key)
    pieces = set()
    for comp in comps.values():
        kept = frozenset(comp - ignored)
        if kept:
            pieces.add(kept)
    return frozenset(pieces)


def agreeing_quadrants(
    p1: Patchwork, p2: Patchwork, ignored: frozenset = frozenset()
) -> list[Quadrant]:
    """Quadrants where the two curves have identical traces."""
    return [
        q
        for q in QUADRANTS
        if quadrant_traces(p1, q, ignored) == quadrant_traces(p2, q, ignored)
    ]


def flip_diagonal_keys(edge_before: Edge, edge_after: Edge) -> frozenset:
    """Edge keys of both quadrangle diagonals in all four quadrant copies;
    trace comparisons across a flip contract exactly these."""
    keys = set()
    for sx, sy in QUADRANTS:
        for a, b in (edge_before, edge_after):
            pa = (sx * a[0], sy * a[1])
            pb = (sx * b[0], sy * b[1])
            keys.add((pa, pb) if pa <= pb else (pb, pa))
    return frozenset(keys)


def compare_after_flip(
    before: Patchwork, after: Patchwork, edge_before: Edge, edge_after: Edge
) -> list[Quadrant]:
    """Quadrants where the curves of a flip-related pair agree."""
    return agreeing_quadrants(
        before, after, flip_diagonal_keys(edge_before, edge_after)
    )
