"""SVG rendering of a patchwork: the diamond with its four triangulated
quadrants, vertex signs, curve polylines through edge midpoints, and shaded
oval interiors.  The pseudo-line of an odd-degree curve is drawn dashed."""

from __future__ import annotations

from .patchwork import Loop, Patchwork


def _edge_endpoints_in_triangle(p: Patchwork, eid: int, tid: int):
    """Geometric endpoints of an edge as seen from one incident triangle
    (glued edges have two realizations)."""
    surf = p.surface
    e = surf.edges[eid]
    tri_pos = set(surf.triangles[tid])
    pa, pb = e.pa, e.pb
    if pa in tri_pos and pb in tri_pos:
        return surf.positions[pa], surf.positions[pb]
    (ax, ay), (bx, by) = surf.positions[pa], surf.positions[pb]
    qa, qb = surf.pos_index[(-ax, -ay)], surf.pos_index[(-bx, -by)]
    assert qa in tri_pos and qb in tri_pos
    return surf.positions[qa], surf.positions[qb]


def _edge_midpoint(p: Patchwork, eid: int, tid: int):
    (ax, ay), (bx, by) = _edge_endpoints_in_triangle(p, eid, tid)
    return ((ax + bx) / 2.0, (ay + by) / 2.0)


def loop_polylines(p: Patchwork, loop: Loop) -> list[list[tuple[float, float]]]:
    """The loop as polylines in diamond coordinates, split where it passes
    through the antipodal boundary identification.

    Step i of the dual cycle contributes the segment inside triangle t_i from
    the midpoint of its entry edge e_i to the midpoint of its exit edge
    e_{i+1}; the shared midpoint is one geometric point unless the exit edge
    is glued, where the curve jumps to the antipodal realization.
    """
    cycle = loop.dual_edge_cycle
    n = len(cycle)
    pieces: list[list[tuple[float, float]]] = []
    cur = [_edge_midpoint(p, cycle[0][1], cycle[0][0])]
    for i in range(n):
        tid = cycle[i][0]
        exit_eid = cycle[(i + 1) % n][1]
        cur.append(_edge_midpoint(p, exit_eid, tid))
        if p.surface.edges[exit_eid].glued:
            pieces.append(cur)
            next_tid = cycle[(i + 1) % n][0]
            cur = [_edge_midpoint(p, exit_eid, next_tid)]
    if len(cur) > 1:
        pieces.append(cur)
    if not pieces:
        return [cur]
    if len(pieces) > 1 and cur is pieces[-1]:
        # the trailing run continues into the first piece through the start
        last = pieces.pop()
        pieces[0] = last[:-1] + pieces[0]
    return pieces


def render_svg(p: Patchwork, scale: float = 36.0) -> str:
    d = p.degree
    pad = 0.8

    def pt(x: float, y: float) -> str:
        return f"{(x + d + pad) * scale:.1f},{(d + pad - y) * scale:.1f}"

    size = (2 * d + 2 * pad) * scale
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" '
        f'height="{size:.0f}" viewBox="0 0 {size:.0f} {size:.0f}">',
        f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>',
    ]

    surf = p.surface
    for tri in surf.triangles:
        pts = " ".join(pt(*surf.positions[i]) for i in tri)
        out.append(
            f'<polygon points="{pts}" fill="none" stroke="#ccc" stroke-width="0.7"/>'
        )
    corners = [(d, 0), (0, d), (-d, 0), (0, -d), (d, 0)]
    out.append(
        '<polyline points="'
        + " ".join(pt(*c) for c in corners)
        + '" fill="none" stroke="#888" stroke-width="1.6"/>'
    )

    # shaded oval interiors: each closed oval polygon with translucent fill,
    # so nested interiors stack darker
    for loop in p.loops:
        if loop.kind != "oval" or loop.boundary_crossings:
            continue
        pieces = loop_polylines(p, loop)
        if len(pieces) != 1:
            continue
        pts = " ".join(pt(x, y) for x, y in pieces[0])
        out.append(f'<polygon points="{pts}" fill="#4a90d9" fill-opacity="0.18" stroke="none"/>')

    for loop in p.loops:
        style = (
            'stroke="#b2182b" stroke-dasharray="7,4"'
            if loop.kind == "pseudo_line"
            else 'stroke="#1a3a8a"'
        )
        for piece in loop_polylines(p, loop):
            pts = " ".join(pt(x, y) for x, y in piece)
            out.append(
                f'<polyline points="{pts}" fill="none" {style} stroke-width="2.0"/>'
            )

    for i, (x, y) in enumerate(surf.positions):
        fill = "#111" if p.pos_signs[i] else "white"
        out.append(
            f'<circle cx="{(x + d + pad) * scale:.1f}" cy="{(d + pad - y) * scale:.1f}" '
            f'r="3.0" fill="{fill}" stroke="#111" stroke-width="0.9"/>'
        )

    out.append("</svg>")
    return "\n".join(out)
