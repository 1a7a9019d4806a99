"""Regularity of triangulations via strict folding conditions.

An interior edge joining v and x, with opposite vertices u and w, folds
correctly under a lifting iff the lifted w lies strictly above the affine
span of the lifted triangle (u, v, x).  Because the triangles are
unimodular, w = alpha*u + beta*v + gamma*x with integer coefficients
summing to one, and the condition is the exact integer inequality

    w(w) + alpha*w(u) - ... > 0,  i.e.  lhs = w(u) + w(w)  >  rhs,

where rhs = w(v) + w(x) + k*(w(x) - w(v)) and k is the skew of the
quadrangle (k = 0 for a parallelogram, recovering the familiar
w(u) + w(w) > w(v) + w(x)).

Verification is exact; existence is decided by linear programming with a
unit margin, after which the rounded integer certificate is re-verified
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lattice import Point, lattice_index, lattice_size
from .triangulation import Edge, Triangulation


@dataclass(frozen=True)
class FoldingViolation:
    edge: Edge
    opposite: tuple[Point, Point]
    lhs: int
    rhs: int

    def __str__(self) -> str:
        (u, w), (v, x) = self.opposite, self.edge
        return f"({u},{w} | {v},{x}): {self.lhs} vs {self.rhs}"


def _quadrangle_skew(u: Point, v: Point, w: Point, x: Point) -> int:
    """Integer k with w = v + x - u + k*(x - v)."""
    rx, ry = (w[0] - v[0] - x[0] + u[0], w[1] - v[1] - x[1] + u[1])
    dx, dy = (x[0] - v[0], x[1] - v[1])
    if dx != 0:
        k, rem = divmod(rx, dx)
        assert rem == 0 and k * dy == ry
    else:
        k, rem = divmod(ry, dy)
        assert rem == 0 and k * dx == rx
    return k


def _folding_terms(t: Triangulation, e: Edge):
    quad = t.quadrangle(e)
    v, x = quad.edge
    u, w = quad.opposite
    k = _quadrangle_skew(u, v, w, x)
    return u, v, w, x, k


def verify_lifting(t: Triangulation, lifting=None) -> list[FoldingViolation]:
    """All interior edges whose strict folding condition fails; empty iff the
    lifting induces exactly this triangulation."""
    lift = tuple(lifting) if lifting is not None else t.lifting
    if lift is None:
        raise ValueError("no lifting to verify")
    if len(lift) != lattice_size(t.degree):
        raise ValueError(
            f"lifting has {len(lift)} values, expected {lattice_size(t.degree)}"
        )
    idx = lattice_index(t.degree)
    out = []
    for e in t.interior_edges():
        u, v, w, x, k = _folding_terms(t, e)
        lhs = lift[idx[u]] + lift[idx[w]]
        rhs = lift[idx[v]] + lift[idx[x]] + k * (lift[idx[x]] - lift[idx[v]])
        if lhs <= rhs:
            out.append(FoldingViolation(edge=(v, x), opposite=(u, w), lhs=lhs, rhs=rhs))
    return out


def find_lifting(t: Triangulation) -> Optional[tuple[int, ...]]:
    """A nonnegative integer lifting satisfying every folding condition
    strictly, or None if none exists (the triangulation is not regular).

    Solved as a linear program with margin 1; the float solution is scaled
    and rounded, then checked exactly, widening the scale on the rare
    rounding failure.
    """
    from scipy.optimize import linprog

    idx = lattice_index(t.degree)
    n = lattice_size(t.degree)
    rows = []
    for e in t.interior_edges():
        u, v, w, x, k = _folding_terms(t, e)
        row = np.zeros(n)
        row[idx[u]] += 1
        row[idx[w]] += 1
        row[idx[v]] -= 1 - k
        row[idx[x]] -= 1 + k
        rows.append(row)
    if not rows:
        return tuple([0] * n)

    a_ub = -np.array(rows)
    b_ub = -np.ones(len(rows))
    res = linprog(
        c=np.ones(n), A_ub=a_ub, b_ub=b_ub, bounds=[(0, None)] * n, method="highs"
    )
    if not res.success:
        return None
    for scale in (4, 64, 1024):
        cand = tuple(int(round(v * scale)) for v in res.x)
        if min(cand) >= 0 and not verify_lifting(t, cand):
            return cand
    raise ArithmeticError("feasible lifting found but integer rounding failed")
