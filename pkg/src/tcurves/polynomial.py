"""Homogeneous polynomial families attached to a patchwork.

The monomial at lattice point (i, j) is (-1)^sigma(i,j) t^w(i,j) x^i y^j
z^(d-i-j); for small enough positive t the zero set realizes the patchworked
curve.  The exporter emits the polynomial with symbolic t or with t
substituted exactly as a rational; no claim is made about any particular t
being small enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .lattice import lattice_points
from .regularity import find_lifting, verify_lifting
from .signs import SignDistribution
from .triangulation import Triangulation


class NoLiftingError(ValueError):
    pass


def _monomial(i: int, j: int, k: int) -> str:
    parts = []
    for var, e in (("x", i), ("y", j), ("z", k)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts) if parts else "1"


def export_polynomial(
    t: Triangulation,
    sigma: SignDistribution,
    t_value: Optional[Fraction] = None,
) -> str:
    """Text form of the polynomial; uses the shipped lifting when present and
    otherwise searches for one, failing on non-regular triangulations."""
    if t.degree != sigma.degree:
        raise ValueError("degree mismatch between triangulation and signs")
    lifting = t.lifting
    if lifting is not None and verify_lifting(t):
        lifting = None  # shipped lifting does not fit; search for a valid one
    if lifting is None:
        lifting = find_lifting(t)
        if lifting is None:
            raise NoLiftingError(
                "triangulation is not regular: no lifting exists"
            )

    d = t.degree
    terms = []
    for idx, (i, j) in enumerate(lattice_points(d)):
        sign = -1 if sigma.value_at((i, j)) else 1
        w = lifting[idx]
        mono = _monomial(i, j, d - i - j)
        if t_value is None:
            coeff = f"t^{w}" if w > 1 else ("t" if w == 1 else "")
            body = "*".join(x for x in (coeff, mono) if x) or "1"
            if body.startswith("1*"):
                body = body[2:]
        else:
            c = t_value**w
            if c == 1:
                body = mono
            elif mono == "1":
                body = str(c)
            else:
                body = f"{c}*{mono}"
        terms.append((sign, body))

    out = []
    for n, (sign, body) in enumerate(terms):
        if n == 0:
            out.append(f"-{body}" if sign < 0 else body)
        else:
            out.append(f"- {body}" if sign < 0 else f"+ {body}")
    return " ".join(out)
