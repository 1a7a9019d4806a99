"""Infinite families of patchworks with closed-form schemes.

Each constructor returns a (triangulation, signs) pair plus the expected
scheme, so tests can route every family through the one patchwork engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import InvalidDegreeError, check_degree
from .scheme import RealScheme, alpha_beta, flat, leaf
from .signs import SignDistribution, harnack, ones
from .triangulation import Triangulation, bow_tie, framed_chessboard, honeycomb

FAMILY_NAMES = (
    "onion",
    "special_harnack",
    "nested_box",
    "arrowheads_row",
    "arrowheads_both",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    degree: int
    triangulation: Triangulation
    signs: SignDistribution
    expected_scheme: RealScheme


def onion_scheme(d: int) -> RealScheme:
    """A fully nested chain of floor(d/2) ovals, preceded by the pseudo-line
    for odd degree."""
    check_degree(d)
    node = None
    for _ in range(d // 2):
        node = (node,) if node is not None else leaf()
    children = [node] if node is not None else []
    return RealScheme.make(d % 2 == 1, children)


def special_harnack_scheme(d: int) -> RealScheme:
    check_degree(d)
    if d % 2 == 1:
        return flat(True, (d - 1) * (d - 2) // 2)
    k = d // 2
    return alpha_beta(False, 3 * (k * k - k) // 2, (k - 1) * (k - 2) // 2)


def nested_box_scheme(d: int) -> RealScheme:
    check_degree(d)
    if d % 2 != 0 or d < 6:
        raise InvalidDegreeError(f"nested box needs even degree >= 6, got {d}")
    node = (leaf(),)
    for m in range(2, d - 5, 2):
        node = tuple([leaf()] * m + [node])
    return RealScheme.make(False, [leaf()] * (d * (d + 2) // 4 - 3) + [node])


def arrowheads_schemes(d: int) -> tuple[RealScheme, RealScheme]:
    check_degree(d)
    if d % 4 != 0 or d < 8:
        raise InvalidDegreeError(
            f"arrowheads need degree divisible by 4, at least 8, got {d}"
        )
    k = d // 2
    outer = 3 * (k * k - k) // 2
    inner = (k - 1) * (k - 2) // 2
    one = (leaf(),)
    row = RealScheme.make(
        False, [leaf()] * (outer - 1) + [one, tuple([leaf()] * (inner - 1))]
    )
    both = RealScheme.make(
        False, [leaf()] * (outer - 2) + [one, one, tuple([leaf()] * (inner - 2))]
    )
    return (row, both)


def arrowheads_signs(d: int, variant: str) -> SignDistribution:
    """Harnack signs with the two zeros of row d-4 set to one; the "both"
    variant repeats the modification on column d-4."""
    if variant not in ("row", "both"):
        raise ValueError(f"variant must be 'row' or 'both', got {variant!r}")
    sigma = harnack(d).flipped((1, d - 4)).flipped((3, d - 4))
    if variant == "both":
        sigma = sigma.flipped((d - 4, 1)).flipped((d - 4, 3))
    return sigma


def family(name: str, d: int) -> FamilySpec:
    if name == "onion":
        return FamilySpec(name, d, honeycomb(d), ones(d), onion_scheme(d))
    if name == "special_harnack":
        return FamilySpec(name, d, honeycomb(d), harnack(d), special_harnack_scheme(d))
    if name == "nested_box":
        return FamilySpec(name, d, bow_tie(d), ones(d), nested_box_scheme(d))
    if name == "arrowheads_row":
        return FamilySpec(
            name, d, framed_chessboard(d), arrowheads_signs(d, "row"),
            arrowheads_schemes(d)[0],
        )
    if name == "arrowheads_both":
        return FamilySpec(
            name, d, framed_chessboard(d), arrowheads_signs(d, "both"),
            arrowheads_schemes(d)[1],
        )
    raise ValueError(f"unknown family {name!r}, have {FAMILY_NAMES}")
