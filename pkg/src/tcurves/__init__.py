"""Combinatorial patchworking of real plane algebraic curves.

Construct T-curves from (triangulation, sign distribution) pairs on the
dilated triangle, classify their real schemes, and census the full space of
sign equivalence classes.
"""

from .patchwork import build
from .scheme import RealScheme, parse, render
from .signs import SignDistribution, harnack, ones
from .triangulation import Triangulation, bow_tie, catalog, framed_chessboard, honeycomb

__all__ = [
    "build",
    "RealScheme",
    "parse",
    "render",
    "SignDistribution",
    "harnack",
    "ones",
    "Triangulation",
    "bow_tie",
    "catalog",
    "framed_chessboard",
    "honeycomb",
]

__version__ = "0.1.0"
