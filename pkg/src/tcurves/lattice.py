"""Integer-lattice geometry of the scaled triangle and its diamond.

Coordinates are plain ``(x, y)`` integer tuples throughout.  The triangle of
degree ``d`` is the set A = {(i, j) : i, j >= 0, i + j <= d}; the diamond is
D = {(i, j) : |i| + |j| <= d}, which carries four reflected copies of A.
Antipodal boundary points of the diamond are identified, turning it into a
cell decomposition of the projective plane.
"""

from __future__ import annotations

from typing import NamedTuple

Point = tuple[int, int]

# The two generators of the diamond's symmetry group: s is the reflection at
# the y-axis, t swaps the coordinates.  They generate a dihedral group of
# order eight, listed here as words in s and t.
_GEN = {
    "s": ((-1, 0), (0, 1)),
    "t": ((0, 1), (1, 0)),
}

DIHEDRAL_WORDS = ("", "s", "t", "st", "ts", "sts", "tst", "stst")


class InvalidDegreeError(ValueError):
    pass


class OutOfRangeError(ValueError):
    pass


def check_degree(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise InvalidDegreeError(f"degree must be a positive integer, got {d!r}")


def lattice_points(d: int) -> list[Point]:
    """All lattice points of the degree-d triangle in lexicographic order:
    (0,0), (0,1), ..., (0,d), (1,0), ..., (d,0)."""
    check_degree(d)
    return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]


def lattice_size(d: int) -> int:
    check_degree(d)
    return (d + 1) * (d + 2) // 2


def lattice_index(d: int) -> dict[Point, int]:
    """Point -> position in the lexicographic ordering of lattice_points(d)."""
    return {p: k for k, p in enumerate(lattice_points(d))}


def in_triangle(p: Point, d: int) -> bool:
    x, y = p
    return x >= 0 and y >= 0 and x + y <= d


def in_diamond(p: Point, d: int) -> bool:
    return abs(p[0]) + abs(p[1]) <= d


def diamond_points(d: int) -> list[Point]:
    """All points with |x| + |y| <= d, in lexicographic order."""
    check_degree(d)
    return [
        (x, y)
        for x in range(-d, d + 1)
        for y in range(-(d - abs(x)), d - abs(x) + 1)
    ]


def diamond_size(d: int) -> int:
    return 2 * d * d + 2 * d + 1


def parity_form(p: Point) -> tuple[int, int]:
    """Coordinates reduced mod 2."""
    return (p[0] & 1, p[1] & 1)


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _word_matrix(word: str):
    m = ((1, 0), (0, 1))
    for ch in word:
        m = _mat_mul(m, _GEN[ch])
    return m


_WORD_MATRICES = {w: _word_matrix(w) for w in DIHEDRAL_WORDS}


def dihedral_elements() -> dict[str, tuple[tuple[int, int], tuple[int, int]]]:
    """The eight elements of <s, t> as 2x2 integer matrices, keyed by word."""
    return dict(_WORD_MATRICES)


def apply_symmetry(p: Point, g: str) -> Point:
    """Apply a dihedral element, given as a word in the generators s and t
    (e.g. "", "s", "tst", "st")."""
    word = g.replace("*", "").replace(" ", "")
    m = _WORD_MATRICES.get(word)
    if m is None:
        m = _word_matrix(word)  # longer words reduce via matrix product
    x, y = p
    return (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)


class SurfaceVertex(NamedTuple):
    """A vertex of the glued surface: the canonical representative of the
    antipodal class, and whether the point lies on the diamond boundary."""

    representative: Point
    on_boundary: bool


def identify(p: Point, d: int) -> SurfaceVertex:
    """Map a diamond point to its surface vertex.  Boundary points are
    identified with their antipodes; the representative is the
    lexicographically smaller of the pair."""
    check_degree(d)
    if not in_diamond(p, d):
        raise OutOfRangeError(f"{p} is outside the degree-{d} diamond")
    x, y = p
    if abs(x) + abs(y) < d:
        return SurfaceVertex((x, y), False)
    return SurfaceVertex(min((x, y), (-x, -y)), True)


def surface_vertices(d: int) -> list[Point]:
    """Canonical representatives of the identified diamond, 2d^2 + 1 of them."""
    reps = {identify(p, d).representative for p in diamond_points(d)}
    return sorted(reps)
