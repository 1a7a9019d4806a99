"""Sign distributions over the degree-d triangle.

A distribution assigns a GF(2) value to every lattice point of the triangle,
stored packed as an integer whose bit k is the value at the k-th point in
lexicographic order.  The extension to the diamond follows

    sigma(i,-j) = sigma(i,j) + j
    sigma(-i,j) = sigma(i,j) + i
    sigma(-i,-j) = sigma(i,j) + i + j   (mod 2).

Two distributions are considered equivalent when one arises from the other by
a reflection from the Klein group generated by the two axis reflections,
composed with an optional global flip; each equivalence class has exactly
eight members and a unique member taking the value 1 at (0,0), (1,0), (0,1),
which serves as the canonical representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .lattice import (
    OutOfRangeError,
    Point,
    check_degree,
    in_diamond,
    lattice_index,
    lattice_points,
    lattice_size,
)

KLEIN_WORDS = ("", "s", "tst", "stst")


@dataclass(frozen=True)
class SignDistribution:
    degree: int
    mask: int

    def __post_init__(self) -> None:
        check_degree(self.degree)
        n = lattice_size(self.degree)
        if not 0 <= self.mask < (1 << n):
            raise ValueError(f"mask out of range for degree {self.degree}")

    @classmethod
    def from_bits(cls, degree: int, bits: Iterable[int]) -> "SignDistribution":
        bits = list(bits)
        if len(bits) != lattice_size(degree):
            raise ValueError(
                f"expected {lattice_size(degree)} bits, got {len(bits)}"
            )
        mask = 0
        for k, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {k} is {b!r}, not 0/1")
            mask |= b << k
        return cls(degree, mask)

    @classmethod
    def from_string(cls, degree: int, text: str) -> "SignDistribution":
        """Parse a '0'/'1' string in lex order; whitespace is ignored."""
        bits = [int(c) for c in text if not c.isspace()]
        return cls.from_bits(degree, bits)

    def bits(self) -> list[int]:
        return [(self.mask >> k) & 1 for k in range(lattice_size(self.degree))]

    def to_string(self, group: int = 0) -> str:
        s = "".join(str(b) for b in self.bits())
        if group:
            s = " ".join(s[i : i + group] for i in range(0, len(s), group))
        return s

    def __getitem__(self, p: Point) -> int:
        return extend(self, p)

    def value_at(self, p: Point) -> int:
        """Value at a triangle point, without extension."""
        return (self.mask >> lattice_index(self.degree)[p]) & 1

    def flipped(self, p: Point) -> "SignDistribution":
        """Copy with the bit at one triangle point toggled."""
        k = lattice_index(self.degree)[p]
        return SignDistribution(self.degree, self.mask ^ (1 << k))

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits())


def extend(sigma: SignDistribution, p: Point) -> int:
    """Value of the extension of sigma at any diamond point."""
    x, y = p
    d = sigma.degree
    if not in_diamond(p, d):
        raise OutOfRangeError(f"{p} is outside the degree-{d} diamond")
    off = 0
    if x < 0:
        off += -x
    if y < 0:
        off += -y
    return (sigma.value_at((abs(x), abs(y))) + off) & 1


def ones(d: int) -> SignDistribution:
    return SignDistribution(d, (1 << lattice_size(d)) - 1)


def harnack(d: int) -> SignDistribution:
    """The distribution (i+1)(j+1) mod 2: value 1 exactly at even-even points."""
    return SignDistribution.from_bits(
        d, [((i + 1) * (j + 1)) & 1 for (i, j) in lattice_points(d)]
    )


def transformed(sigma: SignDistribution, word: str, eps: int = 0) -> SignDistribution:
    """The distribution u -> eps + sigma(g(u)), computed by extending sigma to
    the diamond, transforming, and restricting back to the triangle."""
    from .lattice import apply_symmetry

    d = sigma.degree
    bits = [
        (extend(sigma, apply_symmetry(p, word)) + eps) & 1 for p in lattice_points(d)
    ]
    return SignDistribution.from_bits(d, bits)


def orbit(sigma: SignDistribution) -> list[SignDistribution]:
    """The eight members of the equivalence class, in a fixed order."""
    out = []
    for eps in (0, 1):
        for word in KLEIN_WORDS:
            out.append(transformed(sigma, word, eps))
    return out


def canonicalize(sigma: SignDistribution) -> SignDistribution:
    """The unique orbit member with value 1 at (0,0), (1,0) and (0,1)."""
    matches = [tau for tau in orbit(sigma) if is_canonical(tau)]
    assert len(matches) == 1, "anchor bits must single out one orbit member"
    return matches[0]


def is_canonical(sigma: SignDistribution) -> bool:
    return (
        sigma.value_at((0, 0)) == 1
        and sigma.value_at((1, 0)) == 1
        and sigma.value_at((0, 1)) == 1
    )


def class_count(d: int) -> int:
    """Number of sign equivalence classes: 2^(|A| - 3)."""
    check_degree(d)
    return 1 << (lattice_size(d) - 3)


def anchor_positions(d: int) -> tuple[int, int, int]:
    idx = lattice_index(d)
    return (idx[(0, 0)], idx[(0, 1)], idx[(1, 0)])


def free_positions(d: int) -> list[int]:
    """Lex positions carrying the free bits of a canonical representative."""
    anchors = set(anchor_positions(d))
    return [k for k in range(lattice_size(d)) if k not in anchors]


def from_index(d: int, k: int) -> SignDistribution:
    """The k-th canonical representative: anchors set to 1, the binary digits
    of k spread big-endian over the remaining lex positions."""
    if not 0 <= k < class_count(d):
        raise ValueError(f"class index {k} out of range for degree {d}")
    free = free_positions(d)
    m = len(free)
    mask = 0
    for pos in anchor_positions(d):
        mask |= 1 << pos
    for t in range(m):
        if (k >> t) & 1:
            mask |= 1 << free[m - 1 - t]
    return SignDistribution(d, mask)


def index_of(sigma: SignDistribution) -> int:
    """Inverse of from_index on canonical representatives."""
    if not is_canonical(sigma):
        raise ValueError("index_of requires a canonical representative")
    free = free_positions(sigma.degree)
    m = len(free)
    k = 0
    for t in range(m):
        if (sigma.mask >> free[m - 1 - t]) & 1:
            k |= 1 << t
    return k
