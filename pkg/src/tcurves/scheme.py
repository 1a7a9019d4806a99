"""Rooted-tree encoding of real schemes and the small-degree classifications.

A scheme is the nesting forest of the ovals, plus a pseudo-line marker for
odd degrees.  Oval nodes are nested tuples of their children, kept in a
canonical order (descending by subtree size, then by the recursive key), so
structural equality is scheme equality.

The ASCII grammar, with 'u' for the disjoint-union symbol:

    Scheme := '<' Items '>' | '<0>'
    Items  := Item (' u ' Item)*
    Item   := 'J' | INT | INT '<' Items '>'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .lattice import check_degree

# An oval node is the tuple of its children.
Node = tuple


class SchemeParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedDegreeError(ValueError):
    pass


def _size(node: Node) -> int:
    return 1 + sum(_size(c) for c in node)


def _key(node: Node):
    return (_size(node), tuple(_key(c) for c in node))


def _normalize(children) -> tuple[Node, ...]:
    normed = [tuple(_normalize(c)) for c in children]
    return tuple(sorted(normed, key=_key, reverse=True))


@dataclass(frozen=True)
class RealScheme:
    pseudo_line: bool
    children: tuple[Node, ...]

    @classmethod
    def make(cls, pseudo_line: bool, children=()) -> "RealScheme":
        return cls(pseudo_line, _normalize(children))

    @property
    def ovals(self) -> int:
        return sum(_size(c) for c in self.children)

    @property
    def loops(self) -> int:
        return self.ovals + (1 if self.pseudo_line else 0)

    def __str__(self) -> str:
        return render(self)


def leaf() -> Node:
    return ()


def flat(pseudo_line: bool, count: int) -> RealScheme:
    """A scheme of `count` unnested ovals."""
    return RealScheme.make(pseudo_line, [leaf()] * count)


def alpha_beta(pseudo_line: bool, alpha: int, beta: int) -> RealScheme:
    """The scheme of alpha unnested ovals plus one oval containing beta."""
    return RealScheme.make(
        pseudo_line, [leaf()] * alpha + [tuple([leaf()] * beta)]
    )


def stats(s: RealScheme) -> tuple[int, int, int, int]:
    """(loops, p, n, max_depth): p and n count ovals at even/odd depth, the
    outermost ovals having depth zero."""
    p = n = 0
    max_depth = -1

    def walk(node: Node, depth: int) -> None:
        nonlocal p, n, max_depth
        max_depth = max(max_depth, depth)
        if depth % 2 == 0:
            p += 1
        else:
            n += 1
        for c in node:
            walk(c, depth + 1)

    for c in s.children:
        walk(c, 0)
    return (s.loops, p, n, max_depth)


def render(s: RealScheme) -> str:
    """Canonical ASCII rendering, grouping identical subtrees and emitting the
    plain-oval count first."""

    def render_items(children: tuple[Node, ...]) -> str:
        plain = sum(1 for c in children if not c)
        rest = [c for c in children if c]
        groups: list[tuple[Node, int]] = []
        for c in rest:
            if groups and groups[-1][0] == c:
                groups[-1] = (c, groups[-1][1] + 1)
            else:
                groups.append((c, 1))
        items = []
        if plain:
            items.append(str(plain))
        for node, mult in groups:
            items.append(f"{mult}<{render_items(node)}>")
        return " u ".join(items)

    body = render_items(s.children)
    if s.pseudo_line:
        return f"<J u {body}>" if body else "<J>"
    return f"<{body}>" if body else "<0>"


_TOKEN_RE = re.compile(r"\s*(<|>|u|J|\d+)")


def parse(text: str) -> RealScheme:
    """Parse the grammar above; Unicode angle brackets and the square-cup
    symbol are accepted on input."""
    src = (
        text.replace("⟨", "<")
        .replace("⟩", ">")
        .replace("⨆", "u")
        .replace("⊔", "u")
    )
    pos = 0

    def error(msg: str):
        raise SchemeParseError(msg, pos)

    def next_token():
        nonlocal pos
        m = _TOKEN_RE.match(src, pos)
        if not m:
            if src[pos:].strip():
                error(f"unexpected character {src[pos:].lstrip()[0]!r}")
            return None
        pos = m.end()
        return m.group(1)

    def peek():
        m = _TOKEN_RE.match(src, pos)
        return m.group(1) if m else None

    def parse_items(top: bool) -> tuple[bool, list[Node]]:
        pseudo = False
        children: list[Node] = []
        while True:
            tok = next_token()
            if tok == "J":
                if not top:
                    error("pseudo-line J is only allowed at the top level")
                if pseudo:
                    error("duplicate pseudo-line marker")
                pseudo = True
            elif tok is not None and tok.isdigit():
                count = int(tok)
                if peek() == "<":
                    next_token()
                    _, inner = parse_items(top=False)
                    if next_token() != ">":
                        error("expected '>'")
                    children.extend([tuple(inner)] * count)
                else:
                    children.extend([leaf()] * count)
            else:
                error("expected 'J' or a count")
            if peek() == "u":
                next_token()
                continue
            return pseudo, children

    if next_token() != "<":
        error("expected '<'")
    pseudo, children = parse_items(top=True)
    if next_token() != ">":
        error("expected '>'")
    if peek() is not None:
        error("trailing input after scheme")
    return RealScheme.make(pseudo, children)


def harnack_bound(d: int) -> int:
    """Upper bound (d-1)(d-2)/2 + 1 on the number of loops."""
    check_degree(d)
    return (d - 1) * (d - 2) // 2 + 1


@lru_cache(maxsize=None)
def enumerate_schemes(d: int) -> tuple[RealScheme, ...]:
    """The full real-scheme classification for degrees up to seven, including
    the empty scheme for even degrees."""
    check_degree(d)
    if d > 7:
        raise UnsupportedDegreeError(
            f"the classification is implemented only for d <= 7, got {d}"
        )
    if d == 1:
        out = [flat(True, 0)]
    elif d == 2:
        out = [flat(False, 0), flat(False, 1)]
    elif d == 3:
        out = [flat(True, 0), flat(True, 1)]
    elif d == 4:
        out = [flat(False, a) for a in range(5)]
        out.append(alpha_beta(False, 0, 1))
    elif d == 5:
        out = [flat(True, a) for a in range(7)]
        out.append(alpha_beta(True, 0, 1))
    elif d == 6:
        out = []
        for alpha in range(10):
            for beta in range(1, 10):
                if alpha + beta > 10:
                    continue
                if alpha + beta == 10 and (alpha - beta) % 8 != 0:
                    continue
                if alpha + beta == 9 and (alpha - beta) % 8 not in (1, 7):
                    continue
                out.append(alpha_beta(False, alpha, beta))
        out.extend(flat(False, a) for a in range(11))
        out.append(RealScheme.make(False, [((leaf(),),)]))
    else:
        out = []
        for alpha in range(14):
            for beta in range(1, 14):
                if alpha + beta > 14:
                    continue
                out.append(alpha_beta(True, alpha, beta))
        out.extend(flat(True, a) for a in range(16))
        out.append(RealScheme.make(True, [((leaf(),),)]))
    return tuple(out)
