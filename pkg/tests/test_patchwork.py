import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcurves.lattice import lattice_points, lattice_size
from tcurves.patchwork import (
    QUADRANTS,
    PatchworkInputError,
    build,
    compare_after_flip,
    is_bridge_flip,
    quadrant_curve,
    root_isotopic,
)
from tcurves.scheme import render
from tcurves.signs import SignDistribution, harnack, ones, orbit
from tcurves.triangulation import (
    NotFlippableError,
    catalog,
    flip,
    flippable_edges,
    honeycomb,
    random_flip_walk,
)


def rand_sigma(d, rng):
    return SignDistribution(d, rng.getrandbits(lattice_size(d)))


def test_build_counts_smallest():
    p = build(honeycomb(2), ones(2))
    assert len(p.surface.triangles) == 16
    assert len(p.surface.vertices) == 9
    assert p.surface.euler_characteristic == 1
    assert len(p.loops) == 1 and p.loops[0].kind == "oval"
    assert render(p.scheme) == "<1>"
    assert len(p.regions) == 2


def test_build_degree_mismatch():
    with pytest.raises(PatchworkInputError):
        build(honeycomb(2), ones(3))


def test_known_schemes():
    assert render(build(catalog("bat"), harnack(6)).scheme) == "<9 u 1<1>>"
    assert render(build(honeycomb(7), harnack(7)).scheme) == "<J u 15>"
    sigma = SignDistribution.from_string(6, "1110 1001 1010 0010 1101 1101 0000")
    p = build(catalog("bat"), sigma)
    assert render(p.scheme) == "<5 u 1<5>>"
    assert p.ovals == 11


def test_eleven_loop_hilbert_row():
    sigma = SignDistribution.from_string(6, "1110 1001 1010 0100 1101 1110 1000")
    p = build(catalog("bat"), sigma)
    assert len(p.loops) == 11
    assert render(p.scheme) == "<1 u 1<9>>"


def test_loops_all_ovals_for_even_degree():
    rng = random.Random(0)
    for _ in range(10):
        p = build(honeycomb(4), rand_sigma(4, rng))
        assert all(l.kind == "oval" for l in p.loops)
        assert all(len(l.incident_regions) == 2 for l in p.loops)


def test_exactly_one_pseudo_line_for_odd_degree():
    rng = random.Random(1)
    for _ in range(10):
        p = build(honeycomb(5), rand_sigma(5, rng))
        pls = [l for l in p.loops if l.kind == "pseudo_line"]
        assert len(pls) == 1
        assert len(pls[0].incident_regions) == 1
        # the pseudo-line borders the root region
        assert pls[0].incident_regions[0] == p.root_region


def test_regions_count_equals_ovals_plus_one():
    rng = random.Random(2)
    for d in (3, 4, 6):
        t = honeycomb(d)
        for _ in range(5):
            p = build(t, rand_sigma(d, rng))
            assert len(p.regions) == p.ovals + 1


def test_nesting_tree_shapes():
    sigma = SignDistribution.from_string(6, "1110 1001 1010 0100 1101 1110 1000")
    p = build(catalog("bat"), sigma)  # <1 u 1<9>>
    kids = p.children[p.root_region]
    assert len(kids) == 2
    grand = sorted(len(p.children[c]) for c in kids)
    assert grand == [0, 9]

    p2 = build(honeycomb(4), ones(4))  # <1<1>>: a path of two below the root
    assert len(p2.children[p2.root_region]) == 1
    c = p2.children[p2.root_region][0]
    assert len(p2.children[c]) == 1

    p3 = build(honeycomb(1), ones(1))  # lone pseudo-line: single root node
    assert p3.children[p3.root_region] == []


def test_root_region_honeycomb2_example():
    # with constant signs the region containing the triangle's points is the
    # oval interior, and the far stripe is the root
    p = build(honeycomb(2), ones(2))
    root = p.regions[p.root_region]
    a_vertices = {
        i
        for i, v in enumerate(p.surface.vertices)
        if v in set(lattice_points(2))
    }
    assert not (root.vertices & a_vertices)


def test_orbit_members_share_scheme_and_root_class():
    # equivalent distributions give the same curve up to a reflection fixing
    # the four-copy structure, so the scheme never changes
    rng = random.Random(3)
    for d, t in ((4, random_flip_walk(honeycomb(4), 20, 9)), (5, honeycomb(5))):
        sigma = rand_sigma(d, rng)
        base = build(t, sigma).scheme
        for tau in orbit(sigma):
            assert build(t, tau).scheme == base


def test_fig10_bridge_flip_example():
    t = honeycomb(2)
    sigma = ones(2)
    edge = ((1, 0), (1, 1))
    assert is_bridge_flip(t, sigma, edge)
    before = build(t, sigma)
    after = build(flip(t, edge), sigma)
    assert render(before.scheme) == render(after.scheme) == "<1>"
    # the oval interior and the root region trade places
    assert not root_isotopic(before, after)
    rb = before.regions[before.root_region].vertices
    ra = after.regions[after.root_region].vertices
    other_b = next(r.vertices for r in before.regions if not r.is_root)
    other_a = next(r.vertices for r in after.regions if not r.is_root)
    assert rb == other_a and ra == other_b
    # the curves differ in exactly one quadrant copy
    agree = compare_after_flip(before, after, edge, ((2, 0), (0, 1)))
    assert len(agree) == 3


def test_root_isotopic_self():
    p = build(honeycomb(3), harnack(3))
    assert root_isotopic(p, p)
    with pytest.raises(PatchworkInputError):
        root_isotopic(p, build(honeycomb(2), ones(2)))


def test_is_bridge_flip_negative_cases():
    t = honeycomb(4)
    eta = harnack(4)
    for e in flippable_edges(t):
        assert not is_bridge_flip(t, eta, e)
    with pytest.raises(NotFlippableError):
        is_bridge_flip(t, eta, ((0, 0), (1, 0)))


def test_bridge_flip_parity_characterization():
    # a flippable edge is a bridge flip iff its quadrangle carries an even
    # number of ones
    rng = random.Random(5)
    for _ in range(40):
        d = rng.choice((3, 4, 5))
        t = random_flip_walk(honeycomb(d), 2 * d * d, rng.randrange(10**6))
        sigma = rand_sigma(d, rng)
        for e in flippable_edges(t):
            q = t.quadrangle(e)
            s = sum(sigma.value_at(p) for p in (*q.edge, *q.opposite))
            assert is_bridge_flip(t, sigma, e) == (s % 2 == 0)


def test_quadrant_curve_all_quadrants_cover_curve():
    p = build(catalog("bat"), harnack(6))
    union = set()
    for q in QUADRANTS:
        union |= quadrant_curve(p, q)
    crossed = {
        p.surface.edges[e].key
        for e in range(len(p.surface.edges))
        if p.bicolored[e]
    }
    assert union == crossed


def test_non_bridge_flip_agrees_everywhere():
    # a 3-1 sign split is not a bridge flip and the curve is unchanged in
    # all four quadrants
    rng = random.Random(8)
    checked = 0
    while checked < 25:
        d = rng.choice((3, 4))
        t = random_flip_walk(honeycomb(d), d * d, rng.randrange(10**6))
        sigma = rand_sigma(d, rng)
        edges = [e for e in flippable_edges(t) if not is_bridge_flip(t, sigma, e)]
        if not edges:
            continue
        e = rng.choice(edges)
        new_diag = t.quadrangle(e).opposite
        agree = compare_after_flip(build(t, sigma), build(flip(t, e), sigma), e, new_diag)
        assert len(agree) == 4
        checked += 1


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10**6))
def test_loop_bound_and_euler(d, seed):
    rng = random.Random(seed)
    t = random_flip_walk(honeycomb(d), d * d, seed)
    p = build(t, rand_sigma(d, rng))
    # the build itself asserts Euler characteristic, loop bounds, pseudo-line
    # uniqueness and the lift-parity cross-check
    assert 1 <= len(p.loops) <= (d - 1) * (d - 2) // 2 + 1
