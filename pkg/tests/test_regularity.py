import random

import pytest

from tcurves.lattice import lattice_points
from tcurves.regularity import find_lifting, verify_lifting
from tcurves.triangulation import (
    bow_tie,
    catalog,
    framed_chessboard,
    honeycomb,
)


def test_all_catalog_liftings_fold(catalogs):
    for key, t in catalogs.items():
        assert verify_lifting(t) == [], key


def test_worked_instance_bat():
    # edge (1,0)-(0,1) folds because 4+1 > 2+2
    t = catalog("bat")
    q = t.quadrangle(((1, 0), (0, 1)))
    idx = {p: i for i, p in enumerate(lattice_points(6))}
    lift = t.lifting
    u, w = q.opposite
    v, x = q.edge
    assert lift[idx[u]] + lift[idx[w]] == 5
    assert lift[idx[v]] + lift[idx[x]] == 4


def test_all_zero_lifting_violates_everywhere():
    t = catalog("bat")
    violations = verify_lifting(t, [0] * 28)
    assert len(violations) == len(t.interior_edges())
    text = str(violations[0])
    assert " vs " in text and "|" in text


def test_missing_or_short_lifting():
    t = honeycomb(3)
    with pytest.raises(ValueError):
        verify_lifting(t)
    with pytest.raises(ValueError):
        verify_lifting(t, [0, 1, 2])


@pytest.mark.parametrize(
    "builder", [lambda: honeycomb(7), lambda: bow_tie(6), lambda: framed_chessboard(8)]
)
def test_find_lifting_on_regular_families(builder):
    t = builder()
    lift = find_lifting(t)
    assert lift is not None and min(lift) >= 0
    assert verify_lifting(t, lift) == []


def test_find_lifting_trivial_degree():
    assert find_lifting(honeycomb(1)) == (0, 0, 0)


def test_feasibility_invariant_under_affine_shift():
    rng = random.Random(4)
    t = catalog("moth")
    base = list(t.lifting)
    a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(0, 5)
    shifted = [
        v + a * x + b * y + c for v, (x, y) in zip(base, lattice_points(6))
    ]
    assert verify_lifting(t, shifted) == []
