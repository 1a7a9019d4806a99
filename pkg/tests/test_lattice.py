from hypothesis import given
from hypothesis import strategies as st
import pytest

from tcurves.lattice import (
    InvalidDegreeError,
    OutOfRangeError,
    apply_symmetry,
    diamond_points,
    diamond_size,
    dihedral_elements,
    identify,
    lattice_points,
    lattice_size,
    parity_form,
    surface_vertices,
)


def test_lattice_points_order_and_size():
    assert lattice_points(1) == [(0, 0), (0, 1), (1, 0)]
    assert lattice_points(2) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert len(lattice_points(7)) == 36
    for d in range(1, 9):
        assert len(lattice_points(d)) == lattice_size(d) == (d + 1) * (d + 2) // 2


def test_invalid_degree():
    with pytest.raises(InvalidDegreeError):
        lattice_points(0)
    with pytest.raises(InvalidDegreeError):
        lattice_points(-3)


def test_parity_form():
    assert parity_form((0, 0)) == (0, 0)
    assert parity_form((3, 4)) == (1, 0)
    assert parity_form((1, 1)) == (1, 1)


def test_symmetry_generators():
    assert apply_symmetry((2, 1), "s") == (-2, 1)
    assert apply_symmetry((2, 1), "t") == (1, 2)
    # tst is the reflection at the x-axis
    assert apply_symmetry((2, 1), "tst") == (2, -1)


def test_dihedral_group_has_order_eight():
    mats = dihedral_elements()
    assert len(set(mats.values())) == 8


@given(st.integers(1, 8), st.data())
def test_symmetries_preserve_diamond(d, data):
    pts = diamond_points(d)
    p = data.draw(st.sampled_from(pts))
    for word in dihedral_elements():
        q = apply_symmetry(p, word)
        assert abs(q[0]) + abs(q[1]) <= d


def test_diamond_and_vertex_counts():
    for d in range(1, 9):
        assert len(diamond_points(d)) == diamond_size(d) == 2 * d * d + 2 * d + 1
        assert len(surface_vertices(d)) == 2 * d * d + 1


def test_identify():
    v = identify((3, 4), 7)
    assert v.on_boundary and v.representative == (-3, -4)
    assert identify((1, 1), 7).representative == (1, 1)
    assert not identify((1, 1), 7).on_boundary
    with pytest.raises(OutOfRangeError):
        identify((5, 5), 7)


@given(st.integers(1, 7), st.data())
def test_identify_idempotent_and_antipodal(d, data):
    p = data.draw(st.sampled_from(diamond_points(d)))
    v = identify(p, d)
    assert identify(v.representative, d).representative == v.representative
    if v.on_boundary:
        assert identify((-p[0], -p[1]), d).representative == v.representative
