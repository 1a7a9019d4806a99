import pytest

from tcurves.families import (
    FAMILY_NAMES,
    arrowheads_schemes,
    arrowheads_signs,
    family,
    nested_box_scheme,
    onion_scheme,
    special_harnack_scheme,
)
from tcurves.lattice import InvalidDegreeError
from tcurves.patchwork import build
from tcurves.scheme import harnack_bound, parse, render, stats


def test_onion_closed_forms():
    assert render(onion_scheme(2)) == "<1>"
    assert render(onion_scheme(4)) == "<1<1>>"
    assert render(onion_scheme(5)) == "<J u 1<1>>"
    assert render(onion_scheme(1)) == "<J>"
    for d in range(1, 10):
        s = onion_scheme(d)
        r = (d + 1) // 2
        loops, p, n, _ = stats(s)
        assert loops == r
        # p and n count ovals only; the nested chain alternates depth parity
        k = d // 2
        assert (p, n) == ((k + 1) // 2, k // 2)


def test_special_harnack_closed_forms():
    assert render(special_harnack_scheme(6)) == "<9 u 1<1>>"
    assert render(special_harnack_scheme(7)) == "<J u 15>"
    assert render(special_harnack_scheme(8)) == "<18 u 1<3>>"
    assert render(special_harnack_scheme(4)) == "<4>"
    for d in range(1, 10):
        assert special_harnack_scheme(d).loops == harnack_bound(d)


def test_nested_box_closed_forms():
    assert render(nested_box_scheme(6)) == "<9 u 1<1>>"
    assert render(nested_box_scheme(8)) == "<17 u 1<2 u 1<1>>>"
    assert nested_box_scheme(10).loops == harnack_bound(10)
    with pytest.raises(InvalidDegreeError):
        nested_box_scheme(7)
    with pytest.raises(InvalidDegreeError):
        nested_box_scheme(4)


def test_arrowheads_closed_forms():
    row, both = arrowheads_schemes(8)
    assert render(row) == "<17 u 1<2> u 1<1>>"
    assert render(both) == "<16 u 3<1>>"
    for s in (row, both):
        loops, p, n, _ = stats(s)
        assert (p, n) == (19, 3) and loops == harnack_bound(8)
    with pytest.raises(InvalidDegreeError):
        arrowheads_schemes(6)


def test_arrowheads_signs_modification():
    sigma = arrowheads_signs(8, "row")
    assert sigma.value_at((1, 4)) == 1 and sigma.value_at((3, 4)) == 1
    assert sigma.value_at((8 - 4, 1)) == 0
    both = arrowheads_signs(8, "both")
    assert both.value_at((4, 1)) == 1 and both.value_at((4, 3)) == 1
    with pytest.raises(ValueError):
        arrowheads_signs(8, "column")


@pytest.mark.parametrize("name,degree", [
    ("onion", 3),
    ("onion", 6),
    ("special_harnack", 5),
    ("nested_box", 6),
    ("arrowheads_row", 8),
    ("arrowheads_both", 8),
])
def test_families_compute_to_closed_form(name, degree):
    spec = family(name, degree)
    assert build(spec.triangulation, spec.signs).scheme == spec.expected_scheme


def test_family_names_all_build():
    for name in FAMILY_NAMES:
        d = 8 if "arrowheads" in name else 6
        spec = family(name, d)
        assert spec.expected_scheme == parse(render(spec.expected_scheme))
    with pytest.raises(ValueError):
        family("pretzel", 6)
