import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcurves.scheme import (
    RealScheme,
    SchemeParseError,
    UnsupportedDegreeError,
    alpha_beta,
    enumerate_schemes,
    flat,
    harnack_bound,
    leaf,
    parse,
    render,
    stats,
)


def test_parse_hilbert_m_curve():
    s = parse("<J u 12 u 1<2>>")
    assert s.pseudo_line and s.loops == 16
    loops, p, n, _ = stats(s)
    assert (loops, p, n) == (16, 13, 2)


def test_render_empty_and_base_cases():
    assert render(flat(False, 0)) == "<0>"
    assert render(flat(True, 0)) == "<J>"
    assert render(parse("<0>")) == "<0>"


def test_roundtrip_canonical_strings():
    for text in ("<9 u 1<1>>", "<J u 15>", "<17 u 1<2> u 1<1>>", "<16 u 3<1>>",
                 "<1<1<1>>>", "<17 u 1<2 u 1<1>>>", "<J u 1<1<1>>>"):
        assert render(parse(text)) == text


def test_unicode_input():
    assert parse("⟨9 ⨆ 1⟨1⟩⟩") == parse("<9 u 1<1>>")


def test_multiplicity_grouping():
    s = RealScheme.make(False, [(leaf(),), (leaf(),), (leaf(),)])
    assert render(s) == "<3<1>>"


def test_parse_errors_carry_position():
    for bad in ("9 u 1", "<9 u>", "<1<2>", "<J u J>", "<1>>", "<a>"):
        with pytest.raises(SchemeParseError) as err:
            parse(bad)
        assert err.value.position >= 0


def test_nested_pseudo_line_rejected():
    with pytest.raises(SchemeParseError):
        parse("<1<J>>")


def test_stats():
    assert stats(parse("<9 u 1<1>>")) == (11, 10, 1, 1)
    assert stats(parse("<J u 15>")) == (16, 15, 0, 0)
    assert stats(parse("<1<1<1>>>")) == (3, 2, 1, 2)


def test_harnack_bound():
    assert harnack_bound(6) == 11
    assert harnack_bound(7) == 16
    assert harnack_bound(1) == 1


def test_enumerate_small_degrees():
    assert {render(s) for s in enumerate_schemes(3)} == {"<J>", "<J u 1>"}
    assert {render(s) for s in enumerate_schemes(4)} == {
        "<0>", "<1>", "<2>", "<3>", "<4>", "<1<1>>",
    }
    assert len(enumerate_schemes(5)) == 8


def test_enumerate_degree_six():
    schemes = enumerate_schemes(6)
    assert len(schemes) == 56
    # the alpha u 1<beta> family contributes 44, flat schemes (including the
    # empty one) 11, plus the triply nested one
    depths = [stats(s)[3] for s in schemes]
    assert sum(1 for x in depths if x <= 0) == 11
    assert sum(1 for x in depths if x == 1) == 44
    assert sum(1 for x in depths if x == 2) == 1
    # the three maximal ones
    m = {render(s) for s in schemes if s.loops == 11}
    assert m == {"<1 u 1<9>>", "<5 u 1<5>>", "<9 u 1<1>>"}
    # congruence excludes e.g. <2 u 1<8>> and <2 u 1<7>>
    rendered = {render(s) for s in schemes}
    assert "<2 u 1<8>>" not in rendered
    assert "<2 u 1<7>>" not in rendered
    assert "<1 u 1<8>>" in rendered


def test_enumerate_degree_seven():
    schemes = enumerate_schemes(7)
    assert len(schemes) == 121
    assert all(s.pseudo_line for s in schemes)
    assert len([s for s in schemes if stats(s)[3] <= 0]) == 16
    assert sum(1 for s in schemes if stats(s)[3] == 1) == 104
    assert sum(1 for s in schemes if stats(s)[3] == 2) == 1
    assert max(s.loops for s in schemes) == harnack_bound(7)


def test_enumerate_unsupported():
    with pytest.raises(UnsupportedDegreeError):
        enumerate_schemes(8)


@st.composite
def schemes_strategy(draw, max_ovals=6):
    def node(budget):
        if budget <= 1:
            return leaf(), 1
        n_children = draw(st.integers(0, min(3, budget - 1)))
        used = 1
        children = []
        for _ in range(n_children):
            c, cost = node(budget - used)
            if used + cost > budget:
                break
            children.append(c)
            used += cost
        return tuple(children), used

    count = draw(st.integers(0, max_ovals))
    children = []
    used = 0
    while used < count:
        c, cost = node(count - used)
        children.append(c)
        used += cost
    return RealScheme.make(draw(st.booleans()), children)


@settings(max_examples=200)
@given(schemes_strategy())
def test_parse_render_identity(s):
    assert parse(render(s)) == s


@given(schemes_strategy())
def test_canonical_ordering_is_stable(s):
    # rebuilding from shuffled children gives the same canonical object
    again = RealScheme.make(s.pseudo_line, list(reversed(s.children)))
    assert again == s


def test_alpha_beta_and_flat_helpers():
    assert render(alpha_beta(False, 9, 1)) == "<9 u 1<1>>"
    assert render(alpha_beta(True, 0, 1)) == "<J u 1<1>>"
    assert render(flat(True, 6)) == "<J u 6>"
