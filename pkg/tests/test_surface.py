import itertools

import pytest
from hypothesis import given, strategies as st

from ciliated.errors import InvalidSurface, NegativeCount, ParseError
from ciliated.surface import (CiliatedSurface, SurfaceTag, arc_count, classify, complex_dim,
                              is_finite_type, parse_surface, polygon, same_homeo_type,
                              triangle_count)


def S(g, b, s, *p):
    return CiliatedSurface(g, b, s, tuple(p))


@pytest.mark.parametrize("surface, expected", [
    (S(0, 1, 0, 5), 2),
    (S(0, 1, 1, 1), 1),
    (S(1, 1, 0, 1), 4),
])
def test_arc_count_examples(surface, expected):
    assert arc_count(surface) == expected


@pytest.mark.parametrize("p", [1, 2, 3])
def test_arc_count_degenerate_polygon_is_an_error(p):
    with pytest.raises(NegativeCount):
        arc_count(S(0, 1, 0, p))


@pytest.mark.parametrize("surface, expected", [
    (S(0, 1, 0, 4), 0),
    (S(0, 1, 0, 3), -1),
    (S(0, 2, 0, 1, 1), 1),
])
def test_complex_dim_examples(surface, expected):
    assert complex_dim(surface) == expected


@pytest.mark.parametrize("surface, expected", [
    (S(0, 1, 1, 7), True),
    (S(0, 2, 0, 1, 1), False),
    (S(1, 1, 0, 1), False),
    (S(0, 1, 2, 3), False),
])
def test_is_finite_type(surface, expected):
    assert is_finite_type(surface) is expected


@pytest.mark.parametrize("surface, tag", [
    (S(0, 1, 1, 1), SurfaceTag.SINGLE_VERTEX),
    (S(0, 1, 1, 2), SurfaceTag.PUNCTURED_DIGON),
    (S(0, 3, 2, 1, 1, 1), SurfaceTag.GENERAL),
    (S(0, 1, 0, 4), SurfaceTag.TWO_VERTICES),
    (S(0, 1, 0, 5), SurfaceTag.PENTAGON),
    (S(0, 2, 0, 1, 1), SurfaceTag.ANNULUS_ONE_ONE),
    (S(0, 1, 0, 2), SurfaceTag.EMPTY),
])
def test_classify_examples(surface, tag):
    assert classify(surface).tag is tag
    assert classify(surface).surface == surface


@pytest.mark.parametrize("a, b, expected", [
    (S(0, 2, 0, 2, 1), S(0, 2, 0, 1, 2), True),
    (S(0, 1, 0, 6), S(0, 1, 1, 3), False),
    (S(0, 1, 0, 5), S(0, 1, 0, 5), True),
])
def test_same_homeo_type_examples(a, b, expected):
    assert same_homeo_type(a, b) is expected


@pytest.mark.parametrize("surface, expected", [
    (S(0, 1, 0, 5), 3),
    (S(0, 1, 1, 2), 2),
    (S(0, 1, 0, 4), 2),
])
def test_triangle_count_examples(surface, expected):
    assert triangle_count(surface) == expected


def test_invalid_surfaces_rejected():
    for bad in [(0, 0, 0, ()), (-1, 1, 0, (2,)), (0, 1, 0, (0,)), (0, 2, 0, (1,))]:
        with pytest.raises(InvalidSurface):
            CiliatedSurface(*bad)


def test_descriptor_round_trip_and_canonical_order():
    s = parse_surface("0,3,1;1,4,2")
    assert s.descriptor() == "0,3,1;1,4,2"
    assert s.canonical().descriptor() == "0,3,1;4,2,1"
    assert parse_surface(s.descriptor()) == s
    assert CiliatedSurface.from_dict(s.to_dict()) == s
    assert s.total_marked == 7


@pytest.mark.parametrize("text", ["", "0,1", "0,1,0;", "a,b,c;1", "0,1,0;1;2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_surface(text)


def _grid():
    for g, b, s in itertools.product(range(3), range(1, 4), range(3)):
        for p in itertools.product(range(1, 5), repeat=b):
            yield CiliatedSurface(g, b, s, p)


def test_grid_dimension_and_count_relation():
    for surf in _grid():
        raw = 6 * surf.genus + 3 * surf.boundary_count + 3 * surf.puncture_count + surf.total_marked
        if surf.is_polygon and surf.marked_points[0] <= 3:
            with pytest.raises(NegativeCount):
                arc_count(surf)
            assert complex_dim(surf) == -1
        elif raw - 6 >= 0:
            assert arc_count(surf) == raw - 6
            assert complex_dim(surf) == raw - 7 == arc_count(surf) - 1
            assert (2 * arc_count(surf) + surf.total_marked) % 3 == 0
            assert triangle_count(surf) == (2 * arc_count(surf) + surf.total_marked) // 3
        else:
            assert complex_dim(surf) == -1


def test_grid_empty_class_characterisation():
    for surf in _grid():
        empty = classify(surf).tag is SurfaceTag.EMPTY
        assert empty == (complex_dim(surf) == -1)
        assert empty == ((surf.genus, surf.boundary_count, surf.puncture_count) == (0, 1, 0)
                         and surf.marked_points[0] <= 3)


def test_same_homeo_type_is_an_equivalence_relation():
    grid = [s for s in _grid() if s.genus <= 1 and s.boundary_count <= 2]
    for a in grid:
        assert same_homeo_type(a, a)
    for a, b in itertools.product(grid, repeat=2):
        assert same_homeo_type(a, b) == same_homeo_type(b, a)
    sample = grid[::7]
    for a, b, c in itertools.product(sample, repeat=3):
        if same_homeo_type(a, b) and same_homeo_type(b, c):
            assert same_homeo_type(a, c)


@given(st.integers(0, 3), st.integers(1, 4), st.integers(0, 3), st.data())
def test_canonical_form_preserves_homeo_type(g, b, s, data):
    p = tuple(data.draw(st.lists(st.integers(1, 6), min_size=b, max_size=b)))
    surf = CiliatedSurface(g, b, s, p)
    assert same_homeo_type(surf, surf.canonical())
    assert list(surf.canonical().marked_points) == sorted(p, reverse=True)
    assert complex_dim(surf) == complex_dim(surf.canonical())


def test_polygon_helper():
    assert polygon(6) == S(0, 1, 0, 6)
    assert polygon(3, punctures=1) == S(0, 1, 1, 3)
