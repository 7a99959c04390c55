import itertools

import pytest
from hypothesis import given, settings

from latcoh.errors import DomainError, PathError, StructuralError
from latcoh.lattice import (
    Box,
    Cube,
    CubicalComplex,
    LatticePath,
    Rectangle,
    WeightModel,
    enumerate_cubes,
    region_cubes,
    sublevel_complex,
)

from strategies import models


def test_cube_vertices_and_dim():
    cube = Cube((1, 0, 2), (2, 0))
    assert cube.dirs == (0, 2)
    assert cube.dim == 2
    assert cube.vertices() == [(1, 0, 2), (1, 0, 3), (2, 0, 2), (2, 0, 3)]
    assert cube.top == (2, 0, 3)


def test_cube_rejects_bad_directions():
    with pytest.raises(DomainError):
        Cube((0, 0), (0, 0))
    with pytest.raises(DomainError):
        Cube((0, 0), (2,))


def test_cube_weight_constant():
    model = WeightModel(Rectangle((1, 1)), (0, 0, 0, 0))
    assert model.cube_weight(Cube((0, 0), (0, 1))) == 0


def test_cube_weight_examples(square_table):
    assert square_table.cube_weight(Cube((0, 0), (0, 1))) == 1
    assert square_table.cube_weight(Cube((0, 0), (0,))) == 1


def test_cube_weight_outside_rectangle(square_table):
    with pytest.raises(DomainError):
        square_table.cube_weight(Cube((1, 0), (0,)))


def test_sublevel_two_vertices(square_table):
    s0 = sublevel_complex(square_table, 0)
    assert s0.counts() == [2]
    assert s0.vertices == [(0, 0), (1, 1)]


def test_sublevel_full_square(square_table):
    s1 = sublevel_complex(square_table, 1)
    assert s1.counts() == [4, 4, 1]


def test_sublevel_below_minimum_is_empty(square_table):
    assert sublevel_complex(square_table, square_table.min_weight - 1).is_empty()


@pytest.mark.parametrize(
    "c, counts",
    [((1,), [2, 1]), ((1, 1), [4, 4, 1]), ((2, 1), [6, 7, 2])],
)
def test_enumerate_cubes_counts(c, counts):
    cubes = list(enumerate_cubes(Rectangle(c)))
    by_dim = [sum(1 for x in cubes if x.dim == q) for q in range(len(counts))]
    assert by_dim == counts
    assert len(cubes) == len(set(cubes))
    assert cubes == sorted(cubes)


@pytest.mark.parametrize("c", [(0,), (3,), (2, 3), (1, 2, 2), (0, 2, 1)])
def test_count_formula_matches_enumeration(c):
    rect = Rectangle(c)
    cubes = list(enumerate_cubes(rect))
    for q in range(rect.rank + 1):
        assert sum(1 for x in cubes if x.dim == q) == rect.count_cubes(q)


def test_rectangle_index_roundtrip():
    rect = Rectangle((2, 1, 3))
    assert [rect.index(p) for p in rect.points()] == list(range(rect.npoints))
    with pytest.raises(DomainError):
        rect.index((3, 0, 0))


def test_cube_faces_listing():
    faces = Cube((0, 0), (0, 1)).faces()
    assert len(faces) == 9
    assert set(faces) == set(enumerate_cubes(Rectangle((1, 1))))


def test_face_closure_detection():
    cx = CubicalComplex.from_cubes([Cube((0,), (0,)), Cube((0,))])
    with pytest.raises(StructuralError):
        cx.check_face_closed()


def test_box_region_cubes():
    model = WeightModel(Rectangle((2, 2)), (0,) * 9)
    cubes = region_cubes(model, Box((1, 0), (2, 1)))
    assert len(cubes) == 9
    with pytest.raises(DomainError):
        region_cubes(model, Box((1, 1), (3, 1)))


def test_lattice_path_validation():
    LatticePath(((0, 0), (1, 0), (1, 1), (0, 1)))
    with pytest.raises(PathError):
        LatticePath(((1, 0),))
    with pytest.raises(PathError):
        LatticePath(((0, 0), (1, 1)))
    with pytest.raises(PathError):
        LatticePath(((0,), (1,), (0,)))


@settings(max_examples=60, deadline=None)
@given(models())
def test_sublevel_properties(model):
    weights = {c: model.cube_weight(c) for c in enumerate_cubes(model.rect)}
    # monotone under faces
    for cube, w in weights.items():
        for face in cube.faces():
            assert weights[face] <= w
    top = max(weights.values())
    full = set(weights)
    prev = set()
    for n in range(model.min_weight - 1, top + 2):
        cx = sublevel_complex(model, n)
        cx.check_face_closed()
        cells = set(cx)
        assert prev <= cells
        prev = cells
        assert cx.is_empty() == (n < model.min_weight)
        if n >= top:
            assert cells == full


def test_points_lexicographic():
    pts = list(Rectangle((1, 2)).points())
    assert pts == sorted(pts)
    assert pts == list(itertools.product(range(2), range(3)))
