import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcoh.errors import DomainError, ResourceError
from latcoh.lattice import LatticePath, Rectangle, WeightModel
from latcoh.paths import (
    _dp_min,
    _exhaustive_min,
    count_increasing_paths,
    increasing_paths,
    min_increasing_eu,
    path_eu_weights,
    path_module,
)
from latcoh.verify import random_path

from strategies import models


def line(values):
    return WeightModel(Rectangle((len(values) - 1,)), tuple(values))


def straight(n):
    return LatticePath(tuple((i,) for i in range(n + 1)))


@pytest.mark.parametrize(
    "values, eu",
    [((0, 1, 0), 1), ((0, 1, 0, 1, 0), 2), ((0,), 0), ((3,), -3), ((2, 0, 1), 0)],
)
def test_path_eu_examples(values, eu):
    model = line(values)
    path = straight(len(values) - 1)
    assert path_eu_weights(path, model) == eu
    assert path_module(path, model).eu == eu


def test_path_outside_rectangle():
    with pytest.raises(DomainError):
        path_eu_weights(straight(3), line((0, 1, 0)))


def test_square_minimum(square_table):
    res = min_increasing_eu(square_table)
    assert res.eu == 1
    assert res.method == "exhaustive"
    assert res.witness.points == ((0, 0), (0, 1), (1, 1))


def test_increasing_paths_enumeration():
    paths = list(increasing_paths((2, 1)))
    assert len(paths) == count_increasing_paths((2, 1)) == 3
    assert paths == sorted(paths)
    assert len(list(increasing_paths((2, 2, 1)))) == 30


def test_budget_fallback():
    model = WeightModel(Rectangle((7, 7)), tuple(random.Random(1).randint(-2, 4) for _ in range(64)))
    assert min_increasing_eu(model).method == "dp"
    with pytest.raises(ResourceError):
        min_increasing_eu(model, fallback=False)


@settings(max_examples=80, deadline=None)
@given(models(), st.integers(0, 2**32))
def test_formula_matches_module(model, seed):
    path = random_path(random.Random(seed), model.rect, 10)
    mod = path_module(path, model)
    assert path_eu_weights(path, model) == mod.eu


@settings(max_examples=80, deadline=None)
@given(models())
def test_dp_matches_exhaustive(model):
    eu_e, _ = _exhaustive_min(model)
    eu_d, pts = _dp_min(model)
    assert eu_e == eu_d
    assert path_eu_weights(LatticePath(pts), model) == eu_d


def test_non_increasing_path_module():
    rng = random.Random(3)
    model = WeightModel(Rectangle((2, 2)), tuple(rng.randint(-2, 4) for _ in range(9)))
    pts = ((0, 0), (1, 0), (1, 1), (0, 1), (0, 2), (1, 2), (2, 2))
    path = LatticePath(pts)
    assert path_module(path, model).eu == path_eu_weights(path, model)
