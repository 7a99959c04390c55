import pytest
from hypothesis import given, settings

from latcoh.cohomology import (
    check_c_stability,
    compute_summary,
    cube_weight_alternating_sum,
    euler_characteristic,
)
from latcoh.errors import PreconditionError
from latcoh.lattice import Box, Rectangle, WeightModel

from strategies import models


def test_square_summary(square_table):
    s = compute_summary(square_table)
    assert s.min_level == 0
    assert s.level(0).betti[0] == 2
    assert s.level(1).betti == (1, 0, 0)
    assert s.u_rank(0, 0) == 1
    assert euler_characteristic(s) == 1
    assert cube_weight_alternating_sum(square_table) == 1


def test_annulus_has_degree_one_class(annulus_table):
    s = compute_summary(annulus_table)
    assert s.level(0).betti[:2] == (1, 1)
    assert s.level(1).betti == (1, 0, 0)
    assert euler_characteristic(s) == -1
    assert cube_weight_alternating_sum(annulus_table) == -1


def test_rank_one_example():
    model = WeightModel(Rectangle((2,)), (0, 1, 0))
    s = compute_summary(model)
    assert s.level(0).components == 2
    assert euler_characteristic(s) == 1
    assert cube_weight_alternating_sum(model) == 1


def test_constant_table_is_tower():
    model = WeightModel(Rectangle((2, 1)), (3,) * 6)
    s = compute_summary(model)
    assert s.min_level == s.max_level == 3
    assert euler_characteristic(s) == -3


def test_levels_below_min_are_empty(square_table):
    s = compute_summary(square_table)
    assert s.level(-5).betti == (0, 0, 0)
    assert s.u_rank(-5, 0) == 0
    assert s.level(10).betti == s.levels[-1].betti


def test_degree_is_twice_level(square_table):
    d = compute_summary(square_table).to_dict()
    assert all(lv["degree"] == 2 * lv["n"] for lv in d["levels"])
    assert d["tower"]["degree"] == 0
    assert d["eu"] == 1


def test_box_region():
    model = WeightModel(Rectangle((2, 2)), (5, 5, 5, 5, 0, 1, 5, 1, 0))
    s = compute_summary(model, Box((1, 1), (2, 2)))
    assert s.level(0).components == 2
    assert euler_characteristic(s) == 1


@settings(max_examples=80, deadline=None)
@given(models())
def test_alternating_sum_equals_eu(model):
    assert euler_characteristic(compute_summary(model)) == cube_weight_alternating_sum(model)


@settings(max_examples=30, deadline=None)
@given(models(max_rank=2))
def test_summary_independent_of_workers(model):
    assert compute_summary(model, workers=1).to_dict() == compute_summary(model, workers=2).to_dict()


def _brieskorn_237():
    return WeightModel(Rectangle((2,)), (0, 1, 0))


@pytest.mark.parametrize("new", [0, 1, 3])
def test_c_stability_rank_one(new):
    ext = WeightModel(Rectangle((3,)), (0, 1, 0, new))
    assert check_c_stability(_brieskorn_237(), ext, 0).ok


def test_c_stability_hypothesis_violation_names_point():
    ext = WeightModel(Rectangle((3,)), (0, 1, 0, -1))
    with pytest.raises(PreconditionError, match=r"\(3,\)"):
        check_c_stability(_brieskorn_237(), ext, 0)


def test_c_stability_rejects_changed_weights():
    ext = WeightModel(Rectangle((3,)), (0, 2, 0, 0))
    with pytest.raises(PreconditionError):
        check_c_stability(_brieskorn_237(), ext, 0)


def test_c_stability_rank_two(square_table):
    ext = WeightModel(Rectangle((2, 1)), (0, 1, 1, 0, 1, 1))
    assert check_c_stability(square_table, ext, 0).ok
