"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from latcoh.lattice import Rectangle, WeightModel


@st.composite
def models(draw, max_rank=3, max_side=3, lo=-2, hi=3):
    rank = draw(st.integers(1, max_rank))
    side = max_side if rank < 3 else min(max_side, 2)
    c = tuple(draw(st.integers(0, side)) for _ in range(rank))
    rect = Rectangle(c)
    values = draw(st.lists(st.integers(lo, hi), min_size=rect.npoints, max_size=rect.npoints))
    return WeightModel(rect, tuple(values))


def int_matrices(max_rows=5, max_cols=5, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )
