from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcoh.errors import DomainError, UnsupportedGermError
from latcoh.germs import (
    WeightedHomogeneousGerm,
    analytic_invariants,
    brieskorn_spectrum,
    brieskorn_spectrum_oracle,
    reduced_hilbert,
    reduced_weight,
    spectrum_product_formula,
    spectrum_unit_interval,
)
from latcoh.roots import build_root, root_module

F = Fraction


@pytest.mark.parametrize(
    "exps, weights, d",
    [((2, 3, 7), (21, 14, 6), 42), ((2, 3, 11), (33, 22, 6), 66), ((2, 3, 13), (39, 26, 6), 78)],
)
def test_brieskorn_weights(exps, weights, d):
    g = WeightedHomogeneousGerm.brieskorn(exps)
    assert (g.weights, g.degree) == (weights, d)


@pytest.mark.parametrize(
    "exps, spectrum",
    [
        ((2, 3, 7), [F(41, 42)]),
        ((2, 3, 11), [F(61, 66)]),
        ((2, 3, 13), [F(71, 78), F(77, 78)]),
        ((2, 3, 5), []),
        ((2, 2, 2), []),
    ],
)
def test_spectrum_fixtures(exps, spectrum):
    g = WeightedHomogeneousGerm.brieskorn(exps)
    assert list(spectrum_unit_interval(g).values) == spectrum
    assert list(brieskorn_spectrum_oracle(exps).values) == spectrum


def test_hilbert_and_weight_fixtures():
    g = WeightedHomogeneousGerm.brieskorn
    assert reduced_hilbert(g((2, 3, 7))).values == (0, 1, 1)
    assert reduced_hilbert(g((2, 3, 11))).values == (0, 1, 1, 1, 1, 1, 1)
    assert reduced_hilbert(g((2, 3, 13))).values == (0, 1, 1, 1, 1, 1, 1, 2, 2)
    assert reduced_weight(g((2, 3, 7))).values == (0, 1, 0)
    assert reduced_weight(g((2, 3, 11))).values == (0, 1, 1, 1, 1, 1, 0)
    assert reduced_weight(g((2, 3, 13))).values == (0, 1, 0, 0, 0, 0, 0, 1, 0)


def test_analytic_pipeline_fixtures():
    g = WeightedHomogeneousGerm.brieskorn
    a = analytic_invariants(g((2, 3, 7)))
    assert a.eu == a.p_g == 1
    assert root_module(a.root).describe() == "T+_0 + Z(deg 0)"
    assert sorted(v[0] for v in a.root.leaves()) == [0, 0]
    b = analytic_invariants(g((2, 3, 11)))
    assert b.root.shape() == a.root.shape()
    c = analytic_invariants(g((2, 3, 5)))
    assert c.eu == 0 and root_module(c.root).describe() == "T+_0"
    d = analytic_invariants(g((2, 3, 13)))
    assert d.eu == d.p_g == 2 and len(d.root.leaves()) == 3


def test_refuses_spectral_number_one():
    with pytest.raises(UnsupportedGermError):
        spectrum_unit_interval(WeightedHomogeneousGerm.brieskorn((2, 4, 4)))
    with pytest.raises(UnsupportedGermError):
        spectrum_unit_interval(WeightedHomogeneousGerm.brieskorn((3, 3, 3)))


def test_invalid_germs():
    with pytest.raises(DomainError):
        WeightedHomogeneousGerm((2, 4), 8)
    with pytest.raises(DomainError):
        WeightedHomogeneousGerm((1,), 3)
    with pytest.raises(DomainError):
        WeightedHomogeneousGerm((1, 5), 3)
    with pytest.raises(DomainError):
        WeightedHomogeneousGerm.brieskorn((1, 3, 5))


triples = st.tuples(st.integers(2, 12), st.integers(2, 12), st.integers(2, 12)).map(sorted)


@settings(max_examples=80, deadline=None)
@given(triples)
def test_lattice_enumeration_matches_oracles(exps):
    g = WeightedHomogeneousGerm.brieskorn(exps)
    full = spectrum_product_formula(g)
    assert full == brieskorn_spectrum(exps)
    assert len(full) == g.milnor_number()
    below = [a for a in full if a < 1]
    try:
        spec = spectrum_unit_interval(g)
    except UnsupportedGermError:
        assert F(1) in full
        return
    assert F(1) not in full
    assert list(spec.values) == below == list(brieskorn_spectrum_oracle(exps).values)


@settings(max_examples=40, deadline=None)
@given(triples)
def test_weight_symmetric_and_eu_is_pg(exps):
    g = WeightedHomogeneousGerm.brieskorn(exps)
    try:
        a = analytic_invariants(g)
    except UnsupportedGermError:
        return
    w = a.model.values
    assert w == w[::-1]
    assert a.hilbert.values[-1] == a.p_g == a.eu


def test_non_brieskorn_product_formula():
    # x^2 + y^3 + y z^5
    g = WeightedHomogeneousGerm((15, 10, 4), 30)
    full = spectrum_product_formula(g)
    assert len(full) == g.milnor_number() == 13
    assert spectrum_unit_interval(g).values == (F(29, 30),)
    below = [a for a in full if a < 1]
    assert list(spectrum_unit_interval(g).values) == below


def test_negative_corner_is_clamped():
    g = WeightedHomogeneousGerm.brieskorn((2, 2, 3))
    assert g.reduced_corner == -1
    a = analytic_invariants(g)
    assert a.model.values == (0,)
    assert a.eu == a.p_g == 0
