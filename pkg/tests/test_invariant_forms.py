from fractions import Fraction as F

import pytest
from hypothesis import given

from gaugecocycles import catalogue, linalg
from gaugecocycles.errors import DimensionMismatch, NotAnAutomorphism
from gaugecocycles.invariant_forms import (
    automorphism_action_on_V,
    invariant_covectors,
    invariant_form_space,
    is_invariant,
    kappa_lambda,
    universal_form,
)
from gaugecocycles.lie_core import killing_form, signature
from gaugecocycles.structure import minimal_ideals

from conftest import vectors


def data(name):
    return catalogue.load(name)


# rotation of R^3 with rational entries (3-4-5 triangle) about e3 and about e1
ROT3 = linalg.to_matrix([[F(3, 5), F(-4, 5), 0], [F(4, 5), F(3, 5), 0], [0, 0, 1]])
ROT1 = linalg.to_matrix([[1, 0, 0], [0, F(5, 13), F(-12, 13)], [0, F(12, 13), F(5, 13)]])


def ad_sl2(g):
    """Ad(g) on sl2r in the (h, e, f) basis for g in SL(2, Q)."""
    (a, b), (c, d) = g
    basis = [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]]
    ginv = [[d, -b], [-c, a]]
    cols = []
    for x in basis:
        y = linalg.matmul(linalg.matmul(linalg.to_matrix(g), linalg.to_matrix(x)), linalg.to_matrix(ginv))
        cols.append([y[0][0], y[0][1], y[1][0]])
    return linalg.transpose(cols)


@pytest.mark.parametrize(
    "name,m", [("su2", 1), ("sl2r", 1), ("so4", 2), ("sl2c", 2), ("su2_sl2r", 2), ("su2_su2_sl2r", 3), ("heisenberg", 3)]
)
def test_dimension_of_V(name, m):
    vs = invariant_form_space(data(name).algebra)
    assert vs.m == m
    for f in vs.forms:
        assert is_invariant(data(name).algebra, f)
    assert linalg.rank([[x for row in f for x in row] for f in vs.forms]) == m


@pytest.mark.parametrize("name", catalogue.SEMISIMPLE)
def test_m_equals_sum_of_centroid_dimensions(name):
    a = data(name).algebra
    assert invariant_form_space(a).m == sum(I.centroid_dim for I in minimal_ideals(a).ideals)


def test_simple_real_forms_are_killing():
    for name in ("su2", "sl2r"):
        a = data(name).algebra
        vs = invariant_form_space(a)
        assert [list(r) for r in vs.forms[0]] == killing_form(a)
    assert signature(invariant_form_space(data("su2").algebra).forms[0]) == (0, 3, 0)


def test_non_semisimple_flagged():
    vs = invariant_form_space(data("heisenberg").algebra)
    assert not vs.semisimple and vs.ideal_index == (None,) * vs.m


def test_universal_form_examples():
    su2 = data("su2").algebra
    vs = invariant_form_space(su2)
    assert universal_form(su2, vs, (1, 0, 0), (1, 0, 0)) == (-2,)
    so4 = data("so4").algebra
    vs4 = invariant_form_space(so4)
    d = minimal_ideals(so4)
    u, v = d.ideals[0].basis[0], d.ideals[1].basis[1]
    assert universal_form(so4, vs4, u, v) == (0, 0)
    with pytest.raises(DimensionMismatch):
        universal_form(su2, vs, (1, 0), (1, 0, 0))


@given(vectors(6), vectors(6))
def test_universal_form_symmetric(x, y):
    a = data("sl2c").algebra
    vs = invariant_form_space(a)
    assert universal_form(a, vs, x, y) == universal_form(a, vs, y, x)


def test_kappa_lambda():
    su2 = data("su2").algebra
    vs = invariant_form_space(su2)
    assert kappa_lambda(vs, (1,)) == killing_form(su2)
    assert linalg.is_zero(kappa_lambda(vs, (0,)))
    so4 = data("so4").algebra
    vs4 = invariant_form_space(so4)
    d = minimal_ideals(so4)
    k = kappa_lambda(vs4, (1, 0))
    pair = lambda u, v: sum(u[i] * k[i][j] * v[j] for i in range(6) for j in range(6))
    assert all(pair(u, v) == 0 for u in d.ideals[1].basis for v in d.ideals[1].basis)
    assert any(pair(u, u) != 0 for u in d.ideals[0].basis)
    with pytest.raises(DimensionMismatch):
        kappa_lambda(vs4, (1,))


def test_inner_automorphisms_act_trivially():
    su2 = data("su2").algebra
    vs = invariant_form_space(su2)
    assert automorphism_action_on_V(su2, vs, linalg.matmul(ROT3, ROT1)) == [[1]]
    sl2r = data("sl2r").algebra
    assert automorphism_action_on_V(sl2r, invariant_form_space(sl2r), ad_sl2([[2, 3], [1, 2]])) == [[1]]


def test_outer_actions():
    so4 = data("so4")
    vs = invariant_form_space(so4.algebra)
    assert automorphism_action_on_V(so4.algebra, vs, so4.automorphisms["swap"].phi) == [[0, 1], [1, 0]]
    sl2c = data("sl2c")
    vs = invariant_form_space(sl2c.algebra)
    assert automorphism_action_on_V(sl2c.algebra, vs, sl2c.automorphisms["conj"].phi) == [[1, 0], [0, -1]]


def test_action_is_a_homomorphism():
    d = data("su2_su2_sl2r")
    a = d.algebra
    vs = invariant_form_space(a)
    swap = [list(r) for r in d.automorphisms["swap"].phi]
    inner = linalg.identity(9)
    for i in range(3):
        for j in range(3):
            inner[i][j] = ROT3[i][j]
            inner[6 + i][6 + j] = ad_sl2([[1, 1], [0, 1]])[i][j]
    act = lambda p: automorphism_action_on_V(a, vs, p)
    for p, q in [(swap, inner), (inner, swap), (swap, swap)]:
        assert act(linalg.matmul(p, q)) == linalg.matmul(act(p), act(q))


def test_action_rejects_non_automorphism():
    su2 = data("su2").algebra
    with pytest.raises(NotAnAutomorphism):
        automorphism_action_on_V(su2, invariant_form_space(su2), linalg.scale(F(2), linalg.identity(3)))


def test_invariant_covectors():
    assert invariant_covectors([[0, 1], [1, 0]]) == [(1, 1)]
    assert invariant_covectors([[1, 0], [0, -1]]) == [(1, 0)]
    assert len(invariant_covectors(linalg.identity(3))) == 3
