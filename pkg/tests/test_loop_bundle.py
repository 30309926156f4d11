import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from gaugecocycles import catalogue, linalg
from gaugecocycles.cocycle import kappa_loop
from gaugecocycles.errors import NotAnAutomorphism, NotSemisimple, TwistMismatch
from gaugecocycles.loop_bundle import (
    Connection,
    LoopAlgebra,
    TwistAutomorphism,
    VectorFieldLift,
    apply_D,
    connection_apply,
    lie_derivative_of_connection,
    loop_bracket,
    reduce_to_simple,
    spectral_cover,
    verify_reduction,
)
from gaugecocycles.trig import COS, SIN, TrigPoly

from conftest import loops, rand_element, seeds

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
CASES = [("su2", "identity"), ("su2", "rot"), ("sl2r", "flip"), ("so4", "swap"), ("sl2c", "conj"), ("su2_su2_sl2r", "swap")]


def as_poly(space, v, nu, kind, power=0):
    return space.mode(v, nu, kind).poly.times_two_pi(power)


def random_lift(space, rng):
    speed = F(rng.randint(-2, 3), rng.choice((1, 2)))
    return VectorFieldLift(speed, space.random_element(rng, 1))


def test_twist_automorphism_checks():
    su2 = catalogue.load("su2").algebra
    with pytest.raises(NotAnAutomorphism):
        TwistAutomorphism.from_matrix(linalg.scale(F(2), linalg.identity(3)), 2, "double").check(su2)
    with pytest.raises(NotAnAutomorphism):
        TwistAutomorphism.identity(3).__class__(TwistAutomorphism.identity(3).phi, 3, "third").check(su2)
    flip_e3 = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]  # not an automorphism of su2
    with pytest.raises(NotAnAutomorphism):
        LoopAlgebra(su2, TwistAutomorphism.from_matrix(flip_e3, 2, "bad"))


def test_twist_condition_enforced():
    L = loops("su2", "rot")  # rot = -1 on e1, e2 and +1 on e3
    L.mode(E1, F(1, 2), COS)
    L.mode(E3, 1, SIN)
    with pytest.raises(TwistMismatch):
        L.mode(E3, F(1, 2), COS)
    with pytest.raises(TwistMismatch):
        L.mode(E1, 1, COS)
    with pytest.raises(TwistMismatch):
        loops("su2").mode(E1, F(1, 2), COS)  # untwisted loops have integer frequencies
    with pytest.raises(TwistMismatch):
        L.mode(E1, F(1, 2)) + loops("su2").zero()


def test_swap_twist_frequencies():
    L = loops("so4", "swap")
    # the +1 eigenspace of the swap has dimension 3 at integer and the -1 one at half-odd frequencies
    assert L.allowed_dim(0) == 3 and L.allowed_dim(F(1, 2)) == 3
    assert L.frequencies(1) == [0, F(1, 2), 1]


def test_loop_bracket_product_to_sum():
    L = loops("su2")
    got = loop_bracket(L.mode(E1, 1, COS), L.mode(E2, 1, COS))
    want = TrigPoly(3, {(0, F(0), COS): (0, 0, F(1, 2)), (0, F(2), COS): (0, 0, F(1, 2))})
    assert got.poly == want
    assert loop_bracket(L.constant(E1), L.constant(E2)) == L.constant(E3)


@given(seeds())
def test_bracket_of_element_with_itself_vanishes(seed):
    L = loops("so4", "swap")
    x = rand_element(L, seed)
    assert loop_bracket(x, x).is_zero()


def test_apply_D_examples():
    L = loops("su2")
    rot = VectorFieldLift.rotation()
    assert apply_D(rot, L.constant(E1)).is_zero()
    assert apply_D(rot, L.mode(E1, 1, SIN)).poly == as_poly(L, E1, 1, COS, 1)
    vertical = VectorFieldLift(F(0), L.constant(E2))
    assert apply_D(vertical, L.constant(E1)) == L.constant((0, 0, -1))


def test_connection_apply_examples():
    L = loops("su2")
    flat = Connection.trivial(L)
    assert connection_apply(flat, L.constant(E1)).is_zero()
    for n in (1, 2, 3):
        assert connection_apply(flat, L.mode(E1, n, COS)).poly == as_poly(L, (-n, 0, 0), n, SIN, 1)
    assert connection_apply(Connection(L.constant(E2)), L.constant(E1)) == L.constant((0, 0, -1))


def test_lie_derivative_of_connection_examples():
    L = loops("su2")
    rot = VectorFieldLift.rotation()
    assert lie_derivative_of_connection(rot, Connection.trivial(L)).is_zero()
    assert lie_derivative_of_connection(rot, Connection(L.constant(E2))).is_zero()
    for m in (1, 2):
        got = lie_derivative_of_connection(rot, Connection(L.mode(E2, m, COS)))
        assert got.poly == as_poly(L, (0, -m, 0), m, SIN, 1)


@pytest.mark.parametrize("name,twist", CASES)
@given(seed=seeds())
def test_D_and_nabla_are_derivations(name, twist, seed):
    L = loops(name, twist)
    rng = random.Random(seed)
    xi, eta = L.random_element(rng, 2), L.random_element(rng, 2)
    lift = random_lift(L, rng)
    nabla = Connection(L.random_element(rng, 2))
    for op in (lambda z: apply_D(lift, z), lambda z: connection_apply(nabla, z)):
        assert op(loop_bracket(xi, eta)) == loop_bracket(op(xi), eta) + loop_bracket(xi, op(eta))


@pytest.mark.parametrize("name,twist", CASES)
@given(seed=seeds())
def test_outputs_satisfy_twist_condition(name, twist, seed):
    L = loops(name, twist)
    rng = random.Random(seed)
    xi, eta = L.random_element(rng, 2), L.random_element(rng, 2)
    lift, nabla = random_lift(L, rng), Connection(L.random_element(rng, 2))
    for out in (loop_bracket(xi, eta), apply_D(lift, xi), connection_apply(nabla, xi), lie_derivative_of_connection(lift, nabla)):
        assert L.compatible(out.poly)


@pytest.mark.parametrize("name,twist", CASES)
@given(seed=seeds())
def test_curvature_of_flow_identity(name, twist, seed):
    """D(nabla xi) - nabla(D xi) = [L_v nabla, xi]."""
    L = loops(name, twist)
    rng = random.Random(seed)
    xi = L.random_element(rng, 2)
    lift, nabla = random_lift(L, rng), Connection(L.random_element(rng, 2))
    lhs = apply_D(lift, connection_apply(nabla, xi)) - connection_apply(nabla, apply_D(lift, xi))
    assert lhs == loop_bracket(lie_derivative_of_connection(lift, nabla), xi)


@pytest.mark.parametrize("name,twist", CASES)
@given(seed=seeds())
def test_flow_acts_on_kappa_through_the_base(name, twist, seed):
    """speed * d/dt kappa(xi, eta) = kappa(D xi, eta) + kappa(xi, D eta)."""
    L = loops(name, twist)
    rng = random.Random(seed)
    xi, eta = L.random_element(rng, 2), L.random_element(rng, 2)
    lift = random_lift(L, rng)
    lhs = kappa_loop(xi, eta).derivative().scale(lift.speed)
    assert lhs == kappa_loop(apply_D(lift, xi), eta) + kappa_loop(xi, apply_D(lift, eta))


def test_spectral_cover_examples():
    so4 = catalogue.load("so4")
    swap = spectral_cover(so4.algebra, so4.twist("swap"))
    assert [(c.orbit, c.length) for c in swap.components] == [((0, 1), 2)]
    ident = spectral_cover(so4.algebra, so4.twist("identity"))
    assert [c.length for c in ident.components] == [1, 1]
    su2 = catalogue.load("su2")
    for name in ("identity", "rot"):
        assert [c.length for c in spectral_cover(su2.algebra, su2.twist(name)).components] == [1]
    with pytest.raises(NotSemisimple):
        spectral_cover(catalogue.load("heisenberg").algebra, TwistAutomorphism.identity(3))


def test_reduction_shapes():
    red = reduce_to_simple(loops("so4", "swap"))
    (comp,) = red.components
    assert comp.algebra.dim == 3 and comp.period == 2 and comp.residual_twist.order == 1
    red = reduce_to_simple(loops("su2_sl2r"))
    assert [(c.algebra.dim, c.period) for c in red.components] == [(3, 1), (3, 1)]
    red = reduce_to_simple(loops("su2", "rot"))
    (comp,) = red.components
    assert comp.period == 1 and comp.residual_twist.phi == loops("su2", "rot").twist.phi


@pytest.mark.parametrize("name,twist", CASES + [("so4", "identity"), ("su2_sl2r", "identity")])
def test_reduction_is_isomorphism(name, twist):
    L = loops(name, twist)
    rng = random.Random(5)
    lift = VectorFieldLift(F(3, 2), L.random_element(rng, 1))
    rep = verify_reduction(reduce_to_simple(L), samples=15, seed=1, max_freq=2, lift=lift)
    assert rep.ok, rep.pretty()


def test_reduction_rejects_foreign_elements():
    red = reduce_to_simple(loops("so4", "swap"))
    with pytest.raises(TwistMismatch):
        red.phi(loops("so4").zero())
