from fractions import Fraction as F

import pytest

from gaugecocycles import catalogue, linalg
from gaugecocycles.errors import IrrationalSplit, NotSemisimple
from gaugecocycles.lie_core import LieAlgebra, bracket, is_semisimple, killing_form, validate
from gaugecocycles.structure import (
    centroid_basis,
    complex_structure_map,
    has_complex_structure,
    is_compact_ideal,
    isotypic_components,
    minimal_ideals,
    split_compact_noncompact,
    subalgebra,
)


def alg(name):
    return catalogue.load(name).algebra


@pytest.mark.parametrize("name,dim", [("su2", 1), ("so4", 2), ("sl2c", 2), ("su2_sl2r", 2), ("su2_su2_sl2r", 3)])
def test_centroid_dimension(name, dim):
    basis = centroid_basis(alg(name))
    assert len(basis) == dim
    a = alg(name)
    for c in basis:
        for x in range(a.dim):
            ex = a.basis_vector(x)
            for y in range(a.dim):
                ey = a.basis_vector(y)
                # c[x, y] = [x, c y]
                assert linalg.matvec(c, bracket(a, ex, ey)) == bracket(a, ex, linalg.matvec(c, ey))


def test_centroid_requires_semisimple():
    with pytest.raises(NotSemisimple):
        centroid_basis(alg("heisenberg"))


def _check_decomposition(a, decomp):
    n = a.dim
    assert sum(I.dim for I in decomp.ideals) == n
    assert linalg.rank([v for I in decomp.ideals for v in I.basis]) == n
    b = killing_form(a)
    for i, I in enumerate(decomp.ideals):
        for v in I.basis:
            for k in range(n):
                assert I.contains(bracket(a, a.basis_vector(k), v))
        for J in decomp.ideals[i + 1:]:
            for u in I.basis:
                for v in J.basis:
                    assert sum(u[p] * b[p][q] * v[q] for p in range(n) for q in range(n)) == 0
        sub = subalgebra(a, I.basis)
        assert validate(sub).ok and is_semisimple(sub)
        assert len(minimal_ideals(sub).ideals) == 1
    # projections are idempotent, complementary and land in the right ideal
    total = linalg.zeros(n)
    for p, I in zip(decomp.projections, decomp.ideals):
        assert linalg.matmul(p, p) == p
        assert linalg.rank(p) == I.dim
        total = linalg.add(total, p)
    assert total == linalg.identity(n)


@pytest.mark.parametrize("name", catalogue.SEMISIMPLE)
def test_minimal_ideals_form_a_decomposition(name):
    a = alg(name)
    _check_decomposition(a, minimal_ideals(a))


def test_minimal_ideals_examples():
    assert [I.invariants for I in minimal_ideals(alg("su2")).ideals] == [(3, (0, 3, 0), 1)]
    assert [I.invariants for I in minimal_ideals(alg("so4")).ideals] == [(3, (0, 3, 0), 1)] * 2
    d = minimal_ideals(alg("su2_sl2r"))
    assert [(I.dim, I.signature) for I in d.ideals] == [(3, (0, 3, 0)), (3, (2, 1, 0))]


@pytest.mark.parametrize("seed", range(5))
def test_decomposition_independent_of_seed(seed):
    ref = minimal_ideals(alg("so4"), seed=0)
    other = minimal_ideals(alg("so4"), seed=seed)
    assert [I.basis for I in other.ideals] == [I.basis for I in ref.ideals]


def test_compactness_and_complex_structure():
    so4 = alg("so4")
    for I in minimal_ideals(so4).ideals:
        assert is_compact_ideal(so4, I)
        assert not has_complex_structure(so4, I)
    sl2r = alg("sl2r")
    assert not is_compact_ideal(sl2r, minimal_ideals(sl2r).ideals[0])
    sl2c = alg("sl2c")
    (I,) = minimal_ideals(sl2c).ideals
    assert not is_compact_ideal(sl2c, I)
    assert has_complex_structure(sl2c, I)
    su2 = alg("su2")
    assert not has_complex_structure(su2, minimal_ideals(su2).ideals[0])


def test_complex_structure_map_squares_to_minus_one():
    a = alg("sl2c")
    d = minimal_ideals(a)
    j = complex_structure_map(a, d, 0)
    assert linalg.matmul(j, j) == linalg.scale(F(-1), linalg.identity(6))
    assert complex_structure_map(alg("su2"), minimal_ideals(alg("su2")), 0) is None


def test_isotypic_components():
    assert isotypic_components(minimal_ideals(alg("so4"))) == ((0, 1),)
    assert isotypic_components(minimal_ideals(alg("su2_sl2r"))) == ((0,), (1,))
    sizes = sorted(len(g) for g in isotypic_components(minimal_ideals(alg("su2_su2_sl2r"))))
    assert sizes == [1, 2]


def test_swap_certifies_isotypic_group():
    data = catalogue.load("so4")
    d = minimal_ideals(data.algebra, automorphisms=[data.automorphisms["swap"].phi])
    assert d.unverified_groups == ()


def test_split_compact_noncompact():
    c, nc = split_compact_noncompact(alg("so4"))
    assert (len(c), len(nc)) == (2, 0)
    c, nc = split_compact_noncompact(alg("sl2r"))
    assert (len(c), len(nc)) == (0, 1)
    c, nc = split_compact_noncompact(alg("su2_sl2r"))
    assert [I.signature for I in c] == [(0, 3, 0)] and [I.signature for I in nc] == [(2, 1, 0)]


def su2_over_sqrt2() -> LieAlgebra:
    """su(2) tensored with Q(sqrt 2): over R it is su(2) + su(2), but the ideals are irrational."""
    base = {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e2": 1}}
    br = {}
    for (a, b), res in base.items():
        br[(a, b)] = dict(res)
        br[("r" + a, b)] = {"r" + k: v for k, v in res.items()}
        br[(a, "r" + b)] = {"r" + k: v for k, v in res.items()}
        br[("r" + a, "r" + b)] = {k: 2 * v for k, v in res.items()}
    return LieAlgebra.from_brackets(("e1", "e2", "e3", "re1", "re2", "re3"), br, "su2_sqrt2")


def test_irrational_split_is_reported():
    a = su2_over_sqrt2()
    assert validate(a).ok and is_semisimple(a)
    assert len(centroid_basis(a)) == 2
    with pytest.raises(IrrationalSplit):
        minimal_ideals(a)
