import pytest

from eqthom.gca import AlgebraMap
from eqthom.lie import (ce_differential, coadjoint_derivation, invariant_polynomials,
                        lie_algebra, parse_lie_algebra, pfaffian, pfaffian_generators, so_matrix,
                        symmetric_generators)


def test_abelian_coadjoint_and_cobracket_vanish():
    g = lie_algebra("R2")
    assert g.coadjoint(0, {1: 1}) == {}
    assert g.cobracket({0: 1}) == {}
    d = ce_differential(g)
    assert d.apply(d.gens.gen(0)).is_zero()


def test_coadjoint_is_transpose_of_ad():
    # [e1, e2] = e2, so ad(e1)^T sends x2 to x2
    g = lie_algebra("aff2")
    assert g.bracket(0, 1) == {1: 1}
    assert g.coadjoint(0, {1: 1}) == {1: 1}


def test_cobracket_duals():
    assert lie_algebra("aff2").cobracket({1: 1}) == {(0, 1): 1}
    assert lie_algebra("so3").cobracket({0: 1}) == {(1, 2): 1}


def test_so3_coadjoint_epsilon():
    g = lie_algebra("so3")
    assert g.coadjoint(0, {1: 1}) == {2: -1}
    assert g.coadjoint(0, {2: 1}) == {1: 1}


def test_ce_square_zero_for_so3():
    d = ce_differential(lie_algebra("so3"))
    for i in range(d.gens.n):
        assert d.apply(d.apply(d.gens.gen(i))).is_zero()


def test_invariant_polynomials():
    so3 = lie_algebra("so3")
    assert len(invariant_polynomials(so3, 1)) == 0
    (cas,) = invariant_polynomials(so3, 2)
    gens = cas.gens
    assert cas == gens.gen(0) ** 2 + gens.gen(1) ** 2 + gens.gen(2) ** 2
    assert len(invariant_polynomials(lie_algebra("R2"), 3)) == 4


def test_pfaffians():
    g2 = pfaffian_generators(2)
    assert pfaffian(2) == g2.gen(0)
    g4 = pfaffian_generators(4)
    a = {n: g4.gen(n) for n in g4.names}
    assert pfaffian(4) == a["a12"] * a["a34"] - a["a13"] * a["a24"] + a["a14"] * a["a23"]


@pytest.mark.parametrize("r", [2, 4])
def test_pfaffian_is_invariant(r):
    g = so_matrix(r)
    gens = pfaffian_generators(r)
    pf = pfaffian(r, gens)
    for xi in range(g.dim):
        assert coadjoint_derivation(g, xi, gens).apply(pf).is_zero()


def test_pfaffian_squares_to_determinant():
    from eqthom.lie import antisymmetric_determinant
    pf = pfaffian(4)
    assert pf * pf == antisymmetric_determinant(4, pf.gens)


def test_jacobi_is_enforced():
    with pytest.raises(ValueError, match="Jacobi"):
        parse_lie_algebra("name: bad\ndim: 3\n1 2 3 1\n2 3 3 1\n1 3 2 1")


def test_symmetric_generators_are_even():
    gens = symmetric_generators(lie_algebra("so3"))
    assert all(d == 2 for d in gens.degrees)
    assert AlgebraMap(gens, gens, {}).apply(gens.one()) == gens.one()


def test_parse_round_trip_for_aff2():
    g = parse_lie_algebra("name: a\ndim: 2\n1 2 2 1")
    assert g.bracket(0, 1) == {1: 1}
    with pytest.raises(ValueError):
        parse_lie_algebra("dim: 2\n1 2 2 1")
