import pytest

from eqthom.gca import GeneratorSet
from eqthom.gdgm import (FiniteCarrier, GHomotopy, GMorphism, TableOperator,
                         ambient_cohomology, basic_cohomology, check_axioms,
                         check_basic_restriction, equivariant_cohomology, identity_morphism,
                         restrict_basics, subspace, trivial_structure, verify_homotopy,
                         verify_morphism, weil_complex)
from eqthom.lie import lie_algebra
from eqthom.weil import build_weil


def test_trivial_structure_satisfies_axioms():
    gens = GeneratorSet([("u", 1), ("v", 2)])
    s = trivial_structure(lie_algebra("so3"), gens)
    assert check_axioms(s, 6).passed
    # everything is basic and d = 0
    assert basic_cohomology(s, (0, 4)) == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}


@pytest.mark.parametrize("name", ["R", "aff2", "so3"])
def test_weil_algebras_satisfy_axioms(name):
    rep = check_axioms(build_weil(lie_algebra(name)).structure, 6)
    assert rep.passed, rep.failures()[:1]


def test_wrong_coadjoint_sign_is_caught():
    rep = check_axioms(build_weil(lie_algebra("so3"), coadjoint_sign=-1).structure, 4)
    assert not rep.passed
    assert all(e.witness is not None for e in rep.failures())


def test_so3_subspaces():
    s = build_weil(lie_algebra("so3")).structure
    assert len(subspace(s, "horizontal", 2)) == 3
    assert len(subspace(s, "basic", 2)) == 0
    assert len(subspace(s, "basic", 4)) == 1


def test_weil_so3_cohomology():
    s = build_weil(lie_algebra("so3")).structure
    assert ambient_cohomology(s, (0, 5)) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}
    assert basic_cohomology(s, (0, 8)) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 1, 5: 0, 6: 0,
                                           7: 0, 8: 1}


def test_equivariant_cohomology_of_a_point():
    point = trivial_structure(lie_algebra("so3"), FiniteCarrier({0: ["pt"]}))
    W = weil_complex(point)
    assert check_axioms(W, 5).passed
    assert equivariant_cohomology(point, (0, 8)) == basic_cohomology(
        build_weil(lie_algebra("so3")).structure, (0, 8))


def test_restriction_to_basics_of_a_product():
    s = build_weil(lie_algebra("so2xR")).structure
    r = restrict_basics(s)
    assert r.lie.dim == 1
    assert check_axioms(r, 4).passed
    assert check_basic_restriction(s, 5).passed
    with pytest.raises(ValueError):
        restrict_basics(build_weil(lie_algebra("so3")).structure)


def test_identity_is_a_morphism_and_zero_homotopy():
    s = build_weil(lie_algebra("aff2")).structure
    ident = identity_morphism(s)
    assert verify_morphism(ident, 4).passed
    zero = GHomotopy(s, s, lambda m: {})
    assert verify_homotopy(zero, ident, ident, 4).passed


def test_bad_homotopy_reports_witness():
    s = build_weil(lie_algebra("R")).structure
    ident = identity_morphism(s)
    zero_map = GMorphism(s, s, lambda m: {})
    rep = verify_homotopy(GHomotopy(s, s, lambda m: {}), zero_map, ident, 3)
    (bad,) = rep.failures()
    assert bad.witness["degree"] == 0


def test_finite_carrier_with_operator():
    # C: a (deg 0) -> b (deg 1), d a = b; trivial action
    car = FiniteCarrier({0: ["a"], 1: ["b"]})
    d = TableOperator(1, lambda k: {"b": 1} if k == "a" else {})
    s = trivial_structure(lie_algebra("R"), car, d)
    assert check_axioms(s, 2).passed
    assert basic_cohomology(s, (0, 1)) == {0: 0, 1: 0}
