import pytest

from eqthom.gdgm import basic_cohomology
from eqthom.lie import invariant_polynomials, lie_algebra
from eqthom.weil import build_weil, cartan_bianchi, curvature_generators, koszul_homotopy, \
    weil_product


def test_generator_layout_interleaves_theta_and_dtheta():
    w = build_weil(lie_algebra("so3"))
    assert tuple(w.gens.names[:4]) == ("th1", "dth1", "th2", "dth2")
    assert tuple(w.gens.degrees) == (1, 2) * 3


@pytest.mark.parametrize("name", ["R", "R2", "aff2", "so3", "so4"])
def test_cartan_bianchi(name):
    rep = cartan_bianchi(build_weil(lie_algebra(name)))
    assert rep.passed, rep.failures()[:1]


def test_curvature_is_horizontal():
    w = build_weil(lie_algebra("so3"))
    for k in range(3):
        mu = w.curvature(k)
        assert all(i.apply(mu).is_zero() for i in w.structure.iotas)


def test_curvature_change_round_trip():
    w = build_weil(lie_algebra("aff2"))
    ch = curvature_generators(w)
    for i in range(w.gens.n):
        x = w.gens.gen(i)
        assert ch.from_mu.apply(ch.to_mu.apply(x)) == x


@pytest.mark.parametrize("name", ["R", "so3"])
def test_koszul_contraction(name):
    rep = koszul_homotopy(build_weil(lie_algebra(name))).verify(5)
    assert rep.passed, rep.failures()[:1]


def test_koszul_contraction_is_not_equivariant():
    k = koszul_homotopy(build_weil(lie_algebra("R")))
    from eqthom.gdgm import verify_homotopy
    rep = verify_homotopy(k.homotopy, k.projection, k.identity, 3, equivariant=True)
    assert not rep.passed


@pytest.mark.parametrize("name", ["R", "R2", "so3"])
def test_basic_weil_cohomology_is_invariant_polynomials(name):
    g = lie_algebra(name)
    h = basic_cohomology(build_weil(g).structure, (0, 6))
    for k, v in h.items():
        assert v == (len(invariant_polynomials(g, k // 2)) if k % 2 == 0 else 0)


def test_weil_of_product():
    rep = weil_product(lie_algebra("so2"), lie_algebra("R")).check(4)
    assert rep.passed, rep.failures()[:1]
