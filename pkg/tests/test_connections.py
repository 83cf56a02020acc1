import pytest

from eqthom.connections import (Connection, EquivariantCharacteristic, EquivariantExtension,
                                GradedLine, characteristic_hom, connection_homotopy,
                                curvature_lift, equivariant_ccw, principal_homotopy,
                                transgression_form, universal_connection)
from eqthom.gdgm import tensor_structures, trivial_structure
from eqthom.gca import GeneratorSet
from eqthom.lie import lie_algebra
from eqthom.thom import action_pfaffian
from eqthom.weil import build_weil


def so2xr():
    M = build_weil(lie_algebra("so2xR")).structure
    return M


def test_graded_line_calculus():
    w = build_weil(lie_algebra("so3"))
    samples = [w.gens.one(), w.theta[0], w.dtheta[1] * w.theta[2]]
    assert GradedLine(w.structure).check_calculus(4, samples).passed


def test_universal_characteristic_hom_is_identity():
    w = build_weil(lie_algebra("so3"))
    c = characteristic_hom(universal_connection(w))
    assert c.check().passed
    for i in range(w.gens.n):
        assert c.apply(w.gens.gen(i)) == w.gens.gen(i)


def test_connection_axioms_are_enforced():
    w = build_weil(lie_algebra("so3"))
    with pytest.raises(ValueError):
        Connection(w.structure, [w.theta[1], w.theta[0], w.theta[2]])
    trivial = trivial_structure(lie_algebra("R"), GeneratorSet([("u", 1)]))
    with pytest.raises(ValueError):
        Connection(trivial, [trivial.gens.gen(0)])


def test_homotopy_between_connections():
    # W(so2) tensored with a closed basic 1-form u
    so2 = lie_algebra("so2")
    u = trivial_structure(so2, GeneratorSet([("u", 1)]))
    M = tensor_structures(build_weil(so2).structure, u)
    th0 = Connection(M, [M.gens.gen(0)])
    th1 = Connection(M, [M.gens.gen(0) + M.gens.gen(2)])
    rep = connection_homotopy(th0, th1).verify(4)
    assert rep.passed, rep.failures()[:1]


def test_ccw_map_and_principal_homotopy():
    w = build_weil(lie_algebra("so2"))
    ccw = principal_homotopy(universal_connection(w))
    assert ccw.verify(4).passed
    assert ccw.check_basic_image(3).passed


def test_equivariant_ccw_so2xr():
    M = so2xr()
    e = equivariant_ccw(M, [M.gens.gen(0)])
    assert e.ext.check().passed
    assert e.verify(4).passed
    comp = e.cohomology_comparison(4)
    assert comp.passed
    # invariant polynomials on a two-dimensional abelian algebra
    assert comp.data["H_h(M)"] == {0: 1, 1: 0, 2: 2, 3: 0, 4: 3}


def test_equivariant_extension_requires_invariance():
    M = so2xr()
    with pytest.raises(ValueError):
        EquivariantExtension(M, [M.gens.gen(2)])


def test_equivariant_characteristic_forms_are_closed_and_basic():
    M = so2xr()
    ext = EquivariantExtension(M, [M.gens.gen(0)])
    ec = EquivariantCharacteristic(ext)
    assert ec.check(action_pfaffian(2)).passed


def test_transgression_of_pfaffian():
    M = so2xr()
    ext0 = EquivariantExtension(M, [M.gens.gen(0)])
    ext1 = EquivariantExtension(M, [M.gens.gen(0) + M.gens.gen(2)])
    pf = action_pfaffian(2)
    T = ext0.target
    phi = transgression_form(ext0, ext1, pf)
    ec0, ec1 = EquivariantCharacteristic(ext0), EquivariantCharacteristic(ext1)
    assert T.d.apply(phi) == ec1(pf) - ec0(pf)
    assert not (ec1(pf) - ec0(pf)).is_zero()


def test_curvature_lift_checks_variable_count():
    with pytest.raises(ValueError):
        curvature_lift(lie_algebra("so3"), action_pfaffian(2))
