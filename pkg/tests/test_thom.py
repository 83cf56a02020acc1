import math
from fractions import Fraction

import pytest

from eqthom.connections import Connection, EquivariantExtension, universal_connection
from eqthom.forms import AnalyticForm, ModelSpace, bundle_space
from eqthom.gca import AlgebraMap
from eqthom.lie import lie_algebra, pfaffian
from eqthom.linalg import ComplexSlice, ScalarMatrix
from eqthom.scalars import Scalar
from eqthom.suites import kappa_battery, sample_points, transgression_battery
from eqthom.thom import (ContractError, EquivariantThom, MappingCone, NumericKappa,
                         ThomForm, Transgression, action_pfaffian, check_thom_map,
                         cone_cochain_check, euler_form, gaussian_thom_form, homotopy_residual,
                         kappa, mq_candidates, mq_thom_form, naturality_check, span_rank,
                         thom_forms_cohomologous, vertical_complex)
from eqthom.weil import build_weil


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_mq_contracts(r):
    t = mq_thom_form(r)
    assert t.report.passed
    assert t.curvature_sign == -1


def test_closure_selects_the_curvature_sign():
    signs = {s: closed for s, _, closed in mq_candidates(2)}
    assert signs == {-1: True, 1: False}


def test_broken_normalization_raises():
    t = mq_thom_form(2)
    with pytest.raises(ContractError, match="normalized"):
        ThomForm(2, t.fibre_algebra, t.weil, t.element * 2, t.curvature_sign,
                 t.normalization * 2)


def test_rank_two_plain_part_is_gaussian():
    t = mq_thom_form(2)
    assert t.plain() == gaussian_thom_form(bundle_space(2))
    (c,) = t.plain().terms.values()
    assert c.to_float() == pytest.approx(1 / (2 * math.pi))


@pytest.mark.parametrize("r", [2, 4])
def test_origin_restriction_is_pfaffian(r):
    # checked independently of the certificate: Pf on the action matrices is Pf with negated
    # variables, so the sign is (-1)^(r/2)
    assert action_pfaffian(r) == pfaffian(r) * (-1) ** (r // 2)
    t = mq_thom_form(r)
    assert t.fibre_algebra.origin(t.element) == t.expected_origin()
    assert not t.expected_origin().is_zero()


def test_odd_rank_origin_vanishes():
    t = mq_thom_form(1)
    assert t.fibre_algebra.origin(t.element).is_zero()


def test_vertical_cohomology_window():
    V = vertical_complex(2, 2)
    assert set(V) == {0, 1, 2}
    assert span_rank(V[2]) == len(V[2])


@pytest.mark.parametrize("r", [1, 2])
def test_thom_forms_are_cohomologous(r):
    E = bundle_space(r)
    tau = gaussian_thom_form(E)
    assert thom_forms_cohomologous(tau, mq_thom_form(r).plain()).passed
    y = AnalyticForm.coordinate(E, "y1")
    # y^2 tau integrates to 1 as well
    assert thom_forms_cohomologous(tau, y * y * tau).passed
    assert not thom_forms_cohomologous(tau, tau.scale(2)).passed


def test_thom_map_over_a_circle():
    E = ModelSpace(["x1"], ["y1"])
    B = E.without(E.fiber)
    alphas = [AnalyticForm.constant(B), AnalyticForm.fourier(B, (1,), "s"),
              AnalyticForm.dx(B, "x1")]
    assert check_thom_map(gaussian_thom_form(E), alphas).passed


def test_euler_form_of_flat_bundle_is_zero():
    assert euler_form(gaussian_thom_form(bundle_space(2))).is_zero()


@pytest.mark.parametrize("r", [1, 2])
def test_kappa_exact_homotopy(r):
    for beta in kappa_battery(r):
        assert homotopy_residual(beta).is_zero()
    assert kappa(AnalyticForm(bundle_space(r))).is_zero()


@pytest.mark.parametrize("r", [1, 2])
def test_kappa_numeric_twin_agrees(r):
    nk = NumericKappa(r)
    E = bundle_space(r)
    for beta in kappa_battery(r):
        k = kappa(beta)
        for p in sample_points(r, 4, 3):
            exact = {tuple(E.index(n) for n in key): v
                     for key, v in k.evaluate(dict(zip(E.fiber, p))).items()}
            num = nk(beta, p)
            keys = set(exact) | set(num)
            assert max((abs(exact.get(q, 0) - num.get(q, 0)) for q in keys),
                       default=0) < 1e-10


def test_transgression_identities():
    for r in (1, 2):
        tr = Transgression(r)
        pts = sample_points(r, 3, 7, avoid_origin=True)
        for beta in transgression_battery(r):
            assert tr.residual(beta, pts) < 1e-6
    E = bundle_space(1)
    assert cone_cochain_check(gaussian_thom_form(E), [[0.8], [-1.1]]).passed


def test_mapping_cone_of_identity_is_acyclic():
    c = ComplexSlice((0, 1), {0: ["a"], 1: ["b"]}, {0: ScalarMatrix(1, 1, {})},
                     closed_below=True, closed_above=True)
    ident = {k: ScalarMatrix(1, 1, {(0, 0): 1}) for k in (0, 1)}
    cone = MappingCone(c, c, ident)
    assert cone.check_square_zero()
    assert all(v == 0 for v in cone.cohomology().values())


def test_universal_equivariant_thom_form():
    t2 = mq_thom_form(2)
    et = EquivariantThom(t2, universal_connection(t2.weil))
    assert et.element == t2.element
    assert et.check().passed
    assert et.check_euler().passed


def test_equivariant_thom_for_an_extended_connection():
    t2 = mq_thom_form(2)
    M = build_weil(lie_algebra("so2xR")).structure
    ext = EquivariantExtension(M, [M.gens.gen(0)])
    et = EquivariantThom(t2, ext.connection)
    assert et.check().passed
    assert et.check_euler().passed


def test_naturality_under_pullback():
    t2 = mq_thom_form(2)
    W = t2.weil
    M = build_weil(lie_algebra("so2xR")).structure
    f = AlgebraMap(W.gens, M.gens, {0: M.gens.gen(0), 1: M.gens.gen(1)})
    theta2 = Connection(M, [M.gens.gen(0)], [0])
    assert naturality_check(t2, universal_connection(W), f, theta2).passed


def test_scalar_omega_is_two_pi():
    assert Scalar.omega(Fraction(1)).to_float() == pytest.approx(2 * math.pi)
