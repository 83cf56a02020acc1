import json
from fractions import Fraction

import pytest

from eqthom.foliation import (basic_complex, equivariant_basic_thom_check, fourier_modes,
                              gysin_exactness, kronecker, load_model, model_by_name,
                              molino_counterexample, point_foliation,
                              representative_independence, transverse_action_structure,
                              truncated_basis, truncation_report, vertical_cohomology)
from eqthom.forms import AnalyticForm, ModelSpace, VectorField
from eqthom.gdgm import check_axioms, equivariant_cohomology


def test_fourier_mode_count():
    assert len(fourier_modes(2, 3)) == 7 ** 2
    X = ModelSpace(["x1", "x2"])
    assert len(truncated_basis(X, 1, 1)) == 2 * len(truncated_basis(X, 1, 0))


@pytest.mark.parametrize("N", [8, 12, 16])
def test_kronecker_basic_cohomology(N):
    bc = basic_complex(kronecker(), N)
    assert bc.cohomology() == {0: 1, 1: 1, 2: 0}
    assert bc.check_basic().passed


@pytest.mark.parametrize("N", [8, 12, 16])
def test_molino_basic_functions_are_constant(N):
    bc = basic_complex(molino_counterexample(), N)
    dims = bc.dims()
    assert dims[0] == 1 and dims[1] == 0


def test_truncation_grid_is_stable():
    rep = truncation_report(kronecker(), (8, 12), ("cohomology", {0: 1, 1: 1, 2: 0}))
    assert rep.passed


def test_rational_slope_is_rejected():
    with pytest.raises(ValueError, match="rational"):
        kronecker(Fraction(1, 2))
    with pytest.raises(ValueError):
        kronecker("3/7")


def test_vanishing_field_is_rejected():
    X = ModelSpace(["x1", "x2"])
    f = AnalyticForm.fourier(X, (1, 0), "s")
    with pytest.raises(ValueError, match="vanishes"):
        from eqthom.foliation import FoliatedModel
        FoliatedModel("bad", X, VectorField(X, {"x1": f}))


def test_molino_has_no_zero():
    assert molino_counterexample().minimum_speed() > 0.9


def test_point_foliation_sees_the_torus():
    bc = basic_complex(point_foliation(2), 2)
    assert bc.dims() == {0: 25, 1: 50, 2: 25}
    assert bc.cohomology() == {0: 1, 1: 2, 2: 1}


def test_load_model_round_trips():
    assert load_model('{"model": "kronecker", "alpha": "sqrt3"}').name == "kronecker(sqrt3)"
    m = load_model(json.dumps({"model": "field", "torus": ["x1", "x2"],
                               "field": {"x1": 1, "x2": "sqrt2"},
                               "transverse": [{"x2": 1}]}))
    assert basic_complex(m, 8).cohomology() == {0: 1, 1: 1, 2: 0}
    with pytest.raises(ValueError):
        load_model('{"model": "nope"}')
    with pytest.raises(ValueError):
        model_by_name("nope")


def test_transverse_action_is_a_g_dga():
    bc = basic_complex(kronecker(), 8)
    S = transverse_action_structure(bc)
    assert check_axioms(S, 3).passed
    h = equivariant_cohomology(S, (0, 5))
    assert h == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


def test_transverse_representative_independence():
    m = kronecker()
    bc = basic_complex(m, 8)
    assert representative_independence(bc, m.transverse[0], Fraction(3)).passed


def test_vertical_cohomology_is_concentrated_in_top_degree():
    for r in (1, 2):
        h = vertical_cohomology(r)
        assert h[r] == 1
        assert all(v == 0 for k, v in h.items() if k != r)


@pytest.mark.parametrize("r", [1, 2])
def test_thom_shift_for_kronecker(r):
    rep = equivariant_basic_thom_check(kronecker(), r)
    assert rep.passed, rep.failures()[:1]


def test_thom_shift_for_molino():
    assert equivariant_basic_thom_check(molino_counterexample(), 1).passed


@pytest.mark.parametrize("base_dim, sphere", [(0, {0: 1, 1: 1}), (1, {0: 1, 1: 2, 2: 1})])
def test_gysin_sequence(base_dim, sphere):
    rep = gysin_exactness(3, base_dim)
    assert rep.passed
    assert rep.data["H(S)"] == sphere
