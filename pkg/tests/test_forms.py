import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eqthom.forms import (AnalyticForm, IntegrationError, ModelSpace, NotInExactClass,
                          VectorField, bundle_space, direct_sum_space, fibre_integrate,
                          homotopy_formula_check, indexed, iota, lie, lie_direct,
                          numeric_exterior_derivative, numeric_integral, numeric_pullback,
                          p1_map, p2_map, projection_formula_check, quarter_turn_map,
                          random_form, related_vector_field_check, rotation_map, scaling_map,
                          stokes_check, sup_distance, torus_translation, zero_section)

seeds = st.integers(0, 10**6)
E = ModelSpace(["x1"], ["y1", "y2"])


def test_gaussian_integral_is_root_two_pi():
    R = bundle_space(1)
    v = fibre_integrate(AnalyticForm.gaussian(R) ^ AnalyticForm.dx(R, "y1"), ["y1"])
    (c,) = v.terms.values()
    assert c.to_float() == pytest.approx(math.sqrt(2 * math.pi), abs=1e-14)
    assert numeric_integral(AnalyticForm.gaussian(R) ^ AnalyticForm.dx(R, "y1"),
                            {"y1": (-np.inf, np.inf)}) == pytest.approx(math.sqrt(2 * math.pi),
                                                                        abs=1e-10)


def test_fibre_integral_of_low_degree_is_zero():
    assert fibre_integrate(AnalyticForm.gaussian(E), ["y1", "y2"]).is_zero()


def test_second_moment():
    R = bundle_space(1)
    y = AnalyticForm.coordinate(R, "y1")
    v = fibre_integrate((y * y * AnalyticForm.gaussian(R)) ^ AnalyticForm.dx(R, "y1"), ["y1"])
    assert list(v.terms.values())[0].to_float() == pytest.approx(math.sqrt(2 * math.pi))


def test_exact_derivative_examples():
    y1 = AnalyticForm.coordinate(E, "y1")
    G = AnalyticForm.gaussian(E)
    y2 = AnalyticForm.coordinate(E, "y2")
    assert G.d() == -((y1 * G) ^ AnalyticForm.dx(E, "y1")) - ((y2 * G) ^ AnalyticForm.dx(E, "y2"))
    assert AnalyticForm.dx(E, "x1", "y1") == -AnalyticForm.dx(E, "y1", "x1")
    assert (AnalyticForm.dx(E, "y1") ^ AnalyticForm.dx(E, "y1")).is_zero()


def test_torus_coordinates_are_not_functions():
    with pytest.raises(ValueError):
        AnalyticForm.coordinate(E, "x1")


def test_translation_shift_must_be_quarter_integral():
    X = ModelSpace(["x1"])
    with pytest.raises(NotInExactClass):
        torus_translation(X, {"x1": Fraction(1, 3)})


def test_numeric_integral_rejects_loose_tolerance():
    R = bundle_space(1)
    f = AnalyticForm.gaussian(R, [Fraction(1, 10**6)]) ^ AnalyticForm.dx(R, "y1")
    with pytest.raises(IntegrationError), pytest.warns(Warning):
        numeric_integral(f, {"y1": (-np.inf, np.inf)}, tolerance=1e-14, limit=3)


@given(seeds, st.integers(0, 3))
def test_d_squared_is_zero(seed, degree):
    beta = random_form(E, random.Random(seed), degree)
    assert beta.d().d().is_zero()


@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_leibniz(seed, p, q):
    rng = random.Random(seed)
    a, b = random_form(E, rng, p), random_form(E, rng, q, gaussian=False)
    assert (a ^ b).d() == (a.d() ^ b) + (a ^ b.d()).scale((-1) ** p)


@given(seeds, st.integers(2, 3), st.integers(0, 1))
def test_projection_formula(seed, p, q):
    rng = random.Random(seed)
    B = E.without(E.fiber)
    beta = random_form(E, rng, p)
    alpha = random_form(B, rng, q, gaussian=False)
    assert projection_formula_check(beta, alpha, ["y1", "y2"]).passed


@given(seeds, st.integers(1, 3))
def test_stokes_along_fibres_and_interval(seed, p):
    rng = random.Random(seed)
    assert stokes_check(random_form(E, rng, p), ["y1", "y2"]).passed
    C = ModelSpace(["x1"], ["y1"], ["t"])
    assert stokes_check(random_form(C, rng, p), ["t"]).passed


@given(seeds, st.integers(0, 4))
def test_rotation_homotopy(seed, p):
    Eb = bundle_space(2)
    form = random_form(direct_sum_space(Eb), random.Random(seed), p, max_power=1)
    assert homotopy_formula_check(rotation_map(Eb), form).passed


@given(seeds, st.integers(0, 2))
def test_torus_translation_homotopy(seed, p):
    X = ModelSpace(["x1", "x2"])
    h = torus_translation(X, {"x1": Fraction(1, 2), "x2": Fraction(3, 4)})
    assert homotopy_formula_check(h, random_form(X, random.Random(seed), p)).passed


@given(seeds, st.integers(0, 3))
def test_scaling_homotopy_on_polynomial_forms(seed, p):
    form = random_form(E, random.Random(seed), p, gaussian=False)
    assert homotopy_formula_check(scaling_map(E), form).passed


def test_quarter_turn_relates_the_projections():
    Eb = bundle_space(1)
    beta = AnalyticForm.coordinate(Eb, "y1") * AnalyticForm.gaussian(Eb)
    turned = quarter_turn_map(Eb).pullback(p1_map(Eb).pullback(beta))
    assert turned == p2_map(Eb).pullback(beta).scale(-1)


def test_zero_section_pullback():
    G = AnalyticForm.gaussian(E)
    B = E.without(E.fiber)
    assert zero_section(E).pullback(G) == AnalyticForm.constant(B)
    assert zero_section(E).pullback(G ^ AnalyticForm.dx(E, "y1")).is_zero()


@given(seeds, st.integers(0, 2))
def test_numeric_derivative_matches_exact(seed, p):
    rng = random.Random(seed)
    beta = random_form(E, rng, p)
    pt = [rng.uniform(0, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)]

    def fn(q):
        return indexed(beta.evaluate(list(q)), E)
    num = numeric_exterior_derivative(fn, pt)
    exact = indexed(beta.d().evaluate(pt), E)
    assert sup_distance(num, exact) < 1e-6


def test_numeric_pullback_matches_exact():
    Eb = bundle_space(1)
    h = rotation_map(Eb)
    T = direct_sum_space(Eb)
    beta = (AnalyticForm.coordinate(T, "a1") * AnalyticForm.gaussian(T)) ^ AnalyticForm.dx(T, "b1")

    def fn(p):
        a, b, t = p
        c, s = math.cos(math.pi * t / 2), math.sin(math.pi * t / 2)
        return [c * a - s * b, s * a + c * b]

    def jac(p):
        a, b, t = p
        c, s = math.cos(math.pi * t / 2), math.sin(math.pi * t / 2)
        k = math.pi / 2
        return [[c, -s, k * (-s * a - c * b)], [s, c, k * (c * a - s * b)]]

    pt = [0.3, -0.7, 0.4]
    exact = indexed(h.pullback(beta).evaluate(pt), h.source)
    assert sup_distance(numeric_pullback(beta, fn, jac, pt, 3), exact) < 1e-12


def test_cartan_formula_and_related_fields():
    rng = random.Random(5)
    B = E.without(E.fiber)
    w = VectorField(E, {"x1": 1, "y1": AnalyticForm.coordinate(E, "y2")})
    v = VectorField(B, {"x1": 1})
    for p in range(4):
        beta = random_form(E, rng, p)
        assert lie(w, beta) == lie_direct(w, beta)
        assert iota(w, iota(w, beta)).is_zero()
    # the fibre component integrates away against the Gaussian
    beta = random_form(E, rng, 3)
    w_hor = VectorField(E, {"x1": 1})
    assert related_vector_field_check(v, w_hor, beta, ["y1", "y2"]).passed
    with pytest.raises(ValueError):
        related_vector_field_check(VectorField(B, {"x1": 2}), w_hor, beta, ["y1", "y2"])
