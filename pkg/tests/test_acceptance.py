"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import time

from eqthom.connections import GradedLine, curvature_lift, equivariant_ccw, principal_homotopy, \
    universal_connection
from eqthom.foliation import (basic_complex, equivariant_basic_thom_check, gysin_exactness,
                              kronecker, molino_counterexample)
from eqthom.gdgm import ambient_cohomology, basic_cohomology, check_axioms
from eqthom.lie import invariant_polynomials, lie_algebra, so_matrix
from eqthom.scalars import Scalar
from eqthom.suites import (AXIOM_CATALOG, Config, kappa_battery, sample_points, suite_fibint,
                           transgression_battery)
from eqthom.thom import (NumericKappa, Transgression, action_pfaffian, mq_thom_form,
                         numeric_homotopy_residual)
from eqthom.weil import build_weil, cartan_bianchi, koszul_homotopy

VERDICTS = []


def verdict(number, title, ok, detail=""):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (
        f" [{detail}]" if detail else "")
    VERDICTS.append(line)
    print(line)
    assert ok, line


def failures(rep):
    return [e.label for e in rep.failures()][:3]


def test_01_axiom_suite():
    t0 = time.perf_counter()
    bad = []
    for name in AXIOM_CATALOG:
        rep = check_axioms(build_weil(lie_algebra(name)).structure, 8)
        bad += [f"{name}/{x}" for x in failures(rep)]
    dt = time.perf_counter() - t0
    verdict(1, "g-dga axioms on W(g) up to degree 8", not bad and dt < 30,
            f"{dt:.1f}s, failures {bad}")


def test_02_cartan_bianchi():
    bad = []
    for name in AXIOM_CATALOG:
        bad += [f"{name}/{x}" for x in failures(cartan_bianchi(build_weil(lie_algebra(name))))]
    verdict(2, "Cartan-Bianchi identities in curvature variables", not bad, f"failures {bad}")


def test_03_koszul_acyclicity():
    w = build_weil(lie_algebra("so3"))
    h = ambient_cohomology(w.structure, (0, 7))
    rep = koszul_homotopy(w).verify(7)
    ok = h == {0: 1, **{k: 0 for k in range(1, 8)}} and rep.passed
    verdict(3, "W(so3) is acyclic with certified contraction", ok, f"H={h}")


def test_04_basic_weil_cohomology():
    g = lie_algebra("so3")
    h = basic_cohomology(build_weil(g).structure, (0, 8))
    dims = tuple(h[k] for k in range(9))
    inv = tuple(len(invariant_polynomials(g, k // 2)) if k % 2 == 0 else 0 for k in range(9))
    verdict(4, "H_bas(W so3) equals invariant polynomials",
            dims == (1, 0, 0, 0, 1, 0, 0, 0, 1) == inv, f"dims={dims}")


def test_05_graded_line():
    w = build_weil(lie_algebra("so3"))
    samples = [w.gens.one(), w.theta[0], w.theta[1] * w.dtheta[2]]
    rep = GradedLine(w.structure).check_calculus(5, samples)
    verdict(5, "[d,J] = ev1 - ev0 and J(s^k sd) = 1/(k+1), k <= 5", rep.passed,
            f"failures {failures(rep)}")


def test_06_principal_homotopy():
    ccw = principal_homotopy(universal_connection(build_weil(lie_algebra("so2"))))
    rep = ccw.verify(6)
    labels = {e.label.split("/")[0] for e in rep.entries}
    verdict(6, "C j = id and [d,H] = jC - id up to degree 6 on W(so2)",
            rep.passed and {"Cj=id", "H"} <= labels, f"failures {failures(rep)}")


def test_07_equivariant_ccw():
    M = build_weil(lie_algebra("so2xR")).structure
    e = equivariant_ccw(M, [M.gens.gen(0)])
    ext, ver, comp = e.ext.check(), e.verify(6), e.cohomology_comparison(6)
    ok = ext.passed and ver.passed and comp.passed
    verdict(7, "equivariant CCW for so2 x R up to degree 6", ok,
            f"H_h={comp.data['H_h(M)']}")


def test_08_fibre_integration_suite():
    rep = suite_fibint(Config(seed=0, extra={"cases": 50}))
    kinds = {}
    for e in rep.entries:
        k = e.label.split("/")[1].split("-")[0]
        kinds.setdefault(k, [0, 0])
        kinds[k][0] += 1
        kinds[k][1] += e.passed
    ok = rep.passed and all(n >= 50 for n, _ in kinds.values()) and \
        {"projection", "stokes", "homotopy"} <= set(kinds)
    verdict(8, "projection formula, Stokes and homotopy formula on 50+ samples each", ok,
            str({k: v[0] for k, v in sorted(kinds.items())}))


def test_09_mathai_quillen_contracts():
    details, ok = [], True
    for r in (1, 2):
        t = mq_thom_form(r)
        fa = t.fibre_algebra
        closed = fa.d.apply(t.element).is_zero()
        normalized = fa.integrate(t.element) == fa.base.one()
        origin = fa.origin(t.element)
        if r == 1:
            want = fa.base.zero()
        else:
            # (-2 pi)^(-1) mu(Pf), Pf taken on the action matrices
            want = curvature_lift(so_matrix(2), action_pfaffian(2), t.weil) * (
                Scalar.omega(-1) * -1)
        good = closed and normalized and origin == want and t.report.passed
        ok &= good
        details.append(f"r={r}: {'ok' if good else 'bad'}")
    verdict(9, "closure, normalization and origin restriction of the MQ form", ok,
            ", ".join(details))


def test_10_thom_homotopy_operator():
    t0 = time.perf_counter()
    worst = 0.0
    for r in (1, 2):
        nk = NumericKappa(r)
        pts = sample_points(r, 20, 1 + r)
        for beta in kappa_battery(r):
            worst = max(worst, numeric_homotopy_residual(beta, pts, nk))
    dt = time.perf_counter() - t0
    verdict(10, "kappa homotopy residual < 1e-6 at 20 points", worst < 1e-6 and dt < 120,
            f"sup residual {worst:.2e}, {dt:.1f}s")


def test_11_transgression():
    worst = 0.0
    for r in (1, 2):
        tr = Transgression(r)
        pts = sample_points(r, 10, 10 * r, avoid_origin=True)
        for beta in transgression_battery(r):
            worst = max(worst, tr.residual(beta, pts))
    verdict(11, "beta = d phi(beta) + phi(d beta) off the zero section", worst < 1e-6,
            f"sup residual {worst:.2e}")


def test_12_kronecker():
    seen = {N: basic_complex(kronecker("sqrt2"), N).cohomology() for N in (8, 12, 16)}
    ok = all(h[0] == 1 and h[1] == 1 for h in seen.values())
    verdict(12, "Kronecker flow basic cohomology at N = 8, 12, 16", ok,
            "; ".join(f"N={N}: H0={h[0]} H1={h[1]}" for N, h in seen.items()))


def test_13_molino():
    seen = {N: basic_complex(molino_counterexample(), N).dims() for N in (8, 12, 16)}
    ok = all(d[0] == 1 and d[1] == 0 for d in seen.values())
    verdict(13, "counterexample basic dims at N = 8, 12, 16", ok,
            "; ".join(f"N={N}: {d[0]}, {d[1]}" for N, d in seen.items()))


def test_14_gysin():
    rep = gysin_exactness(3, 1)
    nodes = sum(1 for e in rep.entries if e.label.startswith("exact/"))
    verdict(14, "Gysin sequence exact over T^1", rep.passed and nodes > 0,
            f"{nodes} nodes, H(S)={rep.data['H(S)']}")


def test_15_equivariant_basic_thom():
    bad, ok = [], True
    for r in (1, 2):
        rep = equivariant_basic_thom_check(kronecker(), r)
        labels = {e.label for e in rep.entries}
        ok &= rep.passed and {"basic-shift", "equivariant-shift"} <= labels
        bad += [f"r={r}/{x}" for x in failures(rep)]
    verdict(15, "pi_* zeta_* = id and shift by r in {1, 2} on the Kronecker base", ok,
            f"failures {bad}")
