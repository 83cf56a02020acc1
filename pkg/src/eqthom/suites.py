"""Named verification suites; each returns a :class:`Report`."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .connections import (EquivariantCharacteristic, GradedLine, characteristic_hom,
                          equivariant_ccw, principal_homotopy, universal_connection)
from .forms import (AnalyticForm, ModelSpace, bundle_space, direct_sum_space,
                    homotopy_formula_check, projection_formula_check, random_form,
                    rotation_map, scaling_map, stokes_check, torus_translation)
from .foliation import (basic_complex, equivariant_basic_thom_check, gysin_exactness,
                        kronecker, model_by_name, molino_counterexample,
                        representative_independence, transverse_action_structure,
                        truncation_report)
from .gdgm import (ambient_cohomology, basic_cohomology, check_axioms,
                   equivariant_cohomology)
from .lie import invariant_polynomials, lie_algebra
from .linalg import ComplexSlice, ScalarMatrix
from .report import Report
from .thom import (EquivariantThom, MappingCone, NumericKappa, Transgression,
                   action_pfaffian, check_thom_map, euler_form, gaussian_thom_form,
                   homotopy_residual, kappa, mq_thom_form, numeric_homotopy_residual,
                   thom_forms_cohomologous)
from .weil import build_weil, cartan_bianchi, koszul_homotopy, weil_product

SUITES = ("axioms", "weil", "connections", "principal", "equivariant-ccw", "fibint", "thom",
          "transgression", "models", "gysin", "all")

AXIOM_CATALOG = ("R", "R2", "aff2", "so3", "so4")


@dataclass
class Config:
    lie: str = None
    model: str = None
    max_degree: int = None
    truncation: int = None
    tolerance: float = 1e-6
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None and k != "extra"}


class UsageError(ValueError):
    """Unknown suite or malformed configuration."""


def _lie(name):
    try:
        return lie_algebra(name)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"unknown Lie algebra {name!r}") from exc


# -- algebraic suites ------------------------------------------------------------------------


def suite_axioms(cfg: Config) -> Report:
    rep = Report("axioms")
    names = [cfg.lie] if cfg.lie else AXIOM_CATALOG
    deg = cfg.max_degree if cfg.max_degree is not None else 8
    for n in names:
        rep.extend(check_axioms(build_weil(_lie(n)).structure, deg), prefix=f"{n}/")
    return rep


def suite_weil(cfg: Config) -> Report:
    g = _lie(cfg.lie or "so3")
    deg = cfg.max_degree if cfg.max_degree is not None else 8
    w = build_weil(g)
    rep = Report("weil")
    for n in ([cfg.lie] if cfg.lie else AXIOM_CATALOG):
        rep.extend(cartan_bianchi(build_weil(_lie(n))), prefix=f"{n}/")
    rep.extend(koszul_homotopy(w).verify(min(deg, 7)), prefix=f"{g.name}/koszul/")
    ambient = ambient_cohomology(w.structure, (0, min(deg, 7)))
    for k, v in ambient.items():
        rep.add(f"{g.name}/H{k}(W)", "W(g) is acyclic", v == (1 if k == 0 else 0), witness=v)
    basic = basic_cohomology(w.structure, (0, deg))
    rep.data["H_bas"] = basic
    for k, v in basic.items():
        want = len(invariant_polynomials(g, k // 2)) if k % 2 == 0 else 0
        rep.add(f"{g.name}/H_bas{k}", "H_bas(Wg) = S(g*)^g", v == want, witness={"got": v,
                                                                                  "want": want})
    rep.extend(weil_product(_lie("so2"), _lie("R")).check(min(deg, 4)), prefix="so2xR/")
    return rep


def suite_connections(cfg: Config) -> Report:
    g = _lie(cfg.lie or "so3")
    w = build_weil(g)
    rep = Report("connections")
    rep.extend(GradedLine(w.structure).check_calculus(5), prefix="line/")
    rep.extend(characteristic_hom(universal_connection(w)).check(), prefix="c_theta/")
    return rep


def suite_principal(cfg: Config) -> Report:
    g = _lie(cfg.lie or "so2")
    deg = cfg.max_degree if cfg.max_degree is not None else 6
    w = build_weil(g)
    ccw = principal_homotopy(universal_connection(w))
    rep = Report("principal", parameters={"lie": g.name, "max_degree": deg})
    rep.extend(ccw.verify(deg))
    rep.extend(ccw.check_basic_image(min(deg, 4)))
    return rep


def _so2xr_model():
    M = build_weil(_lie("so2xR")).structure
    return M, [M.gens.gen(0)]


def suite_equivariant_ccw(cfg: Config) -> Report:
    deg = cfg.max_degree if cfg.max_degree is not None else 6
    M, theta = _so2xr_model()
    e = equivariant_ccw(M, theta)
    rep = Report("equivariant-ccw", parameters={"h": "so2xR", "max_degree": deg})
    rep.extend(e.ext.check())
    rep.extend(e.verify(deg))
    comp = e.cohomology_comparison(deg)
    rep.extend(comp)
    rep.data.update(comp.data)
    rep.extend(EquivariantCharacteristic(e.ext).check(action_pfaffian(2)), prefix="Pf/")
    return rep


# -- analytic suites -------------------------------------------------------------------------


def suite_fibint(cfg: Config) -> Report:
    """Projection formula, Stokes and the homotopy formula on random samples."""
    rng = random.Random(cfg.seed)
    cases = int(cfg.extra.get("cases", 50))
    rep = Report("fibint", parameters={"seed": cfg.seed, "cases": cases})
    for i in range(cases):
        r, n = rng.choice([1, 2]), rng.choice([0, 1])
        E = ModelSpace([f"x{j + 1}" for j in range(n)], [f"y{j + 1}" for j in range(r)])
        B = E.without(E.fiber)
        beta = random_form(E, rng, rng.randint(r, E.dim), terms=2)
        alpha = random_form(B, rng, rng.randint(0, B.dim), terms=2, gaussian=False)
        rep.extend(projection_formula_check(beta, alpha, list(E.fiber)), prefix=f"case{i:03d}/")
        rep.extend(stokes_check(beta, list(E.fiber), "stokes-fibre"), prefix=f"case{i:03d}/")
        C = ModelSpace(E.torus, E.fiber, ["t"])
        gamma = random_form(C, rng, rng.randint(1, C.dim), terms=2)
        rep.extend(stokes_check(gamma, ["t"], "stokes-interval"), prefix=f"case{i:03d}/")
        kind = i % 3
        if kind == 0:
            Eb = bundle_space(r)
            form = random_form(direct_sum_space(Eb), rng, rng.randint(0, 2 * r), terms=2,
                               max_power=1)
            h = rotation_map(Eb)
        elif kind == 1:
            X = ModelSpace(["x1", "x2"])
            form = random_form(X, rng, rng.randint(0, 2), terms=2)
            h = torus_translation(X, {"x1": Fraction(1, 2), "x2": Fraction(1, 4)})
        else:
            E1 = ModelSpace(["x1"], ["y1", "y2"])
            form = random_form(E1, rng, rng.randint(0, 3), terms=2, gaussian=False)
            h = scaling_map(E1)
        rep.extend(homotopy_formula_check(h, form, label=f"homotopy-{h.name}"),
                   prefix=f"case{i:03d}/")
    return rep


def kappa_battery(r: int) -> list:
    """Fixed Gaussian test forms on ``R^r`` in every degree."""
    E = bundle_space(r)
    G = AnalyticForm.gaussian(E)
    y = [AnalyticForm.coordinate(E, c) for c in E.fiber]
    dy = [AnalyticForm.dx(E, c) for c in E.fiber]
    if r == 1:
        return [G, (y[0] * G) ^ dy[0], ((y[0] * y[0] + AnalyticForm.constant(E, 2)) * G) ^ dy[0],
                y[0] * y[0] * G]
    return [y[0] * y[1] * G,
            (y[0] * G) ^ dy[1],
            ((y[0] * y[0] - y[1]) * G) ^ dy[0],
            G ^ dy[0] ^ dy[1],
            (y[0] * y[1] * G) ^ dy[0] ^ dy[1]]


def sample_points(r: int, count: int, seed: int, avoid_origin=False) -> list:
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        p = [rng.uniform(-1.5, 1.5) for _ in range(r)]
        if avoid_origin and sum(x * x for x in p) < 0.09:
            continue
        pts.append(p)
    return pts


def suite_thom(cfg: Config) -> Report:
    tol = cfg.tolerance
    rep = Report("thom", parameters={"tolerance": tol, "seed": cfg.seed})
    ranks = [1, 2] if cfg.max_degree is None else list(range(1, cfg.max_degree + 1))
    for r in ranks:
        t = mq_thom_form(r)
        rep.extend(t.report, prefix=f"r{r}/mq/")
        plain = t.plain()
        rep.extend(thom_forms_cohomologous(plain, gaussian_thom_form(plain.space)),
                   prefix=f"r{r}/")
        e = euler_form(plain)
        rep.add(f"r{r}/euler-flat", "zeta^* tau = Pf(0) for the flat connection", e.is_zero(),
                witness=repr(e))
    # Thom map on a T^1-base trivial bundle
    E = ModelSpace(["x1"], ["y1"])
    tau = gaussian_thom_form(E)
    B = E.without(E.fiber)
    alphas = [AnalyticForm.fourier(B, (1,), "c"), AnalyticForm.dx(B, "x1"),
              AnalyticForm.fourier(B, (2,), "s") ^ AnalyticForm.dx(B, "x1")]
    rep.extend(check_thom_map(tau, alphas))
    # rotation homotopy operator, exact and numeric
    for r in (1, 2):
        nk = NumericKappa(r)
        pts = sample_points(r, 20, cfg.seed + r)
        zero = AnalyticForm(bundle_space(r))
        rep.add(f"r{r}/kappa(0)", "kappa(0) = 0", kappa(zero).is_zero())
        for i, beta in enumerate(kappa_battery(r)):
            res = homotopy_residual(beta)
            rep.add(f"r{r}/kappa-exact/{i}", "zeta_* pi_* - id = d kappa + kappa d",
                    res.is_zero(), witness=None if res.is_zero() else repr(res))
            weights = {w for (atom, _) in kappa(beta).terms for w in atom[2]}
            rep.add(f"r{r}/kappa-decay/{i}", "kappa keeps Gaussian decay", weights <= {1})
            worst = numeric_homotopy_residual(beta, pts, nk)
            rep.add(f"r{r}/kappa-numeric/{i}", "zeta_* pi_* - id = d kappa + kappa d",
                    worst < tol, mode="numeric", residual=worst)
    # universal equivariant forms
    t2 = mq_thom_form(2)
    et = EquivariantThom(t2, universal_connection(t2.weil))
    rep.add("universal/reduces", "tau for the universal connection is tau_0",
            et.element == t2.element)
    rep.extend(et.check(), prefix="universal/")
    rep.extend(et.check_euler(), prefix="universal/")
    M, theta = _so2xr_model()
    from .connections import EquivariantExtension
    ext = EquivariantExtension(M, theta)
    et = EquivariantThom(t2, ext.connection)
    rep.extend(et.check(), prefix="so2xR/")
    rep.extend(et.check_euler(), prefix="so2xR/")
    t1 = mq_thom_form(1)
    rep.add("r1/euler-odd", "eta = 0 for odd rank", t1.fibre_algebra.origin(t1.element).is_zero())
    return rep


def transgression_battery(r: int) -> list:
    """Closed Gaussian forms on ``R^r``."""
    E = bundle_space(r)
    tau = gaussian_thom_form(E)
    y = [AnalyticForm.coordinate(E, c) for c in E.fiber]
    G = AnalyticForm.gaussian(E)
    out = [tau, (y[0] * y[0] * G).d()]
    if r == 2:
        out.append(((y[0] * G) ^ AnalyticForm.dx(E, "y2")).d())
    return out


def suite_transgression(cfg: Config) -> Report:
    tol = cfg.tolerance
    rep = Report("transgression", parameters={"tolerance": tol, "seed": cfg.seed})
    for r in (1, 2):
        tr = Transgression(r)
        E = bundle_space(r)
        pts = sample_points(r, 10, cfg.seed + 10 * r, avoid_origin=True)
        for i, beta in enumerate(transgression_battery(r)):
            rep.add(f"r{r}/closed/{i}", "beta = d phi(beta) + phi(d beta)",
                    (w := tr.residual(beta, pts)) < tol, mode="numeric", residual=w)
        G = AnalyticForm.gaussian(E)
        y = AnalyticForm.coordinate(E, "y1")
        gammas = [y * G, (y * y * G) ^ AnalyticForm.dx(E, E.fiber[-1])] if r == 2 else [y * G]
        for i, g in enumerate(gammas):
            w = tr.residual(g.d(), pts[:4], gamma=g)
            rep.add(f"r{r}/exact/{i}", "phi(d gamma) = gamma - d phi(gamma)", w < tol,
                    mode="numeric", residual=w)
        rep.add(f"r{r}/phi(0)", "phi(0) = 0", tr(AnalyticForm(E), pts[0]) == {})
    # an algebraic mapping cone: the identity of a two-term complex is a quasi-isomorphism
    c = ComplexSlice((0, 1), {0: ["a"], 1: ["b"]}, {0: ScalarMatrix(1, 1, {(0, 0): 2})},
                     closed_below=True, closed_above=True)
    ident = {k: ScalarMatrix(1, 1, {(0, 0): 1}) for k in (0, 1)}
    cone = MappingCone(c, c, ident)
    rep.add("cone/square-zero", "d^2 = 0 on the mapping cone", cone.check_square_zero())
    return rep


# -- foliation suites ------------------------------------------------------------------------


EXPECTED = {"kronecker": ("cohomology", {0: 1, 1: 1, 2: 0}),
            "molino": ("dims", {0: 1, 1: 0})}


def suite_models(cfg: Config) -> Report:
    names = [cfg.model] if cfg.model else ["kronecker", "molino"]
    grid = (cfg.truncation,) if cfg.truncation else (8, 12, 16)
    rep = Report("models", parameters={"truncations": list(grid)})
    for name in names:
        try:
            model = model_by_name(name)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        tr = truncation_report(model, grid, EXPECTED.get(name))
        rep.extend(tr)
        for e in tr.entries:
            if e.label.endswith("/dims"):
                rep.data[f"{name}/{e.label}"] = e.witness
        bc = basic_complex(model, min(grid))
        rep.extend(bc.check_basic(), prefix=f"{name}/")
        if model.transverse:
            S = transverse_action_structure(bc)
            rep.extend(check_axioms(S, 3), prefix=f"{name}/transverse/")
            rep.extend(representative_independence(bc, model.transverse[0], Fraction(3)),
                       prefix=f"{name}/")
            h = equivariant_cohomology(S, (0, 6))
            rep.data[f"{name}/H_g"] = h
            for r in (1, 2):
                rep.extend(equivariant_basic_thom_check(model, r), prefix=f"{name}/r{r}/")
    return rep


def suite_gysin(cfg: Config) -> Report:
    return gysin_exactness(cfg.truncation or 3)


RUNNERS = {"axioms": suite_axioms, "weil": suite_weil, "connections": suite_connections,
           "principal": suite_principal, "equivariant-ccw": suite_equivariant_ccw,
           "fibint": suite_fibint, "thom": suite_thom, "transgression": suite_transgression,
           "models": suite_models, "gysin": suite_gysin}


def run_suite(name: str, cfg: Config = None) -> Report:
    cfg = cfg or Config()
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    if name == "all":
        rep = Report("all")
        for n, fn in RUNNERS.items():
            sub = fn(cfg)
            rep.extend(sub, prefix=f"{n}/")
            rep.data.update({f"{n}/{k}": v for k, v in sub.data.items()})
    else:
        rep = RUNNERS[name](cfg)
    rep.parameters = {**cfg.as_dict(), **rep.parameters}
    rep.wall_time = round(time.perf_counter() - start, 3)
    return rep


__all__ = ["Config", "SUITES", "UsageError", "run_suite", "kronecker", "molino_counterexample"]
