"""Thom forms, the rotation homotopy operator, transgression and Euler forms.

The Mathai-Quillen representative lives in the free algebra
``W(so(r)) (x) F(R^r)`` where ``F`` is generated by the coordinates ``y``,
their differentials ``dy`` and a formal Gaussian ``G`` with
``dG = -G sum y dy``.  Under ``G -> exp(-|y|^2/2)`` its elements become
analytic forms on ``R^r`` with coefficients in ``W(so(r))``.

``so(r)`` acts on points by ``A_xi = -E_xi`` (the convention for which
``xi -> L(xi)`` is a homomorphism), and the Pfaffian on ``so(r)`` is
taken of that action matrix.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from scipy import integrate

from .connections import CharacteristicHom, Connection, curvature_lift
from .forms import (AnalyticForm, ModelSpace, bundle_space,
                    embed, fibre_integrate,
                    numeric_exterior_derivative, p1_map, p2_map, rotation_map, zero_section,
                    _move_front_sign, unit_atom)
from .gca import AlgebraMap, Derivation, Element, GeneratorSet, derivation_commutator
from .lie import LieAlgebra, pfaffian, pfaffian_generators, so_matrix, so_pairs
from .linalg import ComplexSlice, ScalarMatrix, cohomology_dims, rank_of_rows
from .report import Report
from .scalars import Scalar
from .weil import build_weil


class ContractError(ValueError):
    """A Thom form failed one of its defining properties."""


# -- the fibre algebra W(so(r)) (x) F(R^r) -------------------------------------------


def action_matrices(r: int) -> list:
    """``A_xi = -E_xi`` for the basis ``E_ab`` of ``so(r)``."""
    out = []
    for a, b in so_pairs(r):
        m = [[Fraction(0)] * r for _ in range(r)]
        m[a][b], m[b][a] = Fraction(-1), Fraction(1)
        out.append(m)
    return out


def action_pfaffian(r: int) -> Element:
    """The Pfaffian of ``sum x^xi A_xi`` as a polynomial on ``so(r)``."""
    gens = pfaffian_generators(r)
    flip = AlgebraMap(gens, gens, {i: -gens.gen(i) for i in range(gens.n)})
    return flip.apply(pfaffian(r, gens))


def fibre_generators(r: int, prefix=""):
    return ([(f"{prefix}y{a + 1}", 0) for a in range(r)]
            + [(f"{prefix}dy{a + 1}", 1) for a in range(r)] + [(f"{prefix}G", 0)])


class FibreAlgebra:
    """``A (x) F(R^r)`` for an algebra ``A`` carrying ``d, iota, L`` of some ``h``.

    ``acting`` maps the positions of ``so(r)`` (the basis of ``action_matrices``)
    to indices of ``h``; other indices of ``h`` act trivially on ``R^r``.
    """

    def __init__(self, r: int, base_gens: GeneratorSet, d, iotas, lies, acting: dict,
                 lie: LieAlgebra = None):
        self.r = r
        self.base = base_gens
        self.lie = lie
        self.gens = GeneratorSet([(n, dg) for n, dg in zip(base_gens.names, base_gens.degrees)]
                                 + fibre_generators(r))
        nb = base_gens.n
        self.offset = nb
        S = self.gens
        self.y = [S.gen(nb + a) for a in range(r)]
        self.dy = [S.gen(nb + r + a) for a in range(r)]
        self.G = S.gen(nb + 2 * r)
        mats = action_matrices(r)

        def lift(D):
            return {i: self.lift(img) for i, img in D.images.items()}

        images = lift(d)
        for a in range(r):
            images[nb + a] = self.dy[a]
        images[nb + 2 * r] = -self.G * sum((self.y[a] * self.dy[a] for a in range(r)), S.zero())
        self.d = Derivation(S, 1, images, name="d")
        self.iotas, self.lies = [], []
        by_h = {ih: mats[p] for p, ih in acting.items()}
        for ih in range(len(iotas)):
            im_i, im_l = lift(iotas[ih]), lift(lies[ih])
            A = by_h.get(ih)
            if A is not None:
                for a in range(r):
                    v = sum((self.y[b] * A[a][b] for b in range(r) if A[a][b]), S.zero())
                    dv = sum((self.dy[b] * A[a][b] for b in range(r) if A[a][b]), S.zero())
                    im_i[nb + r + a] = v
                    im_l[nb + a] = v
                    im_l[nb + r + a] = dv
            self.iotas.append(Derivation(S, -1, im_i, name=f"iota(e{ih + 1})"))
            self.lies.append(Derivation(S, 0, im_l, name=f"L(e{ih + 1})"))
        self.space = bundle_space(r)

    def lift(self, e: Element) -> Element:
        pad = (0,) * (2 * self.r + 1)
        return Element(self.gens, {m + pad: c for m, c in e.terms.items()})

    def relations(self) -> Report:
        """The six commutation relations on generators (enough for derivations)."""
        rep = Report("fibre-algebra-relations")
        S, lie = self.gens, self.lie
        n = len(self.iotas)

        def same(D, E_images, label, anchor):
            for i in range(S.n):
                got = D.generator_image(i)
                want = E_images(i)
                ok = got == want
                rep.add(f"{label}/{S.names[i]}", anchor, ok,
                        witness=None if ok else repr(got - want))

        zero = lambda i: S.zero()  # noqa: E731
        same(derivation_commutator(self.d, self.d), zero, "d-d", "[d, d] = 0")
        for a in range(n):
            same(derivation_commutator(self.iotas[a], self.d), self.lies[a].generator_image,
                 f"iota-d/e{a + 1}", "[iota(xi), d] = L(xi)")
            same(derivation_commutator(self.lies[a], self.d), zero, f"lie-d/e{a + 1}",
                 "[L(xi), d] = 0")
            for b in range(n):
                br = lie.bracket(a, b) if lie is not None else {}

                def combo(ops, br=br):
                    return lambda i: sum((ops[k].generator_image(i) * c for k, c in br.items()),
                                         S.zero())
                same(derivation_commutator(self.iotas[a], self.iotas[b]), zero,
                     f"iota-iota/e{a + 1},e{b + 1}", "[iota(xi), iota(eta)] = 0")
                same(derivation_commutator(self.lies[a], self.lies[b]), combo(self.lies),
                     f"lie-lie/e{a + 1},e{b + 1}", "[L(xi), L(eta)] = L([xi, eta])")
                same(derivation_commutator(self.lies[a], self.iotas[b]), combo(self.iotas),
                     f"lie-iota/e{a + 1},e{b + 1}", "[L(xi), iota(eta)] = iota([xi, eta])")
        return rep

    # passage to analytic forms
    def split(self, e: Element) -> dict:
        """``{base monomial: AnalyticForm on R^r}`` under ``G -> exp(-|y|^2/2)``."""
        nb, r = self.offset, self.r
        space = self.space
        unit = unit_atom(space)
        out: dict = {}
        for m, c in e.terms.items():
            w, ys, dys, g = m[:nb], m[nb:nb + r], m[nb + r:nb + 2 * r], m[nb + 2 * r]
            atom = (unit[0], tuple(ys), tuple(Fraction(g) for _ in range(r)), unit[3])
            mono = tuple(a for a in range(r) if dys[a])
            f = AnalyticForm(space, {(atom, mono): c})
            out[w] = out[w] + f if w in out else f
        return out

    def integrate(self, e: Element) -> Element:
        """Fibre integral over ``R^r`` with the Koszul sign of passing the base factor."""
        acc: dict = {}
        for w, f in self.split(e).items():
            val = fibre_integrate(f, list(self.space.fiber))
            for (atom, mono), c in val.terms.items():
                sign = -1 if (self.base.mono_degree(w) * self.r) % 2 else 1
                acc[w] = acc.get(w, 0) + c * sign
        return Element(self.base, acc)

    def origin(self, e: Element) -> Element:
        """Restriction to the origin: ``y, dy -> 0`` and ``G -> 1``."""
        nb, r = self.offset, self.r
        acc: dict = {}
        for m, c in e.terms.items():
            if any(m[nb:nb + 2 * r]):
                continue
            acc[m[:nb]] = acc.get(m[:nb], 0) + c
        return Element(self.base, acc)


def universal_fibre_algebra(r: int) -> tuple:
    """``W(so(r)) (x) F(R^r)`` with ``so(r)`` acting on both factors."""
    k = so_matrix(r)
    w = build_weil(k)
    s = w.structure
    fa = FibreAlgebra(r, w.gens, s.d, s.iotas, s.lies, {p: p for p in range(k.dim)}, lie=k)
    return fa, w


# -- the Mathai-Quillen form ------------------------------------------------------------


def _berezin_representative(r: int, curvature_sign: int):
    """``Ber exp(sum nabla y_a chi_a + s/2 sum mu_ab chi_a chi_b)`` times ``G``.

    ``nabla y = dy + Theta y`` with ``Theta`` the connection matrix in the
    action convention; ``chi`` are odd variables of degree -1 placed last,
    and the Berezin integral keeps the coefficient of ``chi_1 ... chi_r``.
    """
    fa, w = universal_fibre_algebra(r)
    k = w.lie
    S = fa.gens
    T = GeneratorSet([(n, dg) for n, dg in zip(S.names, S.degrees)]
                     + [(f"chi{a + 1}", -1) for a in range(r)])
    emb = AlgebraMap(S, T, {i: T.gen(i) for i in range(S.n)})
    chi = [T.gen(S.n + a) for a in range(r)]
    # Theta and mu in the standard basis E_ab, which is minus the action matrix
    mats = [[[-x for x in row] for row in m] for m in action_matrices(r)]
    y = [emb.apply(v) for v in fa.y]
    dy = [emb.apply(v) for v in fa.dy]
    th = [emb.apply(fa.lift(t)) for t in w.theta]
    mu = [emb.apply(fa.lift(w.curvature(j))) for j in range(k.dim)]

    def matrix(vec):
        return [[sum((vec[j] * mats[j][a][b] for j in range(k.dim) if mats[j][a][b]), T.zero())
                 for b in range(r)] for a in range(r)]

    TH, MU = matrix(th), matrix(mu)
    X = T.zero()
    for a in range(r):
        nab = dy[a] + sum((TH[a][b] * y[b] for b in range(r)), T.zero())
        X = X + nab * chi[a]
    for a in range(r):
        for b in range(r):
            if MU[a][b]:
                X = X + MU[a][b] * chi[a] * chi[b] * Fraction(curvature_sign, 2)
    expo, power = T.one(), T.one()
    for j in range(1, r + 1):
        power = power * X * Fraction(1, j)
        expo = expo + power
    top = (1,) * r
    body = Element(S, {m[:S.n]: c for m, c in expo.terms.items() if m[S.n:] == top})
    return fa, w, body * fa.G


class ThomForm:
    """A certified equivariant Thom form ``tau_0`` on ``R^r``.

    ``element`` lives in ``W(so(r)) (x) F(R^r)``.  Construction checks
    closure, basicness, normalization and the origin restriction, and
    raises :class:`ContractError` otherwise.
    """

    def __init__(self, r, fibre_algebra, weil, element, curvature_sign, normalization):
        self.r = r
        self.fibre_algebra = fibre_algebra
        self.weil = weil
        self.element = element
        self.curvature_sign = curvature_sign
        self.normalization = normalization
        self.report = self.certify()
        if not self.report.passed:
            bad = self.report.failures()[0]
            raise ContractError(f"Thom form contract {bad.label} failed: {bad.witness}")

    def contract_checks(self) -> Report:
        fa, tau, r = self.fibre_algebra, self.element, self.r
        rep = Report("thom-contracts", parameters={"r": r})
        dt = fa.d.apply(tau)
        rep.add("closed", "d_k tau_0 = 0", dt.is_zero(), witness=None if dt.is_zero() else repr(dt))
        for a, (I, L) in enumerate(zip(fa.iotas, fa.lies)):
            x = I.apply(tau)
            rep.add(f"horizontal/e{a + 1}", "iota(xi) tau_0 = 0", x.is_zero(),
                    witness=None if x.is_zero() else repr(x))
            x = L.apply(tau)
            rep.add(f"invariant/e{a + 1}", "L(xi) tau_0 = 0", x.is_zero(),
                    witness=None if x.is_zero() else repr(x))
        total = fa.integrate(tau)
        one = fa.base.one()
        rep.add("normalized", "pi_* tau = 1", total == one,
                residual=None if total == one else repr(total - one))
        got = fa.origin(tau)
        want = self.expected_origin()
        rep.add("origin", "j^* tau_0 = (-2 pi)^(-r/2) c(Pf)", got == want,
                witness=None if got == want else repr(got - want))
        return rep

    def certify(self) -> Report:
        return self.contract_checks()

    def expected_origin(self) -> Element:
        base = self.fibre_algebra.base
        if self.r % 2:
            return base.zero()
        k = self.weil.lie
        pf = curvature_lift(k, action_pfaffian(self.r), self.weil)
        return pf * (Scalar.omega(-Fraction(self.r, 2)) * (-1) ** (self.r // 2))

    def forms(self) -> dict:
        return self.fibre_algebra.split(self.element)

    def plain(self) -> AnalyticForm:
        """The ordinary Thom form: the part of Weil degree 0."""
        unit = self.fibre_algebra.base.unit
        return self.forms().get(unit, AnalyticForm(self.fibre_algebra.space))

    def __repr__(self):
        return f"ThomForm(r={self.r}, {self.element!r})"


def mq_candidates(r: int) -> list:
    """Admissible sign choices: ``(curvature_sign, normalization, closed)`` for both signs."""
    out = []
    for sign in (-1, 1):
        fa, w, body = _berezin_representative(r, sign)
        closed = fa.d.apply(body).is_zero()
        total = fa.integrate(body)
        scal = total.terms.get(fa.base.unit)
        norm = None
        if closed and scal is not None and len(total.terms) == 1:
            norm = Scalar(1) / Scalar.coerce(scal)
        out.append((sign, norm, closed))
    return out


def mq_thom_form(r: int) -> ThomForm:
    """The Gaussian Mathai-Quillen form with signs fixed by closure and normalization."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    admissible = [(s, n) for s, n, closed in mq_candidates(r) if closed and n is not None]
    if not admissible:
        raise ContractError(f"no sign choice gives a closed normalizable form for r={r}")
    sign, norm = admissible[0]
    fa, w, body = _berezin_representative(r, sign)
    return ThomForm(r, fa, w, body * norm, sign, norm)


def gaussian_thom_form(space: ModelSpace) -> AnalyticForm:
    """``omega^(-r/2) exp(-|y|^2/2) dy_1 ... dy_r`` on the fibres of ``space``."""
    r = space.r
    return (AnalyticForm.gaussian(space) * Scalar.omega(-Fraction(r, 2))) ^ AnalyticForm.dx(
        space, *space.fiber)


# -- the vertical Gaussian window and cohomologous Thom forms --------------------------


def vertical_complex(r: int, height: int) -> dict:
    """``span{y^n G dy_I : |n| - |I| <= height}`` on ``R^r``: closed under ``d``.

    Returns ``{degree: [AnalyticForm]}``.
    """
    E = bundle_space(r)
    G = AnalyticForm.gaussian(E)
    out: dict = {k: [] for k in range(r + 1)}
    for k in range(r + 1):
        for mono in itertools.combinations(E.fiber, k):
            for n in itertools.product(range(height + k + 1), repeat=r):
                if sum(n) - k > height:
                    continue
                f = G
                for name, p in zip(E.fiber, n):
                    for _ in range(p):
                        f = f * AnalyticForm.coordinate(E, name)
                out[k].append(f ^ AnalyticForm.dx(E, *mono))
    return out


def span_rank(forms) -> int:
    index: dict = {}
    rows = [{index.setdefault(k, len(index)): c for k, c in f.terms.items()} for f in forms]
    return rank_of_rows(rows, len(index))


def thom_forms_cohomologous(tau1: AnalyticForm, tau2: AnalyticForm, height: int = 3) -> Report:
    """Two Thom forms on ``R^r`` differ by ``d`` of a form in the vertical window."""
    E = tau1.space
    r = E.r
    rep = Report("thom-cohomologous", parameters={"r": r, "height": height})
    diff = tau1 - tau2
    total = fibre_integrate(diff, list(E.fiber))
    rep.add("integral", "pi_*(tau_1 - tau_2) = 0", total.is_zero(), witness=repr(total))
    prims = [f.d() for f in vertical_complex(r, height)[r - 1]]
    exact = span_rank(prims + [diff]) == span_rank(prims)
    rep.add("exact", "tau_1 - tau_2 is d-exact", exact)
    return rep


# -- Thom map and its inverse ------------------------------------------------------------


def thom_map(tau: AnalyticForm, alpha: AnalyticForm) -> AnalyticForm:
    """``zeta_*(alpha) = tau ^ pi^* alpha``."""
    return tau ^ embed(alpha, tau.space)


def check_thom_map(tau: AnalyticForm, alphas, label="thom-map") -> Report:
    rep = Report(label)
    fibre = list(tau.space.fiber)
    for i, a in enumerate(alphas):
        back = fibre_integrate(thom_map(tau, a), fibre)
        rep.add(f"{label}/left-inverse/{i}", "pi_* zeta_* = id", back == a,
                witness=None if back == a else repr(back - a))
    for i, (a, b) in enumerate(zip(alphas, alphas[1:])):
        lhs = thom_map(tau, a ^ b)
        rhs = thom_map(tau, a) ^ embed(b, tau.space)
        rep.add(f"{label}/module/{i}", "zeta_*(alpha beta) = zeta_*(alpha) pi^* beta",
                lhs == rhs)
    return rep


def euler_form(tau: AnalyticForm) -> AnalyticForm:
    """``zeta^* tau`` on the base."""
    return zero_section(tau.space).pullback(tau)


# -- the rotation homotopy operator ---------------------------------------------------


def _relabel(form: AnalyticForm, space: ModelSpace) -> AnalyticForm:
    if (form.space.n, form.space.r, form.space.s) != (space.n, space.r, space.s):
        raise ValueError("spaces have different shapes")
    return AnalyticForm(space, form.terms)


def kappa(beta: AnalyticForm, tau: AnalyticForm = None) -> AnalyticForm:
    """``(-1)^r p1_* p_* rho^* (p2^* tau ^ p1^* beta)`` computed exactly.

    Requires Gaussian weight 1 in ``beta`` so that the rotation preserves the
    Gaussian; otherwise :class:`NotInExactClass` is raised.
    """
    E = beta.space
    r = E.r
    tau = tau if tau is not None else gaussian_thom_form(E)
    P1, P2 = p1_map(E), p2_map(E)
    rho = rotation_map(E)
    prod = P2.pullback(tau) ^ P1.pullback(beta)
    on_cyl = rho.pullback(prod)
    after_t = fibre_integrate(on_cyl, ["t"])
    bs = [c for c in after_t.space.fiber if c.startswith("b")]
    after_b = fibre_integrate(after_t, bs)
    return _relabel(after_b, E).scale((-1) ** r)


def zeta_pi(beta: AnalyticForm, tau: AnalyticForm = None) -> AnalyticForm:
    E = beta.space
    tau = tau if tau is not None else gaussian_thom_form(E)
    return thom_map(tau, fibre_integrate(beta, list(E.fiber)))


def homotopy_residual(beta: AnalyticForm) -> AnalyticForm:
    """``(zeta_* pi_* - id - d kappa - kappa d) beta``; zero exactly."""
    return zeta_pi(beta) - beta - kappa(beta).d() - kappa(beta.d())


class NumericKappa:
    """Independent quadrature route for ``kappa`` on ``R^r`` (base a point).

    The rotation pullback is evaluated through numerical Jacobians,
    ``p_*`` by Gauss-Legendre in ``t`` and ``p1_*`` by Gauss-Hermite in ``b``.
    """

    def __init__(self, r: int, t_nodes=24, b_nodes=16):
        self.r = r
        self.E = bundle_space(r)
        self.t, self.tw = np.polynomial.legendre.leggauss(t_nodes)
        self.t = (self.t + 1) / 2
        self.tw = self.tw / 2
        self.b, self.bw = np.polynomial.hermite_e.hermegauss(b_nodes)
        self.tau = gaussian_thom_form(self.E)

    def __call__(self, beta: AnalyticForm, point) -> dict:
        r = self.r
        a = np.asarray(point, dtype=float)
        grids = np.meshgrid(*([self.b] * r), self.t, indexing="ij")
        bpts = [g.ravel() for g in grids[:r]]
        tpts = grids[r].ravel()
        weights = np.ones_like(tpts)
        for j in range(r):
            idx = np.meshgrid(*([np.arange(len(self.b))] * r), np.arange(len(self.t)),
                              indexing="ij")[j].ravel()
            weights = weights * self.bw[idx] * np.exp(bpts[j] ** 2 / 2)
        tid = np.meshgrid(*([np.arange(len(self.b))] * r), np.arange(len(self.t)),
                          indexing="ij")[r].ravel()
        weights = weights * self.tw[tid]
        c = np.cos(np.pi * tpts / 2)
        s = np.sin(np.pi * tpts / 2)
        # rotated point (a', b') and the differentials of each target coordinate
        # in the source coordinates (a_1..a_r, b_1..b_r, t)
        A = [c * a[j] - s * bpts[j] for j in range(r)]
        B = [s * a[j] + c * bpts[j] for j in range(r)]
        dim = 2 * r + 1
        jac = np.zeros((len(tpts), 2 * r, dim))
        w = np.pi / 2
        for j in range(r):
            jac[:, j, j] = c
            jac[:, j, r + j] = -s
            jac[:, j, 2 * r] = w * (-s * a[j] - c * bpts[j])
            jac[:, r + j, j] = s
            jac[:, r + j, r + j] = c
            jac[:, r + j, 2 * r] = w * (c * a[j] - s * bpts[j])
        # values of p2^* tau ^ p1^* beta at (A, B): forms in (a, b)
        tau_vals = self.tau.evaluate(dict(zip(self.E.fiber, B)))
        beta_vals = beta.evaluate(dict(zip(self.E.fiber, A)))
        prod: dict = {}
        for kb, vb in tau_vals.items():
            ib = tuple(r + self.E.fiber.index(nm) for nm in kb)
            for ka, va in beta_vals.items():
                ia = tuple(self.E.fiber.index(nm) for nm in ka)
                # p2^* tau ^ p1^* beta: reorder (ib, ia) into increasing order
                seq = ib + ia
                if len(set(seq)) < len(seq):
                    continue
                inv = sum(1 for x in range(len(seq)) for y in range(x + 1, len(seq))
                          if seq[x] > seq[y])
                key = tuple(sorted(seq))
                prod[key] = prod.get(key, 0.0) + (-1) ** inv * vb * va
        # pull back along the rotation with the Jacobian
        pulled: dict = {}
        for rows, val in prod.items():
            k = len(rows)
            for cols in itertools.combinations(range(dim), k):
                if 2 * r not in cols or not all(r + j in cols for j in range(r)):
                    continue
                det = np.linalg.det(jac[:, list(rows)][:, :, list(cols)])
                pulled[cols] = pulled.get(cols, 0.0) + val * det
        out: dict = {}
        for cols, vals in pulled.items():
            s1 = _move_front_sign(cols, [2 * r])
            rest = tuple(x for x in cols if x != 2 * r)
            s2 = _move_front_sign(rest, list(range(r, 2 * r)))
            key = tuple(x for x in rest if x < r)
            total = float(np.sum(weights * vals)) * s1 * s2 * (-1) ** r
            out[key] = out.get(key, 0.0) + total
        return out


def numeric_homotopy_residual(beta: AnalyticForm, points, nk: NumericKappa = None,
                              step=1e-3) -> float:
    """Sup over ``points`` of ``|zeta_* pi_* beta - beta - d kappa beta - kappa d beta|``."""
    E = beta.space
    r = E.r
    nk = nk or NumericKappa(r)
    tau = gaussian_thom_form(E)
    dbeta = beta.d()
    worst = 0.0
    top = tuple(range(r))
    total = 0.0
    for (atom, mono), c in beta.terms.items():
        if mono == top:
            piece = AnalyticForm(E, {(atom, mono): c})
            total += _gauss_hermite_total(piece)
    for p in points:
        p = np.asarray(p, dtype=float)
        vals = {tuple(E.index(n) for n in k): v for k, v in beta.evaluate(dict(zip(E.fiber, p))).items()}
        tv = {tuple(E.index(n) for n in k): v * total
              for k, v in tau.evaluate(dict(zip(E.fiber, p))).items()}
        dk = numeric_exterior_derivative(lambda q: nk(beta, q), p, step)
        kd = nk(dbeta, p)
        res = dict(tv)
        for src, sgn in ((vals, -1), (dk, -1), (kd, -1)):
            for k, v in src.items():
                res[k] = res.get(k, 0.0) + sgn * v
        worst = max(worst, max((abs(v) for v in res.values()), default=0.0))
    return worst


def _gauss_hermite_total(form: AnalyticForm, nodes=24) -> float:
    """Numeric ``int_{R^r}`` of a top-degree Gaussian form by tensor Gauss-Hermite."""
    E = form.space
    x, w = np.polynomial.hermite_e.hermegauss(nodes)
    grids = np.meshgrid(*([x] * E.r), indexing="ij")
    wgrid = np.ones_like(grids[0])
    for j, g in enumerate(np.meshgrid(*([w] * E.r), indexing="ij")):
        wgrid = wgrid * g
    pts = {E.fiber[j]: grids[j] for j in range(E.r)}
    vals = form.evaluate(pts)
    v = vals.get(tuple(E.fiber), 0.0)
    weight = np.exp(sum(g ** 2 for g in grids) / 2)
    return float(np.sum(wgrid * weight * v))


# -- transgression ---------------------------------------------------------------------


class Transgression:
    """``phi = p_* h^*`` with ``h(t, v) = t v`` over ``t in [1, oo)``, by quadrature.

    ``phi(beta)`` is returned as ``{fibre index tuple: value}`` at a point of
    the punctured space.  The fibre ``[1, oo)`` carries the orientation for
    which ``beta = d phi(beta) + phi(d beta)`` away from the zero section.
    """

    def __init__(self, r: int, tolerance=1e-12):
        self.r = r
        self.E = bundle_space(r)
        self.tolerance = tolerance

    def __call__(self, beta: AnalyticForm, point) -> dict:
        E = self.E
        v = np.asarray(point, dtype=float)
        keys = []
        for (_, mono) in beta.terms:
            keys.append(mono)
        keys = sorted(set(keys))

        # h^* (f dy_I) at (t, v) = f(tv) wedge_i (v_i dt + t dv_i); take the dt part
        def integrand(t):
            vals = beta.evaluate(dict(zip(E.fiber, t * v)))
            out = np.zeros(len(self._out_keys))
            for names, c in vals.items():
                idx = [E.index(n) for n in names]
                for pos, i in enumerate(idx):
                    # dt in slot pos, t dv_j elsewhere; move dt to the front
                    rest = idx[:pos] + idx[pos + 1:]
                    coeff = c * v[i] * t ** len(rest) * (-1) ** pos
                    out[self._out_keys.index(tuple(rest))] += coeff
            return out

        self._out_keys = sorted({tuple(m[:p] + m[p + 1:]) for m in keys for p in range(len(m))})
        if not self._out_keys:
            return {}
        val, err = integrate.quad_vec(integrand, 1.0, np.inf, epsabs=self.tolerance,
                                      epsrel=0.0)
        # orientation of [1, oo) opposite to the cylinder [0, 1] parameter
        return {k: -float(x) for k, x in zip(self._out_keys, val) if x}

    def residual(self, beta: AnalyticForm, points, gamma=None, step=1e-3) -> float:
        """Sup of ``beta - d phi(beta) - phi(d beta)`` (or its rearrangement for ``beta = d gamma``)."""
        E = self.E
        worst = 0.0
        dbeta = beta.d()
        for p in points:
            p = np.asarray(p, dtype=float)
            b = {tuple(E.index(n) for n in k): v for k, v in beta.evaluate(dict(zip(E.fiber, p))).items()}
            if gamma is None:
                dphi = numeric_exterior_derivative(lambda q: self(beta, q), p, step)
                phid = self(dbeta, p) if not dbeta.is_zero() else {}
                res = dict(b)
                for src in (dphi, phid):
                    for k, v in src.items():
                        res[k] = res.get(k, 0.0) - v
            else:
                # beta = d gamma: phi(beta) = gamma - d phi(gamma)
                g = {tuple(E.index(n) for n in k): v
                     for k, v in gamma.evaluate(dict(zip(E.fiber, p))).items()}
                dphig = numeric_exterior_derivative(lambda q: self(gamma, q), p, step)
                lhs = self(beta, p)
                res = dict(lhs)
                for k, v in g.items():
                    res[k] = res.get(k, 0.0) - v
                for k, v in dphig.items():
                    res[k] = res.get(k, 0.0) + v
            worst = max(worst, max((abs(x) for x in res.values()), default=0.0))
        return worst


def transgression(beta: AnalyticForm, point) -> dict:
    return Transgression(beta.space.r)(beta, point)


def cone_morphism(beta: AnalyticForm, point) -> tuple:
    """``psi(beta) = (beta, phi(beta))`` evaluated at a point of the punctured space."""
    E = beta.space
    b = {tuple(E.index(n) for n in k): v for k, v in beta.evaluate(dict(zip(E.fiber, point))).items()}
    return b, transgression(beta, point)


def cone_cochain_check(beta: AnalyticForm, points, step=1e-3, tol=1e-6) -> Report:
    """``d psi(beta) = psi(d beta)`` in the mapping cone of the restriction, pointwise."""
    E = beta.space
    tr = Transgression(E.r)
    rep = Report("cone-morphism", parameters={"r": E.r, "tolerance": tol})
    worst = tr.residual(beta, points, step=step)
    rep.add("psi-cochain", "d psi = psi d", worst < tol, mode="numeric", residual=worst)
    return rep


# -- algebraic mapping cones --------------------------------------------------------


class MappingCone:
    """``C(f)^i = C^i + D^(i-1)`` with ``d(x, y) = (dx, f(x) - dy)``."""

    def __init__(self, source: ComplexSlice, target: ComplexSlice, maps: dict):
        self.source, self.target, self.maps = source, target, maps
        a = max(source.degrees[0], target.degrees[0] + 1)
        b = min(source.degrees[1], target.degrees[1] + 1)
        bases, diffs = {}, {}
        for i in range(a, b + 1):
            bases[i] = ([("C", x) for x in source.bases[i]]
                        + [("D", y) for y in target.bases.get(i - 1, [])])
        for i in range(a, b):
            nc0, nd0 = len(source.bases[i]), len(target.bases.get(i - 1, []))
            nc1 = len(source.bases[i + 1])
            entries = {}
            for (r_, c_), v in source.differentials[i].entries.items():
                entries[(r_, c_)] = v
            for (r_, c_), v in maps[i].entries.items():
                entries[(nc1 + r_, c_)] = v
            if i - 1 in target.differentials:
                for (r_, c_), v in target.differentials[i - 1].entries.items():
                    entries[(nc1 + r_, nc0 + c_)] = -v
            diffs[i] = ScalarMatrix(len(bases[i + 1]), nc0 + nd0, entries)
        self.complex = ComplexSlice((a, b), bases, diffs)

    def check_square_zero(self) -> bool:
        return self.complex.check_square_zero()

    def cohomology(self) -> dict:
        return cohomology_dims(self.complex)


# -- universal equivariant basic Thom forms --------------------------------------------


class EquivariantThom:
    """``C_{g,theta}(pr_2^* tau_0)``: the Weil variables of ``so(r)`` replaced by a connection.

    ``theta`` is a commutative ``so(r)``-connection in an algebra structure
    ``T`` over ``h``; ``so(r)`` acts on ``R^r`` through the indices of
    ``theta`` and every other basis vector of ``h`` acts trivially there.
    """

    def __init__(self, tau0: ThomForm, theta: Connection):
        if theta.lie.dim != so_matrix(tau0.r).dim:
            raise ValueError("the connection must take values in so(r)")
        self.tau0 = tau0
        self.theta = theta
        T = theta.target
        self.char = CharacteristicHom(theta)
        self.fibre = FibreAlgebra(tau0.r, T.gens, T.d, T.iotas, T.lies,
                                  {p: i for p, i in enumerate(theta.indices)}, lie=T.lie)
        src = tau0.fibre_algebra
        nb, r = src.offset, tau0.r
        images = {i: self.fibre.lift(self.char.map.generator_image(i)) for i in range(nb)}
        for j in range(2 * r + 1):
            images[nb + j] = self.fibre.gens.gen(self.fibre.offset + j)
        self.substitution = AlgebraMap(src.gens, self.fibre.gens, images)
        self.element = self.substitution.apply(tau0.element)

    def check(self) -> Report:
        fa, tau = self.fibre, self.element
        rep = Report("equivariant-thom", parameters={"r": self.tau0.r})
        x = fa.d.apply(tau)
        rep.add("closed", "d_g tau_g = 0", x.is_zero(), witness=None if x.is_zero() else repr(x))
        for a, (I, L) in enumerate(zip(fa.iotas, fa.lies)):
            x = I.apply(tau)
            rep.add(f"horizontal/e{a + 1}", "iota(xi) tau_g = 0", x.is_zero(),
                    witness=None if x.is_zero() else repr(x))
            x = L.apply(tau)
            rep.add(f"invariant/e{a + 1}", "L(xi) tau_g = 0", x.is_zero(),
                    witness=None if x.is_zero() else repr(x))
        total = fa.integrate(tau)
        rep.add("normalized", "pi_* tau_g = 1", total == fa.base.one(),
                residual=None if total == fa.base.one() else repr(total))
        return rep

    def euler(self) -> Element:
        return self.fibre.origin(self.element)

    def expected_euler(self) -> Element:
        r = self.tau0.r
        if r % 2:
            return self.fibre.base.zero()
        k = self.theta.lie
        pf = curvature_lift(k, action_pfaffian(r), self.char.weil)
        return self.char.apply(pf) * (Scalar.omega(-Fraction(r, 2)) * (-1) ** (r // 2))

    def check_euler(self) -> Report:
        rep = Report("euler-form", parameters={"r": self.tau0.r})
        got, want = self.euler(), self.expected_euler()
        rep.add("euler", "zeta^* tau_g = (-2 pi)^(-r/2) c_{g,theta}(Pf)", got == want,
                witness=None if got == want else repr(got - want))
        return rep


def universal_equivariant_thom(tau0: ThomForm, theta: Connection) -> EquivariantThom:
    return EquivariantThom(tau0, theta)


def naturality_check(tau0: ThomForm, theta: Connection, f: AlgebraMap, theta_pulled: Connection,
                     label="naturality") -> Report:
    """``tau(f^* theta) = f_E^* tau(theta)`` for an algebra map ``f`` between connection targets."""
    a = EquivariantThom(tau0, theta)
    b = EquivariantThom(tau0, theta_pulled)
    r = tau0.r
    na, nb = a.fibre.offset, b.fibre.offset
    images = {i: b.fibre.lift(f.generator_image(i)) for i in range(na)}
    for j in range(2 * r + 1):
        images[na + j] = b.fibre.gens.gen(nb + j)
    lifted = AlgebraMap(a.fibre.gens, b.fibre.gens, images)
    lhs, rhs = b.element, lifted.apply(a.element)
    rep = Report(label)
    rep.add(label, "tau_{g, f^* theta} = f_E^* tau_{g, theta}", lhs == rhs,
            witness=None if lhs == rhs else repr(lhs - rhs))
    return rep
