"""The Weil algebra of a Lie algebra, its curvature variables and Koszul contraction.

Generators are ordered ``th1, dth1, th2, dth2, ...`` so that for a product
``k x g`` the monomials of the factors appear in blocks.
"""

from __future__ import annotations

from fractions import Fraction

from .gca import AlgebraMap, Derivation, Element, GeneratorSet
from .gdgm import (GHomotopy, GMorphism, algebra_structure, extend_structure,
                   tensor_structures, verify_homotopy, verify_morphism)
from .lie import LieAlgebra, ce_differential, ce_generators
from .report import Report


def weil_generators(g: LieAlgebra, theta="th", dtheta="dth") -> GeneratorSet:
    gens = []
    for k in range(g.dim):
        gens += [(f"{theta}{k + 1}", 1), (f"{dtheta}{k + 1}", 2)]
    return GeneratorSet(gens)


class WeilAlgebra:
    """``W(g)`` with its g-structure in the connection generators."""

    def __init__(self, g: LieAlgebra, coadjoint_sign: int = 1):
        self.lie = g
        self.gens = weil_generators(g)
        n, gens = g.dim, self.gens
        th = [gens.gen(2 * k) for k in range(n)]
        dth = [gens.gen(2 * k + 1) for k in range(n)]
        self.theta, self.dtheta = th, dth

        def transport(a, basis):
            # -basis(ad*(e_a) x^k) for every k
            out = {}
            for k in range(n):
                img = gens.zero()
                for j, c in g.coadjoint(a, {k: 1}).items():
                    img = img - basis[j] * (c * coadjoint_sign)
                out[k] = img
            return out

        d = Derivation(gens, 1, {2 * k: dth[k] for k in range(n)}, name="d")
        iotas, lies = [], []
        for a in range(n):
            on_th = transport(a, th)
            on_dth = transport(a, dth)
            images = {2 * a: gens.one()}
            images.update({2 * k + 1: on_th[k] for k in range(n)})
            iotas.append(Derivation(gens, -1, images, name=f"iota(e{a + 1})"))
            images = {2 * k: on_th[k] for k in range(n)}
            images.update({2 * k + 1: on_dth[k] for k in range(n)})
            lies.append(Derivation(gens, 0, images, name=f"L(e{a + 1})"))
        self.structure = algebra_structure(g, gens, d, iotas, lies, name=f"W({g.name})")

    @property
    def d(self):
        return self.structure.d

    def curvature(self, k: int) -> Element:
        """``mu(x^k) = dth^k + sum_{i<j} c^k_ij th^i th^j``."""
        out = self.dtheta[k]
        for (i, j), c in self.lie.cobracket({k: 1}).items():
            out = out + self.theta[i] * self.theta[j] * c
        return out

    def __repr__(self):
        return f"WeilAlgebra({self.lie.name})"


def build_weil(g: LieAlgebra, coadjoint_sign: int = 1) -> WeilAlgebra:
    """``W(g)``; ``coadjoint_sign=-1`` builds the deliberately wrong variant used in mutation tests."""
    return WeilAlgebra(g, coadjoint_sign)


# -- curvature variables ---------------------------------------------------------


class CurvatureChange:
    """The substitution ``dth <-> mu - sum c th th`` and the transported structure."""

    def __init__(self, w: WeilAlgebra):
        self.weil = w
        g, n = w.lie, w.lie.dim
        self.gens = weil_generators(g, "th", "mu")
        mg = self.gens
        quad = []
        for k in range(n):
            q = mg.zero()
            for (i, j), c in g.cobracket({k: 1}).items():
                q = q + mg.gen(2 * i) * mg.gen(2 * j) * c
            quad.append(q)
        # to_mu: W(th, dth) -> W(th, mu); from_mu its inverse
        self.to_mu = AlgebraMap(w.gens, mg, {
            **{2 * k: mg.gen(2 * k) for k in range(n)},
            **{2 * k + 1: mg.gen(2 * k + 1) - quad[k] for k in range(n)}})
        self.from_mu = AlgebraMap(mg, w.gens, {
            **{2 * k: w.theta[k] for k in range(n)},
            **{2 * k + 1: w.curvature(k) for k in range(n)}})
        s = w.structure

        def moved(D):
            return Derivation(mg, D.degree, {
                i: self.to_mu.apply(D.apply(self.from_mu.generator_image(i)))
                for i in range(mg.n)}, name=D.name)

        self.structure = algebra_structure(g, mg, moved(s.d), [moved(D) for D in s.iotas],
                                           [moved(D) for D in s.lies],
                                           name=f"W({g.name}) in curvature variables")

    def mu(self, k) -> Element:
        return self.gens.gen(2 * k + 1)

    def theta(self, k) -> Element:
        return self.gens.gen(2 * k)


def curvature_generators(w: WeilAlgebra) -> CurvatureChange:
    return CurvatureChange(w)


def ce_to_curvature(change: CurvatureChange) -> AlgebraMap:
    """``x^k -> th^k`` and ``y^k -> mu^k`` from the Chevalley-Eilenberg algebra."""
    g = change.weil.lie
    n = g.dim
    return AlgebraMap(ce_generators(g), change.gens, {
        **{k: change.theta(k) for k in range(n)},
        **{n + k: change.mu(k) for k in range(n)}})


def cartan_bianchi(w: WeilAlgebra) -> Report:
    """``d th = 1/2 th(d_CE x) + mu`` and ``d mu = mu(d_CE y)`` plus the mu-structure equations.

    On quadratic exterior elements the antisymmetrized extension of
    ``th`` equals twice the algebra image, so ``1/2 th(d_CE x)`` is the
    algebra image of ``d_CE x``.
    """
    ch = curvature_generators(w)
    g, n = w.lie, w.lie.dim
    s = ch.structure
    phi = ce_to_curvature(ch)
    dce = ce_differential(g)
    ce = dce.gens
    rep = Report("cartan-bianchi", parameters={"lie": g.name})
    for k in range(n):
        name = f"x{k + 1}"
        want = phi.apply(dce.apply(ce.gen(k))) + ch.mu(k)
        got = s.d.apply(ch.theta(k))
        rep.add(f"d(theta)/{name}", "d theta = 1/2 theta(d_CE x) + mu", got == want,
                witness=None if got == want else repr(got - want))
        want = phi.apply(dce.apply(ce.gen(n + k)))
        got = s.d.apply(ch.mu(k))
        rep.add(f"d(mu)/{name}", "d mu = d_CE mu", got == want,
                witness=None if got == want else repr(got - want))
        for a in range(n):
            got = s.iotas[a].apply(ch.mu(k))
            rep.add(f"iota(e{a + 1})mu/{name}", "iota(xi) mu = 0", got.is_zero(),
                    witness=None if got.is_zero() else repr(got))
            want = ch.gens.zero()
            for j, c in g.coadjoint(a, {k: 1}).items():
                want = want - ch.mu(j) * c
            got = s.lies[a].apply(ch.mu(k))
            rep.add(f"L(e{a + 1})mu/{name}", "L(xi) mu(x) = -mu(ad*(xi) x)", got == want,
                    witness=None if got == want else repr(got - want))
    return rep


# -- Koszul contraction -------------------------------------------------------------


class KoszulContraction:
    """``sigma(dth) = th``; ``[d, sigma]`` is the generator-count operator ``E``.

    ``h = sigma E^{-1}`` on monomials with positive count satisfies
    ``dh + hd = id - (projection to scalars)``.
    """

    def __init__(self, w: WeilAlgebra):
        self.weil = w
        gens = w.gens
        n = w.lie.dim
        self.sigma = Derivation(gens, -1, {2 * k + 1: w.theta[k] for k in range(n)},
                                name="sigma")
        self.euler = Derivation(gens, 0, {i: gens.gen(i) for i in range(gens.n)}, name="E")
        s = w.structure

        def h(m):
            count = sum(m)
            if not count:
                return {}
            return {k: c * Fraction(1, count) for k, c in self.sigma.image(m).terms.items()}

        unit = gens.unit
        self.homotopy = GHomotopy(s, s, h, "koszul")
        self.projection = GMorphism(s, s, lambda m: {m: 1} if m == unit else {}, "proj")
        self.identity = GMorphism(s, s, lambda m: {m: 1}, "id")

    def check_sigma(self) -> Report:
        rep = Report("koszul-sigma")
        gens = self.weil.gens
        d = self.weil.d
        for i in range(gens.n):
            x = gens.gen(i)
            got = d.apply(self.sigma.apply(x)) + self.sigma.apply(d.apply(x))
            rep.add(f"[d,sigma]=E/{gens.names[i]}", "[d, sigma] = E", got == x,
                    witness=None if got == x else repr(got))
        return rep

    def verify(self, max_degree=7) -> Report:
        rep = self.check_sigma()
        rep.extend(verify_homotopy(self.homotopy, self.projection, self.identity,
                                   max_degree, equivariant=False))
        return rep


def koszul_homotopy(w: WeilAlgebra) -> KoszulContraction:
    return KoszulContraction(w)


# -- products ----------------------------------------------------------------------


class WeilProduct:
    """``phi: W(k) (x) W(g) -> W(k x g)`` and its inverse ``psi``."""

    def __init__(self, k: LieAlgebra, g: LieAlgebra):
        self.h = k.product(g)
        self.wk, self.wg, self.wh = build_weil(k), build_weil(g), build_weil(self.h)
        h = self.h
        sk = extend_structure(self.wk.structure, h, {i: i for i in range(k.dim)})
        sg = extend_structure(self.wg.structure, h, {k.dim + j: j for j in range(g.dim)})
        self.tensor = tensor_structures(sk, sg, prefixes=["k.", "g."], name="W(k)(x)W(g)")
        tg, hg = self.tensor.gens, self.wh.gens
        self.phi = AlgebraMap(tg, hg, {i: hg.gen(i) for i in range(tg.n)})
        self.psi = AlgebraMap(hg, tg, {i: tg.gen(i) for i in range(hg.n)})

    def check(self, max_degree=4) -> Report:
        rep = Report("weil-product", parameters={"h": self.h.name, "max_degree": max_degree})
        tg, hg = self.tensor.gens, self.wh.gens
        for i in range(tg.n):
            x = tg.gen(i)
            ok = self.psi.apply(self.phi.apply(x)) == x
            rep.add(f"psi.phi=id/{tg.names[i]}", "psi phi = id", ok)
        for i in range(hg.n):
            x = hg.gen(i)
            ok = self.phi.apply(self.psi.apply(x)) == x
            rep.add(f"phi.psi=id/{hg.names[i]}", "phi psi = id", ok)
        f = GMorphism(self.tensor, self.wh.structure, lambda m: self.phi.image(m).terms, "phi")
        rep.extend(verify_morphism(f, max_degree), prefix="phi/")
        f = GMorphism(self.wh.structure, self.tensor, lambda m: self.psi.image(m).terms, "psi")
        rep.extend(verify_morphism(f, max_degree), prefix="psi/")
        return rep


def weil_product(k: LieAlgebra, g: LieAlgebra) -> WeilProduct:
    return WeilProduct(k, g)
