"""Connections, characteristic homomorphisms and the homotopies built from the graded line.

All targets are free graded-commutative algebras, so connections act on
modules by left multiplication and any two connections commute.  Homotopies
are obtained from an algebra map ``Psi`` into ``S (x) B`` (``S`` the graded
line) that commutes with ``d``, ``iota`` and ``L``: then ``J Psi`` is a
homotopy between ``ev_0 Psi`` and ``ev_1 Psi``.
"""

from __future__ import annotations

from fractions import Fraction

from .gca import AlgebraMap, Derivation, Element, GeneratorSet, LinearOperator
from .gdgm import (GHomotopy, GMorphism, GStructure, _embed, algebra_structure,
                   basic_cohomology, extend_structure, factor_algebra, subspace,
                   tensor_structures, verify_homotopy, verify_morphism)
from .lie import LieAlgebra, pfaffian_generators
from .report import Report
from .weil import WeilAlgebra, build_weil

# -- the graded line -------------------------------------------------------------

LINE = GeneratorSet([("s", -2), ("sd", -1)])


class GradedLine:
    """``S = F[s, sd]`` with ``ds = sd``, tensored on the left of an algebra ``A``.

    Monomials of ``S (x) A`` start with the exponents of ``s`` and ``sd``,
    so the functionals below need no Koszul signs.
    """

    def __init__(self, base: GStructure, s_bound: int = 8):
        if not base.is_algebra:
            raise ValueError("the graded line is tensored with algebra carriers only")
        self.base = base
        line = algebra_structure(
            base.lie, LINE, Derivation(LINE, 1, {0: LINE.gen(1)}),
            [Derivation(LINE, -1, {}) for _ in range(base.lie.dim)],
            [Derivation(LINE, 0, {}) for _ in range(base.lie.dim)],
            bounds={0: s_bound}, name="S")
        self.structure = tensor_structures(line, base, name=f"S(x){base.name}")
        self.gens = self.structure.gens
        bg = base.gens
        self.ev0 = self.evaluation(0)
        self.ev1 = self.evaluation(1)
        self.J = LinearOperator(self.gens, self._integrate, None, parity=1, target=bg,
                                name="J")

    def _integrate(self, m):
        k, e, rest = m[0], m[1], m[2:]
        return {rest: Fraction(1, k + 1)} if e else {}

    def evaluation(self, a) -> LinearOperator:
        a = Fraction(a)

        def ev(m):
            k, e, rest = m[0], m[1], m[2:]
            if e:
                return {}
            c = a ** k
            return {rest: c} if c else {}
        return LinearOperator(self.gens, ev, None, parity=0, target=self.base.gens,
                              name=f"ev{a}")

    def s(self) -> Element:
        return self.gens.gen(0)

    def sd(self) -> Element:
        return self.gens.gen(1)

    def lift(self, a: Element) -> Element:
        """``1 (x) a``."""
        return _embed(a, self.gens, 2)

    def line_monomial(self, k: int, dotted: bool, a: Element = None) -> Element:
        x = self.s() ** k
        if dotted:
            x = x * self.sd()
        return x * (self.lift(a) if a is not None else self.gens.one())

    def check_calculus(self, max_power=5, samples=()) -> Report:
        """``[d, J] = ev_1 - ev_0`` on ``s^k a`` and ``s^k sd a``."""
        rep = Report("graded-line", parameters={"max_power": max_power})
        d_sa, d_a = self.structure.d, self.base.d
        samples = list(samples) or [self.base.gens.one()]
        for k in range(max_power + 1):
            for dotted in (False, True):
                bad = None
                for a in samples:
                    x = self.line_monomial(k, dotted, a)
                    lhs = d_a.apply(self.J.apply(x)) + self.J.apply(d_sa.apply(x))
                    rhs = self.ev1.apply(x) - self.ev0.apply(x)
                    if lhs != rhs:
                        bad = {"element": repr(x), "residual": repr(lhs - rhs)}
                        break
                label = f"[d,J]/s^{k}" + ("*sd" if dotted else "")
                rep.add(label, "[d, J] = ev_1 - ev_0", bad is None, witness=bad)
        for k in range(max_power + 1):
            x = self.line_monomial(k, True)
            got = self.J.apply(x)
            want = self.base.gens.scalar(Fraction(1, k + 1))
            rep.add(f"J/s^{k}*sd", "J(s^k sd) = 1/(k+1)", got == want)
            got = self.J.apply(self.line_monomial(k, False))
            rep.add(f"J/s^{k}", "J(s^k) = 0", got.is_zero())
        return rep


# -- connections -----------------------------------------------------------------


class Connection:
    """``theta: g* -> A^1`` for a g-dga ``A`` given as an algebra structure.

    ``lie`` defaults to the structure's Lie algebra; pass ``indices`` to
    connect a subalgebra (a factor ``k`` of ``h = k x g``).
    """

    def __init__(self, target: GStructure, images, indices=None, check=True):
        if not target.is_algebra:
            raise ValueError("connections need a graded-commutative algebra target "
                             "(noncommutative connections are out of scope)")
        self.target = target
        self.indices = list(indices) if indices is not None else list(range(target.lie.dim))
        self.lie = (target.lie if indices is None
                    else factor_algebra(target.lie, self.indices))
        self.images = [img if isinstance(img, Element) else target.gens.scalar(img)
                       for img in images]
        if len(self.images) != self.lie.dim:
            raise ValueError("need one image per dual basis vector")
        if check:
            problems = self.violations()
            if problems:
                raise ValueError(f"not a connection: {problems[0]}")

    @property
    def is_commutative(self) -> bool:
        # images live in a graded-commutative algebra
        return True

    def violations(self) -> list:
        out = []
        T, g = self.target, self.lie
        for k, img in enumerate(self.images):
            if img and img.degrees() != {1}:
                out.append(f"theta(x{k + 1}) is not of degree 1")
                continue
            for a, ia in enumerate(self.indices):
                got = T.iotas[ia].apply(img)
                if got != T.gens.scalar(1 if a == k else 0):
                    out.append(f"iota(e{a + 1}) theta(x{k + 1}) = {got!r}")
                want = T.gens.zero()
                for j, c in g.coadjoint(a, {k: 1}).items():
                    want = want - self.images[j] * c
                got = T.lies[ia].apply(img)
                if got != want:
                    out.append(f"L(e{a + 1}) theta(x{k + 1}) = {got!r}, expected {want!r}")
        return out


def universal_connection(w: WeilAlgebra) -> Connection:
    return Connection(w.structure, w.theta)


class CharacteristicHom:
    """``c_theta: W(g) -> A`` with ``th -> theta`` and ``dth -> d theta``."""

    def __init__(self, theta: Connection):
        if not theta.is_commutative:
            raise ValueError("characteristic homomorphisms need a commutative connection")
        self.connection = theta
        self.weil = build_weil(theta.lie)
        T = theta.target
        images = {}
        for k, img in enumerate(theta.images):
            images[2 * k] = img
            images[2 * k + 1] = T.d.apply(img)
        self.map = AlgebraMap(self.weil.gens, T.gens, images)

    def apply(self, w: Element) -> Element:
        return self.map.apply(w)

    def morphism(self) -> GMorphism:
        src = self.weil.structure
        tgt = self.connection.target
        if self.connection.indices != list(range(tgt.lie.dim)):
            src = extend_structure(src, tgt.lie, {i: p for p, i in
                                                  enumerate(self.connection.indices)})
        return GMorphism(src, tgt, lambda m: self.map.image(m).terms, "c_theta")

    def check(self) -> Report:
        """Commutation with ``d``, ``iota`` and ``L`` on generators (enough for algebra maps)."""
        W = self.weil.structure
        T = self.connection.target
        idx = self.connection.indices
        rep = Report("characteristic-hom", parameters={"lie": self.connection.lie.name})
        for i in range(W.gens.n):
            x = W.gens.gen(i)
            name = W.gens.names[i]
            pairs = [("d", W.d, T.d)]
            pairs += [(f"iota(e{a + 1})", W.iotas[a], T.iotas[ia]) for a, ia in enumerate(idx)]
            pairs += [(f"L(e{a + 1})", W.lies[a], T.lies[ia]) for a, ia in enumerate(idx)]
            for op, A, B in pairs:
                lhs = self.map.apply(A.apply(x))
                rhs = B.apply(self.map.apply(x))
                rep.add(f"{op}/{name}", f"c {op} = {op} c", lhs == rhs,
                        witness=None if lhs == rhs else repr(lhs - rhs))
        return rep


def characteristic_hom(theta: Connection) -> CharacteristicHom:
    return CharacteristicHom(theta)


# -- homotopy between characteristic homomorphisms ---------------------------------


class ConnectionHomotopy:
    """``F = J c_Theta`` with ``Theta = (1 - s) theta_0 + s theta_1``."""

    def __init__(self, theta0: Connection, theta1: Connection):
        if theta0.target.gens != theta1.target.gens or theta0.indices != theta1.indices:
            raise ValueError("the two connections must share their target and Lie algebra")
        if not (theta0.is_commutative and theta1.is_commutative):
            raise ValueError("the two connections must commute")
        T = theta0.target
        self.line = GradedLine(T)
        L = self.line
        s = L.s()
        images = [L.lift(a) - s * L.lift(a) + s * L.lift(b)
                  for a, b in zip(theta0.images, theta1.images)]
        self.c0 = CharacteristicHom(theta0)
        self.c1 = CharacteristicHom(theta1)
        w = self.c0.weil
        d = L.structure.d
        cimg = {}
        for k, img in enumerate(images):
            cimg[2 * k] = img
            cimg[2 * k + 1] = d.apply(img)
        self.c_line = AlgebraMap(w.gens, L.gens, cimg)
        f0, f1 = self.c0.morphism(), self.c1.morphism()
        self.f0, self.f1 = f0, f1
        self.F = GHomotopy(f0.source, T, lambda m: L.J.apply(self.c_line.image(m)).terms,
                           "J c_Theta")

    def verify(self, max_degree=6) -> Report:
        return verify_homotopy(self.F, self.f0, self.f1, max_degree)


def connection_homotopy(theta0: Connection, theta1: Connection) -> ConnectionHomotopy:
    return ConnectionHomotopy(theta0, theta1)


# -- Cartan-Chern-Weil map ---------------------------------------------------------


class CartanChernWeil:
    """``C(w (x) m) = c_theta(w) m`` on ``W(g) (x) M`` and its homotopy inverse ``j``.

    ``theta`` takes values in ``M`` itself, acting by left multiplication.
    The homotopy is ``H = J Psi`` where ``Psi`` fixes ``M`` and sends
    ``th`` to ``(1 - s) th + s theta``.
    """

    def __init__(self, theta: Connection):
        M = theta.target
        if theta.indices != list(range(M.lie.dim)):
            raise ValueError("the connection must be for the full Lie algebra of M")
        self.module = M
        self.char = CharacteristicHom(theta)
        w = self.char.weil
        self.weil = w
        self.tensor = tensor_structures(w.structure, M, prefixes=["W.", ""],
                                        name=f"W({M.lie.name})(x){M.name}")
        tg, mg = self.tensor.gens, M.gens
        nw = w.gens.n
        self.C = AlgebraMap(tg, mg, {
            **{i: self.char.map.generator_image(i) for i in range(nw)},
            **{nw + i: mg.gen(i) for i in range(mg.n)}})
        self.j = AlgebraMap(mg, tg, {i: tg.gen(nw + i) for i in range(mg.n)})
        self.line = GradedLine(self.tensor)
        L = self.line
        s = L.s()
        d = L.structure.d
        images = {}
        for k in range(w.lie.dim):
            th_w = L.lift(tg.gen(2 * k))
            th_m = L.lift(_embed(theta.images[k], tg, nw))
            img = th_w - s * th_w + s * th_m
            images[2 * k] = img
            images[2 * k + 1] = d.apply(img)
        images.update({nw + i: L.lift(tg.gen(nw + i)) for i in range(mg.n)})
        self.psi = AlgebraMap(tg, L.gens, images)
        T = self.tensor
        self.C_morphism = GMorphism(T, M, lambda m: self.C.image(m).terms, "C")
        self.j_morphism = GMorphism(M, T, lambda m: self.j.image(m).terms, "j")
        self.jC = GMorphism(T, T, lambda m: self.j.apply(self.C.image(m)).terms, "jC")
        self.identity = GMorphism(T, T, lambda m: {m: 1}, "id")
        self.H = GHomotopy(T, T, lambda m: L.J.apply(self.psi.image(m)).terms, "H")

    def check_left_inverse(self, max_degree=6) -> Report:
        """``C j = id`` on a basis of ``M``."""
        rep = Report("ccw-left-inverse", parameters={"max_degree": max_degree})
        M = self.module
        for deg in range(0, max_degree + 1):
            bad = None
            for m in M.basis(deg):
                got = self.C.apply(self.j.image(m))
                if got.terms != {m: 1}:
                    bad = {"element": M.carrier.label(m), "image": repr(got)}
                    break
            rep.add(f"Cj=id/deg{deg}", "C_theta j = id", bad is None, witness=bad)
        return rep

    def verify(self, max_degree=6) -> Report:
        rep = self.check_left_inverse(max_degree)
        rep.extend(verify_morphism(self.C_morphism, max_degree), prefix="C/")
        rep.extend(verify_morphism(self.j_morphism, max_degree), prefix="j/")
        rep.extend(verify_homotopy(self.H, self.identity, self.jC, max_degree), prefix="H/")
        return rep

    def check_basic_image(self, max_degree=6) -> Report:
        """``C`` maps ``(W (x) M)_bas`` into ``M_bas``."""
        rep = Report("ccw-basic-image", parameters={"max_degree": max_degree})
        M = self.module
        for deg in range(max_degree + 1):
            bad = None
            for v in subspace(self.tensor, "basic", deg):
                img = self.C_morphism.apply(v)
                for op in M.iotas + M.lies:
                    r = {}
                    for k, c in img.items():
                        for k2, c2 in op.image(k).terms.items():
                            r[k2] = r.get(k2, 0) + c * c2
                    if any(r.values()):
                        bad = {"vector": {self.tensor.carrier.label(k): c for k, c in v.items()}}
                        break
                if bad:
                    break
            rep.add(f"C(basic)/deg{deg}", "C_theta maps basic elements to basic elements",
                    bad is None, witness=bad)
        return rep


def ccw_map(theta: Connection) -> CartanChernWeil:
    return CartanChernWeil(theta)


def principal_homotopy(theta: Connection) -> CartanChernWeil:
    """The Cartan-Chern-Weil data; ``.H`` satisfies ``[d, H] = j C - id``."""
    return CartanChernWeil(theta)


# -- equivariant extension and equivariant CCW ----------------------------------------


def _split(h: LieAlgebra, k_factor=0):
    if not h.is_product() or len(h.factors) != 2:
        raise ValueError(f"{h.name} is not presented as a product of two factors")
    return list(h.factors[k_factor][1]), list(h.factors[1 - k_factor][1])


class EquivariantExtension:
    """``theta_g = theta + iota_theta`` in ``W(g) (x) M``.

    ``M`` is an algebra structure over ``h = k x g`` and ``theta`` a
    ``k``-connection in ``M`` that is ``g``-invariant.  The target carries
    the ``h``-structure where ``k`` acts on ``M`` only and ``g`` diagonally.
    """

    def __init__(self, M: GStructure, theta_images, k_factor=0):
        h = M.lie
        self.k_idx, self.g_idx = _split(h, k_factor)
        self.module = M
        self.theta = Connection(M, theta_images, self.k_idx)
        for ik, img in enumerate(self.theta.images):
            for ig in self.g_idx:
                if not M.lies[ig].apply(img).is_zero():
                    raise ValueError(f"theta(y{ik + 1}) is not invariant under e{ig + 1}")
        self.k = self.theta.lie
        self.g = factor_algebra(h, self.g_idx)
        self.g.name = h.factors[1 - k_factor][0]
        self.k.name = h.factors[k_factor][0]
        self.wg = build_weil(self.g)
        wg_h = extend_structure(self.wg.structure, h, {ig: p for p, ig in enumerate(self.g_idx)})
        self.target = tensor_structures(wg_h, M, prefixes=["Wg.", ""],
                                        name=f"W({self.g.name})(x){M.name}")
        T = self.target
        nw = self.wg.gens.n
        self.images = []
        self.iota_theta = []
        for img in self.theta.images:
            lifted = _embed(img, T.gens, nw)
            corr = T.gens.zero()
            for p, ig in enumerate(self.g_idx):
                corr = corr - T.gens.gen(2 * p) * _embed(M.iotas[ig].apply(img), T.gens, nw)
            self.iota_theta.append(corr)
            self.images.append(lifted + corr)
        self.connection = Connection(T, self.images, self.k_idx)

    def check(self) -> Report:
        """The four identities making ``theta_g`` a g-basic k-connection."""
        T = self.target
        rep = Report("equivariant-extension")
        for y, img in enumerate(self.images):
            for p, ik in enumerate(self.k_idx):
                got = T.iotas[ik].apply(img)
                ok = got == T.gens.scalar(1 if p == y else 0)
                rep.add(f"iota(k{p + 1})theta_g(y{y + 1})", "iota(eta) theta_g(y) = <eta, y>",
                        ok, witness=None if ok else repr(got))
                want = T.gens.zero()
                for j, c in self.k.coadjoint(p, {y: 1}).items():
                    want = want - self.images[j] * c
                got = T.lies[ik].apply(img)
                ok = got == want
                rep.add(f"L(k{p + 1})theta_g(y{y + 1})",
                        "L(eta) theta_g(y) = -theta_g(ad*(eta) y)", ok,
                        witness=None if ok else repr(got - want))
            for p, ig in enumerate(self.g_idx):
                got = T.lies[ig].apply(img)
                rep.add(f"L(g{p + 1})theta_g(y{y + 1})", "L(xi) theta_g(y) = 0", got.is_zero(),
                        witness=None if got.is_zero() else repr(got))
                got = T.iotas[ig].apply(img)
                rep.add(f"iota(g{p + 1})theta_g(y{y + 1})", "iota(xi) theta_g(y) = 0",
                        got.is_zero(), witness=None if got.is_zero() else repr(got))
        return rep


def equivariant_extension(M: GStructure, theta_images, k_factor=0) -> EquivariantExtension:
    return EquivariantExtension(M, theta_images, k_factor)


class EquivariantCCW:
    """``C_{g,theta}: W(h) (x) M -> W(g) (x) M`` and the h-homotopy ``H``.

    Generators of the source are ordered as ``W(k)``, ``W(g)``, ``M``
    (the block order of ``W(h)`` for ``h = k x g`` with ``k`` first).
    """

    def __init__(self, ext: EquivariantExtension):
        if not ext.connection.is_commutative:
            raise ValueError("the equivariant extension must be commutative")
        self.ext = ext
        M = ext.module
        h = M.lie
        if ext.k_idx != list(range(len(ext.k_idx))):
            raise ValueError("the k factor must come first in h")
        self.wh = build_weil(h)
        self.source = tensor_structures(self.wh.structure, M, prefixes=["Wh.", ""],
                                        name=f"W({h.name})(x){M.name}")
        S, T = self.source, ext.target
        nk = 2 * len(ext.k_idx)
        nwh = self.wh.gens.n
        sg, tg = S.gens, T.gens
        images = {}
        for y, img in enumerate(ext.images):
            images[2 * y] = img
            images[2 * y + 1] = T.d.apply(img)
        # W(g) and M generators map to themselves
        images.update({i: tg.gen(i - nk) for i in range(nk, sg.n)})
        self.C = AlgebraMap(sg, tg, images)
        self.j = AlgebraMap(tg, sg, {i: sg.gen(i + nk) for i in range(tg.n)})
        self.line = GradedLine(S)
        L = self.line
        s = L.s()
        d = L.structure.d
        psi = {}
        for y, img in enumerate(ext.images):
            th_k = L.lift(sg.gen(2 * y))
            th_g = L.lift(self.j.apply(img))
            val = th_k - s * th_k + s * th_g
            psi[2 * y] = val
            psi[2 * y + 1] = d.apply(val)
        psi.update({i: L.lift(sg.gen(i)) for i in range(nk, sg.n)})
        self.psi = AlgebraMap(sg, L.gens, psi)
        self.C_morphism = GMorphism(S, T, lambda m: self.C.image(m).terms, "C_g")
        self.j_morphism = GMorphism(T, S, lambda m: self.j.image(m).terms, "j")
        self.jC = GMorphism(S, S, lambda m: self.j.apply(self.C.image(m)).terms, "jC")
        self.identity = GMorphism(S, S, lambda m: {m: 1}, "id")
        self.H = GHomotopy(S, S, lambda m: L.J.apply(self.psi.image(m)).terms, "H")
        self.nwh = nwh

    def check_left_inverse(self, max_degree=6) -> Report:
        rep = Report("equivariant-ccw-left-inverse")
        T = self.ext.target
        for deg in range(max_degree + 1):
            bad = None
            for m in T.basis(deg):
                got = self.C.apply(self.j.image(m))
                if got.terms != {m: 1}:
                    bad = {"element": T.carrier.label(m), "image": repr(got)}
                    break
            rep.add(f"Cj=id/deg{deg}", "C_{g,theta} j = id", bad is None, witness=bad)
        return rep

    def verify(self, max_degree=6) -> Report:
        rep = self.check_left_inverse(max_degree)
        rep.extend(verify_morphism(self.C_morphism, max_degree), prefix="C/")
        rep.extend(verify_morphism(self.j_morphism, max_degree), prefix="j/")
        rep.extend(verify_homotopy(self.H, self.identity, self.jC, max_degree), prefix="H/")
        return rep

    def cohomology_comparison(self, max_degree=6) -> Report:
        """``dim H_g(M_bas k)`` against ``dim H_h(M)`` degree by degree."""
        hg = basic_cohomology(self.ext.target, (0, max_degree))
        hh = basic_cohomology(self.source, (0, max_degree))
        rep = Report("equivariant-ccw-dims", parameters={"max_degree": max_degree},
                     data={"H_g(M_bas k)": hg, "H_h(M)": hh})
        for k in range(max_degree + 1):
            rep.add(f"dims/deg{k}", "H_g(M_bas k) = H_h(M)", hg[k] == hh[k],
                    residual=hg[k] - hh[k])
        return rep


def equivariant_ccw(M: GStructure, theta_images, k_factor=0) -> EquivariantCCW:
    return EquivariantCCW(EquivariantExtension(M, theta_images, k_factor))


# -- equivariant characteristic forms ------------------------------------------------------


def curvature_lift(k_algebra: LieAlgebra, p: Element, weil: WeilAlgebra = None) -> Element:
    """Substitute the curvature elements of ``W(k)`` into a polynomial on ``k``.

    ``p`` lives on generators of degree 2, one per basis vector of ``k``
    (for instance the output of ``invariant_polynomials`` or ``pfaffian``).
    """
    w = weil or build_weil(k_algebra)
    if p.gens.n != k_algebra.dim:
        raise ValueError("polynomial has the wrong number of variables")
    sub = AlgebraMap(p.gens, w.gens, {i: w.curvature(i) for i in range(k_algebra.dim)})
    return sub.apply(p)


def _is_invariant(k_algebra, p) -> bool:
    from .lie import coadjoint_derivation
    return all(coadjoint_derivation(k_algebra, a, p.gens).apply(p).is_zero()
               for a in range(k_algebra.dim))


class EquivariantCharacteristic:
    """``c_{g,theta}(p)`` in ``W(g) (x) M`` for invariant polynomials ``p`` on ``k``."""

    def __init__(self, ext: EquivariantExtension):
        self.ext = ext
        self.char = CharacteristicHom(ext.connection)

    def __call__(self, p: Element) -> Element:
        k = self.ext.k
        if not _is_invariant(k, p):
            raise ValueError("the polynomial is not invariant")
        return self.char.apply(curvature_lift(k, p, self.char.weil))

    def check(self, p: Element) -> Report:
        T = self.ext.target
        x = self(p)
        rep = Report("equivariant-characteristic")
        rep.add("closed", "d_g c_{g,theta}(p) = 0", T.d.apply(x).is_zero())
        basic = all(op.apply(x).is_zero() for op in T.iotas + T.lies)
        rep.add("basic", "c_{g,theta}(p) is h-basic", basic)
        return rep


def equivariant_characteristic(p: Element, ext: EquivariantExtension) -> Element:
    return EquivariantCharacteristic(ext)(p)


def transgression_form(ext0: EquivariantExtension, ext1: EquivariantExtension,
                       p: Element) -> Element:
    """``J c_Theta(p)``: its differential is ``c_{g,theta_1}(p) - c_{g,theta_0}(p)``."""
    if ext0.target.gens != ext1.target.gens:
        raise ValueError("the two extensions must share their target")
    hom = ConnectionHomotopy(ext0.connection, ext1.connection)
    lifted = curvature_lift(ext0.k, p, hom.c0.weil)
    return hom.line.J.apply(hom.c_line.apply(lifted))


def pfaffian_polynomial(r: int):
    """Pfaffian on ``so(r)`` in the variables of ``so_matrix(r)``."""
    from .lie import pfaffian
    return pfaffian(r, pfaffian_generators(r))
