"""Foliated torus models, truncated basic complexes, Gysin sequences and basic Thom checks.

Forms on ``T^n`` are truncated to Fourier modes with ``|m|_inf <= N``.
A truncated form is basic when ``iota(u)`` and ``L(u)`` kill it, where
the conditions are imposed on every output mode (including modes past the
truncation), so each truncated basic form is an honest basic form.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import numpy as np

from .forms import (AnalyticForm, ModelSpace, VectorField, embed,
                    fibre_integrate, iota, lie, zero_section)
from .gdgm import FiniteCarrier, GStructure, TableOperator, coordinates, equivariant_cohomology
from .lie import abelian
from .linalg import kernel_with_free_columns, rank_of_rows
from .report import Report
from .scalars import Scalar
from .thom import span_rank, gaussian_thom_form, vertical_complex


# -- truncated Fourier forms ----------------------------------------------------------


def fourier_modes(n: int, N: int) -> list:
    """Canonical ``(kind, m)`` pairs with ``|m|_inf <= N``: one cosine/sine per +-m."""
    out = [("c", (0,) * n)]
    for m in itertools.product(range(-N, N + 1), repeat=n):
        if not any(m):
            continue
        first = next(v for v in m if v)
        if first > 0:
            out += [("c", m), ("s", m)]
    return out


def truncated_basis(space: ModelSpace, N: int, degree: int) -> list:
    """Basis forms ``trig(2 pi m.x) dx_I`` of the truncation in one degree."""
    out = []
    for mono in itertools.combinations(space.torus, degree):
        dx = AnalyticForm.dx(space, *mono)
        for kind, m in fourier_modes(space.n, N):
            out.append(AnalyticForm.fourier(space, m, kind) ^ dx)
    return out


def _key(form: AnalyticForm):
    (k,) = form.terms
    return k


def _mode_of(key) -> tuple:
    return key[0][0][1]


def _columns_to_rows(images: list) -> tuple:
    """Transpose column images ``[{out_key: c}]`` into row dicts; returns ``(rows, out_keys)``."""
    index: dict = {}
    rows: list = []
    for j, img in enumerate(images):
        for k, c in img.items():
            i = index.get(k)
            if i is None:
                i = index[k] = len(rows)
                rows.append({})
            rows[i][j] = c
    return rows, list(index)


# -- models -------------------------------------------------------------------------------


class FoliatedModel:
    """A foliation of ``T^n`` spanned by a vector field with trigonometric coefficients.

    ``transverse`` optionally lists foliate vector fields generating an
    abelian transverse action.
    """

    def __init__(self, name: str, space: ModelSpace, field: VectorField, transverse=()):
        self.name = name
        self.space = space
        self.field = field
        self.transverse = list(transverse)
        low = self.minimum_speed()
        if field.components and low <= 1e-9:
            raise ValueError(f"the foliation field vanishes somewhere (min |u| = {low:.3g})")
        for t in self.transverse:
            if not self.is_foliate(t):
                raise ValueError("transverse generators must normalize the foliation")

    def minimum_speed(self, points=64) -> float:
        """Smallest ``|u|`` on a uniform grid (constant rank 1 needs this positive)."""
        axes = [np.arange(points) / points] * self.space.n
        grid = np.meshgrid(*axes, indexing="ij")
        pt = dict(zip(self.space.torus, grid))
        speed = np.zeros_like(grid[0])
        for f in self.field.components.values():
            speed = speed + np.asarray(f.evaluate(pt).get((), 0.0)) ** 2
        return float(np.sqrt(speed).min())

    def is_foliate(self, t: VectorField) -> bool:
        """``[t, u]`` is a function multiple of ``u``: every 2x2 minor of ``([t,u], u)`` vanishes."""
        space = self.space
        zero = AnalyticForm(space)
        u = self.field.components
        br = {i: t.apply(u.get(i, zero)) - self.field.apply(t.components.get(i, zero))
              for i in range(space.n)}
        for i, j in itertools.combinations(range(space.n), 2):
            minor = br[i] * u.get(j, zero) - br[j] * u.get(i, zero)
            if not minor.is_zero():
                return False
        return True

    def __repr__(self):
        return f"FoliatedModel({self.name})"


def _as_slope(alpha) -> Scalar:
    if isinstance(alpha, str):
        text = alpha.strip().replace(" ", "")
        if text.startswith("sqrt"):
            return Scalar.sqrt(int(text[4:].strip("()")))
        alpha = Fraction(text)
    a = Scalar.coerce(alpha)
    if a.is_rational:
        raise ValueError("a rational slope gives closed leaves; the basic complex "
                         "is then infinite dimensional")
    if a.omega_exponents() != [0]:
        raise ValueError("the slope must be a real quadratic irrational")
    return a


def kronecker(alpha="sqrt2") -> FoliatedModel:
    """Linear flow ``d/dx1 + alpha d/dx2`` on ``T^2`` with irrational slope."""
    a = _as_slope(alpha)
    space = ModelSpace(["x1", "x2"])
    v = VectorField(space, {"x1": 1, "x2": AnalyticForm.constant(space, a)})
    return FoliatedModel(f"kronecker({alpha})", space, v,
                         transverse=[VectorField(space, {"x2": 1})])


def point_foliation(n: int = 2) -> FoliatedModel:
    """The foliation of ``T^n`` by points: every form is basic."""
    space = ModelSpace([f"x{i + 1}" for i in range(n)])
    return FoliatedModel("points", space, VectorField(space, {}))


def molino_counterexample() -> FoliatedModel:
    """``sin^2(pi x1) d/dx1 + d/dx2``: a Reeb-type foliation with only constant basic functions."""
    space = ModelSpace(["x1", "x2"])
    w1 = AnalyticForm.constant(space, Fraction(1, 2)) - AnalyticForm.fourier(
        space, (1, 0), "c", Fraction(1, 2))
    return FoliatedModel("molino", space, VectorField(space, {"x1": w1, "x2": 1}))


def _parse_function(space, value) -> AnalyticForm:
    if isinstance(value, (int, float, str)) and not isinstance(value, bool):
        if isinstance(value, str) and value.startswith("sqrt"):
            return AnalyticForm.constant(space, Scalar.sqrt(int(value[4:].strip("()"))))
        return AnalyticForm.constant(space, Fraction(str(value)))
    out = AnalyticForm(space)
    for term in value:
        c = Fraction(str(term.get("coeff", 1)))
        m = tuple(term.get("mode", [0] * space.n))
        out = out + AnalyticForm.fourier(space, m, term.get("kind", "c"), c)
    return out


def load_model(text: str) -> FoliatedModel:
    """Read a model from JSON text.

    Either ``{"model": "kronecker", "alpha": "sqrt2"}``, ``{"model": "molino"}``
    or ``{"model": "field", "torus": [...], "field": {coord: function}}`` where a
    function is a number or a list of ``{"coeff", "kind", "mode"}`` terms.
    """
    data = json.loads(text)
    kind = data.get("model")
    if kind == "kronecker":
        return kronecker(data.get("alpha", "sqrt2"))
    if kind == "molino":
        return molino_counterexample()
    if kind == "field":
        space = ModelSpace(data["torus"])
        comps = {c: _parse_function(space, f) for c, f in data["field"].items()}
        trans = [VectorField(space, {c: _parse_function(space, f) for c, f in t.items()})
                 for t in data.get("transverse", [])]
        return FoliatedModel(data.get("name", "custom"), space, VectorField(space, comps), trans)
    raise ValueError(f"unknown model kind {kind!r}")


def model_by_name(name: str) -> FoliatedModel:
    if name == "kronecker":
        return kronecker()
    if name == "molino":
        return molino_counterexample()
    raise ValueError(f"unknown model {name!r}; expected kronecker or molino")


# -- the truncated basic complex ---------------------------------------------------------


class TruncatedBasicComplex:
    """Basic forms of ``model`` with modes ``|m|_inf <= N``, exactly."""

    def __init__(self, model: FoliatedModel, N: int):
        self.model, self.N = model, N
        space = model.space
        self.ambient = {}
        self.bases = {}
        self.leakage = {}
        self.free = {}
        for k in range(space.n + 1):
            forms = truncated_basis(space, N, k)
            self.ambient[k] = forms
            images = []
            for f in forms:
                img = dict(iota(model.field, f).terms)
                for key, c in lie(model.field, f).terms.items():
                    img[("L", key)] = c
                images.append(img)
            rows, out_keys = _columns_to_rows(images)
            self.leakage[k] = sum(1 for key in out_keys
                                  if max(map(abs, _mode_of(key[1] if key[0] == "L" else key)),
                                         default=0) > N)
            kernel = kernel_with_free_columns(rows, len(forms))
            basis, free = [], []
            for j0, vec in kernel:
                free.append((_key(forms[j0]), vec[j0]))
                form = AnalyticForm(space)
                for j, c in vec.items():
                    form = form + forms[j].scale(c)
                basis.append(form)
            self.bases[k] = basis
            self.free[k] = free

    def dims(self) -> dict:
        return {k: len(v) for k, v in self.bases.items()}

    def _rank(self, forms) -> int:
        index: dict = {}
        rows = []
        for f in forms:
            rows.append({index.setdefault(k, len(index)): c for k, c in f.terms.items()})
        return rank_of_rows(rows, len(index))

    def d_rank(self, k) -> int:
        if k not in self.bases:
            return 0
        return self._rank([f.d() for f in self.bases[k]])

    def cohomology(self) -> dict:
        return {k: len(self.bases[k]) - self.d_rank(k) - self.d_rank(k - 1) for k in self.bases}

    def check_basic(self) -> Report:
        """Every basis form is basic and ``d`` preserves basicness."""
        rep = Report("basic-forms", parameters={"model": self.model.name, "N": self.N})
        u = self.model.field
        for k, forms in self.bases.items():
            for i, f in enumerate(forms):
                ok = iota(u, f).is_zero() and lie(u, f).is_zero()
                rep.add(f"basic/deg{k}/{i}", "iota(u) alpha = L(u) alpha = 0", ok)
                g = f.d()
                ok = iota(u, g).is_zero() and lie(u, g).is_zero()
                rep.add(f"d-basic/deg{k}/{i}", "d maps basic forms to basic forms", ok)
        return rep

    def coordinates(self, k, form: AnalyticForm) -> list:
        """Coordinates of a truncated basic form in the basis of degree ``k``."""
        coords = [form.terms.get(key, 0) / c for key, c in self.free[k]]
        back = AnalyticForm(self.model.space)
        for f, c in zip(self.bases[k], coords):
            if c:
                back = back + f.scale(c)
        if back != form:
            raise ValueError("form is not a truncated basic form")
        return coords


def basic_complex(model: FoliatedModel, N: int) -> TruncatedBasicComplex:
    return TruncatedBasicComplex(model, N)


def truncation_report(model: FoliatedModel, truncations=(8, 12, 16), expected=None) -> Report:
    """Dimensions and cohomology at several truncations; constant across the grid."""
    rep = Report(f"truncated-basic/{model.name}",
                 parameters={"truncations": list(truncations)})
    seen = []
    for N in truncations:
        bc = basic_complex(model, N)
        dims, coh = bc.dims(), bc.cohomology()
        seen.append((dims, coh))
        rep.add(f"N={N}/dims", "truncated basic dimensions", True,
                witness={"dims": dims, "cohomology": coh, "leakage": bc.leakage})
        if expected is not None:
            key, want = expected
            got = {"dims": dims, "cohomology": coh}[key]
            ok = all(got.get(k) == v for k, v in want.items())
            rep.add(f"N={N}/{key}", f"{key} equal {want}", ok, witness=got)
    stable = all(s == seen[0] for s in seen)
    rep.add("constant-rank", "dimensions independent of the truncation", stable)
    return rep


# -- the transverse action ------------------------------------------------------------------


def transverse_action_structure(bc: TruncatedBasicComplex, fields=None) -> GStructure:
    """The basic complex as a g-dga for the abelian transverse action of ``fields``.

    Each field must be foliate; on basic forms ``iota`` and ``L`` only
    depend on the field modulo the leaf direction.
    """
    fields = fields if fields is not None else bc.model.transverse
    g = abelian(len(fields), "R" if len(fields) == 1 else f"R{len(fields)}")
    keys = {k: [(k, i) for i in range(len(v))] for k, v in bc.bases.items()}
    carrier = FiniteCarrier(keys)

    def op(fn, shift):
        def image(key):
            k, i = key
            out = fn(bc.bases[k][i])
            if out.is_zero():
                return {}
            coords = bc.coordinates(k + shift, out)
            return {(k + shift, j): c for j, c in enumerate(coords) if c}
        return image

    d = TableOperator(1, op(lambda f: f.d(), 1), "d")
    iotas = [TableOperator(-1, op(lambda f, v=v: iota(v, f), -1), f"iota(e{a + 1})")
             for a, v in enumerate(fields)]
    lies = [TableOperator(0, op(lambda f, v=v: lie(v, f), 0), f"L(e{a + 1})")
            for a, v in enumerate(fields)]
    return GStructure(g, carrier, d, iotas, lies, name=f"basic({bc.model.name})")


def representative_independence(bc: TruncatedBasicComplex, field, shift) -> Report:
    """``iota`` and ``L`` of ``field`` and ``field + shift * u`` agree on basic forms."""
    u = bc.model.field
    space = bc.model.space
    comps = {}
    for i in set(field.components) | set(u.components):
        zero = AnalyticForm(space)
        comps[space.coords[i]] = (field.components.get(i, zero)
                                  + u.components.get(i, zero).scale(shift))
    moved = VectorField(space, comps)
    rep = Report("representative-independence", parameters={"shift": str(shift)})
    for k, forms in bc.bases.items():
        for i, f in enumerate(forms):
            ok = iota(field, f) == iota(moved, f) and lie(field, f) == lie(moved, f)
            rep.add(f"deg{k}/{i}", "operators depend on the transverse class only", ok)
    return rep


# -- vertical Gaussian complex and the basic Thom check ----------------------------------


def vertical_cohomology(r: int, height: int = 2) -> dict:
    V = vertical_complex(r, height)
    rk = {k: span_rank([f.d() for f in V[k]]) for k in V}
    for k in V:
        if span_rank(V.get(k + 1, []) + [f.d() for f in V[k]]) != span_rank(V.get(k + 1, [])):
            raise ArithmeticError("vertical window is not closed under d")
    return {k: len(V[k]) - rk[k] - rk.get(k - 1, 0) for k in V}


def _tensor_structure(base: GStructure, r: int, height: int) -> tuple:
    """``basic complex (x) vertical complex`` with the transverse action on the first factor."""
    V = vertical_complex(r, height)
    vkeys = {k: list(range(len(v))) for k, v in V.items()}
    vpiv = {}
    for k, forms in V.items():
        vpiv[k] = _pivoted(forms)
    bases: dict = {}
    bc = base.carrier
    for p in range(bc.min_degree, bc.max_degree + 1):
        for q, vk in vkeys.items():
            for a in bc.basis(p):
                for j in vk:
                    bases.setdefault(p + q, []).append((a, (q, j)))
    carrier = FiniteCarrier(bases)

    def vd(q, j):
        img = V[q][j].d()
        if img.is_zero():
            return {}
        return {(q + 1, i): c for i, c in enumerate(coordinates(vpiv[q + 1], dict(img.terms)))
                if c}

    def d_image(key):
        a, (q, j) = key
        out = {}
        for a2, c in base.d.image(a).items():
            out[(a2, (q, j))] = c
        sign = -1 if carrier_degree(bc, a) % 2 else 1
        for v2, c in vd(q, j).items():
            out[(a, v2)] = out.get((a, v2), 0) + c * sign
        return out

    def lifted(op):
        return lambda key: {(a2, key[1]): c for a2, c in op.image(key[0]).items()}

    d = TableOperator(1, d_image, "d")
    iotas = [TableOperator(-1, lifted(o), o.name) for o in base.iotas]
    lies = [TableOperator(0, lifted(o), o.name) for o in base.lies]
    return GStructure(base.lie, carrier, d, iotas, lies, name=f"{base.name}(x)V{r}"), V


def carrier_degree(carrier: FiniteCarrier, key) -> int:
    return carrier._degree_of[key]


def _pivoted(forms) -> list:
    # vertical basis forms are single monomials, each its own pivot
    return [(_key(f), dict(f.terms)) for f in forms]


def equivariant_basic_thom_check(model: FoliatedModel, r: int, N: int = 4, height: int = 2,
                                 window=None) -> Report:
    """Thom isomorphism for the trivial rank-``r`` bundle over a foliated torus.

    Checks ``pi_* zeta_* = id`` exactly on the truncated basic forms, that
    ``zeta_*`` lands in basic forms of the lifted foliation, and that basic
    and equivariant-basic cohomology dims shift by ``r``.
    """
    rep = Report("equivariant-basic-thom", parameters={"model": model.name, "r": r, "N": N})
    bc = basic_complex(model, N)
    space = ModelSpace(model.space.torus, [f"y{j + 1}" for j in range(r)])
    tau = gaussian_thom_form(space)
    lifted = VectorField(space, {model.space.coords[i]: embed(f, space)
                                 for i, f in model.field.components.items()})
    for k, forms in bc.bases.items():
        for i, a in enumerate(forms):
            z = tau ^ embed(a, space)
            back = fibre_integrate(z, list(space.fiber))
            rep.add(f"pi*zeta/deg{k}/{i}", "pi_* zeta_* = id", back == a,
                    witness=None if back == a else repr(back - a))
            ok = iota(lifted, z).is_zero() and lie(lifted, z).is_zero()
            rep.add(f"zeta-basic/deg{k}/{i}", "zeta_* maps basic forms to basic forms", ok)
    base_h = bc.cohomology()
    vert_h = vertical_cohomology(r, height)
    total = {}
    for p, hp in base_h.items():
        for q, hq in vert_h.items():
            total[p + q] = total.get(p + q, 0) + hp * hq
    shifted = {k + r: v for k, v in base_h.items()}
    ok = all(total.get(k, 0) == shifted.get(k, 0) for k in set(total) | set(shifted))
    rep.add("basic-shift", "H_bas(E_cv) = H_bas(M)[-r]", ok,
            witness={"base": base_h, "total": total})
    if model.transverse:
        S = transverse_action_structure(bc)
        T, _ = _tensor_structure(S, r, height)
        hi = window if window is not None else 2 + r + 2
        hm = equivariant_cohomology(S, (0, hi))
        he = equivariant_cohomology(T, (0, hi + r))
        ok = all(he.get(k + r, 0) == v for k, v in hm.items()) and all(
            he[k] == 0 for k in range(r))
        rep.add("equivariant-shift", "H_g,bas(E_cv) = H_g,bas(M)[-r]", ok,
                witness={"base": hm, "total": he})
    return rep


# -- Gysin sequence ---------------------------------------------------------------------------


class _TruncatedTorusComplex:
    def __init__(self, space: ModelSpace, N: int):
        self.space = space
        self.forms = {k: truncated_basis(space, N, k) for k in range(space.n + 1)}

    def cycles(self, k) -> list:
        forms = self.forms.get(k, [])
        images = [dict(f.d().terms) for f in forms]
        rows, _ = _columns_to_rows(images)
        out = []
        for _, vec in kernel_with_free_columns(rows, len(forms)):
            z = AnalyticForm(self.space)
            for j, c in vec.items():
                z = z + forms[j].scale(c)
            out.append(z)
        return out

    def boundaries(self, k) -> list:
        return [f.d() for f in self.forms.get(k - 1, [])]


def _image_dim(vectors, boundaries) -> int:
    """``dim`` of the span of ``vectors`` in cohomology: ``rank([v | B]) - rank(B)``."""
    return span_rank(list(vectors) + list(boundaries)) - span_rank(boundaries)


def gysin_exactness(N: int = 3, base_dim: int = 1) -> Report:
    """Exactness of ``H^k(M) -> H^k(S) -> H^(k-1)(M) -> H^(k+1)(M)`` for the trivial
    rank-2 bundle over ``M = T^base_dim`` with sphere bundle ``M x S^1``.

    ``e`` is the pullback of the Gaussian Thom form along the zero section.
    """
    rep = Report("gysin", parameters={"N": N, "base_dim": base_dim})
    base = [f"x{i + 1}" for i in range(base_dim)]
    M = ModelSpace(base)
    S = ModelSpace(base + ["t"])
    E = ModelSpace(base, ["y1", "y2"])
    e = zero_section(E).pullback(gaussian_thom_form(E))
    cm, cs = _TruncatedTorusComplex(M, N), _TruncatedTorusComplex(S, N)
    pull = lambda a: embed(a, S)  # noqa: E731
    push = lambda b: fibre_integrate(b, ["t"])  # noqa: E731
    euler = lambda a: e ^ a  # noqa: E731
    nodes = []
    rep.data["H(S)"] = {k: len(cs.cycles(k)) - span_rank(cs.boundaries(k))
                        for k in range(base_dim + 2)}
    for k in range(0, base_dim + 2):
        nodes.append((f"H{k}(M)", cm, k, pull, f"H{k}(S)", cs, k))
        nodes.append((f"H{k}(S)", cs, k, push, f"H{k - 1}(M)", cm, k - 1))
        nodes.append((f"H{k - 1}(M)", cm, k - 1, euler, f"H{k + 1}(M)", cm, k + 1))
    maps = [(a, ca, ka, f, b, cb, kb) for a, ca, ka, f, b, cb, kb in nodes]
    for pos, ((a, ca, ka, f, b, cb, kb), (_, _, _, g, c, cc, kc)) in enumerate(
            zip(maps, maps[1:])):
        zs = ca.cycles(ka) if ka >= 0 else []
        imf = _image_dim([f(z) for z in zs], cb.boundaries(kb))
        zb = cb.cycles(kb) if kb >= 0 else []
        hb = len(zb) - span_rank(cb.boundaries(kb)) if kb >= 0 else 0
        img = _image_dim([g(z) for z in zb], cc.boundaries(kc)) if kb >= 0 else 0
        kerg = hb - img
        comp = _image_dim([g(f(z)) for z in zs], cc.boundaries(kc)) if zs else 0
        ok = imf == kerg and comp == 0
        rep.add(f"exact/{pos}/{b}", "image = kernel", ok,
                witness={"dim_image": imf, "dim_kernel": kerg, "composite": comp})
    return rep
