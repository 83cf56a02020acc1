"""Differential forms on model spaces ``T^n x R^r x I^s``.

Coefficient functions are finite sums of atoms.  An atom is the product of

* a real Fourier mode ``cos`` or ``sin`` of ``2 pi m.x`` on the torus,
* a monomial in the fibre coordinates,
* a Gaussian ``exp(-sum_j g_j y_j^2 / 2)`` with rational weights ``g_j >= 0``,
* on each interval coordinate, ``t^p cos(k pi t / 2)`` or ``t^p sin(k pi t / 2)``.

Every coefficient is an exact :class:`Scalar`; ``pi`` enters as ``omega / 2``.
Fibre integrals put the fibre differentials on the left:
``pi_*(f dy_F ^ a) = (int f) a`` for ``a`` free of fibre differentials.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .report import Report
from .scalars import OMEGA_FLOAT, Scalar

HALF = Fraction(1, 2)


class NotInExactClass(ValueError):
    """Raised when an operation would leave the closed-form coefficient class."""


class IntegrationError(RuntimeError):
    """Raised when quadrature misses its tolerance."""


class ModelSpace:
    """Named coordinates, ordered torus first, then fibre, then interval."""

    def __init__(self, torus=(), fiber=(), interval=()):
        self.torus, self.fiber, self.interval = tuple(torus), tuple(fiber), tuple(interval)
        self.coords = self.torus + self.fiber + self.interval
        if len(set(self.coords)) != len(self.coords):
            raise ValueError(f"coordinate names must be unique: {self.coords}")
        self.n, self.r, self.s = len(self.torus), len(self.fiber), len(self.interval)
        self._index = {c: i for i, c in enumerate(self.coords)}

    @property
    def dim(self):
        return len(self.coords)

    def index(self, name) -> int:
        return self._index[name]

    def kind(self, i) -> str:
        if i < self.n:
            return "torus"
        return "fiber" if i < self.n + self.r else "interval"

    def without(self, names) -> "ModelSpace":
        names = set(names)
        return ModelSpace([c for c in self.torus if c not in names],
                          [c for c in self.fiber if c not in names],
                          [c for c in self.interval if c not in names])

    def with_interval(self, name="t") -> "ModelSpace":
        return ModelSpace(self.torus, self.fiber, self.interval + (name,))

    def __eq__(self, other):
        return isinstance(other, ModelSpace) and (
            (self.torus, self.fiber, self.interval) == (other.torus, other.fiber, other.interval))

    def __hash__(self):
        return hash((self.torus, self.fiber, self.interval))

    def __repr__(self):
        return f"ModelSpace(torus={self.torus}, fiber={self.fiber}, interval={self.interval})"


# -- atoms -----------------------------------------------------------------------


def _canon_trig(kind, m):
    """Normalize ``kind(2 pi m.x)``; returns ``(sign, kind, m)`` or ``None`` for zero."""
    if not any(m):
        return None if kind == "s" else (1, "c", m)
    first = next(v for v in m if v)
    if first < 0:
        m = tuple(-v for v in m)
        return (-1 if kind == "s" else 1), kind, m
    return 1, kind, m


def _trig_product(k1, m1, k2, m2):
    plus = tuple(a + b for a, b in zip(m1, m2))
    minus = tuple(a - b for a, b in zip(m1, m2))
    if k1 == "c" and k2 == "c":
        raw = [(HALF, "c", minus), (HALF, "c", plus)]
    elif k1 == "s" and k2 == "s":
        raw = [(HALF, "c", minus), (-HALF, "c", plus)]
    elif k1 == "s":
        raw = [(HALF, "s", plus), (HALF, "s", minus)]
    else:
        raw = [(HALF, "s", plus), (-HALF, "s", minus)]
    out = {}
    for c, kind, m in raw:
        canon = _canon_trig(kind, m)
        if canon is None:
            continue
        sign, kind, m = canon
        out[(kind, m)] = out.get((kind, m), 0) + sign * c
    return [(c, kind, m) for (kind, m), c in out.items() if c]


def unit_atom(space: ModelSpace):
    return (("c", (0,) * space.n), (0,) * space.r, (Fraction(0),) * space.r,
            ((0, "c", 0),) * space.s)


@lru_cache(maxsize=200000)
def _atom_product(a, b):
    (fa, ya, ga, ia), (fb, yb, gb, ib) = a, b
    fparts = _trig_product(fa[0], fa[1], fb[0], fb[1])
    y = tuple(p + q for p, q in zip(ya, yb))
    g = tuple(p + q for p, q in zip(ga, gb))
    iparts = []
    for (pa, ka, ma), (pb, kb, mb) in zip(ia, ib):
        iparts.append([(c, (pa + pb, kind, m[0]))
                       for c, kind, m in _trig_product(ka, (ma,), kb, (mb,))])
    out: dict = {}
    for combo in itertools.product(fparts, *iparts):
        (c, kind, m), rest = combo[0], combo[1:]
        coeff = c
        for ci, _ in rest:
            coeff *= ci
        atom = ((kind, m), y, g, tuple(part for _, part in rest))
        out[atom] = out.get(atom, 0) + coeff
    return tuple((k, v) for k, v in out.items() if v)


def _quarter_trig(kind, k, value):
    """``cos`` or ``sin`` of ``k pi value / 2`` for ``value`` in {0, 1}."""
    if value == 0:
        return 1 if kind == "c" else 0
    r = k % 4
    if kind == "c":
        return (1, 0, -1, 0)[r]
    return (0, 1, 0, -1)[r]


@lru_cache(maxsize=200000)
def _atom_derivative(atom, space_shape, i):
    """``d atom / d coordinate_i`` as a tuple of ``(Scalar, atom)``."""
    n, r, s = space_shape
    (kind, m), y, g, ip = atom
    out = []
    if i < n:
        if m[i]:
            # d/dx cos(2 pi m x) = -omega m sin, d/dx sin = omega m cos
            if kind == "c":
                out.append((Scalar.omega(1, -m[i]), (("s", m), y, g, ip)))
            else:
                out.append((Scalar.omega(1, m[i]), (("c", m), y, g, ip)))
    elif i < n + r:
        j = i - n
        if y[j]:
            yy = y[:j] + (y[j] - 1,) + y[j + 1:]
            out.append((Scalar(y[j]), ((kind, m), yy, g, ip)))
        if g[j]:
            yy = y[:j] + (y[j] + 1,) + y[j + 1:]
            out.append((Scalar(-g[j]), ((kind, m), yy, g, ip)))
    else:
        j = i - n - r
        p, tk, k = ip[j]
        if p:
            part = ip[:j] + ((p - 1, tk, k),) + ip[j + 1:]
            out.append((Scalar(p), ((kind, m), y, g, part)))
        if k:
            other = "s" if tk == "c" else "c"
            part = ip[:j] + ((p, other, k),) + ip[j + 1:]
            # d/dt cos(k pi t/2) = -(k omega / 4) sin
            c = Fraction(-k, 4) if tk == "c" else Fraction(k, 4)
            out.append((Scalar.omega(1, c), ((kind, m), y, g, part)))
    return tuple(out)


def _atom_value(atom, space: ModelSpace, point):
    """Float (or array) value of an atom; ``point`` indexed by coordinate position."""
    (kind, m), y, g, ip = atom
    n, r = space.n, space.r
    val = 1.0
    if any(m):
        phase = sum(2.0 * math.pi * mi * point[i] for i, mi in enumerate(m) if mi)
        val = np.cos(phase) if kind == "c" else np.sin(phase)
    for j in range(r):
        yj = point[n + j]
        if y[j]:
            val = val * yj ** y[j]
        if g[j]:
            val = val * np.exp(-float(g[j]) * yj * yj / 2.0)
    for j, (p, tk, k) in enumerate(ip):
        t = point[n + r + j]
        if p:
            val = val * t ** p
        if k or tk == "s":
            ang = k * math.pi * t / 2.0
            val = val * (np.cos(ang) if tk == "c" else np.sin(ang))
    return val


def _atom_repr(atom, space: ModelSpace):
    (kind, m), y, g, ip = atom
    parts = []
    if any(m):
        arg = "+".join(f"{mi}*{space.torus[i]}" for i, mi in enumerate(m) if mi)
        parts.append(f"{'cos' if kind == 'c' else 'sin'}(2pi({arg}))")
    for j, e in enumerate(y):
        if e:
            parts.append(f"{space.fiber[j]}^{e}" if e > 1 else space.fiber[j])
    if any(g):
        arg = "+".join(f"{gj}*{space.fiber[j]}^2" for j, gj in enumerate(g) if gj)
        parts.append(f"exp(-({arg})/2)")
    for j, (p, tk, k) in enumerate(ip):
        t = space.interval[j]
        if p:
            parts.append(f"{t}^{p}" if p > 1 else t)
        if k:
            parts.append(f"{'cos' if tk == 'c' else 'sin'}({k}pi{t}/2)")
    return "*".join(parts) or "1"


# -- monomials of differentials ----------------------------------------------------


def _merge_sign(a, b):
    """Sign of ``dx_a ^ dx_b`` relative to the sorted merge, or 0."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for i in a for j in b if i > j)
    return -1 if inversions % 2 else 1


# -- forms ----------------------------------------------------------------------


class AnalyticForm:
    """Finite sum ``sum coeff * atom * dx_I`` on a :class:`ModelSpace`."""

    __slots__ = ("space", "terms")

    def __init__(self, space: ModelSpace, terms=None):
        self.space = space
        self.terms = {k: Scalar.coerce(v) for k, v in (terms or {}).items() if v}
        self.terms = {k: v for k, v in self.terms.items() if not v.is_zero()}

    # construction
    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def constant(cls, space, c=1):
        return cls(space, {(unit_atom(space), ()): c})

    @classmethod
    def coordinate(cls, space, name):
        """The coordinate function of a fibre or interval coordinate."""
        i = space.index(name)
        atom = unit_atom(space)
        kind = space.kind(i)
        if kind == "fiber":
            j = i - space.n
            y = list(atom[1])
            y[j] = 1
            atom = (atom[0], tuple(y), atom[2], atom[3])
        elif kind == "interval":
            j = i - space.n - space.r
            ip = list(atom[3])
            ip[j] = (1, "c", 0)
            atom = (atom[0], atom[1], atom[2], tuple(ip))
        else:
            raise ValueError("torus coordinates are not global functions")
        return cls(space, {(atom, ()): 1})

    @classmethod
    def fourier(cls, space, m, kind="c", c=1):
        canon = _canon_trig(kind, tuple(m))
        if canon is None:
            return cls(space)
        sign, kind, m = canon
        a = unit_atom(space)
        return cls(space, {(((kind, m), a[1], a[2], a[3]), ()): Scalar.coerce(c) * sign})

    @classmethod
    def gaussian(cls, space, weights=None):
        """``exp(-sum g_j y_j^2 / 2)``, all weights 1 by default."""
        if weights is None:
            weights = [1] * space.r
        a = unit_atom(space)
        return cls(space, {((a[0], a[1], tuple(Fraction(w) for w in weights), a[3]), ()): 1})

    @classmethod
    def interval_trig(cls, space, name, k, kind="c", power=0):
        j = space.index(name) - space.n - space.r
        if not 0 <= j < space.s:
            raise ValueError(f"{name} is not an interval coordinate")
        if k < 0:
            k = -k
            sign = -1 if kind == "s" else 1
        else:
            sign = 1
        if kind == "s" and k == 0:
            return cls(space)
        a = unit_atom(space)
        ip = list(a[3])
        ip[j] = (power, kind, k)
        return cls(space, {((a[0], a[1], a[2], tuple(ip)), ()): sign})

    @classmethod
    def dx(cls, space, *names):
        out = cls.constant(space)
        for nm in names:
            out = out ^ cls(space, {(unit_atom(space), (space.index(nm),)): 1})
        return out

    # inspection
    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(mono) for _, mono in self.terms})

    @property
    def degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous: degrees {degs}")
        return degs[0] if degs else 0

    def component(self, degree):
        return AnalyticForm(self.space, {k: v for k, v in self.terms.items()
                                         if len(k[1]) == degree})

    def _check(self, other):
        if not isinstance(other, AnalyticForm) or other.space != self.space:
            raise ValueError("forms live on different model spaces")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = AnalyticForm.constant(self.space, other)
        return isinstance(other, AnalyticForm) and self.space == other.space and \
            self.terms == other.terms

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    # arithmetic
    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = AnalyticForm.constant(self.space, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return AnalyticForm(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return AnalyticForm(self.space, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Scalar.coerce(c)
        return AnalyticForm(self.space, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AnalyticForm):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __xor__(self, other):
        return self.wedge(other)

    def wedge(self, other: "AnalyticForm") -> "AnalyticForm":
        self._check(other)
        out: dict = {}
        for (a, ma), ca in self.terms.items():
            for (b, mb), cb in other.terms.items():
                sign = _merge_sign(ma, mb)
                if not sign:
                    continue
                mono = tuple(sorted(ma + mb))
                c = ca * cb
                if sign < 0:
                    c = -c
                for atom, q in _atom_product(a, b):
                    key = (atom, mono)
                    val = c * q
                    out[key] = out[key] + val if key in out else val
        return AnalyticForm(self.space, out)

    # calculus
    def partial(self, name_or_index) -> "AnalyticForm":
        i = name_or_index if isinstance(name_or_index, int) else self.space.index(name_or_index)
        shape = (self.space.n, self.space.r, self.space.s)
        out: dict = {}
        for (atom, mono), c in self.terms.items():
            for q, new in _atom_derivative(atom, shape, i):
                key = (new, mono)
                val = c * q
                out[key] = out[key] + val if key in out else val
        return AnalyticForm(self.space, out)

    def d(self) -> "AnalyticForm":
        shape = (self.space.n, self.space.r, self.space.s)
        out: dict = {}
        for (atom, mono), c in self.terms.items():
            for i in range(self.space.dim):
                if i in mono:
                    continue
                ders = _atom_derivative(atom, shape, i)
                if not ders:
                    continue
                sign = _merge_sign((i,), mono)
                new_mono = tuple(sorted((i,) + mono))
                for q, new in ders:
                    key = (new, new_mono)
                    val = c * q if sign > 0 else -(c * q)
                    out[key] = out[key] + val if key in out else val
        return AnalyticForm(self.space, out)

    def evaluate(self, point) -> dict:
        """Numeric values ``{mono (names): float}``; ``point`` maps names to floats."""
        pt = _as_point(self.space, point)
        out: dict = {}
        for (atom, mono), c in self.terms.items():
            key = tuple(self.space.coords[i] for i in mono)
            out[key] = out.get(key, 0.0) + _float(c) * _atom_value(atom, self.space, pt)
        return out

    def restrict_to(self, space: ModelSpace) -> "AnalyticForm":
        """Reinterpret on a space with the same coordinates in the same order."""
        if space.coords != self.space.coords or (space.n, space.r) != (self.space.n, self.space.r):
            raise ValueError("incompatible model spaces")
        return AnalyticForm(space, self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (atom, mono), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], repr(kv[0][0]))):
            dx = "^".join("d" + self.space.coords[i] for i in mono)
            body = _atom_repr(atom, self.space)
            parts.append(f"({c})*{body}" + (f" {dx}" if dx else ""))
        return " + ".join(parts)


def _float(c: Scalar) -> float:
    return c.to_float()


def _as_point(space, point):
    if isinstance(point, dict):
        return [point.get(c, 0.0) for c in space.coords]
    return list(point)


# -- vector fields -------------------------------------------------------------


class VectorField:
    """``sum_i v_i d/dx_i`` with 0-form components."""

    def __init__(self, space: ModelSpace, components: dict):
        self.space = space
        self.components = {}
        for name, f in components.items():
            if not isinstance(f, AnalyticForm):
                f = AnalyticForm.constant(space, f)
            if f.space != space or any(mono for _, mono in f.terms):
                raise ValueError(f"component {name} must be a function on {space}")
            if not f.is_zero():
                self.components[space.index(name)] = f

    def apply(self, f: AnalyticForm) -> AnalyticForm:
        out = AnalyticForm(self.space)
        for i, vi in self.components.items():
            out = out + vi * f.partial(i)
        return out

    def __repr__(self):
        return " + ".join(f"({v})d/d{self.space.coords[i]}" for i, v in self.components.items()) or "0"


def iota(v: VectorField, form: AnalyticForm) -> AnalyticForm:
    """Contraction ``iota(v)``: removes ``dx_i`` at position ``p`` with sign ``(-1)^p``."""
    out = AnalyticForm(form.space)
    for i, vi in v.components.items():
        terms = {}
        for (atom, mono), c in form.terms.items():
            if i not in mono:
                continue
            p = mono.index(i)
            key = (atom, mono[:p] + mono[p + 1:])
            val = c if p % 2 == 0 else -c
            terms[key] = terms[key] + val if key in terms else val
        out = out + vi * AnalyticForm(form.space, terms)
    return out


def lie(v: VectorField, form: AnalyticForm) -> AnalyticForm:
    """Lie derivative by Cartan's formula ``iota d + d iota``."""
    return iota(v, form.d()) + iota(v, form).d()


def lie_direct(v: VectorField, form: AnalyticForm) -> AnalyticForm:
    """Lie derivative from coefficient derivatives and ``L(v) dx_i = d v_i``."""
    space = form.space
    out = AnalyticForm(space)
    dvs = {i: v.components[i].d() if i in v.components else AnalyticForm(space)
           for i in range(space.dim)}
    for (atom, mono), c in form.terms.items():
        f = AnalyticForm(space, {(atom, ()): c})
        out = out + (v.apply(f) ^ _dx_mono(space, mono))
        for p, i in enumerate(mono):
            piece = f ^ _dx_mono(space, mono[:p]) ^ dvs[i] ^ _dx_mono(space, mono[p + 1:])
            out = out + piece
    return out


def _dx_mono(space, mono):
    return AnalyticForm(space, {(unit_atom(space), tuple(mono)): 1})


# -- maps ------------------------------------------------------------------------


class ModelMap:
    """A map ``source -> target`` given by coordinate images.

    ``images`` maps each target coordinate to one of

    * ``("torus", source_name, {interval_name: shift})``: ``x -> x' + sum shift * t``
      with ``4 * shift`` integral,
    * ``("fiber", {source_fiber: coefficient})``: a linear combination whose
      coefficients are functions of the interval coordinates,
    * ``("interval", source_name)`` or ``("const", 0 | 1)``.
    """

    def __init__(self, source: ModelSpace, target: ModelSpace, images: dict, name="map"):
        self.source, self.target, self.name = source, target, name
        if set(images) != set(target.coords):
            raise ValueError(f"{name}: images must cover every target coordinate")
        self.images = {}
        for c in target.coords:
            entry = images[c]
            kind = target.kind(target.index(c))
            if kind == "torus":
                _, src, shifts = entry
                if source.kind(source.index(src)) != "torus":
                    raise ValueError(f"{name}: torus coordinate {c} must map to a torus coordinate")
                shifts = {t: Fraction(lam) for t, lam in shifts.items() if lam}
                for t, lam in shifts.items():
                    if (4 * lam).denominator != 1:
                        raise NotInExactClass(f"{name}: shift {lam} is not a multiple of 1/4")
                self.images[c] = ("torus", src, shifts)
            elif kind == "fiber":
                _, combo = entry
                clean = {}
                for src, coeff in combo.items():
                    if source.kind(source.index(src)) != "fiber":
                        raise ValueError(f"{name}: fibre coordinate {c} must map into fibre coordinates")
                    if not isinstance(coeff, AnalyticForm):
                        coeff = AnalyticForm.constant(source, coeff)
                    for atom, mono in coeff.terms:
                        if mono or any(atom[0][1]) or any(atom[1]) or any(atom[2]):
                            raise ValueError(f"{name}: fibre coefficients may depend on "
                                             "interval coordinates only")
                    if not coeff.is_zero():
                        clean[src] = coeff
                self.images[c] = ("fiber", clean)
            else:
                if entry[0] == "const":
                    if entry[1] not in (0, 1):
                        raise ValueError("interval coordinates may only be frozen at 0 or 1")
                    self.images[c] = entry
                else:
                    src = entry[1]
                    if source.kind(source.index(src)) != "interval":
                        raise ValueError(f"{name}: interval coordinate {c} must map to an interval")
                    self.images[c] = ("interval", src)
        self._atom_cache: dict = {}
        self._mono_cache: dict = {}
        self._fiber_forms = {}
        for c, entry in self.images.items():
            if entry[0] == "fiber":
                f = AnalyticForm(source)
                for src, coeff in entry[1].items():
                    f = f + coeff * AnalyticForm.coordinate(source, src)
                self._fiber_forms[c] = f

    def coordinate_differential(self, c) -> AnalyticForm:
        entry = self.images[c]
        S = self.source
        if entry[0] == "torus":
            out = AnalyticForm.dx(S, entry[1])
            for t, lam in entry[2].items():
                out = out + AnalyticForm.dx(S, t).scale(lam)
            return out
        if entry[0] == "fiber":
            return self._fiber_forms[c].d()
        if entry[0] == "interval":
            return AnalyticForm.dx(S, entry[1])
        return AnalyticForm(S)

    def _compose_atom(self, atom) -> AnalyticForm:
        if atom in self._atom_cache:
            return self._atom_cache[atom]
        S, T = self.source, self.target
        (kind, m), y, g, ip = atom
        # Fourier part
        src_m = [0] * S.n
        interval_k: dict = {}
        for i, mi in enumerate(m):
            if not mi:
                continue
            _, src, shifts = self.images[T.torus[i]]
            src_m[S.index(src)] += mi
            for t, lam in shifts.items():
                interval_k[t] = interval_k.get(t, 0) + int(4 * lam * mi)
        C = AnalyticForm.fourier(S, src_m, "c")
        Sn = AnalyticForm.fourier(S, src_m, "s")
        for t, k in interval_k.items():
            if not k:
                continue
            cb = AnalyticForm.interval_trig(S, t, k, "c")
            sb = AnalyticForm.interval_trig(S, t, k, "s")
            C, Sn = C * cb - Sn * sb, Sn * cb + C * sb
        out = C if kind == "c" else Sn
        # fibre polynomial
        for j, e in enumerate(y):
            if e:
                phi = self._fiber_forms[T.fiber[j]]
                for _ in range(e):
                    out = out * phi
        # Gaussian
        if any(g):
            Q = AnalyticForm(S)
            for j, gj in enumerate(g):
                if gj:
                    phi = self._fiber_forms[T.fiber[j]]
                    Q = Q + (phi * phi).scale(gj)
            weights = [Fraction(0)] * S.r
            unit = unit_atom(S)
            for (qa, mono), c in Q.terms.items():
                (qk, qm), qy, qg, qi = qa
                ok = (not any(qm) and not any(qg) and qi == unit[3] and sum(qy) == 2
                      and max(qy) == 2 and c.is_rational())
                if not ok:
                    raise NotInExactClass(f"{self.name}: pulled-back Gaussian is not a "
                                          f"constant diagonal quadratic ({_atom_repr(qa, S)})")
                weights[qy.index(2)] = c.rational_value()
            if any(w < 0 for w in weights):
                raise NotInExactClass(f"{self.name}: negative Gaussian weight")
            if any(weights):
                out = out * AnalyticForm.gaussian(S, weights)
        # interval part
        for j, (p, tk, k) in enumerate(ip):
            if not p and not k and tk == "c":
                continue
            entry = self.images[T.interval[j]]
            if entry[0] == "const":
                v = entry[1]
                val = (v ** p if p else 1) * _quarter_trig(tk, k, v)
                out = out.scale(val)
            else:
                out = out * AnalyticForm.interval_trig(S, entry[1], k, tk, power=p)
        self._atom_cache[atom] = out
        return out

    def _pull_mono(self, mono) -> AnalyticForm:
        if mono not in self._mono_cache:
            out = AnalyticForm.constant(self.source)
            for i in mono:
                out = out ^ self.coordinate_differential(self.target.coords[i])
            self._mono_cache[mono] = out
        return self._mono_cache[mono]

    def pullback(self, form: AnalyticForm) -> AnalyticForm:
        if form.space != self.target:
            raise ValueError(f"{self.name}: form lives on {form.space}, map target is {self.target}")
        out = AnalyticForm(self.source)
        by_mono: dict = {}
        for (atom, mono), c in form.terms.items():
            by_mono.setdefault(mono, []).append((atom, c))
        for mono, atoms in by_mono.items():
            f = AnalyticForm(self.source)
            for atom, c in atoms:
                f = f + self._compose_atom(atom).scale(c)
            out = out + f * self._pull_mono(mono)
        return out

    def point_image(self, point) -> list:
        """Numeric image of a source point (names or positional)."""
        pt = _as_point(self.source, point)
        vals = dict(zip(self.source.coords, pt))
        out = []
        for c in self.target.coords:
            entry = self.images[c]
            if entry[0] == "torus":
                out.append(vals[entry[1]] + sum(float(lam) * vals[t] for t, lam in entry[2].items()))
            elif entry[0] == "fiber":
                out.append(sum(float(_scalar_eval(coeff, self.source, pt)) * vals[src]
                               for src, coeff in entry[1].items()))
            elif entry[0] == "interval":
                out.append(vals[entry[1]])
            else:
                out.append(float(entry[1]))
        return out

    def __repr__(self):
        return f"ModelMap({self.name})"


def _scalar_eval(f: AnalyticForm, space, pt):
    return sum(_float(c) * _atom_value(atom, space, pt) for (atom, _), c in f.terms.items())


# -- the map catalog -----------------------------------------------------------------


def bundle_space(r, torus=(), prefix="y") -> ModelSpace:
    return ModelSpace(torus, [f"{prefix}{j + 1}" for j in range(r)])


def direct_sum_space(E: ModelSpace) -> ModelSpace:
    r = E.r
    return ModelSpace(E.torus, [f"a{j + 1}" for j in range(r)] + [f"b{j + 1}" for j in range(r)])


def _torus_identity(source, target):
    return {c: ("torus", c, {}) for c in target.torus}


def _linear_fiber_map(source, target, matrix, name, interval=()):
    images = _torus_identity(source, target)
    for c, row in zip(target.fiber, matrix):
        images[c] = ("fiber", row)
    for c in target.interval:
        images[c] = ("interval", c)
    return ModelMap(source, target, images, name)


def p1_map(E: ModelSpace) -> ModelMap:
    """``E + E -> E``, ``(a, b) -> a``."""
    S = direct_sum_space(E)
    return _linear_fiber_map(S, E, [{f"a{j + 1}": 1} for j in range(E.r)], "p1")


def p2_map(E: ModelSpace) -> ModelMap:
    S = direct_sum_space(E)
    return _linear_fiber_map(S, E, [{f"b{j + 1}": 1} for j in range(E.r)], "p2")


def rotation_map(E: ModelSpace, t="t") -> ModelMap:
    """``[0,1] x (E + E) -> E + E``, a quarter turn at ``t = 1``."""
    T = direct_sum_space(E)
    S = T.with_interval(t)
    c = AnalyticForm.interval_trig(S, t, 1, "c")
    s = AnalyticForm.interval_trig(S, t, 1, "s")
    rows = [{f"a{j + 1}": c, f"b{j + 1}": -s} for j in range(E.r)]
    rows += [{f"a{j + 1}": s, f"b{j + 1}": c} for j in range(E.r)]
    images = _torus_identity(S, T)
    for name, row in zip(T.fiber, rows):
        images[name] = ("fiber", row)
    return ModelMap(S, T, images, "rotation")


def quarter_turn_map(E: ModelSpace) -> ModelMap:
    T = direct_sum_space(E)
    rows = [{f"b{j + 1}": -1} for j in range(E.r)] + [{f"a{j + 1}": 1} for j in range(E.r)]
    return _linear_fiber_map(T, T, rows, "quarter-turn")


def reflection_map(E: ModelSpace) -> ModelMap:
    T = direct_sum_space(E)
    rows = [{f"a{j + 1}": 1} for j in range(E.r)] + [{f"b{j + 1}": -1} for j in range(E.r)]
    return _linear_fiber_map(T, T, rows, "reflection")


def swap_map(E: ModelSpace) -> ModelMap:
    T = direct_sum_space(E)
    rows = [{f"b{j + 1}": 1} for j in range(E.r)] + [{f"a{j + 1}": 1} for j in range(E.r)]
    return _linear_fiber_map(T, T, rows, "swap")


def scaling_map(E: ModelSpace, t=None, name="t") -> ModelMap:
    """``v -> t v``: a fixed rational ``t``, or the family over ``[0,1] x E``."""
    if t is not None:
        return _linear_fiber_map(E, E, [{c: Fraction(t)} for c in E.fiber], f"scale({t})")
    S = E.with_interval(name)
    tt = AnalyticForm.coordinate(S, name)
    images = _torus_identity(S, E)
    for c in E.fiber:
        images[c] = ("fiber", {c: tt})
    return ModelMap(S, E, images, "scaling")


def slice_inclusion(X: ModelSpace, value, name="t") -> ModelMap:
    """``X -> X x [0,1]`` at ``t = value``."""
    T = X.with_interval(name)
    images = _torus_identity(X, T)
    for c in X.fiber:
        images[c] = ("fiber", {c: 1})
    for c in X.interval:
        images[c] = ("interval", c)
    images[name] = ("const", value)
    return ModelMap(X, T, images, f"i{value}")


def cylinder_projection(X: ModelSpace, name="t") -> ModelMap:
    S = X.with_interval(name)
    images = _torus_identity(S, X)
    for c in X.fiber:
        images[c] = ("fiber", {c: 1})
    for c in X.interval:
        images[c] = ("interval", c)
    return ModelMap(S, X, images, "cylinder-projection")


def zero_section(E: ModelSpace) -> ModelMap:
    B = ModelSpace(E.torus, (), E.interval)
    images = _torus_identity(B, E)
    for c in E.fiber:
        images[c] = ("fiber", {})
    for c in E.interval:
        images[c] = ("interval", c)
    return ModelMap(B, E, images, "zero-section")


def bundle_projection(E: ModelSpace) -> ModelMap:
    B = ModelSpace(E.torus, (), E.interval)
    images = _torus_identity(E, B)
    for c in E.interval:
        images[c] = ("interval", c)
    return ModelMap(E, B, images, "bundle-projection")


def torus_translation(X: ModelSpace, shifts: dict, name="t") -> ModelMap:
    """``[0,1] x X -> X``, ``x_i -> x_i + shift_i t``."""
    S = X.with_interval(name)
    images = {c: ("torus", c, {name: shifts.get(c, 0)}) for c in X.torus}
    for c in X.fiber:
        images[c] = ("fiber", {c: 1})
    for c in X.interval:
        images[c] = ("interval", c)
    return ModelMap(S, X, images, "translation")


# -- fibre integration ------------------------------------------------------------


def _gaussian_moment(n, g):
    """``int y^n exp(-g y^2/2) dy`` exactly."""
    if g <= 0:
        return None
    if n % 2:
        return Scalar(0)
    root = Fraction(math.isqrt(g.numerator), math.isqrt(g.denominator))
    if root * root != g:
        raise NotInExactClass(f"Gaussian weight {g} is not a rational square")
    dfact = 1
    for k in range(n - 1, 0, -2):
        dfact *= k
    # (n-1)!! omega^(1/2) g^(-(n+1)/2)
    return Scalar.omega(HALF, Fraction(dfact) / root ** (n + 1))


@lru_cache(maxsize=None)
def _interval_moment(p, kind, k):
    """``int_0^1 t^p trig(k pi t / 2) dt`` exactly."""
    if k == 0:
        return Scalar(Fraction(1, p + 1)) if kind == "c" else Scalar(0)
    inv_a = Scalar.omega(-1, Fraction(4, k))
    if kind == "c":
        out = inv_a * _quarter_trig("s", k, 1)
        if p:
            out = out - inv_a * p * _interval_moment(p - 1, "s", k)
        return out
    out = inv_a * (1 - _quarter_trig("c", k, 1)) if p == 0 else inv_a * (-_quarter_trig("c", k, 1))
    if p:
        out = out + inv_a * p * _interval_moment(p - 1, "c", k)
    return out


def _move_front_sign(mono, F):
    rest = [i for i in mono if i not in F]
    inversions = sum(1 for a in rest for b in F if a < b)
    return -1 if inversions % 2 else 1


def fibre_integrate(form: AnalyticForm, names) -> AnalyticForm:
    """Integrate over the listed fibre coordinates (a copy of ``R^k``) or a single interval.

    The fibre differentials are moved to the left; the remaining factor is
    the result.  Fibre coordinates require positive Gaussian weights.
    """
    space = form.space
    names = [names] if isinstance(names, str) else list(names)
    idx = sorted(space.index(c) for c in names)
    kinds = {space.kind(i) for i in idx}
    if kinds == {"interval"} and len(idx) == 1:
        mode = "interval"
    elif kinds == {"fiber"}:
        mode = "fiber"
    elif kinds == {"torus"}:
        mode = "torus"
    else:
        raise ValueError("integrate over fibre coordinates, one interval or torus coordinates")
    base = space.without(names)
    keep = [i for i in range(space.dim) if i not in idx]
    remap = {old: new for new, old in enumerate(keep)}
    out: dict = {}
    for (atom, mono), c in form.terms.items():
        if not all(i in mono for i in idx):
            continue
        sign = _move_front_sign(mono, idx)
        (kind, m), y, g, ip = atom
        factor = Scalar(sign)
        if mode == "fiber":
            for i in idx:
                j = i - space.n
                mom = _gaussian_moment(y[j], g[j])
                if mom is None:
                    raise NotInExactClass(f"non-integrable atom {_atom_repr(atom, space)} "
                                          f"along {space.coords[i]}")
                factor = factor * mom
            fj = [j for j in range(space.r) if j + space.n not in idx]
            new_atom = ((kind, m), tuple(y[j] for j in fj), tuple(g[j] for j in fj), ip)
        elif mode == "interval":
            j = idx[0] - space.n - space.r
            p, tk, k = ip[j]
            factor = factor * _interval_moment(p, tk, k)
            new_atom = ((kind, m), y, g, ip[:j] + ip[j + 1:])
        else:
            if any(m[i] for i in idx):
                continue
            mm = tuple(m[i] for i in range(space.n) if i not in idx)
            canon = _canon_trig(kind, mm)
            if canon is None:
                continue
            sg, kind2, mm = canon
            factor = factor * sg
            new_atom = ((kind2, mm), y, g, ip)
        if factor.is_zero():
            continue
        new_mono = tuple(remap[i] for i in mono if i not in idx)
        key = (new_atom, new_mono)
        val = c * factor
        out[key] = out[key] + val if key in out else val
    return AnalyticForm(base, out)


def embed(form: AnalyticForm, space: ModelSpace) -> AnalyticForm:
    """View a form as living on a larger space containing its coordinates."""
    src = form.space
    for c in src.coords:
        if c not in space.coords or space.kind(space.index(c)) != src.kind(src.index(c)):
            raise ValueError(f"{space} does not contain {src}")
    tpos = [space.index(c) for c in src.torus]
    fpos = [space.index(c) - space.n for c in src.fiber]
    ipos = [space.index(c) - space.n - space.r for c in src.interval]
    unit = unit_atom(space)
    out = {}
    for (atom, mono), c in form.terms.items():
        (kind, m), y, g, ip = atom
        mm, yy, gg, ii = list(unit[0][1]), list(unit[1]), list(unit[2]), list(unit[3])
        for a, b in zip(tpos, m):
            mm[a] = b
        for a, b, w in zip(fpos, y, g):
            yy[a], gg[a] = b, w
        for a, b in zip(ipos, ip):
            ii[a] = b
        canon = _canon_trig(kind, tuple(mm))
        if canon is None:
            continue
        tsign, kind, mm = canon
        c = c * tsign
        idx = [space.index(src.coords[i]) for i in mono]
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        key = (((kind, tuple(mm)), tuple(yy), tuple(gg), tuple(ii)), tuple(idx[k] for k in order))
        val = c if inv % 2 == 0 else -c
        out[key] = out[key] + val if key in out else val
    return AnalyticForm(space, out)


# -- identity checks -----------------------------------------------------------------


def stokes_check(form: AnalyticForm, names, label="stokes") -> Report:
    """``[pi_*, d] = 0`` over ``R^r`` and ``pi_* d + d pi_* = i_1^* - i_0^*`` over ``[0,1]``."""
    space = form.space
    names = [names] if isinstance(names, str) else list(names)
    rep = Report(label)
    left = fibre_integrate(form.d(), names)
    if space.kind(space.index(names[0])) == "interval":
        right_d = fibre_integrate(form, names).d()
        base = space.without(names)
        t = names[0]
        # restrict to the slices t = 0, 1 of base x [0,1]
        reordered = ModelSpace(base.torus, base.fiber, base.interval + (t,))
        moved = _reorder(form, reordered)
        boundary = (slice_inclusion(base, 1, t).pullback(moved)
                    - slice_inclusion(base, 0, t).pullback(moved))
        diff = left + right_d - boundary
        rep.add(label, "[pi_*, d] = boundary term", diff.is_zero(),
                witness=None if diff.is_zero() else repr(diff))
    else:
        r = len(names)
        diff = left - fibre_integrate(form, names).d().scale((-1) ** r)
        rep.add(label, "[pi_*, d] = 0 for fibres without boundary", diff.is_zero(),
                witness=None if diff.is_zero() else repr(diff))
    return rep


def _reorder(form: AnalyticForm, space: ModelSpace) -> AnalyticForm:
    """Same form, coordinates permuted within their kinds."""
    return embed(form, space)


def projection_formula_check(beta: AnalyticForm, alpha: AnalyticForm, names,
                             label="projection") -> Report:
    """``pi_*(beta ^ pi^* alpha) = pi_* beta ^ alpha``."""
    rep = Report(label)
    pulled = embed(alpha, beta.space)
    left = fibre_integrate(beta ^ pulled, names)
    right = fibre_integrate(beta, names) ^ alpha
    diff = left - right
    rep.add(label, "pi_*(beta ^ pi^* alpha) = pi_* beta ^ alpha", diff.is_zero(),
            witness=None if diff.is_zero() else repr(diff))
    return rep


def homotopy_formula_check(h: ModelMap, beta: AnalyticForm, name="t",
                           label="homotopy") -> Report:
    """``h_1^* - h_0^* = d pi_* h^* + pi_* h^* d`` for ``h: X x [0,1] -> Y``."""
    rep = Report(label)
    X = h.source.without([name])
    hb = h.pullback(beta)
    hdb = h.pullback(beta.d())
    moved = _reorder(hb, X.with_interval(name))
    left = (slice_inclusion(X, 1, name).pullback(moved)
            - slice_inclusion(X, 0, name).pullback(moved))
    right = fibre_integrate(hb, [name]).d() + fibre_integrate(hdb, [name])
    diff = left - right
    rep.add(label, "h_1^* - h_0^* = d pi_* h^* + pi_* h^* d", diff.is_zero(),
            witness=None if diff.is_zero() else repr(diff))
    return rep


def related_vector_field_check(v_base: VectorField, w_total: VectorField,
                               form: AnalyticForm, names, label="related") -> Report:
    """``iota(v) pi_* = (-1)^r pi_* iota(w)`` and ``L(v) pi_* = pi_* L(w)``."""
    names = [names] if isinstance(names, str) else list(names)
    total, base = w_total.space, v_base.space
    if base != total.without(names):
        raise ValueError("base vector field must live on the base of the fibration")
    for i in range(base.dim):
        c = base.coords[i]
        vi = v_base.components.get(i, AnalyticForm(base))
        wi = w_total.components.get(total.index(c), AnalyticForm(total))
        if embed(vi, total) != wi:
            raise ValueError(f"vector fields are not related along {c}")
    r = len(names) if total.kind(total.index(names[0])) == "fiber" else 1
    rep = Report(label)
    push = fibre_integrate(form, names)
    diff = iota(v_base, push) - fibre_integrate(iota(w_total, form), names).scale((-1) ** r)
    rep.add(f"{label}/iota", "iota(v) pi_* = (-1)^r pi_* iota(w)", diff.is_zero(),
            witness=None if diff.is_zero() else repr(diff))
    diff = lie(v_base, push) - fibre_integrate(lie(w_total, form), names)
    rep.add(f"{label}/lie", "L(v) pi_* = pi_* L(w)", diff.is_zero(),
            witness=None if diff.is_zero() else repr(diff))
    return rep


# -- numerics ------------------------------------------------------------------------


def numeric_eval(form: AnalyticForm, point) -> dict:
    """``{monomial names: value}`` at a point; the zero form gives ``{}``."""
    return form.evaluate(point)


def numeric_integral(form: AnalyticForm, region: dict, tolerance=1e-10, at=None,
                     limit=200) -> float:
    """Adaptive quadrature of the top part over ``region`` (``name -> (lo, hi)``).

    Coordinates outside ``region`` are frozen at ``at``.  Orientation follows
    coordinate order.
    """
    space = form.space
    names = sorted(region, key=space.index)
    mono = tuple(space.index(c) for c in names)
    fixed = _as_point(space, at or {})
    pieces = [(atom, _float(c)) for (atom, m), c in form.terms.items() if m == mono]
    if not pieces:
        return 0.0
    if any(m != mono and set(mono) <= set(m) for (_, m) in form.terms):
        raise ValueError("form has components of higher degree along the region")

    def integrand(*xs):
        pt = list(fixed)
        for c, x in zip(names, xs):
            pt[space.index(c)] = x
        return sum(c * _atom_value(atom, space, pt) for atom, c in pieces)

    ranges = [region[c] for c in names]
    val, err = integrate.nquad(integrand, ranges, opts={"epsabs": tolerance * 0.1,
                                                        "epsrel": 0, "limit": limit})
    if err > tolerance:
        raise IntegrationError(f"quadrature error estimate {err:.3e} exceeds {tolerance:.1e} "
                               f"(value {val!r})")
    return float(val)


def numeric_pullback(form: AnalyticForm, fn, jac, point, source_dim) -> dict:
    """``(F^* form)(p)`` for a smooth map ``F`` given numerically.

    ``fn(p)`` returns the target point, ``jac(p)`` the Jacobian
    ``d target_i / d source_j``.  Keys are tuples of source indices.
    """
    q = fn(point)
    J = np.asarray(jac(point), dtype=float)
    vals = form.evaluate(q)
    space = form.space
    out: dict = {}
    for names, c in vals.items():
        rows = [space.index(nm) for nm in names]
        k = len(rows)
        for cols in itertools.combinations(range(source_dim), k):
            det = np.linalg.det(J[np.ix_(rows, cols)]) if k else 1.0
            if det:
                out[cols] = out.get(cols, 0.0) + c * det
    return out


def numeric_exterior_derivative(fn, point, step=1e-3) -> dict:
    """Fourth-order central differences of a form-valued function.

    ``fn(p)`` returns ``{tuple of coordinate indices: value}``.
    """
    point = np.asarray(point, dtype=float)
    dim = len(point)
    out: dict = {}
    for i in range(dim):
        def at(h):
            p = point.copy()
            p[i] += h
            return fn(p)
        samples = [(at(2 * step), -1.0), (at(step), 8.0), (at(-step), -8.0), (at(-2 * step), 1.0)]
        keys = set().union(*(s.keys() for s, _ in samples))
        for key in keys:
            if i in key:
                continue
            deriv = sum(w * s.get(key, 0.0) for s, w in samples) / (12 * step)
            sign = _merge_sign((i,), key)
            new = tuple(sorted((i,) + key))
            out[new] = out.get(new, 0.0) + sign * deriv
    return out


def sup_distance(a: dict, b: dict) -> float:
    keys = set(a) | set(b)
    return max((abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys), default=0.0)


def indexed(values: dict, space: ModelSpace) -> dict:
    """Convert name-keyed numeric output to index keys."""
    return {tuple(space.index(c) for c in k): v for k, v in values.items()}


# -- random samples ------------------------------------------------------------------


def random_function(space: ModelSpace, rng, terms=2, max_mode=1, max_power=2,
                    gaussian=True, max_k=2) -> AnalyticForm:
    out = AnalyticForm(space)
    for _ in range(terms):
        f = AnalyticForm.constant(space, Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2)))
        if space.n:
            m = [rng.randint(-max_mode, max_mode) for _ in range(space.n)]
            f = f * AnalyticForm.fourier(space, m, rng.choice("cs") if any(m) else "c")
        for c in space.fiber:
            for _ in range(rng.randint(0, max_power)):
                f = f * AnalyticForm.coordinate(space, c)
        for c in space.interval:
            f = f * AnalyticForm.interval_trig(space, c, rng.randint(0, max_k), rng.choice("cs"),
                                               power=rng.randint(0, 1))
        out = out + f
    if gaussian and space.r:
        out = out * AnalyticForm.gaussian(space)
    return out


def random_form(space: ModelSpace, rng, degree, terms=2, **kw) -> AnalyticForm:
    out = AnalyticForm(space)
    monos = list(itertools.combinations(range(space.dim), degree))
    if not monos:
        return out
    for _ in range(terms):
        mono = rng.choice(monos)
        out = out + (random_function(space, rng, terms=1, **kw) ^ _dx_mono(space, mono))
    return out


OMEGA = OMEGA_FLOAT
