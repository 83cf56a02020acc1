"""Free graded-commutative algebras, derivations and algebra maps.

A monomial is a tuple of exponents, one per generator, in declaration
order.  Odd generators have exponent 0 or 1.  Multiplying two monomials
sorts the factors back into declaration order and picks up a sign for
every transposition of two odd generators.
"""

from __future__ import annotations

from functools import lru_cache


class GeneratorSet:
    """Ordered named generators with integer degrees (possibly negative)."""

    def __init__(self, generators, parities=None):
        generators = [(str(n), int(d)) for n, d in generators]
        names = [n for n, _ in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names = tuple(names)
        self.degrees = tuple(d for _, d in generators)
        # parity defaults to degree mod 2; kept separate so that the graded
        # line can use its own degree convention
        self.odd = tuple(bool(p) for p in parities) if parities else tuple(
            d % 2 == 1 for d in self.degrees)
        self._index = {n: i for i, n in enumerate(names)}
        self._key = (self.names, self.degrees, self.odd)
        self.n = len(names)
        self.unit = (0,) * self.n

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "GeneratorSet(" + ", ".join(
            f"{n}:{d}" for n, d in zip(self.names, self.degrees)) + ")"

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, name) -> "Element":
        i = self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.n))
        return Element(self, {mono: 1})

    def one(self) -> "Element":
        return Element(self, {self.unit: 1})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, c) -> "Element":
        return Element(self, {self.unit: c})

    def mono_degree(self, m) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def mono_parity(self, m) -> int:
        return sum(e for e, o in zip(m, self.odd) if o) & 1

    def odd_bits(self, m) -> int:
        bits = 0
        for i, (e, o) in enumerate(zip(m, self.odd)):
            if o and e:
                bits |= 1 << i
        return bits

    def mono_mul(self, m1, m2):
        """Return ``(sign, monomial)`` or ``(0, None)`` if the product vanishes."""
        return _mono_mul(self.odd, m1, m2)

    def concat(self, *others, prefixes=None) -> "GeneratorSet":
        """Generators of ``self`` followed by those of ``others``."""
        sets = (self,) + others
        prefixes = prefixes or [""] * len(sets)
        gens, pars = [], []
        for p, s in zip(prefixes, sets):
            gens.extend((p + n, d) for n, d in zip(s.names, s.degrees))
            pars.extend(s.odd)
        return GeneratorSet(gens, pars)

    def mono_name(self, m) -> str:
        parts = []
        for n, e in zip(self.names, m):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append(f"{n}^{e}")
        return "*".join(parts) or "1"


@lru_cache(maxsize=1 << 20)
def _mono_mul(odd, m1, m2):
    sign = 0
    odd_left_of_i = 0  # odd generators of m2 with a smaller index
    for i in range(len(m1)):
        if odd[i]:
            if m1[i] and m2[i]:
                return 0, None
            if m1[i]:
                sign += odd_left_of_i
            if m2[i]:
                odd_left_of_i += 1
    return (-1 if sign & 1 else 1), tuple(a + b for a, b in zip(m1, m2))


def _add_into(acc: dict, mono, coeff):
    v = acc.get(mono)
    v = coeff if v is None else v + coeff
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


class Element:
    """Finite linear combination of canonical monomials."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms=None):
        self.gens = gens
        clean = {}
        for m, c in (terms or {}).items():
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, Element):
            return self.gens.scalar(other)
        if other.gens != self.gens:
            raise ValueError("elements live on different generator sets")
        return other

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return Element(self.gens, acc)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Element):
            if not other:
                return Element(self.gens)
            return Element(self.gens, {m: c * other for m, c in self.terms.items()})
        return wedge(self, other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return wedge(other, self)
        if not other:
            return Element(self.gens)
        return Element(self.gens, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, n: int):
        out = self.gens.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            if other.gens != self.gens:
                return False
            return self.terms == other.terms or (self - other).is_zero()
        return self == self.gens.scalar(other)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {self.gens.mono_degree(m) for m in self.terms}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def parity(self) -> int:
        pars = {self.gens.mono_parity(m) for m in self.terms}
        if len(pars) > 1:
            raise ValueError("element has mixed parity")
        return pars.pop() if pars else 0

    def component(self, degree: int) -> "Element":
        return Element(self.gens, {m: c for m, c in self.terms.items()
                                   if self.gens.mono_degree(m) == degree})

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), 0)

    def map_coefficients(self, fn) -> "Element":
        return Element(self.gens, {m: fn(c) for m, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.gens.mono_name(m)}"
                          for m, c in sorted(self.terms.items(), reverse=True))


def wedge(a: Element, b: Element) -> Element:
    """Graded-commutative product."""
    if a.gens != b.gens:
        raise ValueError("cannot multiply elements of different algebras")
    odd = a.gens.odd
    acc: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            s, m = _mono_mul(odd, m1, m2)
            if s:
                _add_into(acc, m, c1 * c2 if s > 0 else -(c1 * c2))
    return Element(a.gens, acc)


def mono_times(gens, left, elem: Element, right) -> dict:
    """``left * elem * right`` for monomials ``left`` and ``right``."""
    odd = gens.odd
    acc: dict = {}
    for m, c in elem.terms.items():
        s1, lm = _mono_mul(odd, left, m)
        if not s1:
            continue
        s2, full = _mono_mul(odd, lm, right)
        if not s2:
            continue
        _add_into(acc, full, c if s1 * s2 > 0 else -c)
    return acc


class LinearOperator:
    """Linear endomorphism given by its values on monomials.

    ``parity`` drives Koszul signs; ``degree`` may be ``None`` for the
    inhomogeneous functionals of the graded line.
    """

    def __init__(self, gens: GeneratorSet, on_monomial, degree=None, parity=None,
                 target=None, name=""):
        self.gens = gens
        self.target = target or gens
        self._fn = on_monomial
        self.degree = degree
        self.parity = (degree % 2) if parity is None else parity
        self.name = name
        self._cache: dict = {}

    def image(self, mono) -> Element:
        mono = tuple(mono)
        r = self._cache.get(mono)
        if r is None:
            r = self._fn(mono)
            if not isinstance(r, Element):
                r = Element(self.target, r)
            self._cache[mono] = r
        return r

    def apply(self, a: Element) -> Element:
        if a.gens != self.gens:
            raise ValueError("operator applied to an element of another algebra")
        acc: dict = {}
        for m, c in a.terms.items():
            for m2, c2 in self.image(m).terms.items():
                _add_into(acc, m2, c * c2)
        return Element(self.target, acc)

    __call__ = apply

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(other.gens, lambda m: self.apply(other.image(m)),
                              _sum_deg(self.degree, other.degree),
                              (self.parity + other.parity) & 1, self.target,
                              f"{self.name}{other.name}")

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.gens, lambda m: self.image(m) + other.image(m),
                              self.degree, self.parity, self.target)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.gens, lambda m: self.image(m) - other.image(m),
                              self.degree, self.parity, self.target)

    def scaled(self, c) -> "LinearOperator":
        return LinearOperator(self.gens, lambda m: self.image(m) * c,
                              self.degree, self.parity, self.target)


def _sum_deg(a, b):
    return None if a is None or b is None else a + b


def graded_commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """``[a, b] = ab - (-1)^{|a||b|} ba`` as a plain linear operator."""
    sign = -1 if (a.parity and b.parity) else 1

    def fn(m):
        return a.apply(b.image(m)) - b.apply(a.image(m)) * sign
    return LinearOperator(a.gens, fn, _sum_deg(a.degree, b.degree),
                          (a.parity + b.parity) & 1)


def identity(gens) -> LinearOperator:
    return LinearOperator(gens, lambda m: {m: 1}, 0, name="id")


class Derivation(LinearOperator):
    """Graded derivation of degree ``k`` fixed by its generator images.

    ``D(xy) = D(x) y + (-1)^{k|x|} x D(y)``.
    """

    def __init__(self, gens: GeneratorSet, degree: int, images=None, name="",
                 parity=None):
        self.images = {}
        for key, img in (images or {}).items():
            i = gens.index(key)
            if not isinstance(img, Element):
                img = gens.scalar(img)
            if img.gens != gens:
                raise ValueError("derivation image lives in another algebra")
            if img:
                self.images[i] = img
        super().__init__(gens, self._on_monomial, degree, parity, name=name)
        for i, img in self.images.items():
            want = (gens.odd[i] + self.parity) & 1
            for m in img.terms:
                if gens.mono_parity(m) != want:
                    raise ValueError(
                        f"image of {gens.names[i]} has the wrong parity")
                if degree is not None and all(d is not None for d in gens.degrees):
                    if gens.mono_degree(m) != gens.degrees[i] + degree:
                        raise ValueError(
                            f"image of {gens.names[i]} has degree "
                            f"{gens.mono_degree(m)}, expected {gens.degrees[i] + degree}")

    def generator_image(self, key) -> Element:
        i = self.gens.index(key)
        return self.images.get(i, self.gens.zero())

    def _on_monomial(self, m):
        gens = self.gens
        acc: dict = {}
        prefix_parity = 0
        n = gens.n
        for i in range(n):
            e = m[i]
            if not e:
                continue
            img = self.images.get(i)
            if img is not None:
                left = m[:i] + (0,) * (n - i)
                right = (0,) * i + (e - 1,) + m[i + 1:]
                part = mono_times(gens, left, img, right)
                flip = self.parity and prefix_parity
                for mono, c in part.items():
                    c = c * e if e != 1 else c
                    _add_into(acc, mono, -c if flip else c)
            if gens.odd[i]:
                prefix_parity ^= 1
        return Element(gens, acc)

    def is_zero(self) -> bool:
        return not self.images


def derivation_apply(D: Derivation, a: Element) -> Element:
    return D.apply(a)


def derivation_commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """Graded commutator, returned as the derivation with the same generator images."""
    if d1.gens != d2.gens:
        raise ValueError("derivations live on different algebras")
    sign = -1 if (d1.parity and d2.parity) else 1
    images = {}
    for i in range(d1.gens.n):
        x = d1.gens.gen(i)
        img = d1.apply(d2.apply(x)) - d2.apply(d1.apply(x)) * sign
        if img:
            images[i] = img
    return Derivation(d1.gens, _sum_deg(d1.degree, d2.degree), images,
                      parity=(d1.parity + d2.parity) & 1)


def derivation_sum(derivs, coeffs=None, gens=None) -> Derivation:
    """Linear combination of derivations of a common degree."""
    derivs = list(derivs)
    coeffs = list(coeffs) if coeffs is not None else [1] * len(derivs)
    gens = gens or derivs[0].gens
    degree = derivs[0].degree if derivs else 0
    parity = derivs[0].parity if derivs else 0
    images: dict = {}
    for D, c in zip(derivs, coeffs):
        if not c:
            continue
        for i, img in D.images.items():
            images[i] = images.get(i, gens.zero()) + img * c
    return Derivation(gens, degree, {i: v for i, v in images.items() if v},
                      parity=parity)


def zero_derivation(gens, degree) -> Derivation:
    return Derivation(gens, degree, {})


class AlgebraMap:
    """Algebra homomorphism of free graded-commutative algebras."""

    def __init__(self, source: GeneratorSet, target: GeneratorSet, images):
        self.source = source
        self.target = target
        self.images = {}
        for key, img in images.items():
            i = source.index(key)
            if not isinstance(img, Element):
                img = target.scalar(img)
            if img.gens != target:
                raise ValueError("image lives in the wrong algebra")
            for m in img.terms:
                if target.mono_parity(m) != source.odd[i]:
                    raise ValueError(f"image of {source.names[i]} has the wrong parity")
            self.images[i] = img
        self._cache: dict = {}

    def generator_image(self, key) -> Element:
        i = self.source.index(key)
        return self.images.get(i, self.target.zero())

    def image(self, mono) -> Element:
        mono = tuple(mono)
        r = self._cache.get(mono)
        if r is None:
            r = self.target.one()
            for i, e in enumerate(mono):
                for _ in range(e):
                    r = r * self.generator_image(i)
                    if not r:
                        break
            self._cache[mono] = r
        return r

    def apply(self, a: Element) -> Element:
        if a.gens != self.source:
            raise ValueError("map applied to an element of another algebra")
        acc: dict = {}
        for m, c in a.terms.items():
            for m2, c2 in self.image(m).terms.items():
                _add_into(acc, m2, c * c2)
        return Element(self.target, acc)

    __call__ = apply

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        """``self o inner``."""
        return AlgebraMap(inner.source, self.target, {
            i: self.apply(inner.generator_image(i)) for i in range(inner.source.n)})

    def as_operator(self) -> LinearOperator:
        return LinearOperator(self.source, self.image, 0, target=self.target)


def inclusion(source: GeneratorSet, target: GeneratorSet, offset: int) -> AlgebraMap:
    """Embed a factor whose generators sit at ``offset`` in ``target``."""
    return AlgebraMap(source, target, {i: target.gen(offset + i) for i in range(source.n)})


def homogeneous_basis(gens: GeneratorSet, degree: int, max_exponents=None) -> list:
    """Monomial basis of the degree-``degree`` component.

    Generators of nonpositive degree need an entry in ``max_exponents``
    (a dict ``index -> bound``) so that the component is finite.
    """
    bounds = []
    for i in range(gens.n):
        if gens.odd[i]:
            bounds.append(1)
        elif max_exponents and i in max_exponents:
            bounds.append(max_exponents[i])
        elif gens.degrees[i] <= 0:
            raise ValueError(
                f"generator {gens.names[i]} has degree {gens.degrees[i]}; "
                "pass a bound in max_exponents")
        else:
            bounds.append(None)
    out = []
    degs = gens.degrees
    n = gens.n

    # minimal and maximal degree reachable from generators i.. onward
    def reach(i):
        lo = hi = 0
        for j in range(i, n):
            b = bounds[j]
            if b is None:
                hi = None
                continue
            if degs[j] < 0:
                lo += degs[j] * b
            elif hi is not None:
                hi += degs[j] * b
        return lo, hi

    reaches = [reach(i) for i in range(n + 1)]

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        lo, hi = reaches[i]
        if remaining < lo or (hi is not None and remaining > hi):
            return
        b = bounds[i]
        d = degs[i]
        if b is None:
            b = max(0, (remaining - reaches[i + 1][0]) // d)
        for e in range(b, -1, -1):
            acc.append(e)
            rec(i + 1, remaining - e * d, acc)
            acc.pop()

    rec(0, degree, [])
    return out
