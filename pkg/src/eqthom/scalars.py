"""Exact scalars: Laurent polynomials in omega^(1/2) over Q or Q(sqrt d).

The symbol ``omega`` stands for 2*pi.  It is treated as a transcendental
indeterminate, so exact rank decisions never depend on the numerical value
of pi.  A scalar is stored as a map from twice the omega-exponent to a
coefficient ``a + b*sqrt(d)`` with rational ``a`` and ``b``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

OMEGA_FLOAT = 2.0 * math.pi


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class Scalar:
    """Immutable exact scalar ``sum_k (a_k + b_k sqrt(d)) omega^(k/2)``."""

    __slots__ = ("_terms", "_d", "_hash")

    def __init__(self, value=0, *, _terms=None, _d=None):
        if _terms is not None:
            terms = {k: c for k, c in _terms.items() if c[0] or c[1]}
            if not any(c[1] for c in terms.values()):
                _d = None
            self._terms = terms
            self._d = _d
        elif isinstance(value, Scalar):
            self._terms = value._terms
            self._d = value._d
        else:
            q = _frac(value)
            self._terms = {0: (q, Fraction(0))} if q else {}
            self._d = None
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def omega(cls, power=1, coeff=1) -> "Scalar":
        """``coeff * omega**power`` for a half-integer ``power``."""
        twice = _frac(power) * 2
        if twice.denominator != 1:
            raise ValueError("omega exponents must be half-integers")
        c = _frac(coeff)
        return cls(_terms={int(twice): (c, Fraction(0))})

    @classmethod
    def sqrt(cls, d: int, coeff=1) -> "Scalar":
        """``coeff * sqrt(d)`` for a square-free integer ``d > 1``."""
        d = int(d)
        if d <= 1 or any(d % (p * p) == 0 for p in range(2, math.isqrt(d) + 1)):
            raise ValueError(f"sqrt({d}) is not a supported quadratic irrational")
        return cls(_terms={0: (Fraction(0), _frac(coeff))}, _d=d)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        return x if isinstance(x, Scalar) else cls(x)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        """Map ``twice_exponent -> (a, b)`` meaning ``(a + b sqrt d) omega^(k/2)``."""
        return dict(self._terms)

    @property
    def radicand(self):
        return self._d

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or (
            set(self._terms) == {0} and not self._terms[0][1]
        )

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][0] if self._terms else Fraction(0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def omega_exponents(self) -> list:
        return sorted(Fraction(k, 2) for k in self._terms)

    # -- arithmetic ---------------------------------------------------
    def _join_d(self, other: "Scalar"):
        if self._d is None:
            return other._d
        if other._d is None or other._d == self._d:
            return self._d
        raise ValueError(
            f"cannot mix sqrt({self._d}) and sqrt({other._d}) in one scalar"
        )

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        d = self._join_d(other)
        terms = dict(self._terms)
        for k, (a, b) in other._terms.items():
            a0, b0 = terms.get(k, (0, 0))
            terms[k] = (a0 + a, b0 + b)
        return Scalar(_terms=terms, _d=d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(
            _terms={k: (-a, -b) for k, (a, b) in self._terms.items()}, _d=self._d
        )

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                q = _frac(other)
            except TypeError:
                return NotImplemented
            if not q:
                return Scalar()
            return Scalar(
                _terms={k: (a * q, b * q) for k, (a, b) in self._terms.items()},
                _d=self._d,
            )
        d = self._join_d(other)
        terms: dict = {}
        for k1, (a1, b1) in self._terms.items():
            for k2, (a2, b2) in other._terms.items():
                a = a1 * a2 + (b1 * b2 * d if d else 0)
                b = a1 * b2 + a2 * b1
                a0, b0 = terms.get(k1 + k2, (0, 0))
                terms[k1 + k2] = (a0 + a, b0 + b)
        return Scalar(_terms=terms, _d=d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Scalar(1) / (self ** (-n))
        result, base = Scalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _base_inverse(self, a: Fraction, b: Fraction):
        norm = a * a - (b * b * self._d if self._d else 0)
        return a / norm, -b / norm

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                q = _frac(other)
            except TypeError:
                return NotImplemented
            if not q:
                raise ZeroDivisionError("division of a Scalar by zero")
            return self * (1 / q)
        if other.is_zero():
            raise ZeroDivisionError("division of a Scalar by zero")
        d = self._join_d(other)
        if other.is_monomial():
            (k, (a, b)), = other._terms.items()
            ia, ib = Scalar(_terms={0: (a, b)}, _d=d)._base_inverse(a, b)
            return self * Scalar(_terms={-k: (ia, ib)}, _d=d)
        return _laurent_divide(self, other, d)

    def __rtruediv__(self, other):
        return Scalar(other) / self

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_value())
            else:
                self._hash = hash((frozenset(self._terms.items()), self._d))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- numerics -----------------------------------------------------
    def to_float(self) -> float:
        subs = {"omega": OMEGA_FLOAT}
        if self._d:
            subs[f"sqrt{self._d}"] = math.sqrt(self._d)
        return numeric_value(self, subs)

    def __float__(self):
        return self.to_float()

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            a, b = self._terms[k]
            if b:
                base = f"({a}+{b}*sqrt{self._d})" if a else f"{b}*sqrt{self._d}"
            else:
                base = str(a)
            if k == 0:
                parts.append(base)
            else:
                exp = Fraction(k, 2)
                parts.append(f"{base}*w^{exp}" if exp != 1 else f"{base}*w")
        return " + ".join(parts)


def _laurent_divide(num: Scalar, den: Scalar, d):
    """Exact quotient in the Laurent ring; raises if it leaves the ring."""

    def mul(x, y):
        return (x[0] * y[0] + (x[1] * y[1] * d if d else 0), x[0] * y[1] + x[1] * y[0])

    def inv(x):
        norm = x[0] * x[0] - (x[1] * x[1] * d if d else 0)
        return (x[0] / norm, -x[1] / norm)

    if num.is_zero():
        return Scalar()
    # shift both to honest polynomials with nonzero constant term
    low_n, low_d = min(num._terms), min(den._terms)
    n = {k - low_n: c for k, c in num._terms.items()}
    dp = {k - low_d: c for k, c in den._terms.items()}
    deg_d = max(dp)
    lead_inv = inv(dp[deg_d])
    quotient: dict = {}
    while n and max(n) >= deg_d:
        top = max(n)
        shift = top - deg_d
        q = mul(n[top], lead_inv)
        quotient[shift + low_n - low_d] = q
        for k, c in dp.items():
            prod = mul(q, c)
            a0, b0 = n.get(k + shift, (0, 0))
            val = (a0 - prod[0], b0 - prod[1])
            if val[0] or val[1]:
                n[k + shift] = val
            else:
                n.pop(k + shift, None)
    if n:
        raise ValueError(f"{num!r} is not divisible by {den!r} in the Laurent ring")
    return Scalar(_terms=quotient, _d=d)


def numeric_value(a, substitutions: dict) -> float:
    """Evaluate ``a`` with explicit values for ``omega`` and ``sqrt<d>``."""
    a = Scalar.coerce(a)
    terms = a.terms
    if not terms:
        return 0.0
    if any(k for k in terms) and "omega" not in substitutions:
        raise KeyError("missing substitution for 'omega'")
    root = 0.0
    if a.radicand:
        key = f"sqrt{a.radicand}"
        if key not in substitutions:
            raise KeyError(f"missing substitution for {key!r}")
        root = substitutions[key]
    w = substitutions.get("omega", OMEGA_FLOAT)
    total = 0.0
    for k, (x, y) in terms.items():
        total += (float(x) + float(y) * root) * w ** (k / 2)
    return total


ZERO = Scalar()
ONE = Scalar(1)
OMEGA = Scalar.omega(1)
