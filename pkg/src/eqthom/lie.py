"""Finite-dimensional Lie algebras given by structure constants.

Conventions used throughout the package:

* ``[e_i, e_j] = sum_k c^k_ij e_k``.
* The dual action ``ad*(xi)`` on ``g*`` is the transpose of ``ad(xi)``,
  ``<ad*(xi) x, eta> = <x, [xi, eta]>``.  With ``L(xi) theta(x) =
  -theta(ad*(xi) x)`` this is the sign for which the Weil algebra relations
  ``[L, iota] = iota([,])`` and ``[L, L] = L([,])`` hold.
* The cobracket ``lambda(x^k) = sum_{i<j} c^k_ij x^i ^ x^j`` pairs with
  ``xi ^ eta`` through the determinant pairing.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations, permutations

from .gca import Derivation, Element, GeneratorSet, homogeneous_basis
from .linalg import kernel_sparse


class LieAlgebra:
    """Structure constants ``c^k_ij``; antisymmetry and Jacobi checked on construction."""

    def __init__(self, name: str, dim: int, constants=(), factors=None):
        self.name = name
        self.dim = int(dim)
        table: dict = {}
        for i, j, k, c in constants:
            c = Fraction(c)
            if not all(0 <= t < self.dim for t in (i, j, k)):
                raise ValueError(f"structure constant index out of range: {(i, j, k)}")
            if i == j:
                if c:
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            for a, b, s in ((i, j, c), (j, i, -c)):
                row = table.setdefault((a, b), {})
                prev = row.get(k)
                if prev is not None and prev != s:
                    raise ValueError(f"inconsistent constants for [e{a+1}, e{b+1}]")
                row[k] = s
        self._table = {ij: {k: v for k, v in row.items() if v}
                       for ij, row in table.items()}
        self.factors = factors or [(name, tuple(range(self.dim)))]
        self._check_jacobi()

    # -- basic data -----------------------------------------------------
    def bracket(self, i: int, j: int) -> dict:
        return dict(self._table.get((i, j), {}))

    def constant(self, i, j, k) -> Fraction:
        return self._table.get((i, j), {}).get(k, Fraction(0))

    def is_abelian(self) -> bool:
        return not any(self._table.values())

    def bracket_vectors(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self._table.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def _check_jacobi(self):
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            total: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket(b, c)
                for m, x in self.bracket_vectors({a: 1}, inner).items():
                    total[m] = total.get(m, 0) + x
            if any(total.values()):
                raise ValueError(f"Jacobi identity fails on (e{i+1}, e{j+1}, e{k+1})")

    @property
    def basis_names(self):
        return [f"e{i + 1}" for i in range(self.dim)]

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    # -- dual side ----------------------------------------------------------
    def coadjoint(self, xi: int, x: dict) -> dict:
        """``ad*(e_xi) x`` as a dict over the dual basis."""
        out: dict = {}
        for j in range(self.dim):
            val = sum((x.get(k, 0) * c for k, c in self._table.get((xi, j), {}).items()), 0)
            if val:
                out[j] = val
        return out

    def cobracket(self, x: dict) -> dict:
        """``lambda(x)`` as ``{(i, j): coeff}`` with ``i < j``."""
        out = {}
        for i, j in combinations(range(self.dim), 2):
            val = sum((x.get(k, 0) * c for k, c in self._table.get((i, j), {}).items()), 0)
            if val:
                out[(i, j)] = val
        return out

    # -- products -----------------------------------------------------------
    def product(self, other: "LieAlgebra", name=None) -> "LieAlgebra":
        n = self.dim
        consts = [(i, j, k, c) for (i, j), row in self._table.items() if i < j
                  for k, c in row.items()]
        consts += [(i + n, j + n, k + n, c) for (i, j), row in other._table.items()
                   if i < j for k, c in row.items()]
        factors = [(self.name, tuple(range(n))),
                   (other.name, tuple(range(n, n + other.dim)))]
        return LieAlgebra(name or f"{self.name}x{other.name}", n + other.dim, consts,
                          factors)

    def is_product(self) -> bool:
        return len(self.factors) > 1


# -- catalog -------------------------------------------------------------------

def abelian(n: int, name=None) -> LieAlgebra:
    return LieAlgebra(name or ("R" if n == 1 else f"R{n}"), n)


def nonabelian2() -> LieAlgebra:
    """The two-dimensional algebra with ``[e1, e2] = e2``."""
    return LieAlgebra("aff2", 2, [(0, 1, 1, 1)])


def so3() -> LieAlgebra:
    """``so(3)`` with ``[e1,e2]=e3`` and cyclic permutations."""
    return LieAlgebra("so3", 3, [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)])


def so_pairs(r: int) -> list:
    return list(combinations(range(r), 2))


def so_matrix(r: int, name=None) -> LieAlgebra:
    """``so(r)`` in the basis ``E_ab = e_a e_b^T - e_b e_a^T``, ``a < b``."""
    pairs = so_pairs(r)
    index = {p: i for i, p in enumerate(pairs)}

    def as_pairs(mat):
        return {index[(a, b)]: mat[a][b] for a, b in pairs if mat[a][b]}

    def basis_matrix(a, b):
        m = [[0] * r for _ in range(r)]
        m[a][b], m[b][a] = 1, -1
        return m

    def commutator(x, y):
        xy = [[sum(x[i][k] * y[k][j] for k in range(r)) for j in range(r)] for i in range(r)]
        yx = [[sum(y[i][k] * x[k][j] for k in range(r)) for j in range(r)] for i in range(r)]
        return [[xy[i][j] - yx[i][j] for j in range(r)] for i in range(r)]

    consts = []
    for (i, p), (j, q) in combinations(enumerate(pairs), 2):
        for k, c in as_pairs(commutator(basis_matrix(*p), basis_matrix(*q))).items():
            consts.append((i, j, k, c))
    return LieAlgebra(name or f"so{r}", len(pairs), consts)


def so4() -> LieAlgebra:
    return so_matrix(4, "so4")


def so2_times_r() -> LieAlgebra:
    return so_matrix(2, "so2").product(abelian(1), "so2xR")


CATALOG = {
    "R": lambda: abelian(1),
    "R2": lambda: abelian(2),
    "R3": lambda: abelian(3),
    "aff2": nonabelian2,
    "so2": lambda: so_matrix(2, "so2"),
    "so3": so3,
    "so4": so4,
    "so2xR": so2_times_r,
}


def lie_algebra(name: str) -> LieAlgebra:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown Lie algebra {name!r}; known: {sorted(CATALOG)}") from None


def parse_lie_algebra(text: str) -> LieAlgebra:
    """Read ``name:``/``dim:`` headers and ``i j k c`` lines (1-based).

    Each line ``i j k c`` contributes ``c e_k`` to ``[e_i, e_j]``.
    """
    name, dim, consts = None, None, []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^(name|dim)\s*[:=]\s*(\S+)$", line)
        if m:
            if m.group(1) == "name":
                name = m.group(2)
            else:
                dim = int(m.group(2))
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"cannot parse structure-constant line {raw!r}")
        i, j, k = (int(p) - 1 for p in parts[:3])
        consts.append((i, j, k, Fraction(parts[3])))
    if name is None or dim is None:
        raise ValueError("a Lie algebra description needs 'name' and 'dim'")
    return LieAlgebra(name, dim, consts)


# -- Chevalley-Eilenberg complex and invariants ---------------------------------

def ce_generators(g: LieAlgebra) -> GeneratorSet:
    """``x1..xn`` spanning the exterior part, ``y1..yn`` the symmetric part (degree 2)."""
    return GeneratorSet([(f"x{i + 1}", 1) for i in range(g.dim)]
                        + [(f"y{i + 1}", 2) for i in range(g.dim)])


def cobracket_element(g: LieAlgebra, k: int, gens=None, offset=0) -> Element:
    gens = gens or ce_generators(g)
    out = gens.zero()
    for (i, j), c in g.cobracket({k: 1}).items():
        out = out + gens.gen(offset + i) * gens.gen(offset + j) * c
    return out


def ce_differential(g: LieAlgebra) -> Derivation:
    """``x -> -lambda(x)`` on the exterior part, ``y -> sum_a x^a L(e_a) y``."""
    gens = ce_generators(g)
    n = g.dim
    images = {}
    for k in range(n):
        images[k] = -cobracket_element(g, k, gens)
        img = gens.zero()
        for a in range(n):
            # L(e_a) y^k = -y(ad*(e_a) x^k)
            for j, c in g.coadjoint(a, {k: 1}).items():
                img = img - gens.gen(a) * gens.gen(n + j) * c
        images[n + k] = img
    return Derivation(gens, 1, images, name="d_CE")


def symmetric_generators(g: LieAlgebra, prefix="p", degree=2) -> GeneratorSet:
    return GeneratorSet([(f"{prefix}{i + 1}", degree) for i in range(g.dim)])


def coadjoint_derivation(g: LieAlgebra, xi: int, gens: GeneratorSet, offset=0) -> Derivation:
    """``L(e_xi)`` on polynomials in the dual basis sitting at ``offset``."""
    images = {}
    for k in range(g.dim):
        img = gens.zero()
        for j, c in g.coadjoint(xi, {k: 1}).items():
            img = img - gens.gen(offset + j) * c
        if img:
            images[offset + k] = img
    return Derivation(gens, 0, images, name=f"L(e{xi + 1})")


def invariant_polynomials(g: LieAlgebra, degree: int, gens=None) -> list:
    """Basis of ``S^degree(g*)^g`` as elements of the symmetric algebra."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    gens = gens or symmetric_generators(g)
    step = gens.degrees[0]
    basis = homogeneous_basis(gens, degree * step)
    index = {m: i for i, m in enumerate(basis)}
    rows: dict = {}
    for a in range(g.dim):
        L = coadjoint_derivation(g, a, gens)
        for col, m in enumerate(basis):
            for m2, c in L.image(m).terms.items():
                rows.setdefault((a, index[m2]), {})[col] = c
    kernel = kernel_sparse(list(rows.values()), len(basis))
    return [Element(gens, {basis[j]: c for j, c in v.items()}) for v in kernel]


# -- Pfaffian -------------------------------------------------------------------

def pfaffian_generators(r: int) -> GeneratorSet:
    return GeneratorSet([(f"a{a + 1}{b + 1}", 2) for a, b in so_pairs(r)])


def _entry(gens, r, a, b) -> Element:
    if a == b:
        return gens.zero()
    if a < b:
        return gens.gen(f"a{a + 1}{b + 1}")
    return -gens.gen(f"a{b + 1}{a + 1}")


def pfaffian(r: int, gens=None) -> Element:
    """Pfaffian of the antisymmetric matrix with entries ``a_ij`` above the diagonal."""
    if r < 2 or r % 2:
        raise ValueError("the Pfaffian needs an even size r >= 2")
    gens = gens or pfaffian_generators(r)

    def pf(idx):
        if not idx:
            return gens.one()
        first, rest = idx[0], idx[1:]
        out = gens.zero()
        for pos, j in enumerate(rest):
            sign = -1 if pos % 2 else 1
            remaining = rest[:pos] + rest[pos + 1:]
            out = out + _entry(gens, r, first, j) * pf(remaining) * sign
        return out

    return pf(tuple(range(r)))


def antisymmetric_determinant(r: int, gens=None) -> Element:
    """Leibniz determinant of the same antisymmetric matrix."""
    gens = gens or pfaffian_generators(r)
    out = gens.zero()
    for perm in permutations(range(r)):
        inversions = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        term = gens.one()
        for i in range(r):
            term = term * _entry(gens, r, i, perm[i])
            if not term:
                break
        out = out + (term * (-1 if inversions % 2 else 1))
    return out
