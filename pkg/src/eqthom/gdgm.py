"""g-differential graded modules given as operator families on a carrier.

A carrier enumerates a basis per degree.  Two kinds exist: free
graded-commutative algebras (basis = monomials) and finite carriers whose
basis labels are listed degree by degree.  Operators only need an
``image(key)`` method returning an ``Element`` or a dict ``key -> coeff``
plus ``degree`` and ``parity`` attributes, so derivations, matrix tables
and tensor-product operators mix freely.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .gca import Derivation, Element, GeneratorSet, homogeneous_basis
from .lie import LieAlgebra
from .linalg import ComplexSlice, ScalarMatrix, kernel_with_free_columns, rank_of_rows
from .report import Report
from .scalars import Scalar

# -- vectors -------------------------------------------------------------------


def _terms(x) -> dict:
    return x.terms if isinstance(x, Element) else x


def _add_into(acc, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def vec_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, c in b.items():
        _add_into(out, k, c * scale if scale != 1 else c)
    return out


def apply_op(op, vec: dict) -> dict:
    """Apply an operator to a sparse vector ``key -> coeff``."""
    acc: dict = {}
    for key, c in vec.items():
        for k2, c2 in _terms(op.image(key)).items():
            _add_into(acc, k2, c * c2)
    return acc


def _div(a, b):
    if isinstance(a, Scalar) or isinstance(b, Scalar):
        return Scalar.coerce(a) / b
    return Fraction(a) / b if isinstance(a, int) and isinstance(b, int) else a / b


# -- carriers ------------------------------------------------------------------


class AlgebraCarrier:
    """Monomial basis of a free graded-commutative algebra."""

    def __init__(self, gens: GeneratorSet, bounds=None):
        self.gens = gens
        self.bounds = dict(bounds or {})
        self._cache: dict = {}
        if all(d > 0 for d in gens.degrees):
            self.min_degree = 0
        else:
            self.min_degree = sum(min(d, 0) * (1 if gens.odd[i] else self.bounds.get(i, 0))
                                  for i, d in enumerate(gens.degrees))
        self.max_degree = None

    def basis(self, degree: int) -> list:
        b = self._cache.get(degree)
        if b is None:
            if self.min_degree is not None and degree < self.min_degree:
                b = []
            else:
                b = homogeneous_basis(self.gens, degree, self.bounds or None)
            self._cache[degree] = b
        return b

    def label(self, key) -> str:
        return self.gens.mono_name(key)

    def parity(self, key) -> int:
        return self.gens.mono_parity(key)


class FiniteCarrier:
    """Finitely many labelled basis vectors in each degree of a finite range."""

    def __init__(self, bases: dict):
        self.bases = {int(k): list(v) for k, v in bases.items()}
        self._degree_of = {key: k for k, v in self.bases.items() for key in v}
        degs = [k for k, v in self.bases.items() if v] or [0]
        self.min_degree = min(degs)
        self.max_degree = max(degs)

    def basis(self, degree: int) -> list:
        return self.bases.get(degree, [])

    def label(self, key) -> str:
        return str(key)

    def parity(self, key) -> int:
        return self._degree_of[key] & 1


class TensorCarrier:
    """``left (x) right`` for an algebra ``left`` and a finite ``right``."""

    def __init__(self, left: AlgebraCarrier, right):
        if right.max_degree is None:
            raise ValueError("the right tensor factor needs a bounded degree range")
        self.left = left
        self.right = right
        self.min_degree = (left.min_degree or 0) + right.min_degree
        self.max_degree = None
        self._cache: dict = {}

    def basis(self, degree: int) -> list:
        b = self._cache.get(degree)
        if b is None:
            b = []
            for q in range(self.right.min_degree, self.right.max_degree + 1):
                p = degree - q
                if p < (self.left.min_degree or 0):
                    continue
                rb = self.right.basis(q)
                if not rb:
                    continue
                for w in self.left.basis(p):
                    b.extend((w, m) for m in rb)
            self._cache[degree] = b
        return b

    def label(self, key) -> str:
        w, m = key
        return f"{self.left.label(w)}|{self.right.label(m)}"

    def parity(self, key) -> int:
        w, m = key
        return (self.left.parity(w) + self.right.parity(m)) & 1


# -- operators -----------------------------------------------------------------


class TableOperator:
    """Operator given by a function ``key -> dict``; results are cached."""

    def __init__(self, degree: int, fn, name="", parity=None):
        self.degree = degree
        self.parity = degree & 1 if parity is None else parity
        self._fn = fn
        self.name = name
        self._cache: dict = {}

    def image(self, key) -> dict:
        r = self._cache.get(key)
        if r is None:
            r = {k: c for k, c in _terms(self._fn(key)).items() if c}
            self._cache[key] = r
        return r


def zero_operator(degree, name="0") -> TableOperator:
    return TableOperator(degree, lambda key: {}, name)


class TensorOperator:
    """``A (x) 1 + 1 (x) B`` with the Koszul sign on the second summand."""

    def __init__(self, carrier: TensorCarrier, left_op, right_op, degree, name=""):
        self.carrier = carrier
        self.left_op = left_op
        self.right_op = right_op
        self.degree = degree
        self.parity = degree & 1
        self.name = name
        self._cache: dict = {}

    def image(self, key) -> dict:
        r = self._cache.get(key)
        if r is not None:
            return r
        w, m = key
        acc: dict = {}
        if self.left_op is not None:
            for w2, c in _terms(self.left_op.image(w)).items():
                _add_into(acc, (w2, m), c)
        if self.right_op is not None:
            flip = self.parity and self.carrier.left.parity(w)
            for m2, c in _terms(self.right_op.image(m)).items():
                _add_into(acc, (w, m2), -c if flip else c)
        self._cache[key] = acc
        return acc


# -- structures ----------------------------------------------------------------


class GStructure:
    """A carrier with ``d`` and, for every basis vector of ``lie``, ``iota`` and ``L``.

    ``constraints`` are extra operators whose joint kernel is the actual
    carrier; they let a subcomplex (for instance basic forms for another
    factor) be described without choosing coordinates.
    """

    def __init__(self, lie: LieAlgebra, carrier, d, iotas, lies, constraints=(),
                 name=""):
        if len(iotas) != lie.dim or len(lies) != lie.dim:
            raise ValueError("need one contraction and one Lie derivative per basis vector")
        self.lie = lie
        self.carrier = carrier
        self.d = d
        self.iotas = list(iotas)
        self.lies = list(lies)
        self.constraints = list(constraints)
        self.name = name
        self._subspaces: dict = {}

    @property
    def is_algebra(self) -> bool:
        return isinstance(self.carrier, AlgebraCarrier) and all(
            isinstance(D, Derivation) for D in [self.d, *self.iotas, *self.lies])

    @property
    def gens(self) -> GeneratorSet:
        return self.carrier.gens

    def basis(self, degree):
        return self.carrier.basis(degree)

    def __repr__(self):
        return f"GStructure({self.name or '?'}, lie={self.lie.name})"


def algebra_structure(lie, gens, d, iotas, lies, bounds=None, constraints=(), name=""):
    return GStructure(lie, AlgebraCarrier(gens, bounds), d, iotas, lies, constraints, name)


def trivial_structure(lie: LieAlgebra, carrier, d=None, name="trivial") -> GStructure:
    """``lie`` acting by zero; ``d`` defaults to zero as well."""
    if isinstance(carrier, GeneratorSet):
        gens = carrier
        zero_d = Derivation(gens, 1, {})
        return algebra_structure(lie, gens, d or zero_d,
                                 [Derivation(gens, -1, {}) for _ in range(lie.dim)],
                                 [Derivation(gens, 0, {}) for _ in range(lie.dim)],
                                 name=name)
    return GStructure(lie, carrier, d or zero_operator(1),
                      [zero_operator(-1) for _ in range(lie.dim)],
                      [zero_operator(0) for _ in range(lie.dim)], name=name)


def _embed(elem: Element, target: GeneratorSet, offset: int) -> Element:
    n = target.n
    out = {}
    for m, c in elem.terms.items():
        full = (0,) * offset + tuple(m) + (0,) * (n - offset - len(m))
        out[full] = c
    return Element(target, out)


def _lift(D, gens, offset, size):
    """Images of the block ``offset..offset+size`` under a factor derivation."""
    if D is None:
        return {}
    return {offset + i: _embed(img, gens, offset) for i, img in D.images.items()
            if i < size}


def tensor_structures(*structures, prefixes=None, name="") -> GStructure:
    """Tensor product of algebra structures over a common Lie algebra.

    Operators act as derivations, each factor's generators going to the
    factor's own images.  A factor may leave a basis vector's operators as
    ``None``, meaning that vector acts trivially there.
    """
    lie = structures[0].lie
    for s in structures:
        if s.lie.dim != lie.dim:
            raise ValueError("tensor factors must share the Lie algebra")
        if not s.is_algebra:
            raise ValueError("tensor_structures needs algebra carriers")
    gens = structures[0].gens.concat(*[s.gens for s in structures[1:]], prefixes=prefixes)
    offsets, off = [], 0
    for s in structures:
        offsets.append(off)
        off += s.gens.n
    bounds = {}
    for s, o in zip(structures, offsets):
        bounds.update({o + i: b for i, b in s.carrier.bounds.items()})

    def combine(pick, degree, label):
        images = {}
        for s, o in zip(structures, offsets):
            images.update(_lift(pick(s), gens, o, s.gens.n))
        return Derivation(gens, degree, images, name=label)

    d = combine(lambda s: s.d, 1, "d")
    iotas = [combine(lambda s, a=a: s.iotas[a], -1, f"iota(e{a + 1})") for a in range(lie.dim)]
    lies = [combine(lambda s, a=a: s.lies[a], 0, f"L(e{a + 1})") for a in range(lie.dim)]
    constraints = []
    for s, o in zip(structures, offsets):
        for c in s.constraints:
            if not isinstance(c, Derivation):
                raise ValueError("algebra constraints must be derivations")
            constraints.append(Derivation(gens, c.degree, _lift(c, gens, o, s.gens.n),
                                          parity=c.parity))
    return GStructure(lie, AlgebraCarrier(gens, bounds), d, iotas, lies, constraints,
                      name or "(x)".join(s.name for s in structures))


def extend_structure(s: GStructure, big: LieAlgebra, index_map: dict, name="") -> GStructure:
    """View ``s`` as a ``big``-structure: ``e_i`` acts as ``e_{index_map[i]}`` or by zero."""
    for i, j in index_map.items():
        for i2, j2 in index_map.items():
            image = {}
            for k, c in big.bracket(i, i2).items():
                if k not in index_map:
                    raise ValueError("index map is not a Lie algebra homomorphism")
                image[index_map[k]] = image.get(index_map[k], 0) + c
            if {k: c for k, c in image.items() if c} != s.lie.bracket(j, j2):
                raise ValueError("index map is not a Lie algebra homomorphism")
    if s.is_algebra:
        gens = s.gens

        def pick(ops, i, deg):
            return ops[index_map[i]] if i in index_map else Derivation(gens, deg, {})
    else:
        def pick(ops, i, deg):
            return ops[index_map[i]] if i in index_map else zero_operator(deg)
    iotas = [pick(s.iotas, i, -1) for i in range(big.dim)]
    lies = [pick(s.lies, i, 0) for i in range(big.dim)]
    return GStructure(big, s.carrier, s.d, iotas, lies, s.constraints, name or s.name)


# -- axiom checks ----------------------------------------------------------------

RELATIONS = (
    ("iota-iota", "[iota(xi), iota(eta)] = 0"),
    ("lie-lie", "[L(xi), L(eta)] = L([xi, eta])"),
    ("d-d", "[d, d] = 0"),
    ("lie-d", "[L(xi), d] = 0"),
    ("iota-d", "[iota(xi), d] = L(xi)"),
    ("lie-iota", "[L(xi), iota(eta)] = iota([xi, eta])"),
)
ANCHORS = dict(RELATIONS)


def _commutator_on(a, b, key) -> dict:
    sign = -1 if (a.parity and b.parity) else 1
    return vec_add(apply_op(a, _terms(b.image(key))), apply_op(b, _terms(a.image(key))),
                   -sign)


def _combo_on(ops, coeffs: dict, key) -> dict:
    out: dict = {}
    for k, c in coeffs.items():
        out = vec_add(out, _terms(ops[k].image(key)), c)
    return out


def relation_residuals(s: GStructure, key):
    """Yield ``(relation, indices, residual)`` for every relation instance on ``key``."""
    g = s.lie
    n = g.dim
    for a, b in combinations_with_replacement(range(n), 2):
        yield "iota-iota", (a, b), _commutator_on(s.iotas[a], s.iotas[b], key)
    for a in range(n):
        for b in range(a + 1, n):
            r = _commutator_on(s.lies[a], s.lies[b], key)
            yield "lie-lie", (a, b), vec_add(r, _combo_on(s.lies, g.bracket(a, b), key), -1)
    yield "d-d", (), apply_op(s.d, _terms(s.d.image(key)))
    for a in range(n):
        yield "lie-d", (a,), _commutator_on(s.lies[a], s.d, key)
    for a in range(n):
        r = _commutator_on(s.iotas[a], s.d, key)
        yield "iota-d", (a,), vec_add(r, _terms(s.lies[a].image(key)), -1)
    for a in range(n):
        for b in range(n):
            r = _commutator_on(s.lies[a], s.iotas[b], key)
            yield "lie-iota", (a, b), vec_add(r, _combo_on(s.iotas, g.bracket(a, b), key), -1)


def _witness(s, rel, idx, key, residual) -> dict:
    lab = s.carrier.label
    return {
        "relation": rel,
        "indices": [f"e{i + 1}" for i in idx],
        "element": lab(key),
        "residual": {lab(k): c for k, c in sorted(residual.items(), key=lambda kv: str(kv[0]))},
    }


def check_axioms(s: GStructure, max_degree: int = 8, min_degree=None) -> Report:
    """Evaluate the six defining relations on every basis vector of the window.

    For algebra carriers each entry is indexed by (relation, generator):
    it covers the generator itself, which certifies the relation in every
    degree because graded commutators of derivations are derivations, and
    every window monomial whose first factor is that generator.  Other
    carriers get one entry per (relation, degree).
    """
    lo = s.carrier.min_degree if min_degree is None else min_degree
    if lo is None:
        raise ValueError("the carrier is unbounded below; pass min_degree")
    rep = Report("axioms", parameters={"structure": s.name, "lie": s.lie.name,
                                       "window": [lo, max_degree]})
    if s.is_algebra:
        gens = s.gens
        groups: dict = {i: [] for i in range(gens.n)}
        for i in range(gens.n):
            groups[i].append(gens.gen(i).terms.popitem()[0])
        for deg in range(lo, max_degree + 1):
            for m in s.basis(deg):
                lead = next((i for i, e in enumerate(m) if e), None)
                if lead is None or sum(m) == 1:
                    continue
                groups[lead].append(m)
        for i in range(gens.n):
            first: dict = {}
            for m in groups[i]:
                for rel, idx, res in relation_residuals(s, m):
                    if res and rel not in first:
                        first[rel] = _witness(s, rel, idx, m, res)
            for rel, anchor in RELATIONS:
                w = first.get(rel)
                rep.add(f"{rel}/{gens.names[i]}", anchor, w is None, witness=w)
        rep.data["spanning_set_size"] = sum(len(v) for v in groups.values())
    else:
        for deg in range(lo, max_degree + 1):
            first = {}
            for key in s.basis(deg):
                for rel, idx, res in relation_residuals(s, key):
                    if res and rel not in first:
                        first[rel] = _witness(s, rel, idx, key, res)
            for rel, anchor in RELATIONS:
                w = first.get(rel)
                rep.add(f"{rel}/deg{deg:+d}", anchor, w is None, witness=w)
    return rep


# -- subspaces and basic cohomology ------------------------------------------------

KINDS = ("invariant", "horizontal", "basic")


def _operators_for(s: GStructure, kind: str) -> list:
    if kind == "invariant":
        ops = list(s.lies)
    elif kind == "horizontal":
        ops = list(s.iotas)
    elif kind == "basic":
        ops = list(s.iotas) + list(s.lies)
    elif kind == "all":
        ops = []
    else:
        raise ValueError(f"unknown subspace kind {kind!r}; expected one of {KINDS}")
    return ops + list(s.constraints)


def subspace_with_pivots(s: GStructure, kind: str, degree: int) -> list:
    """Kernel basis as ``(free_key, vector)`` pairs; see ``kernel_with_free_columns``."""
    memo = s._subspaces.get((kind, degree))
    if memo is not None:
        return memo
    basis = s.basis(degree)
    ops = _operators_for(s, kind)
    if not ops:
        out = [(k, {k: 1}) for k in basis]
    else:
        rows: dict = {}
        for col, key in enumerate(basis):
            for o, op in enumerate(ops):
                for k2, c in _terms(op.image(key)).items():
                    rows.setdefault((o, k2), {})[col] = c
        out = [(basis[f], {basis[j]: c for j, c in v.items()})
               for f, v in kernel_with_free_columns(list(rows.values()), len(basis))]
    s._subspaces[(kind, degree)] = out
    return out


def subspace(s: GStructure, kind: str, degree: int) -> list:
    """Exact basis of the invariant, horizontal or basic part in one degree."""
    return [v for _, v in subspace_with_pivots(s, kind, degree)]


def _rank_of_vectors(vectors) -> int:
    index: dict = {}
    rows = []
    for v in vectors:
        rows.append({index.setdefault(k, len(index)): c for k, c in v.items()})
    # vectors are rows here, so rank of the row system
    return rank_of_rows(rows, len(index))


def basic_cohomology(s: GStructure, window=(0, 8), kind="basic") -> dict:
    """Dimensions of ``H(M_bas, d)`` for each degree of ``window``.

    ``dim H^k = dim B^k - rank d|B^k - rank d|B^{k-1}``.  The lowest degree
    is only reported when the carrier vanishes below it.
    """
    lo, hi = window
    out = {}
    ranks: dict = {}

    def rank_d(k):
        if k not in ranks:
            if s.carrier.min_degree is not None and k < s.carrier.min_degree:
                ranks[k] = 0
            else:
                ranks[k] = _rank_of_vectors(apply_op(s.d, v) for v in subspace(s, kind, k))
        return ranks[k]

    if lo > hi:
        raise ValueError("window interior is empty")
    for k in range(lo, hi + 1):
        out[k] = len(subspace(s, kind, k)) - rank_d(k) - rank_d(k - 1)
    return out


def coordinates(pivoted: list, vec: dict):
    """Coordinates of ``vec`` in a pivoted kernel basis; raises if outside the span."""
    coords = []
    rest = dict(vec)
    for f, v in pivoted:
        c = rest.get(f, 0)
        if c:
            c = _div(c, v[f])
            rest = vec_add(rest, v, -c)
        coords.append(c)
    if rest:
        raise ValueError("vector is not in the span of the basis")
    return coords


def basic_complex_slice(s: GStructure, window=(0, 8), kind="basic") -> ComplexSlice:
    """The basic subcomplex on ``window`` with differentials in basic coordinates."""
    lo, hi = window
    closed_below = s.carrier.min_degree is not None and lo <= s.carrier.min_degree
    a = lo if closed_below else lo - 1
    b = hi + 1
    bases = {k: subspace_with_pivots(s, kind, k) for k in range(a, b + 1)}
    diffs = {}
    for k in range(a, b):
        cols = [coordinates(bases[k + 1], apply_op(s.d, v)) for _, v in bases[k]]
        diffs[k] = ScalarMatrix.from_columns(
            len(bases[k + 1]), [{i: c for i, c in enumerate(col) if c} for col in cols])
    labels = {k: [s.carrier.label(f) for f, _ in bases[k]] for k in bases}
    return ComplexSlice((a, b), labels, diffs, closed_below=closed_below)


def ambient_cohomology(s: GStructure, window=(0, 8)) -> dict:
    """Cohomology of the whole carrier (subject to constraints)."""
    return basic_cohomology(s, window, kind="all")


# -- restriction to basics of a factor -------------------------------------------


def factor_algebra(h: LieAlgebra, indices) -> LieAlgebra:
    """The sub-algebra spanned by ``indices``, reindexed from zero."""
    index = {i: p for p, i in enumerate(indices)}
    consts = []
    for i in indices:
        for j in indices:
            if i < j:
                for k, c in h.bracket(i, j).items():
                    if k not in index:
                        raise ValueError("indices do not span a subalgebra")
                    consts.append((index[i], index[j], index[k], c))
    return LieAlgebra(h.name + "|" + ",".join(str(i + 1) for i in indices), len(indices), consts)


def restrict_basics(s: GStructure, k_factor: int = 0) -> GStructure:
    """The remaining factor's structure on the ``k``-basic subcomplex."""
    h = s.lie
    if not h.is_product():
        raise ValueError(f"{h.name} is not presented as a product")
    if len(h.factors) != 2:
        raise ValueError("restrict_basics expects exactly two factors")
    k_name, k_idx = h.factors[k_factor]
    g_name, g_idx = h.factors[1 - k_factor]
    g = factor_algebra(h, g_idx)
    g.name = g_name
    constraints = list(s.constraints) + [s.iotas[i] for i in k_idx] + [s.lies[i] for i in k_idx]
    return GStructure(g, s.carrier, s.d, [s.iotas[i] for i in g_idx],
                      [s.lies[i] for i in g_idx], constraints,
                      name=f"{s.name}_bas({k_name})")


def check_basic_restriction(s: GStructure, max_degree: int = 6, k_factor: int = 0) -> Report:
    """``M_bas(h)`` versus ``(M_bas(k))_bas(g)`` dimension by dimension."""
    r = restrict_basics(s, k_factor)
    rep = Report("basic-restriction", parameters={"lie": s.lie.name, "max_degree": max_degree})
    lo = s.carrier.min_degree or 0
    for deg in range(lo, max_degree + 1):
        a = len(subspace(s, "basic", deg))
        b = len(subspace(r, "basic", deg))
        rep.add(f"dim/deg{deg}", "M_bas(h) = (M_bas(k))_bas(g)", a == b,
                residual=a - b, witness=None if a == b else {"h": a, "iterated": b})
    return rep


# -- tensoring with the Weil algebra --------------------------------------------------


def weil_complex(s: GStructure, max_weil_degree=None) -> GStructure:
    """``W(g) (x) M`` with the diagonal structure; its basic part is the Cartan model."""
    from .weil import build_weil

    W = build_weil(s.lie).structure
    if s.is_algebra:
        out = tensor_structures(W, s, prefixes=["W.", ""], name=f"W({s.lie.name})(x){s.name}")
    else:
        car = TensorCarrier(W.carrier, s.carrier)
        d = TensorOperator(car, W.d, s.d, 1, "d")
        iotas = [TensorOperator(car, W.iotas[a], s.iotas[a], -1, f"iota(e{a + 1})")
                 for a in range(s.lie.dim)]
        lies = [TensorOperator(car, W.lies[a], s.lies[a], 0, f"L(e{a + 1})")
                for a in range(s.lie.dim)]
        cons = [TensorOperator(car, None, c, c.degree) for c in s.constraints]
        out = GStructure(s.lie, car, d, iotas, lies, cons,
                         name=f"W({s.lie.name})(x){s.name}")
    out.equivariant_of = s
    return out


def equivariant_cohomology(s: GStructure, window=(0, 8)) -> dict:
    return basic_cohomology(weil_complex(s), window)


# -- morphisms and homotopies ---------------------------------------------------------


class GMorphism:
    """Degree-0 linear map between carriers, given on basis keys."""

    def __init__(self, source: GStructure, target: GStructure, fn, name="f"):
        self.source = source
        self.target = target
        self.degree = 0
        self.parity = 0
        self.name = name
        self._op = TableOperator(0, fn, name)

    def image(self, key) -> dict:
        return self._op.image(key)

    def apply(self, vec: dict) -> dict:
        return apply_op(self, vec)


class GHomotopy:
    """Degree ``-1`` map ``F`` with ``[d, F] = f1 - f0``."""

    def __init__(self, source: GStructure, target: GStructure, fn, name="F"):
        self.source = source
        self.target = target
        self.degree = -1
        self.parity = 1
        self.name = name
        self._op = TableOperator(-1, fn, name)

    def image(self, key) -> dict:
        return self._op.image(key)

    def apply(self, vec: dict) -> dict:
        return apply_op(self, vec)


def identity_morphism(s: GStructure) -> GMorphism:
    return GMorphism(s, s, lambda key: {key: 1}, "id")


def _window(s, max_degree, min_degree):
    lo = s.carrier.min_degree if min_degree is None else min_degree
    if lo is None:
        raise ValueError("the source carrier is unbounded below; pass min_degree")
    return lo, max_degree


def verify_morphism(f: GMorphism, max_degree=6, min_degree=None) -> Report:
    """``f`` commutes with ``d``, every ``iota`` and every ``L`` on the window."""
    S, T = f.source, f.target
    lo, hi = _window(S, max_degree, min_degree)
    rep = Report("morphism", parameters={"window": [lo, hi], "map": f.name})
    pairs = [("d", S.d, T.d)]
    pairs += [(f"iota(e{a + 1})", S.iotas[a], T.iotas[a]) for a in range(S.lie.dim)]
    pairs += [(f"L(e{a + 1})", S.lies[a], T.lies[a]) for a in range(S.lie.dim)]
    for name, A, B in pairs:
        bad = None
        for deg in range(lo, hi + 1):
            for key in S.basis(deg):
                res = vec_add(apply_op(f, _terms(A.image(key))),
                              apply_op(B, f.image(key)), -1)
                if res:
                    bad = {"element": S.carrier.label(key),
                           "residual": {T.carrier.label(k): c for k, c in res.items()}}
                    break
            if bad:
                break
        rep.add(f"commutes/{name}", f"f {name} = {name} f", bad is None, witness=bad)
    return rep


def verify_homotopy(F: GHomotopy, f0: GMorphism, f1: GMorphism, max_degree=6,
                    min_degree=None, equivariant=True) -> Report:
    """Check ``[d, F] = f1 - f0`` and, if ``equivariant``, ``[iota, F] = [L, F] = 0``."""
    S, T = F.source, F.target
    lo, hi = _window(S, max_degree, min_degree)
    rep = Report("homotopy", parameters={"window": [lo, hi], "homotopy": F.name,
                                         "equivariant": equivariant})

    def check(label, anchor, residual_fn):
        bad = None
        for deg in range(lo, hi + 1):
            for key in S.basis(deg):
                res = residual_fn(key)
                if res:
                    bad = {"element": S.carrier.label(key), "degree": deg,
                           "residual": {T.carrier.label(k): c for k, c in
                                        sorted(res.items(), key=lambda kv: str(kv[0]))}}
                    break
            if bad:
                break
        rep.add(label, anchor, bad is None, witness=bad)

    def d_residual(key):
        lhs = vec_add(apply_op(T.d, F.image(key)), apply_op(F, _terms(S.d.image(key))))
        rhs = vec_add(f1.image(key), f0.image(key), -1)
        return vec_add(lhs, rhs, -1)

    check("[d,F]=f1-f0", "[d, F] = f1 - f0", d_residual)
    if equivariant:
        for a in range(S.lie.dim):
            check(f"[iota(e{a + 1}),F]=0", "[iota(xi), F] = 0",
                  lambda key, a=a: vec_add(apply_op(T.iotas[a], F.image(key)),
                                           apply_op(F, _terms(S.iotas[a].image(key)))))
            check(f"[L(e{a + 1}),F]=0", "[L(xi), F] = 0",
                  lambda key, a=a: vec_add(apply_op(T.lies[a], F.image(key)),
                                           apply_op(F, _terms(S.lies[a].image(key))), -1))
    return rep
