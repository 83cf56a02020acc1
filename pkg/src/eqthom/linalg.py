"""Exact sparse linear algebra over the scalar ring.

Elimination is fraction-free: rows are combined as ``p*row - a*pivot_row``
and then stripped of their content (an integer gcd, or a power of omega),
so no fractions ever appear.  The pivot for each column is the first
remaining row, in row order, with a nonzero entry there.  Matrices are
split into independent blocks before elimination, which keeps the Fourier
systems of the foliation models cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import Scalar


def _is_rational(x) -> bool:
    return not isinstance(x, Scalar) or x.is_rational()


def _as_fraction(x) -> Fraction:
    return x.rational_value() if isinstance(x, Scalar) else Fraction(x)


class ScalarMatrix:
    """Immutable sparse matrix with entries in the scalar ring."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = int(rows)
        self.cols = int(cols)
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            if v:
                clean[(i, j)] = v
        self._entries = clean

    @classmethod
    def from_dense(cls, data) -> "ScalarMatrix":
        data = [list(r) for r in data]
        cols = len(data[0]) if data else 0
        return cls(len(data), cols, {
            (i, j): v for i, r in enumerate(data) for j, v in enumerate(r)
        })

    @classmethod
    def from_columns(cls, nrows: int, columns) -> "ScalarMatrix":
        """Columns given as dicts ``row -> value``."""
        entries = {}
        columns = list(columns)
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(nrows, len(columns), entries)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def __getitem__(self, ij):
        return self._entries.get(ij, 0)

    def row_dicts(self) -> list:
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.cols, self.rows,
                            {(j, i): v for (i, j), v in self._entries.items()})

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return ScalarMatrix(self.rows, other.cols, out)

    def apply(self, vector) -> list:
        """Multiply a dense vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        out = [0] * self.rows
        for (i, j), v in self._entries.items():
            if vector[j]:
                out[i] = out[i] + v * vector[j]
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self[k] == other[k] for k in set(self._entries) | set(other._entries)
        )

    def rank(self) -> int:
        return rank_of_rows(self.row_dicts(), self.cols)

    def kernel_basis(self) -> list:
        return kernel_basis(self)

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"


# -- elimination backends --------------------------------------------------

class _IntBackend:
    @staticmethod
    def combine(p, row, a, prow):
        out = {j: p * v for j, v in row.items()}
        for j, v in prow.items():
            w = out.get(j, 0) - a * v
            if w:
                out[j] = w
            else:
                out.pop(j, None)
        g = 0
        for v in out.values():
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            out = {j: v // g for j, v in out.items()}
        return out

    @staticmethod
    def finish(vec):
        g = 0
        for v in vec.values():
            g = math.gcd(g, v)
        if g > 1:
            vec = {j: v // g for j, v in vec.items()}
        first = vec[min(vec)]
        if first < 0:
            vec = {j: -v for j, v in vec.items()}
        return vec


class _ScalarBackend:
    @staticmethod
    def strip(row):
        low = None
        for v in row.values():
            m = min(v.terms)
            low = m if low is None else min(low, m)
        if low:
            unit = Scalar.omega(Fraction(-low, 2))
            row = {j: v * unit for j, v in row.items()}
        return row

    @classmethod
    def combine(cls, p, row, a, prow):
        out = {j: p * v for j, v in row.items()}
        for j, v in prow.items():
            w = out.get(j, 0) - a * v
            if w:
                out[j] = w
            else:
                out.pop(j, None)
        return cls.strip(out) if out else out

    @classmethod
    def finish(cls, vec):
        return cls.strip(vec)


def _prepare_rows(rows):
    """Split rows into an integer system when possible, else Scalar rows."""
    int_rows, scalar_rows, all_int = [], [], True
    for row in rows:
        if not row:
            int_rows.append({})
            scalar_rows.append({})
            continue
        vals = [v if isinstance(v, Scalar) else Scalar(v) for v in row.values()]
        low = min(min(v.terms) for v in vals)
        unit = Scalar.omega(Fraction(-low, 2)) if low else None
        srow = {}
        for (j, _), v in zip(row.items(), vals):
            srow[j] = v * unit if unit is not None else v
        scalar_rows.append(_ScalarBackend.strip(srow))
        if all_int and all(v.is_rational() for v in srow.values()):
            fr = {j: v.rational_value() for j, v in srow.items()}
            lcm = 1
            for v in fr.values():
                lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
            int_rows.append({j: int(v * lcm) for j, v in fr.items()})
        else:
            all_int = False
    if all_int:
        return int_rows, _IntBackend
    return scalar_rows, _ScalarBackend


def _blocks(rows, ncols):
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        cols = list(row)
        for c in cols[1:]:
            a, b = find(cols[0]), find(c)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for c in range(ncols):
        groups.setdefault(find(c), []).append(c)
    row_groups: dict = {}
    for i, row in enumerate(rows):
        if row:
            row_groups.setdefault(find(next(iter(row))), []).append(i)
    return [(cols, row_groups.get(root, [])) for root, cols in sorted(groups.items())]


def _eliminate(rows, backend):
    """Fraction-free Gauss-Jordan; returns ``[(pivot_col, row)]``."""
    rows = [dict(r) for r in rows if r]
    col_rows: dict = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    used = set()
    pivots = []
    for c in sorted(col_rows):
        candidates = [i for i in col_rows.get(c, ()) if i not in used]
        if not candidates:
            continue
        pi = min(candidates)
        used.add(pi)
        prow = rows[pi]
        p = prow[c]
        for i in list(col_rows.get(c, ())):
            if i == pi:
                continue
            old = rows[i]
            new = backend.combine(p, old, old[c], prow)
            for j in old:
                if j not in new:
                    col_rows[j].discard(i)
            for j in new:
                if j not in old:
                    col_rows.setdefault(j, set()).add(i)
            rows[i] = new
        pivots.append((c, pi))
    return [(c, rows[i]) for c, i in pivots]


def rank_of_rows(rows, ncols) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    total = 0
    for cols, ridx in _blocks(rows, ncols):
        if not ridx:
            continue
        sub, backend = _prepare_rows([rows[i] for i in ridx])
        total += len(_eliminate(sub, backend))
    return total


def kernel_sparse(rows, ncols) -> list:
    """Kernel vectors as sparse dicts ``col -> value`` (ints or Scalars)."""
    return [v for _, v in kernel_with_free_columns(rows, ncols)]


def kernel_with_free_columns(rows, ncols) -> list:
    """Kernel basis as ``(free_col, vector)`` pairs.

    Each vector is supported on its own free column and pivot columns only,
    so the coordinates of a kernel element ``w`` are ``w[f] / v[f]``.
    """
    rows = [r for r in rows if r]
    out = []
    for cols, ridx in _blocks(rows, ncols):
        if not ridx:
            out.extend((c, {c: 1}) for c in cols)
            continue
        sub, backend = _prepare_rows([rows[i] for i in ridx])
        reduced = _eliminate(sub, backend)
        pivot_cols = {c for c, _ in reduced}
        for f in cols:
            if f in pivot_cols:
                continue
            involved = [(c, r) for c, r in reduced if f in r]
            if backend is _IntBackend:
                lcm = 1
                for c, r in involved:
                    p = abs(r[c])
                    lcm = lcm * p // math.gcd(lcm, p)
                vec = {f: lcm}
                for c, r in involved:
                    vec[c] = -r[f] * (lcm // r[c])
            else:
                prod = Scalar(1)
                for c, r in involved:
                    prod = prod * r[c]
                vec = {f: prod}
                for c, r in involved:
                    others = Scalar(1)
                    for c2, r2 in involved:
                        if c2 != c:
                            others = others * r2[c2]
                    vec[c] = -r[f] * others
            out.append((f, backend.finish(vec)))
    out.sort(key=lambda fv: fv[0])
    return out


def kernel_basis(m: ScalarMatrix) -> list:
    """Exact basis of the right kernel as dense lists of Scalars."""
    vecs = kernel_sparse(m.row_dicts(), m.cols)
    dense = []
    for v in vecs:
        row = [Scalar(0)] * m.cols
        for j, x in v.items():
            row[j] = Scalar.coerce(x)
        dense.append(row)
    return dense


def rank(m: ScalarMatrix) -> int:
    return m.rank()


class ComplexSlice:
    """A finite window ``[a, b]`` of a cochain complex.

    ``closed_below`` / ``closed_above`` record whether the complex is known
    to vanish just outside the window; only degrees whose two adjacent
    differentials are known have a well defined cohomology.
    """

    def __init__(self, degrees, bases, differentials, closed_below=False,
                 closed_above=False):
        a, b = degrees
        if a > b:
            raise ValueError("empty degree window")
        self.degrees = (a, b)
        self.bases = {k: list(bases.get(k, [])) for k in range(a, b + 1)}
        self.differentials = {}
        for k in range(a, b):
            m = differentials.get(k)
            if m is None:
                m = ScalarMatrix(len(self.bases[k + 1]), len(self.bases[k]))
            if (m.rows, m.cols) != (len(self.bases[k + 1]), len(self.bases[k])):
                raise ValueError(f"differential in degree {k} has shape "
                                 f"{m.rows}x{m.cols}, expected "
                                 f"{len(self.bases[k + 1])}x{len(self.bases[k])}")
            self.differentials[k] = m
        self.closed_below = closed_below
        self.closed_above = closed_above

    def dim(self, k) -> int:
        return len(self.bases.get(k, []))

    def interior(self) -> list:
        a, b = self.degrees
        lo = a if self.closed_below else a + 1
        hi = b if self.closed_above else b - 1
        return list(range(lo, hi + 1))

    def check_square_zero(self) -> bool:
        a, b = self.degrees
        return all((self.differentials[k + 1] @ self.differentials[k]).is_zero()
                   for k in range(a, b - 1))


def cohomology_dims(c: ComplexSlice, degrees=None) -> dict:
    """``dim H^k = dim ker d_k - rank d_{k-1}`` on interior degrees."""
    allowed = c.interior()
    degrees = allowed if degrees is None else list(degrees)
    ranks: dict = {}

    def rank_at(k):
        if k not in c.differentials:
            return 0
        if k not in ranks:
            ranks[k] = c.differentials[k].rank()
        return ranks[k]

    out = {}
    for k in degrees:
        if k not in allowed:
            raise ValueError(f"degree {k} is outside the interior {allowed} of the window")
        out[k] = c.dim(k) - rank_at(k) - rank_at(k - 1)
    return out
