from fractions import Fraction

from hypothesis import given, strategies as st

from eqthom.linalg import (ComplexSlice, ScalarMatrix, cohomology_dims, kernel_with_free_columns,
                           rank_of_rows)
from eqthom.gca import GeneratorSet, homogeneous_basis
from eqthom.scalars import Scalar


def test_zero_matrix_kernel():
    assert ScalarMatrix.from_dense([[0]]).kernel_basis() == [[1]]


def test_identity_has_trivial_kernel():
    eye = ScalarMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert eye.kernel_basis() == []


def test_kernel_with_omega_entries():
    w = Scalar.omega(1)
    (v,) = ScalarMatrix.from_dense([[1, w], [2, w * 2]]).kernel_basis()
    assert v[1] == 1 and v[0] == -w


def test_free_columns_carry_their_own_coordinate():
    rows = [{0: 1, 1: 1}, {2: Scalar.sqrt(2), 3: 1}]
    kernel = kernel_with_free_columns(rows, 4)
    for f, v in kernel:
        assert v[f]
        assert all(sum(row.get(c, 0) * x for c, x in v.items()) == 0 for row in rows)


def test_cohomology_of_trivial_complexes():
    c = ComplexSlice((0, 1), {0: ["a"], 1: ["b"]}, {}, closed_below=True, closed_above=True)
    assert cohomology_dims(c) == {0: 1, 1: 1}
    c = ComplexSlice((0, 1), {0: ["a"], 1: ["b"]}, {0: ScalarMatrix(1, 1, {(0, 0): 1})},
                     closed_below=True, closed_above=True)
    assert cohomology_dims(c) == {0: 0, 1: 0}


def koszul_slice(top):
    """S[v] (x) L[u] with d u = v, deg u = 1, deg v = 2, truncated at ``top``."""
    gens = GeneratorSet([("u", 1), ("v", 2)])
    bases = {k: homogeneous_basis(gens, k) for k in range(top + 1)}
    diffs = {}
    for k in range(top):
        entries = {}
        for j, m in enumerate(bases[k]):
            if m[0]:
                # u v^n -> v^(n+1)
                target = (0, m[1] + 1)
                entries[(bases[k + 1].index(target), j)] = 1
        diffs[k] = ScalarMatrix(len(bases[k + 1]), len(bases[k]), entries)
    return ComplexSlice((0, top), bases, diffs, closed_below=True)


def test_koszul_complex_is_acyclic():
    dims = cohomology_dims(koszul_slice(6))
    assert dims == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


small = st.integers(-3, 3)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    m = ScalarMatrix.from_dense(rows)
    kernel = m.kernel_basis()
    assert m.rank() + len(kernel) == 4
    for v in kernel:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


@given(st.lists(st.dictionaries(st.integers(0, 5), small.filter(bool), max_size=4), max_size=5))
def test_sparse_rank_matches_dense(rows):
    dense = [[r.get(c, 0) for c in range(6)] for r in rows] or [[0] * 6]
    assert rank_of_rows(rows, 6) == ScalarMatrix.from_dense(dense).rank()
