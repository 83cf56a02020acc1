from hypothesis import given, strategies as st

from eqthom.gca import (Derivation, GeneratorSet, derivation_commutator, homogeneous_basis,
                        wedge)
from eqthom.lie import ce_differential, lie_algebra
from eqthom.weil import build_weil

GENS = GeneratorSet([("x", 1), ("y", 1), ("z", 1), ("p", 2), ("q", 2)])


def test_odd_generators_anticommute():
    x, y = GENS.gen("x"), GENS.gen("y")
    assert wedge(x, y) == -wedge(y, x)
    assert (x * x).is_zero()


def test_zero_derivation():
    D = Derivation(GENS, 1, {})
    assert D.apply(GENS.gen("x") * GENS.gen("p") + GENS.gen("q")).is_zero()


def test_leibniz_on_even_square():
    gens = GeneratorSet([("v", 2), ("w", 2)])
    v, w = gens.gen("v"), gens.gen("w")
    D = Derivation(gens, 2, {0: v * w})
    assert D.apply(v * v) == v * D.apply(v) * 2


def test_ce_differential_squares_to_zero():
    g = lie_algebra("aff2")
    d = ce_differential(g)
    x1, x2 = d.gens.gen(0), d.gens.gen(1)
    assert d.apply(x2) == -(x1 * x2)
    assert d.apply(x1).is_zero()
    for i in range(d.gens.n):
        assert d.apply(d.apply(d.gens.gen(i))).is_zero()


def test_odd_square_free_derivation_commutator_vanishes():
    d = build_weil(lie_algebra("so3")).d
    assert derivation_commutator(d, d).is_zero()


def test_contraction_commutator_gives_lie_derivative():
    w = build_weil(lie_algebra("so3"))
    s = w.structure
    for a in range(3):
        c = derivation_commutator(s.iotas[a], s.d)
        for i in range(w.gens.n):
            assert c.generator_image(i) == s.lies[a].generator_image(i)


def test_lie_derivatives_represent_the_bracket():
    g = lie_algebra("so3")
    s = build_weil(g).structure
    for a in range(3):
        for b in range(3):
            c = derivation_commutator(s.lies[a], s.lies[b])
            for i in range(s.gens.n):
                want = s.gens.zero()
                for k, v in g.bracket(a, b).items():
                    want = want + s.lies[k].generator_image(i) * v
                assert c.generator_image(i) == want


def test_homogeneous_bases():
    gens = GeneratorSet([("u", 1), ("v", 2)])
    assert homogeneous_basis(gens, 0) == [(0, 0)]
    assert homogeneous_basis(gens, 3) == [(1, 1)]


def test_weil_so3_monomial_counts():
    gens = build_weil(lie_algebra("so3")).gens
    # 3 odd generators of degree 1 and 3 even of degree 2
    assert len(homogeneous_basis(gens, 4)) == 15
    assert len(homogeneous_basis(gens, 5)) == 21


def brute_count(degree):
    from itertools import combinations, product
    count = 0
    for k in range(0, 4):
        for odd in combinations(range(3), k):
            rest = degree - k
            if rest < 0 or rest % 2:
                continue
            count += sum(1 for e in product(range(rest // 2 + 1), repeat=3)
                         if sum(e) == rest // 2)
    return count


def test_monomial_counts_match_enumeration():
    gens = build_weil(lie_algebra("so3")).gens
    for k in range(8):
        assert len(homogeneous_basis(gens, k)) == brute_count(k)


elements = st.lists(st.tuples(st.sampled_from(range(5)), st.sampled_from(range(5)),
                              st.integers(-3, 3)), min_size=1, max_size=3)


def build(triples):
    out = GENS.zero()
    for i, j, c in triples:
        out = out + GENS.gen(i) * GENS.gen(j) * c
    return out


homog = st.sampled_from(["x", "y", "z", "p", "q"]).map(GENS.gen)


@given(homog, homog, homog)
def test_wedge_associativity(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(homog, homog)
def test_graded_commutativity(a, b):
    sign = -1 if (a.degree() * b.degree()) % 2 else 1
    assert a * b == b * a * sign


@given(elements, elements)
def test_derivation_leibniz(sa, sb):
    D = Derivation(GENS, 1, {0: GENS.gen("p"), 3: GENS.gen("x") * GENS.gen("q")})
    a, b = build(sa), build(sb)
    for pa in a.degrees():
        ah = a.component(pa)
        sign = -1 if pa % 2 else 1
        assert D.apply(ah * b) == D.apply(ah) * b + ah * D.apply(b) * sign
