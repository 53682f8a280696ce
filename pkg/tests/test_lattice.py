import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from toricjets import lattice as lat
from corpus import random_unimodular

ints = st.integers(-9, 9)


def vecs(n):
    return st.lists(ints, min_size=n, max_size=n).filter(any).map(tuple)


def mats(m, n):
    return st.lists(st.lists(ints, min_size=n, max_size=n), min_size=m, max_size=m)


@pytest.mark.parametrize("v, w", [((2, 4), (1, 2)), ((1, 0, 0), (1, 0, 0)), ((-3, 6, 9), (-1, 2, 3))])
def test_primitive_examples(v, w):
    assert lat.primitive(v) == w


def test_primitive_zero_errors():
    with pytest.raises(lat.LatticeError):
        lat.primitive((0, 0))


@given(vecs(3))
def test_primitive_idempotent(v):
    assert lat.primitive(lat.primitive(v)) == lat.primitive(v)


def test_lattice_length_examples():
    assert lat.lattice_length((0, 0), (2, 4)) == 2
    assert lat.lattice_length((1, 1), (1, 1)) == 0
    assert lat.lattice_length((0, 0), (Fraction(1, 2), Fraction(1, 2))) == Fraction(1, 2)


def _length_by_search(u1, u2):
    # smallest l with (u1 - u2)/l primitive integral, via scanning rationals
    d = [Fraction(a) - Fraction(b) for a, b in zip(u1, u2)]
    if not any(d):
        return Fraction(0)
    for den in range(1, 13):
        for num in range(1, 200):
            l = Fraction(num, den)
            w = [x / l for x in d]
            if all(x.denominator == 1 for x in w) and lat.content([int(x) for x in w]) == 1:
                return l
    raise AssertionError


@given(vecs(2), vecs(2), st.integers(1, 3))
def test_lattice_length_matches_search(u, v, den):
    u1 = tuple(Fraction(x, den) for x in u)
    assert lat.lattice_length(u1, v) == _length_by_search(u1, v)


@given(vecs(3), vecs(3), vecs(3))
def test_lattice_length_symmetric_and_translation_invariant(u, v, w):
    assert lat.lattice_length(u, v) == lat.lattice_length(v, u)
    assert lat.lattice_length(lat.add(u, w), lat.add(v, w)) == lat.lattice_length(u, v)


def test_hnf_examples():
    H, U = lat.hermite_normal_form(lat.identity(3))
    assert H == lat.identity(3) and U == lat.identity(3)
    assert lat.hermite_normal_form([[2, 0], [0, 3]])[0] == [[2, 0], [0, 3]]
    H, _ = lat.hermite_normal_form([[1, 2], [2, 4]])
    assert [r for r in H if any(r)] == [[1, 2]]


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: mats(m, n))))
def test_hnf_properties(A):
    H, U = lat.hermite_normal_form(A)
    assert lat.matmul(U, A) == H
    assert lat.is_unimodular(U)
    # echelon with positive pivots reduced above
    last = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        assert not seen_zero
        p = nz[0]
        assert p > last and row[p] > 0
        for r in range(i):
            assert 0 <= H[r][p] < row[p]
        last = p
    assert lat.rank(A) == sympy.Matrix(A).rank()


def test_snf_examples():
    assert lat.smith_invariant_factors(lat.identity(2)) == [1, 1]
    assert lat.smith_invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    assert lat.smith_invariant_factors([[1, 2], [2, 4]]) == [1]


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: mats(m, n))))
def test_snf_matches_sympy(A):
    mine = lat.smith_invariant_factors(A)
    S = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    ref = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
    assert mine == sorted(ref)
    assert all(b % a == 0 for a, b in zip(mine, mine[1:]))


def test_multiplicity_examples():
    assert lat.multiplicity([(1, 0), (0, 1)]) == 1
    assert lat.multiplicity([(1, 0), (1, 2)]) == 2
    assert lat.multiplicity([(1, 0, 0), (0, 1, 0), (1, 1, 2)]) == 2
    assert lat.multiplicity([]) == 1


@given(st.integers(2, 3).flatmap(lambda n: mats(n, n)))
def test_multiplicity_is_abs_det(A):
    d = lat.determinant(A)
    if d != 0:
        assert lat.multiplicity(A) == abs(d)


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_multiplicity_unimodular_invariant(seed, n):
    rng = random.Random(seed)
    gens = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(rng.randint(1, n))]
    U = random_unimodular(rng, n)
    moved = [list(lat.matvec(U, g)) for g in gens]
    assert lat.multiplicity(moved) == lat.multiplicity(gens)


def test_s0_examples():
    assert lat.s0([(1, 0)], (0, 1)) == 1
    assert lat.s0([(1, 0)], (1, 2)) == 2
    assert lat.s0([(1, 0, 0), (0, 1, 0)], (1, 1, 3)) == 3
    with pytest.raises(lat.LatticeError):
        lat.s0([(1, 0)], (2, 0))


@given(st.integers(0, 10**6))
def test_s0_positive_and_one_when_smooth(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    tau = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n - 1)]
    v0 = tuple(rng.randint(-4, 4) for _ in range(n))
    if lat.rank([list(g) for g in tau + [v0]]) < n:
        return
    s = lat.s0(tau, v0)
    assert s >= 1
    if lat.multiplicity(tau + [v0]) == 1:
        assert s == 1


def _check_quotient(sub, d, radius=3):
    F = lat.quotient_lattice_map(sub, d)
    sat = lat.saturation_basis(sub, d) if sub else []
    r = len(sat)
    assert len(F) == d - r
    # kernel = saturation, image = Z^(d-r) (unit vectors hit) by enumeration
    import itertools
    hits = set()
    for x in itertools.product(range(-radius, radius + 1), repeat=d):
        y = lat.matvec(F, x)
        hits.add(y)
        in_span = lat.rank([list(g) for g in sub] + [list(x)]) == lat.rank([list(g) for g in sub]) if sub else not any(x)
        assert (not any(y)) == in_span
    for i in range(d - r):
        assert tuple(int(i == j) for j in range(d - r)) in hits
    return F


def test_quotient_lattice_map_examples():
    F = _check_quotient([(1, 0)], 2)
    assert F in ([[0, 1]], [[0, -1]])
    assert lat.quotient_lattice_map([], 3) == lat.identity(3)
    F = _check_quotient([(2, 4)], 2)
    assert lat.matvec(F, (1, 2)) == (0,)


@given(st.integers(0, 10**6))
def test_quotient_lattice_map_random(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 3)
    sub = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, d - 1))]
    sub = [s for s in sub if any(s)]
    _check_quotient(sub, d, radius=2)


def test_duality_multiplicity_identity_example():
    v = [(1, 0), (1, 2)]
    # dual rays labelled so <w_i, v_j> = 0 for i != j
    w = [(2, -1), (0, 1)]
    for i in range(2):
        rest = [v[j] for j in range(2) if j != i]
        assert lat.dot(v[i], w[i]) == Fraction(lat.multiplicity(v), lat.multiplicity(rest))


def test_solve_and_inverse():
    A = [[2, 1], [1, 1]]
    assert lat.matmul(A, lat.inverse(A)) == lat.identity(2)
    assert lat.solve(A, [3, 2]) == (1, 1)
    assert lat.solve([[1, 1], [1, 1]], [1, 2]) is None
