import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quandlekit.coeffs import (
    QQ,
    Z,
    CoefficientRing,
    IntLatticeBasis,
    determinant,
    hnf_insert,
    lattice_contains,
    solve_integer,
    span_basis,
)
from quandlekit.errors import DimensionMismatch, NotIntegralDomain, ParseError


def test_ring_flags():
    assert Z.is_integral_domain and QQ.is_integral_domain
    assert CoefficientRing.mod(7).is_integral_domain
    assert not CoefficientRing.mod(6).is_integral_domain
    with pytest.raises(NotIntegralDomain):
        CoefficientRing.mod(6).require_domain()


def test_ring_parse():
    assert CoefficientRing.parse("zmod:5") == CoefficientRing.mod(5)
    assert CoefficientRing.parse("Q") == QQ
    with pytest.raises(ParseError):
        CoefficientRing.parse("zmod:x")
    with pytest.raises(ValueError):
        CoefficientRing.mod(1)


def test_scalars_canonical():
    R = CoefficientRing.mod(5)
    assert R.normalize(-1) == 4
    assert QQ.normalize(Fraction(2, -4)) == Fraction(-1, 2)
    assert R.inverse(2) == 3


def test_hnf_insert_member_unchanged():
    b = IntLatticeBasis.from_vectors(3, [(1, -1, 0), (0, 1, -1)])
    assert hnf_insert(b, (1, 0, -1)) == b


def test_hnf_insert_zero_into_empty():
    b = IntLatticeBasis(2)
    assert hnf_insert(b, (0, 0)).rows == ()


def test_hnf_insert_independent():
    b = IntLatticeBasis.from_vectors(2, [(2, 0)])
    assert hnf_insert(b, (0, 3)).rows == ((2, 0), (0, 3))


def test_lattice_contains_examples():
    b = IntLatticeBasis.from_vectors(3, [(1, -1, 0), (0, 1, -1)])
    assert lattice_contains(b, (2, -1, -1))
    assert not lattice_contains(IntLatticeBasis.from_vectors(2, [(2, 0)]), (1, 0))
    assert lattice_contains(IntLatticeBasis(2), (0, 0))


def test_dimension_mismatch():
    b = IntLatticeBasis(2)
    with pytest.raises(DimensionMismatch):
        hnf_insert(b, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        lattice_contains(b, (1,))


vec3 = st.lists(st.integers(-6, 6), min_size=3, max_size=3)


@given(st.lists(vec3, max_size=5), st.randoms(use_true_random=False))
def test_hnf_independent_of_insertion_order(vectors, rnd):
    a = IntLatticeBasis(3)
    for v in vectors:
        a = hnf_insert(a, v)
    shuffled = list(vectors)
    rnd.shuffle(shuffled)
    b = IntLatticeBasis(3)
    for v in shuffled:
        b = hnf_insert(b, v)
    assert a == b


@given(st.lists(vec3, max_size=4), vec3, st.integers(-5, 5))
def test_membership_closed_under_multiples(vectors, v, k):
    b = IntLatticeBasis.from_vectors(3, vectors)
    if lattice_contains(b, v):
        assert lattice_contains(b, [k * a for a in v])


@given(st.lists(vec3, min_size=1, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_integer_combinations_are_members(vectors, coeffs):
    b = IntLatticeBasis.from_vectors(3, vectors)
    combo = [sum(c * v[i] for c, v in zip(coeffs, vectors)) for i in range(3)]
    assert lattice_contains(b, combo)


def test_mod_arithmetic_matches_reduction():
    rng = random.Random(0)
    for _ in range(1000):
        m = rng.randint(2, 30)
        R = CoefficientRing.mod(m)
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert R.add(R.normalize(a), R.normalize(b)) == (a + b) % m
        assert R.mul(R.normalize(a), R.normalize(b)) == (a * b) % m
        assert R.sub(R.normalize(a), R.normalize(b)) == (a - b) % m


def test_span_basis_over_field():
    E = span_basis(QQ, 3, [(1, 1, 0), (2, 2, 0), (0, 0, 5)])
    assert E.rank == 2


def test_determinant_and_solve_integer():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert solve_integer([[2, 4], [1, 3]], [6, 4]) == [1, 1]
    assert solve_integer([[2, 4]], [3]) is None
    for M in itertools.product(range(-2, 3), repeat=4):
        A = [list(M[:2]), list(M[2:])]
        x = solve_integer(A, [1, 0])
        if x is not None:
            assert [A[0][0] * x[0] + A[0][1] * x[1], A[1][0] * x[0] + A[1][1] * x[1]] == [1, 0]
