import random

import pytest
from hypothesis import given, strategies as st

from quandlekit.errors import DimensionMismatch, ParseError
from quandlekit.infinite import (
    FreeQuandleElement,
    IntQuandle,
    format_fq,
    fq_equal,
    fq_multiply,
    fq_right_divide,
    fq_semi_latin_sample,
    int_quandle_mul,
    order_monotonicity_sample,
    parse_fq,
    random_fq,
)


def conj(x):
    """Oracle: a^w as the reduced free-group word w^-1 a w."""
    letters = [(g, -e) for g, e in reversed(x.word)] + [(x.gen, 1)] + list(x.word)
    out = []
    for g, e in letters:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def conj_product(x, y):
    """y^-1 x y in the free group, on oracle words."""
    cx, cy = conj(x), conj(y)
    inv = [(g, -e) for g, e in reversed(cy)]
    out = []
    for g, e in inv + list(cx) + list(cy):
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def fq(gen, *letters, rank=2):
    return FreeQuandleElement(rank, gen, tuple(letters))


A, B = 0, 1


def test_generator_product():
    assert fq_multiply(fq(A), fq(B)) == fq(A, (B, 1))


def test_q1_example():
    x = fq(A, (B, 1))
    assert fq_multiply(x, x) == x


def test_hand_reduced_product():
    assert fq_multiply(fq(A, (B, 1)), fq(A)) == fq(A, (B, 1), (A, 1))


def test_equality_examples():
    w = ((B, 1), (A, -1))
    assert fq_equal(fq(A, *w), fq(A, (A, 1), *w))
    assert not fq_equal(fq(A, (B, 1)), fq(B, (A, 1)))
    assert not fq_equal(fq(A, (B, 1), (B, 1)), fq(A, (B, 1)))


def test_rank_mismatch():
    with pytest.raises(DimensionMismatch):
        fq_multiply(fq(0, rank=2), fq(0, rank=3))


def test_semi_latin_samples():
    assert fq_semi_latin_sample(1, 100, 4).ok
    assert fq_semi_latin_sample(2, 10**4, 6, seed=1).ok
    z, x, y = fq(A), fq(B), fq(B, (A, 1))
    assert not fq_equal(fq_multiply(z, x), fq_multiply(z, y))


def test_literal_round_trip():
    x = parse_fq("a1^[+0 -1 +0]", 2)
    assert x.word == ((0, 1), (1, -1), (0, 1))
    assert format_fq(x) == "a1^[+0 -1 +0]"
    assert parse_fq("a0", 2) == fq(A)
    with pytest.raises(ParseError):
        parse_fq("b0", 2)
    with pytest.raises(ParseError):
        parse_fq("a0^[+5]", 2)


def test_int_quandle_examples():
    core = IntQuandle("core")
    assert int_quandle_mul(core, 1, 2) == 3
    assert all(core.mul(a, a) == a for a in range(-20, 20))
    alex = IntQuandle("alex", -1)
    assert all(alex.mul(a, b) == core.mul(a, b) for a in range(-5, 6) for b in range(-5, 6))
    with pytest.raises(ValueError):
        IntQuandle("alex", 2)  # right multiplication is not a bijection of Z


def test_monotonicity_examples():
    core = IntQuandle("core")
    assert order_monotonicity_sample(core, "left", 2000).ok
    right = order_monotonicity_sample(core, "right", 50)
    assert right.violations[0] == (0, 1, 0, 0, -1)
    assert order_monotonicity_sample(IntQuandle("alex", -1), "left", 2000).ok


rank_st = st.integers(1, 3)


@st.composite
def fq_elements(draw, rank, k=1):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    return [random_fq(rng, rank, 5) for _ in range(k)]


@given(st.data())
def test_normal_form_invariant(data):
    r = data.draw(rank_st)
    x, y = data.draw(fq_elements(r, 2))
    z = fq_multiply(x, y)
    assert all(a != (b[0], -b[1]) for a, b in zip(z.word, z.word[1:]))
    assert not z.word or z.word[0][0] != z.gen


@given(st.data())
def test_product_matches_free_group_conjugation(data):
    r = data.draw(rank_st)
    x, y = data.draw(fq_elements(r, 2))
    assert conj(fq_multiply(x, y)) == conj_product(x, y)


@given(st.data())
def test_q1_q3(data):
    r = data.draw(rank_st)
    x, y, z = data.draw(fq_elements(r, 3))
    assert fq_multiply(x, x) == x
    assert fq_multiply(fq_multiply(x, y), z) == fq_multiply(fq_multiply(x, z), fq_multiply(y, z))


def test_q1_q3_fixed_suite():
    rng = random.Random(7)
    for _ in range(1000):
        x, y, z = (random_fq(rng, 2, 5) for _ in range(3))
        assert fq_multiply(fq_multiply(x, y), z) == fq_multiply(fq_multiply(x, z), fq_multiply(y, z))


@given(st.data())
def test_right_division_inverts(data):
    r = data.draw(rank_st)
    x, y = data.draw(fq_elements(r, 2))
    z = fq_right_divide(x, y)
    assert fq_multiply(z, y) == x
    assert fq_right_divide(fq_multiply(x, y), y) == x


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_core_z_involutary(a, b):
    q = IntQuandle("core")
    assert q.mul(q.mul(a, b), b) == a
