import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from quandlekit import catalog
from quandlekit.errors import ParseError, RelationFailure
from quandlekit.quandle import quandle_automorphisms
from quandlekit.ring_auto import (
    CS4_B1,
    CS4_B2,
    CS4_SWAP,
    R4_A,
    R4_B,
    R4_RELATIONS,
    R4_TAU,
    automorphism_report,
    automorphisms_bounded,
    evaluate_word,
    format_matrix,
    group_order_small,
    inverse,
    is_ring_automorphism,
    multiplicativity_failures,
    permutation_matrix,
    quandle_automorphism_matrices,
    r4_generators,
    t2_A,
    t2_B,
    t2_generators,
    t2_relations,
    verify_relations,
)


def _table(Q):
    return [list(r) for r in Q.table]


def test_r3_all_permutations():
    Q = catalog.get("R3")
    for B in (1, 2):
        mats = automorphisms_bounded(Q, B)
        assert sorted(mats) == sorted(permutation_matrix(p) for p in itertools.permutations(range(3)))


def test_cs4_two_matrices():
    mats = automorphisms_bounded(catalog.get("Cs4"), 2)
    assert sorted(mats) == sorted([permutation_matrix((0, 1, 2)), CS4_SWAP])


def test_t2_inventory():
    mats = automorphisms_bounded(catalog.get("T2"), 2)
    expected = [t2_A(a) for a in (-1, 0, 1)] + [t2_B(a) for a in (0, 1, 2)]
    assert sorted(mats) == sorted(expected)


@pytest.mark.parametrize("name,bound", [("R3", 2), ("Cs4", 2), ("T2", 2), ("R4", 1), ("R4", 2), ("T3", 1)])
def test_matches_brute_force(name, bound):
    Q = catalog.get(name)
    assert sorted(automorphisms_bounded(Q, bound)) == oracles.ring_automorphisms(_table(Q), bound)


def test_r4_group_and_relations():
    mats = automorphisms_bounded(catalog.get("R4"), 2)
    assert len(mats) == 8
    cert = verify_relations(r4_generators(), R4_RELATIONS)
    assert len(cert) == 4
    g = group_order_small([R4_A, R4_B, R4_TAU])
    assert g.order == 8 and sorted(g.elements) == sorted(mats)


def test_t2_relation_certificates():
    cert = verify_relations(t2_generators(), t2_relations(5))
    assert "A(2)*A(3)=A(5)" in cert.relations
    assert "B(1)^2=I" in cert.relations
    assert "B(1)*A(-4)*B(1)=A(4)" in cert.relations
    assert len(cert) == 11 * 11 * 2 + 11 + 2


def test_relation_failure_reported():
    with pytest.raises(RelationFailure) as exc:
        verify_relations(t2_generators(), ["A(1)*A(1)=A(3)"])
    assert exc.value.instance == "A(1)*A(1)=A(3)"
    with pytest.raises(ParseError):
        verify_relations(t2_generators(), ["A(1)"])


def test_word_grammar():
    g = t2_generators()
    assert evaluate_word("A(1)^3", g) == t2_A(3)
    assert evaluate_word("I", g, 2) == t2_A(0)


def test_closure_orders():
    assert group_order_small(automorphisms_bounded(catalog.get("R3"), 1)).order == 6
    assert group_order_small([t2_A(1), t2_B(1)]).exceeded


def test_cayley_table_is_closed():
    g = group_order_small([R4_A, R4_B, R4_TAU])
    n = len(g.elements)
    assert all(0 <= g.cayley[i][j] < n for i in range(n) for j in range(n))


def test_quandle_automorphisms_included(small_catalog):
    for Q in small_catalog:
        if Q.n > 3 and Q.name != "R4":
            continue
        mats = set(automorphisms_bounded(Q, 1))
        assert set(quandle_automorphism_matrices(Q)) <= mats
        assert len(quandle_automorphism_matrices(Q)) == len(quandle_automorphisms(Q))


def test_inverse_closure_and_truncation():
    rep = automorphism_report(catalog.get("T2"), 2)
    assert "complete within entry bound 2" in rep.note
    assert not rep.inverse_closed or not rep.truncated
    rep3 = automorphism_report(catalog.get("R4"), 2)
    assert rep3.inverse_closed and not rep3.truncated


def test_cs4_rejected_candidates():
    Q = catalog.get("Cs4")
    # the x*z = y relation breaks both shapes (and, by the same symmetry, y*z = x)
    for M in (CS4_B1, CS4_B2):
        fails = multiplicativity_failures(Q, M)
        assert (0, 2) in fails
        assert not is_ring_automorphism(Q, M)


def test_format_matrix():
    assert format_matrix(t2_A(1)).splitlines() == [" 0 -1", " 1  2"]


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_t2_family_is_automorphism(a, b):
    Q = catalog.get("T2")
    assert is_ring_automorphism(Q, t2_A(a)) and is_ring_automorphism(Q, t2_B(a))
    assert evaluate_word(f"A({a})*A({b})", t2_generators()) == t2_A(a + b)
    assert evaluate_word(f"B({a})*B({b})", t2_generators()) == t2_A(a - b)
    assert inverse(t2_A(a)) == t2_A(-a)
