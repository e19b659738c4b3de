import itertools
import math

import pytest
from hypothesis import given, strategies as st

import oracles
from quandlekit import catalog
from quandlekit.errors import NotAnAutomorphism, Q1Violation, Q2Violation, Q3Violation, TableError, BudgetExceeded
from quandlekit.quandle import (
    cyclic_group,
    format_quandle,
    is_2transitive,
    is_group_automorphism,
    is_quandle_automorphism,
    isomorphism,
    make_alex,
    make_conj,
    make_core,
    make_cs4,
    make_dihedral,
    make_trivial,
    multiplication_automorphism,
    parse_quandle,
    predicates,
    quandle_automorphisms,
    symmetric_group,
    verify_quandle,
)


def test_verify_dihedral_valid():
    Q = verify_quandle(oracles.dihedral(3))
    assert Q.n == 3


def test_q1_violation_reported():
    with pytest.raises(Q1Violation) as exc:
        verify_quandle([[1, 0], [0, 1]])
    assert exc.value.witness == (0,)


def test_q2_violation_reported():
    with pytest.raises(Q2Violation):
        verify_quandle([[0, 0], [0, 1]])


def test_q3_violation_specifically():
    # find a table satisfying Q1, Q2 and failing Q3 by search over n = 3
    n = 3
    perms = list(itertools.permutations(range(n)))
    for cols in itertools.product(perms, repeat=n):
        t = [[cols[j][i] for j in range(n)] for i in range(n)]
        if all(t[i][i] == i for i in range(n)) and not oracles.is_quandle(t):
            with pytest.raises(Q3Violation):
                verify_quandle(t)
            return
    pytest.fail("no Q3-only counterexample found")


def test_ragged_and_range_errors():
    with pytest.raises(TableError):
        verify_quandle([[0, 1], [1]])
    with pytest.raises(TableError):
        verify_quandle([[0, 5], [1, 1]])


def test_cs4_table():
    Q = make_cs4()
    x, y, z = (Q.index(c) for c in "xyz")
    assert Q.mul(x, z) == y and Q.mul(y, z) == x
    assert Q.table == tuple(map(tuple, oracles.CS4))


def test_constructor_examples():
    assert make_dihedral(3).mul(1, 2) == 0
    assert make_dihedral(4).mul(0, 1) == 2
    assert make_core(cyclic_group(5)).mul(1, 2) == 3
    assert make_alex(cyclic_group(5), multiplication_automorphism(5, 2)).mul(1, 2) == 0
    with pytest.raises(ValueError):
        make_trivial(0)


def test_conj_of_abelian_is_trivial():
    for n in range(1, 7):
        assert predicates(make_conj(cyclic_group(n))).trivial


def test_alex_rejects_non_automorphism():
    with pytest.raises(NotAnAutomorphism):
        make_alex(cyclic_group(4), multiplication_automorphism(4, 2))


def test_predicate_examples():
    p = predicates(make_dihedral(3))
    assert p.latin and p.commutative and p.connected and p.involutary
    assert not predicates(make_dihedral(4)).connected
    assert predicates(catalog.get("Alex(Z5,2)")).strongly_non_commutative


def test_alex_strongly_noncommutative_by_brute_force():
    t = catalog.get("Alex(Z5,2)").table
    pairs = {(t[a][b], t[b][a]) for a in range(5) for b in range(5)}
    assert all((x, y) in pairs for x in range(5) for y in range(5) if x != y)


def test_automorphism_counts():
    assert len(quandle_automorphisms(make_trivial(3))) == 6
    assert len(quandle_automorphisms(make_dihedral(3))) == 6
    assert quandle_automorphisms(make_trivial(1)) == [(0,)]
    with pytest.raises(BudgetExceeded):
        quandle_automorphisms(make_trivial(9))


def test_automorphisms_match_brute_force(small_catalog):
    for Q in small_catalog:
        brute = sorted(p for p in itertools.permutations(range(Q.n)) if is_quandle_automorphism(Q, p))
        assert quandle_automorphisms(Q) == brute, Q.name


def test_automorphisms_form_a_group(small_catalog):
    for Q in small_catalog:
        auts = set(quandle_automorphisms(Q))
        for p, q in itertools.product(auts, repeat=2):
            assert tuple(p[q[i]] for i in range(Q.n)) in auts
        for p in auts:
            inv = [0] * Q.n
            for i, v in enumerate(p):
                inv[v] = i
            assert tuple(inv) in auts


def test_two_transitivity():
    assert is_2transitive(make_dihedral(3))
    assert is_2transitive(make_trivial(4))
    assert not is_2transitive(make_dihedral(4))


def test_column_maps_are_automorphisms(small_catalog):
    for Q in small_catalog:
        for y in range(Q.n):
            assert is_quandle_automorphism(Q, Q.right(y))


def test_latin_implies_semi_latin(small_catalog):
    for Q in small_catalog:
        p = predicates(Q)
        assert not p.latin or p.semi_latin


def test_core_quandles_involutary():
    for n in range(1, 9):
        assert predicates(make_core(cyclic_group(n))).involutary
    assert predicates(make_core(symmetric_group(3))).involutary


def test_alex_semi_latin_iff_fixed_point_free():
    for n in range(2, 13):
        G = cyclic_group(n)
        for c in range(n):
            phi = multiplication_automorphism(n, c)
            if not is_group_automorphism(G, phi):
                continue
            fpf = all(phi[x] != x for x in range(1, n))
            assert predicates(make_alex(G, phi)).semi_latin == fpf, (n, c)


def test_order_three_classification():
    qs = [catalog.get(n) for n in ("T3", "R3", "Cs4")]
    for a, b in itertools.combinations(qs, 2):
        assert isomorphism(a, b) is None
    # every 3-element quandle is isomorphic to one of them
    perms = list(itertools.permutations(range(3)))
    count = 0
    for cols in itertools.product(perms, repeat=3):
        t = [[cols[j][i] for j in range(3)] for i in range(3)]
        if oracles.is_quandle(t):
            count += 1
            Q = verify_quandle(t)
            assert any(isomorphism(Q, P) is not None for P in qs)
    assert count > 3


def test_file_round_trip(tmp_path, small_catalog):
    for Q in small_catalog:
        text = format_quandle(Q)
        back = parse_quandle(text)
        assert back == Q
        assert format_quandle(back) == text


@given(st.integers(1, 9))
def test_dihedral_matches_oracle(n):
    Q = make_dihedral(n)
    assert [list(r) for r in Q.table] == oracles.dihedral(n)
    assert oracles.is_quandle(oracles.dihedral(n))


@given(st.integers(1, 7), st.data())
def test_alex_formula(n, data):
    G = cyclic_group(n)
    units = [c for c in range(1, n + 1) if math.gcd(c, n) == 1]
    c = data.draw(st.sampled_from(units))
    Q = make_alex(G, multiplication_automorphism(n, c))
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert Q.mul(a, b) == (c * (a - b) + b) % n
