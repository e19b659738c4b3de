import random

import pytest
from hypothesis import given, strategies as st

import oracles
from quandlekit import catalog
from quandlekit.coeffs import Z, lattice_contains
from quandlekit.errors import CertificateError, HypothesisFailed
from quandlekit.quandle import is_2transitive, is_commutative, predicates
from quandlekit.ring import RingElement, aug_ideal_basis, commutator, element, parse_element
from quandlekit.commutators import (
    CommutatorCertificate,
    cl_exact_small,
    commutator_subalgebra,
    contained_in_delta,
    cw_bounds,
    cw_certificate,
    delta_lattice,
    parse_certificates,
    serialize_certificates,
    single_commutator_witness,
    strongly_noncomm_delta_equality,
    verify_certificate,
)


def test_commutator_examples():
    R4 = catalog.get("R4")
    a = [RingElement.basis(R4, Z, i) for i in range(4)]
    assert commutator(a[3], a[2]) == aug_ideal_basis(R4).vectors[0]
    u = element(R4, (3, -1, 2, 0))
    assert commutator(u, u).is_zero()


@pytest.mark.parametrize("name,rank,equals_delta", [
    ("R3", 0, False), ("R4", 3, True), ("Cs4", 2, True), ("Alex(Z5,2)", 4, True), ("T3", 2, True),
])
def test_subalgebra_ranks(name, rank, equals_delta):
    Q = catalog.get(name)
    L = commutator_subalgebra(Q)
    assert L.rank == rank
    assert (L.rows == delta_lattice(Q).rows) == equals_delta


def test_subalgebra_contains_all_commutators_and_is_closed():
    for name in ("R4", "Cs4", "Conj(S3)", "R6"):
        Q = catalog.get(name)
        L = commutator_subalgebra(Q)
        t = [list(r) for r in Q.table]
        rng = random.Random(1)
        for _ in range(30):
            u = [rng.randint(-3, 3) for _ in range(Q.n)]
            v = [rng.randint(-3, 3) for _ in range(Q.n)]
            assert lattice_contains(L, oracles.commutator(t, u, v))
        for r in L.rows:
            for s in L.rows:
                assert lattice_contains(L, oracles.mul(t, r, s))


def test_commutators_in_delta_on_catalog(small_catalog):
    for Q in small_catalog:
        assert contained_in_delta(Q), Q.name


def test_commutative_iff_zero_lattice(small_catalog):
    for Q in small_catalog:
        assert is_commutative(Q) == commutator_subalgebra(Q).is_zero(), Q.name


def test_strongly_noncommutative_means_delta(small_catalog):
    for Q in small_catalog:
        if predicates(Q).strongly_non_commutative and Q.n >= 2:
            assert commutator_subalgebra(Q).rows == delta_lattice(Q).rows, Q.name


def test_delta_equality_certificates():
    Q = catalog.get("Alex(Z5,2)")
    cert = strongly_noncomm_delta_equality(Q)
    assert cert.method == "direct" and cert.check(Q)
    assert len(cert.witnesses) == 20
    a, b = cert.witnesses[0, 1]
    assert Q.mul(a, b) == 0 and Q.mul(b, a) == 1
    with pytest.raises(HypothesisFailed):
        strongly_noncomm_delta_equality(catalog.get("R3"))


def test_trivial_quandles_are_strongly_noncommutative():
    # ab = a and ba = b: every ordered pair (x, y) is (ab, ba) with a = x, b = y
    Q = catalog.get("T2")
    cert = strongly_noncomm_delta_equality(Q)
    assert cert.witnesses == {(0, 1): (0, 1), (1, 0): (1, 0)}


def test_alex_bounds():
    Q = catalog.get("Alex(Z5,2)")
    assert is_2transitive(Q) and not is_commutative(Q)
    b = cw_bounds(Q, samples=20, seed=0)
    assert b.lower == 1 and b.upper == 4
    assert 0 < b.single_hits <= b.tried == 20


def test_cw_witness_examples():
    T3 = catalog.get("T3")
    u = parse_element("-3*x0 + 2*x1 + x2", T3)
    v, w = single_commutator_witness(u)
    assert v == parse_element("-2*x0 + 2*x1 + x2", T3) and w == parse_element("x0", T3)
    assert commutator(v, w) == u
    R4 = catalog.get("R4")
    e = aug_ideal_basis(R4).vectors
    v, w = single_commutator_witness(e[0] + e[1] + e[2])
    assert (v, w) == (parse_element("a2", R4), parse_element("a0 - a1 - a3", R4))
    Cs4 = catalog.get("Cs4")
    e = aug_ideal_basis(Cs4).vectors
    v, w = single_commutator_witness(e[0])
    assert (v, w) == (parse_element("x", Cs4) + e[0], parse_element("x", Cs4))


@pytest.mark.parametrize("name", ["T2", "T3", "T4", "R4", "Cs4"])
def test_cw_certificates(name):
    c = cw_certificate(catalog.get(name), samples=200, seed=3)
    assert c.all_verified() and c.samples == 200
    a, b, ab = c.nonzero_commutator
    assert not ab.is_zero() and commutator(a, b) == ab


def test_cw_hypothesis():
    with pytest.raises(HypothesisFailed):
        cw_certificate(catalog.get("T1"))
    with pytest.raises(HypothesisFailed):
        cw_certificate(catalog.get("R3"))


def test_cl_search():
    R4 = catalog.get("R4")
    assert cl_exact_small(RingElement.zero(R4, Z)).length == 0
    e1 = aug_ideal_basis(R4).vectors[0]
    r = cl_exact_small(e1, max_len=1, bound=1)
    assert r.length == 1 and "within bounds" in r.note
    s, v, w = r.terms[0]
    assert commutator(v, w).scale(s) == e1
    R3 = catalog.get("R3")
    r3 = cl_exact_small(aug_ideal_basis(R3).vectors[0], max_len=2, bound=1)
    assert r3.length is None


def test_certificate_round_trip(tmp_path):
    c = cw_certificate(catalog.get("R4"), samples=5, seed=0)
    text = serialize_certificates(c.certificates)
    path = tmp_path / "certs.txt"
    path.write_text(text)
    back = verify_certificate(path.read_text())
    assert len(back) == 5
    assert serialize_certificates(back) == text


def test_certificate_rejects_corruption():
    c = cw_certificate(catalog.get("Cs4"), samples=2, seed=0)
    text = serialize_certificates(c.certificates)
    lines = text.splitlines(keepends=True)
    rejected = total = 0
    for li, line in enumerate(lines):
        if not line.startswith(("element", "length", "term")):
            continue
        for pos in range(len(line) - 1):
            bad = line[:pos] + ("#" if line[pos] != "#" else "%") + line[pos + 1:]
            total += 1
            try:
                verify_certificate("".join(lines[:li] + [bad] + lines[li + 1:]))
            except CertificateError:
                rejected += 1
    assert total > 0 and rejected == total


def test_wrong_decomposition_rejected():
    R4 = catalog.get("R4")
    e = aug_ideal_basis(R4).vectors
    a = [RingElement.basis(R4, Z, i) for i in range(4)]
    good = CommutatorCertificate(R4, Z, e[0], [(1, a[3], a[2])])
    assert good.verify()
    bad = CommutatorCertificate(R4, Z, e[1], [(1, a[3], a[2])])
    with pytest.raises(CertificateError):
        verify_certificate(bad.serialize())
    assert parse_certificates(good.serialize())[0].verify()


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_r4_witness_property(c):
    R4 = catalog.get("R4")
    u = aug_ideal_basis(R4).combine(c)
    v, w = single_commutator_witness(u)
    assert commutator(v, w) == u


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=2))
def test_cs4_witness_property(c):
    Cs4 = catalog.get("Cs4")
    u = aug_ideal_basis(Cs4).combine(c)
    v, w = single_commutator_witness(u)
    assert commutator(v, w) == u
