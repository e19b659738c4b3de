"""One test per acceptance criterion; the summary section lists PASS/FAIL per line."""

import itertools

import pytest
import sympy

from quandlekit import catalog
from quandlekit.coeffs import QQ, Z, CoefficientRing
from quandlekit.commutators import commutator_subalgebra, contained_in_delta, cw_certificate, delta_lattice
from quandlekit.idempotents import (
    cs4_family,
    family_covers_box,
    idempotents_box,
    idempotents_modular,
    nonzero,
    r4_family,
    solve_in_family,
    trivial_family,
    verify_family,
)
from quandlekit.infinite import FreeQuandle, IntQuandle, order_monotonicity_sample
from quandlekit.nonassoc import power_associative_witness, trivial_quandle_lie_analysis
from quandlekit.order_zero import find_order, unique_products, up_sample_no_zero_divisors, zero_divisor_witness
from quandlekit.quandle import predicates
from quandlekit.ring import RingElement, delta_square_is_zero, format_element
from quandlekit.ring_auto import (
    CS4_SWAP,
    R4_RELATIONS,
    automorphisms_bounded,
    group_order_small,
    permutation_matrix,
    r4_generators,
    t2_A,
    t2_B,
    t2_generators,
    t2_relations,
    verify_relations,
)
from quandlekit.substructures import (
    certify_not_extendable,
    certify_parametric_quandle,
    cs4_N1,
    cs4_N2,
    cs4_N2_piece,
    maximal_quandles_finite,
    mq_reduction_check,
    r4_M,
)

criterion = pytest.mark.criterion


def _names(elems):
    return sorted(format_element(u) for u in elems)


@criterion(1, "Z[R3] box 3 idempotents are exactly a0, a1, a2")
def test_c01_r3_idempotents():
    idem = nonzero(idempotents_box(catalog.get("R3"), 3))
    assert _names(idem) == ["a0", "a1", "a2"]
    assert len(idem) == 3


@criterion(2, "Z[R4] box 2 has exactly 6 nonzero idempotents, all in the t/alpha/beta family")
def test_c02_r4_idempotents():
    f = r4_family()
    idem = nonzero(idempotents_box(f.quandle, 2))
    assert all(solve_in_family(f, z) is not None for z in idem)
    assert family_covers_box(f, 2).covered
    assert all(z.augmentation() != 0 for z in idem)
    # the count asserted last so the structural checks above still run
    assert len(idem) == 6, f"found {len(idem)}: {_names(idem)}"


@criterion(3, "Z[Cs4] box 2 has exactly 6 nonzero idempotents covered by two certified families")
def test_c03_cs4_idempotents():
    f = cs4_family()
    idem = nonzero(idempotents_box(f.quandle, 2))
    assert len(idem) == 6
    assert family_covers_box(f, 2).covered
    assert len(f.branches) == 2
    for i in range(2):
        verify_family(f.branch_family(i))


@criterion(4, "Z[T4] box 2 idempotents have augmentation 1 and lie in x0 + Delta")
def test_c04_trivial_idempotents():
    f = trivial_family(4)
    idem = nonzero(idempotents_box(f.quandle, 2))
    x0 = RingElement.basis(f.quandle, Z, 0)
    assert idem
    assert all(z.augmentation() == 1 and (z - x0).augmentation() == 0 for z in idem)
    rep = family_covers_box(f, 2)
    assert rep.covered and not rep.uncovered


@criterion(5, "Z_2[R3]: 8 idempotents, 3 maximal quandles, reduction not surjective")
def test_c05_z2_r3_maximal_quandles():
    I = idempotents_modular(catalog.get("R3"), 2)
    assert len(I) == 8
    mq = maximal_quandles_finite(I)
    assert sorted(_names(S.elements) for S in mq) == sorted([
        ["a0 + a1 + a2"],
        ["a0", "a1", "a2"],
        ["a0 + a1", "a0 + a2", "a1 + a2"],
    ])
    assert not mq_reduction_check(catalog.get("R3"), 2).surjective


@criterion(6, "parametric maximal quandles certified, (4 alpha - 1) obstruction, mq(Z[R3]) = {R3}")
def test_c06_parametric():
    for P in (r4_M(), cs4_N1(), cs4_N2()):
        certify_parametric_quandle(P)
    (obs,) = certify_not_extendable(cs4_N1(), cs4_N2_piece()).obstructions
    alpha = sympy.Symbol("alpha", integer=True)
    assert sympy.expand(obs.determinant - (4 * alpha - 1)) == 0
    mq = maximal_quandles_finite(nonzero(idempotents_box(catalog.get("R3"), 3)))
    assert [_names(S.elements) for S in mq] == [["a0", "a1", "a2"]]


@criterion(7, "ring automorphism counts for R3, Cs4, R4 and the T2 inventory with relations")
def test_c07_automorphisms():
    r3 = automorphisms_bounded(catalog.get("R3"), 2)
    assert sorted(r3) == sorted(permutation_matrix(p) for p in itertools.permutations(range(3)))
    cs4 = automorphisms_bounded(catalog.get("Cs4"), 2)
    assert sorted(cs4) == sorted([permutation_matrix((0, 1, 2)), CS4_SWAP])
    r4 = automorphisms_bounded(catalog.get("R4"), 2)
    g = group_order_small(r4)
    assert g.order == 8 and len(verify_relations(r4_generators(), R4_RELATIONS)) == len(R4_RELATIONS)
    t2 = automorphisms_bounded(catalog.get("T2"), 2)
    assert sorted(t2) == sorted([t2_A(a) for a in (-1, 0, 1)] + [t2_B(a) for a in (0, 1, 2)])
    cert = verify_relations(t2_generators(), t2_relations(5))
    assert "A(2)*A(3)=A(5)" in cert.relations and "B(1)*A(-4)*B(1)=A(4)" in cert.relations


@criterion(8, "commutator lattices, commutators have augmentation zero, 10^3 single-commutator certificates")
def test_c08_commutators():
    assert commutator_subalgebra(catalog.get("R3")).is_zero()
    for name in ("R4", "Cs4", "Alex(Z5,2)"):
        Q = catalog.get(name)
        assert commutator_subalgebra(Q).rows == delta_lattice(Q).rows, name
    assert all(contained_in_delta(Q) for Q in catalog.finite_quandles())
    # T1 is commutative, so its commutator subalgebra is zero and cw is 0
    for name in ("T2", "T3", "T4", "R4", "Cs4"):
        c = cw_certificate(catalog.get(name), samples=1000, seed=0)
        assert c.samples == 1000 and c.all_verified(), name


@criterion(9, "zero-divisor witnesses for T2, R4 and Conj(S3) multiply to 0")
def test_c09_zero_divisors():
    w = zero_divisor_witness(catalog.get("T2"), Z)
    assert format_element(w.u) == format_element(w.v) == "x0 - x1"
    w2 = zero_divisor_witness(catalog.get("R4"), Z, "finite-subquandle")
    assert (format_element(w2.u), format_element(w2.v)) == ("a0 + a2", "a0 - a2")
    w3 = zero_divisor_witness(catalog.get("Conj(S3)"), Z, "not-semi-latin")
    assert w3.strategy == "not-semi-latin"
    for x in (w, w2, w3):
        assert (x.u * x.v).is_zero() and x.verify()


@criterion(10, "orders on the catalog, Core(Z) monotonicity, unique products on Core(Z)")
def test_c10_orderability():
    for Q in catalog.finite_quandles(max_order=6):
        assert (find_order(Q, "right") is not None) == predicates(Q).trivial, Q.name
        assert (find_order(Q, "left") is None) == (Q.n >= 2), Q.name
    core = IntQuandle("core")
    assert not order_monotonicity_sample(core, "left", 10**4, seed=0).violations
    right = order_monotonicity_sample(core, "right", 10**4, seed=0)
    x, y, z, lo, hi = right.violations[0]
    assert x < y and core.mul(x, z) == lo and core.mul(y, z) == hi and not lo < hi
    r = unique_products(core, [0, 1, 2], [5, 6])
    assert r.unique == [8, 9, 11, 12]
    assert r.a_max == (2, 5, 8) and r.a_min == (0, 6, 12)


@criterion(11, "no zero products in 10^4 Z[Core(Z)] pairs and 10^3 Z[FQ2] pairs")
def test_c11_no_zero_divisors():
    r = up_sample_no_zero_divisors(IntQuandle("core"), 10**4, support=3, coeff_bound=2, seed=0)
    assert r.ok and r.trials == 10**4
    r = up_sample_no_zero_divisors(FreeQuandle(2), 10**3, support=3, coeff_bound=2, seed=0)
    assert r.ok and r.trials == 10**3


@criterion(12, "Lie analysis of Q[T4] and power-associativity witnesses")
def test_c12_lie_and_power():
    a = trivial_quandle_lie_analysis(4, QQ)
    assert a.L2_rank == 3
    # labels are 0-based: x0..x3 stand for x1..x4
    assert [format_element(u) for u in a.L2_basis] == ["x0 - x1", "x1 - x2", "x2 - x3"]
    assert a.L2_equals_L3 and a.L2_squared_zero and a.J2_equals_J
    for name in ("R3", "Cs4"):
        w = power_associative_witness(catalog.get(name), max_bound=4)
        assert w is not None and w.bound <= 4 and w.lhs != w.rhs
    assert power_associative_witness(catalog.get("T4"), max_bound=4) is None


@criterion(13, "Delta^2 = 0 exactly for trivial quandles on the catalog")
def test_c13_delta_square():
    for Q in catalog.finite_quandles(max_order=6):
        assert delta_square_is_zero(Q) == predicates(Q).trivial, Q.name
    assert delta_square_is_zero(catalog.get("T3"), CoefficientRing.mod(5))
