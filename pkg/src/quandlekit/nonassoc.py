"""Non-associative identities in quandle rings and the derived algebras
A(-) (x o y = xy - yx) and A(+) (x . y = (xy + yx)/2).

Multilinear identities are decided exactly on basis tuples. The others are
only refuted: sampling finds counterexamples, and a passing sample is
reported as such, not as a proof.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .coeffs import QQ, CoefficientRing, Z, span_basis
from .errors import NotIntegralDomain, HypothesisFailed
from .quandle import FiniteQuandle, is_trivial, make_trivial
from .ring import RingElement, basis_elements


@dataclass(frozen=True)
class DerivedAlgebra:
    quandle: FiniteQuandle
    ring: CoefficientRing
    kind: str = "raw"  # raw | minus | plus

    def __post_init__(self):
        if self.kind not in ("raw", "minus", "plus"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "plus" and not self.ring.is_unit(2):
            raise NotIntegralDomain(f"the plus algebra needs 2 invertible in {self.ring}")

    def mul(self, u: RingElement, v: RingElement) -> RingElement:
        if self.kind == "raw":
            return u * v
        if self.kind == "minus":
            return u * v - v * u
        return (u * v + v * u).scale(self.ring.inverse(2))

    def basis(self):
        return basis_elements(self.quandle, self.ring)

    def zero(self):
        return RingElement.zero(self.quandle, self.ring)


def _as_algebra(ctx) -> DerivedAlgebra:
    if isinstance(ctx, DerivedAlgebra):
        return ctx
    if isinstance(ctx, FiniteQuandle):
        return DerivedAlgebra(ctx, Z)
    Q, R = ctx
    return DerivedAlgebra(Q, R)


# identity name -> (arity, multilinear, sides)
def _left_alt(m, a, b):
    return m(m(a, a), b), m(a, m(a, b))


def _right_alt(m, a, b):
    return m(a, m(b, b)), m(m(a, b), b)


def _elastic(m, a, b):
    return m(m(a, b), a), m(a, m(b, a))


def _jordan(m, a, b):
    aa = m(a, a)
    return m(m(aa, b), a), m(aa, m(b, a))


def _assoc(m, a, b, c):
    return m(m(a, b), c), m(a, m(b, c))


def _jacobi(m, a, b, c):
    return m(m(a, b), c) + m(m(b, c), a) + m(m(c, a), b), None


def _anticomm(m, a):
    return m(a, a), None


IDENTITIES = {
    "left-alternative": (2, False, _left_alt),
    "right-alternative": (2, False, _right_alt),
    "elastic": (2, False, _elastic),
    "jordan": (2, False, _jordan),
    "associative": (3, True, _assoc),
    "lie-jacobi": (3, True, _jacobi),
    "anticommutative": (1, False, _anticomm),
}


@dataclass
class IdentityReport:
    identity: str
    holds: bool
    mode: str
    checked: int
    counterexample: tuple = ()
    lhs: RingElement | None = None
    rhs: RingElement | None = None
    clause: str = ""

    @property
    def note(self) -> str:
        if not self.holds:
            if self.clause:
                return f"counterexample found ({self.clause})"
            return "counterexample found"
        if self.mode == "basis":
            return "holds on all basis tuples (exact by multilinearity)"
        return f"no counterexample in {self.checked} samples (not a proof)"


def _sides(alg, fn, args):
    lhs, rhs = fn(alg.mul, *args)
    if rhs is None:
        rhs = alg.zero()
    return lhs, rhs


def _shrink(alg, fn, args):
    """Move coefficients toward zero while the identity still fails."""
    args = [list(u.dense()) for u in args]
    Q, R = alg.quandle, alg.ring

    def fails(vs):
        el = [RingElement.from_dense(Q, R, v) for v in vs]
        if any(e.is_zero() for e in el):
            return False
        lhs, rhs = _sides(alg, fn, el)
        return lhs != rhs

    improved = True
    while improved:
        improved = False
        for i, v in enumerate(args):
            for j, a in enumerate(v):
                if a == 0:
                    continue
                for new in (0, a - 1 if a > 0 else a + 1):
                    trial = [list(x) for x in args]
                    trial[i][j] = new
                    if fails(trial):
                        args = trial
                        improved = True
                        break
    return tuple(RingElement.from_dense(Q, R, v) for v in args)


def check_identity(ctx, identity: str, mode: str = "auto", bound: int = 2, trials: int = 300,
                   seed: int = 0) -> IdentityReport:
    alg = _as_algebra(ctx)
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}")
    arity, multilinear, fn = IDENTITIES[identity]
    if mode == "auto":
        mode = "basis" if multilinear or identity == "anticommutative" else "random"
    X = alg.basis()
    if identity == "jordan":
        # a Jordan algebra is commutative first; ab = ba is bilinear, so basis pairs decide it
        for i, a in enumerate(X):
            for b in X[i + 1:]:
                ab, ba = alg.mul(a, b), alg.mul(b, a)
                if ab != ba:
                    return IdentityReport(identity, False, "basis", 1, (a, b), ab, ba, "commutativity")
    if mode == "basis":
        if identity == "anticommutative":
            # u^2 = 0 for all u  <=>  x_i^2 = 0 and x_i x_j + x_j x_i = 0
            count = 0
            for a, b in itertools.product(X, repeat=2):
                count += 1
                val = alg.mul(a, a) if a == b else alg.mul(a, b) + alg.mul(b, a)
                if not val.is_zero():
                    arg = (a,) if a == b else (a + b,)
                    lhs, rhs = _sides(alg, fn, arg)
                    return IdentityReport(identity, False, mode, count, arg, lhs, rhs)
            return IdentityReport(identity, True, mode, count)
        if not multilinear:
            raise ValueError(f"{identity} is not multilinear; use random mode")
        count = 0
        for args in itertools.product(X, repeat=arity):
            count += 1
            lhs, rhs = _sides(alg, fn, args)
            if lhs != rhs:
                return IdentityReport(identity, False, mode, count, args, lhs, rhs)
        return IdentityReport(identity, True, mode, count)
    if mode != "random":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    Q, R = alg.quandle, alg.ring
    for t in range(1, trials + 1):
        args = []
        for _ in range(arity):
            vec = [rng.randint(-bound, bound) for _ in range(Q.n)]
            if not any(vec):
                vec[rng.randrange(Q.n)] = 1
            args.append(RingElement.from_dense(Q, R, vec))
        lhs, rhs = _sides(alg, fn, args)
        if lhs != rhs:
            small = _shrink(alg, fn, args) if R.kind != "q" else tuple(args)
            lhs, rhs = _sides(alg, fn, small)
            return IdentityReport(identity, False, mode, t, small, lhs, rhs)
    return IdentityReport(identity, True, mode, trials)


# ---------------------------------------------------------------------------
# power associativity


@dataclass
class PowerWitness:
    x: RingElement
    probe: str
    lhs: RingElement
    rhs: RingElement
    bound: int


def _probes(m, x):
    xx = m(x, x)
    yield "(xx)(xx) = ((xx)x)x", m(xx, xx), m(m(xx, x), x)
    yield "(xx)x = x(xx)", m(xx, x), m(x, xx)
    yield "(xx)(xx) = x(x(xx))", m(xx, xx), m(x, m(x, xx))


PROBES = ("(xx)(xx) = ((xx)x)x", "(xx)x = x(xx)", "(xx)(xx) = x(x(xx))")


def power_associative_witness(ctx, max_bound: int = 4, budget: int = 10**5, probes=PROBES):
    """Smallest x (box widened from 1 to max_bound) breaking a power-associativity probe.

    Probes are tried in the order given for every x; the default starts with
    (xx)(xx) = ((xx)x)x.
    """
    alg = _as_algebra(ctx)
    Q, R = alg.quandle, alg.ring
    for B in range(1, max_bound + 1):
        if (2 * B + 1) ** Q.n > budget:
            break
        box = sorted(itertools.product(range(-B, B + 1), repeat=Q.n),
                     key=lambda v: (sum(map(abs, v)), v))
        for vec in box:
            if B > 1 and max(map(abs, vec)) < B:
                continue  # covered by the smaller box
            x = RingElement.from_dense(Q, R, vec)
            for name, lhs, rhs in _probes(alg.mul, x):
                if name in probes and lhs != rhs:
                    return PowerWitness(x, name, lhs, rhs, B)
    return None


@dataclass
class NonAlternativeReport:
    quandle: str
    failures: dict  # identity -> IdentityReport
    power: PowerWitness | None

    @property
    def all_fail(self) -> bool:
        return all(not r.holds for r in self.failures.values())


def non_alternative_report(Q: FiniteQuandle, ring: CoefficientRing = Z, trials: int = 300,
                           seed: int = 0) -> NonAlternativeReport:
    """For non-trivial Q and characteristic other than 2 and 3: witnesses that
    R[Q] is neither alternative, elastic nor Jordan."""
    if ring.characteristic in (2, 3):
        raise HypothesisFailed("characteristic 2 or 3 is excluded")
    if is_trivial(Q):
        raise HypothesisFailed(f"{Q.name} is trivial")
    alg = DerivedAlgebra(Q, ring)
    reports = {}
    for ident in ("left-alternative", "right-alternative", "elastic", "jordan"):
        reports[ident] = check_identity(alg, ident, "random", bound=2, trials=trials, seed=seed)
    return NonAlternativeReport(Q.name, reports, power_associative_witness(alg))


# ---------------------------------------------------------------------------
# trivial quandles: L = A(-), J = A(+)


@dataclass
class LieAnalysis:
    n: int
    ring: CoefficientRing
    L2_basis: list
    L2_rank: int
    L2_equals_L3: bool
    L2_squared_zero: bool
    J2_equals_J: bool | None  # None when 2 is not invertible


def _span(R, n, elems):
    return span_basis(R, n, [e.dense() for e in elems])


def trivial_quandle_lie_analysis(n: int, ring: CoefficientRing = QQ) -> LieAnalysis:
    Q = make_trivial(n)
    L = DerivedAlgebra(Q, ring, "minus")
    X = L.basis()
    L2_gens = [L.mul(a, b) for a in X for b in X]
    L2 = _span(ring, n, L2_gens)
    expected = [X[i] - X[i + 1] for i in range(n - 1)]
    if _span(ring, n, expected).rows != L2.rows:
        raise AssertionError("L^2 is not spanned by consecutive differences")
    L2_elems = [RingElement.from_dense(Q, ring, r) for r in L2.rows]
    L3 = _span(ring, n, [L.mul(u, x) for u in L2_elems for x in X] + [L.mul(x, u) for u in L2_elems for x in X])
    sq = _span(ring, n, [L.mul(u, v) for u in L2_elems for v in L2_elems])
    J2 = None
    if ring.is_unit(2):
        J = DerivedAlgebra(Q, ring, "plus")
        J2 = _span(ring, n, [J.mul(a, b) for a in X for b in X]).rank == n
    return LieAnalysis(n, ring, expected, L2.rank, L3.rows == L2.rows, sq.rank == 0, J2)
