"""Idempotents of quandle rings.

Three routes: exhaustive enumeration over Z/m, box-bounded enumeration over
Z, and affine parametric families checked on an integer grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .coeffs import CoefficientRing, Z, solve_rational
from .errors import BudgetExceeded, FamilyRejected
from .quandle import FiniteQuandle, make_cs4, make_dihedral, make_trivial
from .ring import RingElement

DEFAULT_BUDGET = 10**7


def idempotents_modular(Q: FiniteQuandle, m: int, budget: int = DEFAULT_BUDGET) -> list[RingElement]:
    """Every z in Z/m[Q] with z*z == z (zero included), in lexicographic order."""
    if m ** Q.n > budget:
        raise BudgetExceeded(f"{m}^{Q.n} candidates exceed budget {budget}")
    R = CoefficientRing.mod(m)
    vecs = kernels.mod_idempotents(Q.flat, Q.n, m, R.is_integral_domain)
    return [RingElement.from_dense(Q, R, v) for v in vecs]


def idempotents_box(Q: FiniteQuandle, bound: int, budget: int = DEFAULT_BUDGET) -> list[RingElement]:
    """Every integer z with all |coefficients| <= bound and z*z == z (zero included).

    The odometer fixes the last coordinate from the augmentation, which must
    be 0 or 1 for an idempotent over an integral domain.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if (2 * bound + 1) ** Q.n > budget:
        raise BudgetExceeded(f"(2*{bound}+1)^{Q.n} candidates exceed budget {budget}")
    vecs = kernels.box_idempotents(Q.flat, Q.n, bound, True)
    return [RingElement.from_dense(Q, Z, v) for v in vecs]


def nonzero(elements):
    return [z for z in elements if not z.is_zero()]


# ---------------------------------------------------------------------------
# parametric families


@dataclass(frozen=True)
class AffineBranch:
    """z(p) = offset + matrix @ p; ``matrix`` is n x k (one column per parameter)."""

    label: str
    matrix: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...]

    def evaluate(self, params) -> tuple:
        return tuple(c + sum(row[k] * params[k] for k in range(len(params)))
                     for row, c in zip(self.matrix, self.offset))


@dataclass(frozen=True)
class IdempotentFamily:
    """Union of affine branches over shared integer parameters.

    Discrete guards (the t in {0, 1} selector, or several separate formulas)
    are represented as one branch per choice.
    """

    name: str
    quandle: FiniteQuandle
    params: tuple[str, ...]
    branches: tuple[AffineBranch, ...]

    def element(self, branch: int, params) -> RingElement:
        return RingElement.from_dense(self.quandle, Z, self.branches[branch].evaluate(params))

    def branch_family(self, i: int) -> "IdempotentFamily":
        b = self.branches[i]
        return IdempotentFamily(f"{self.name}[{b.label}]", self.quandle, self.params, (b,))


def _branch(label, n, k, offset, columns):
    """Build a branch from {param index: coefficient vector}."""
    mat = [[0] * k for _ in range(n)]
    for p, col in columns.items():
        for i in range(n):
            mat[i][p] = col[i]
    return AffineBranch(label, tuple(map(tuple, mat)), tuple(offset))


def trivial_family(n: int) -> IdempotentFamily:
    """x0 + sum_i d_i (x_i - x0) in Z[T_n]."""
    Q = make_trivial(n)
    k = n - 1
    cols = {}
    for p in range(k):
        col = [0] * n
        col[0] = -1
        col[p + 1] = 1
        cols[p] = col
    off = [1] + [0] * k
    return IdempotentFamily(f"T{n}", Q, tuple(f"d{i + 1}" for i in range(k)),
                            (_branch("x0+Delta", n, k, off, cols),))


def cs4_family() -> IdempotentFamily:
    Q = make_cs4()
    # params (alpha, beta)
    b1 = _branch("(1-beta)x+beta*y", 3, 2, (1, 0, 0), {1: (-1, 1, 0)})
    b2 = _branch("alpha*x+alpha*y+(1-2alpha)z", 3, 2, (0, 0, 1), {0: (1, 1, -2)})
    return IdempotentFamily("Cs4", Q, ("alpha", "beta"), (b1, b2))


def r4_family() -> IdempotentFamily:
    Q = make_dihedral(4)
    # t=1: a0 + alpha (a2 - a0);  t=0: a1 + beta (a3 - a1)
    b1 = _branch("t=1", 4, 2, (1, 0, 0, 0), {0: (-1, 0, 1, 0)})
    b0 = _branch("t=0", 4, 2, (0, 1, 0, 0), {1: (0, -1, 0, 1)})
    return IdempotentFamily("R4", Q, ("alpha", "beta"), (b1, b0))


def r3_family() -> IdempotentFamily:
    Q = make_dihedral(3)
    branches = tuple(_branch(f"a{i}", 3, 0, tuple(int(j == i) for j in range(3)), {})
                     for i in range(3))
    return IdempotentFamily("R3", Q, (), branches)


def family_registry() -> dict:
    reg = {"R3": r3_family(), "R4": r4_family(), "Cs4": cs4_family()}
    for n in range(1, 7):
        reg[f"T{n}"] = trivial_family(n)
    return reg


def get_family(name: str) -> IdempotentFamily:
    reg = family_registry()
    for key, fam in reg.items():
        if key.lower() == name.lower():
            return fam
    raise KeyError(f"no idempotent family registered for {name!r}")


@dataclass
class FamilyCertificate:
    family: str
    grid_radius: int
    points_checked: int
    branches: int
    argument: str = ("each coordinate of z(p)^2 - z(p) is a polynomial of degree <= 2 in "
                     "every parameter; vanishing on >= 3 points per axis forces it to be 0")


def verify_family(f: IdempotentFamily, grid_radius: int = 2) -> FamilyCertificate:
    """Check z(p)^2 == z(p) on the grid |p_i| <= grid_radius for every branch."""
    if grid_radius < 1:
        raise ValueError("grid radius must be >= 1 (3 points per axis)")
    Q = f.quandle
    count = 0
    axis = range(-grid_radius, grid_radius + 1)
    for bi, br in enumerate(f.branches):
        for p in itertools.product(axis, repeat=len(f.params)):
            z = list(br.evaluate(p))
            sq = kernels.dense_mul(Q.flat, Q.n, z, z)
            count += 1
            if sq != z:
                raise FamilyRejected(
                    f"{f.name} branch {br.label!r}: z^2 != z at {dict(zip(f.params, p))}",
                    witness=(bi, p, tuple(z), tuple(sq)))
    return FamilyCertificate(f.name, grid_radius, count, len(f.branches))


def solve_in_family(f: IdempotentFamily, z: RingElement):
    """(branch index, integer parameters) with f(branch, params) == z, or None."""
    target = z.dense()
    for bi, br in enumerate(f.branches):
        rhs = [t - c for t, c in zip(target, br.offset)]
        if not f.params:
            if not any(rhs):
                return bi, ()
            continue
        sol = solve_rational(br.matrix, rhs)
        if sol is None or any(Fraction(s).denominator != 1 for s in sol):
            continue
        p = tuple(int(s) for s in sol)
        if br.evaluate(p) == tuple(target):
            return bi, p
    return None


@dataclass
class CoverReport:
    covered: bool
    solutions: dict = field(default_factory=dict)
    uncovered: list = field(default_factory=list)


def family_covers_box(f: IdempotentFamily, bound: int, idempotents=None) -> CoverReport:
    """Does every nonzero box idempotent lie in the family's image?"""
    if idempotents is None:
        idempotents = idempotents_box(f.quandle, bound)
    report = CoverReport(True)
    for z in nonzero(idempotents):
        hit = solve_in_family(f, z)
        if hit is None:
            report.uncovered.append(z)
            report.covered = False
        else:
            report.solutions[z] = hit
    return report


def family_box_slice(f: IdempotentFamily, bound: int) -> set:
    """Image of the family intersected with the coefficient box (by direct evaluation)."""
    Q = f.quandle
    out = set()
    # parameters only move coefficients linearly, so a parameter range of
    # (bound + max |offset|) per axis reaches every box point of each branch
    reach = bound + max((abs(c) for br in f.branches for c in br.offset), default=0)
    axis = range(-reach, reach + 1)
    for br in f.branches:
        for p in itertools.product(axis, repeat=len(f.params)):
            z = br.evaluate(p)
            if any(z) and all(abs(c) <= bound for c in z):
                out.add(RingElement.from_dense(Q, Z, z))
    return out


@dataclass
class ConnectedTrial:
    name: str
    bound: int
    only_basis: bool
    extra: list = field(default_factory=list)


def connected_idempotent_experiment(quandles, bound: int = 2) -> list[ConnectedTrial]:
    """Do connected quandles have only the basis elements as nonzero idempotents?

    An experiment inside a coefficient box, not a decision procedure: a
    clean box says nothing about larger coefficients.
    """
    from .quandle import is_connected
    out = []
    for Q in quandles:
        if not is_connected(Q):
            continue
        extra = [z for z in nonzero(idempotents_box(Q, bound))
                 if not (len(z.support) == 1 and z[z.support[0]] == 1)]
        out.append(ConnectedTrial(Q.name, bound, not extra, extra))
    return out
