"""R-linear ring automorphisms of Z[Q] as bounded integer matrices.

Column j of a matrix is the coefficient vector of phi(x_j). Columns are drawn
from the box idempotents, since an automorphism sends idempotents to
idempotents, and the search is complete only within that entry bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import kernels
from .coeffs import determinant, identity_matrix, matmul, rank_q
from .errors import BudgetExceeded, ParseError, RelationFailure
from .idempotents import DEFAULT_BUDGET, idempotents_box, nonzero
from .quandle import FiniteQuandle, quandle_automorphisms

Matrix = tuple  # tuple of row tuples


def _mat(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def from_columns(cols) -> Matrix:
    n = len(cols)
    return _mat([[cols[j][i] for j in range(n)] for i in range(n)])


def columns(M: Matrix) -> list[tuple]:
    n = len(M)
    return [tuple(M[i][j] for i in range(n)) for j in range(n)]


def permutation_matrix(perm) -> Matrix:
    """Matrix of x_j -> x_perm[j]."""
    n = len(perm)
    return _mat([[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)])


def multiplicativity_failures(Q: FiniteQuandle, M: Matrix) -> list[tuple[int, int]]:
    """Pairs (i, j) with phi(x_i) phi(x_j) != phi(x_i x_j)."""
    cols = columns(M)
    bad = []
    for i in range(Q.n):
        for j in range(Q.n):
            got = tuple(kernels.dense_mul(Q.flat, Q.n, list(cols[i]), list(cols[j])))
            if got != cols[Q.mul(i, j)]:
                bad.append((i, j))
    return bad


def is_ring_automorphism(Q: FiniteQuandle, M: Matrix) -> bool:
    return abs(determinant(M)) == 1 and not multiplicativity_failures(Q, M)


def inverse(M: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    from fractions import Fraction
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    inv = [row[n:] for row in A]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return _mat(inv)


@dataclass
class AutomorphismReport:
    quandle: str
    bound: int
    matrices: list
    inverse_closed: bool
    truncated: list = field(default_factory=list)  # members whose inverse leaves the box

    @property
    def note(self):
        return f"complete within entry bound {self.bound}"


def automorphisms_bounded(Q: FiniteQuandle, bound: int, budget: int = DEFAULT_BUDGET) -> list[Matrix]:
    """All unimodular multiplicative matrices whose columns are box-``bound`` idempotents."""
    cands = [z.dense() for z in nonzero(idempotents_box(Q, bound, budget))]
    n = Q.n
    if len(cands) ** min(n, 3) > budget:
        raise BudgetExceeded(f"{len(cands)} candidate columns for order {n}")
    t = Q.table
    prod = {}

    def mul(a, b):
        key = (a, b)
        if key not in prod:
            prod[key] = tuple(kernels.dense_mul(Q.flat, n, list(cands[a]), list(cands[b])))
        return prod[key]

    found = []
    chosen: list[int] = []

    def consistent(j):
        # pairs whose factors and product index are all placed
        for i in range(j + 1):
            for k in range(j + 1):
                if i != j and k != j:
                    continue
                p = t[i][k]
                if p <= j and mul(chosen[i], chosen[k]) != cands[chosen[p]]:
                    return False
        return True

    def search(j):
        if j == n:
            M = from_columns([cands[c] for c in chosen])
            if abs(determinant(M)) == 1:
                found.append(M)
            return
        for c in range(len(cands)):
            if c in chosen:
                continue
            chosen.append(c)
            if consistent(j) and rank_q([cands[x] for x in chosen]) == j + 1:
                search(j + 1)
            chosen.pop()

    search(0)
    found.sort()
    return found


def automorphism_report(Q: FiniteQuandle, bound: int, budget: int = DEFAULT_BUDGET) -> AutomorphismReport:
    mats = automorphisms_bounded(Q, bound, budget)
    have = set(mats)
    truncated = []
    closed = True
    for M in mats:
        Mi = inverse(M)
        if Mi in have:
            continue
        if max(abs(x) for row in Mi for x in row) > bound:
            truncated.append(M)
        else:
            closed = False
    return AutomorphismReport(Q.name, bound, mats, closed, truncated)


def quandle_automorphism_matrices(Q: FiniteQuandle) -> list[Matrix]:
    return sorted(permutation_matrix(p) for p in quandle_automorphisms(Q))


# ---------------------------------------------------------------------------
# named matrices


def t2_A(a: int) -> Matrix:
    return _mat([[1 - a, -a], [a, 1 + a]])


def t2_B(a: int) -> Matrix:
    return _mat([[1 - a, 2 - a], [a, a - 1]])


R4_A = permutation_matrix((0, 3, 2, 1))
R4_B = permutation_matrix((2, 1, 0, 3))
R4_TAU = permutation_matrix((1, 0, 3, 2))
CS4_SWAP = permutation_matrix((1, 0, 2))
# rejected candidates: x, y fixed or swapped, z -> x + y - z
CS4_B1 = _mat([[1, 0, 1], [0, 1, 1], [0, 0, -1]])
CS4_B2 = _mat([[0, 1, 1], [1, 0, 1], [0, 0, -1]])


def t2_generators() -> dict:
    return {"A": t2_A, "B": t2_B}


def r4_generators() -> dict:
    return {"A": R4_A, "B": R4_B, "T": R4_TAU}


# ---------------------------------------------------------------------------
# relations


_TOKEN = re.compile(r"\s*([A-Za-z_]\w*)(?:\(\s*(-?\d+)\s*\))?(?:\^(\d+))?\s*")


def evaluate_word(word: str, gens: dict, n: int | None = None) -> Matrix:
    """Product of factors like ``A(2)``, ``T``, ``B^2``; ``I`` is the identity."""
    factors = []
    for part in word.split("*"):
        m = _TOKEN.fullmatch(part)
        if not m:
            raise ParseError(f"bad factor {part!r} in {word!r}")
        name, arg, exp = m.group(1), m.group(2), m.group(3)
        if name == "I" and name not in gens:
            factors.append(None)
            continue
        if name not in gens:
            raise ParseError(f"unknown generator {name!r}")
        g = gens[name]
        if callable(g):
            if arg is None:
                raise ParseError(f"generator {name} needs a parameter")
            M = g(int(arg))
        else:
            if arg is not None:
                raise ParseError(f"generator {name} takes no parameter")
            M = g
        factors.extend([M] * int(exp or 1))
    size = n or next((len(f) for f in factors if f is not None), None)
    if size is None:
        raise ParseError(f"cannot infer matrix size for {word!r}")
    out = identity_matrix(size)
    for f in factors:
        if f is not None:
            out = matmul(out, f)
    return _mat(out)


@dataclass
class RelationCertificate:
    relations: list  # verified relation strings, in order

    def __len__(self):
        return len(self.relations)


def verify_relations(gens: dict, relations) -> RelationCertificate:
    checked = []
    for rel in relations:
        if rel.count("=") != 1:
            raise ParseError(f"relation needs one '=': {rel!r}")
        lhs, rhs = rel.split("=")
        L = evaluate_word(lhs, gens)
        R = evaluate_word(rhs, gens, len(L))
        if L != R:
            raise RelationFailure(rel, f"relation fails: {rel}: {L} != {R}")
        checked.append(rel.replace(" ", ""))
    return RelationCertificate(checked)


def t2_relations(radius: int = 5) -> list[str]:
    rng = range(-radius, radius + 1)
    rels = [f"A({a})*A({b})=A({a + b})" for a in rng for b in rng]
    rels += [f"B({a})*B({b})=A({a - b})" for a in rng for b in rng]
    rels += [f"B(1)*A({a})*B(1)=A({-a})" for a in rng]
    rels += ["A(0)=I", "B(1)^2=I"]
    return rels


R4_RELATIONS = ["A^2=I", "B^2=I", "A*B=B*A", "T*A*T=B"]


# ---------------------------------------------------------------------------
# closure


@dataclass
class GroupClosure:
    order: int | None  # None when the cap was exceeded
    elements: list
    cayley: list | None

    @property
    def exceeded(self) -> bool:
        return self.order is None


def group_order_small(mats, cap: int = 1000) -> GroupClosure:
    """Close the matrices (plus identity) under multiplication."""
    mats = [_mat(M) for M in mats]
    if not mats:
        raise ValueError("need at least one matrix")
    n = len(mats[0])
    ident = _mat(identity_matrix(n))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for X in frontier:
            for g in mats:
                Y = _mat(matmul(X, g))
                if Y not in index:
                    if len(elems) >= cap:
                        return GroupClosure(None, elems, None)
                    index[Y] = len(elems)
                    elems.append(Y)
                    nxt.append(Y)
        frontier = nxt
    elems.sort()
    index = {M: i for i, M in enumerate(elems)}
    cayley = [[index[_mat(matmul(a, b))] for b in elems] for a in elems]
    return GroupClosure(len(elems), elems, cayley)


def format_matrix(M: Matrix) -> str:
    w = max(len(str(x)) for row in M for x in row)
    return "\n".join(" ".join(str(x).rjust(w) for x in row) for row in M)
