"""Quandles living inside quandle rings.

A subset S of idempotents is a *ring quandle* when it is closed under the ring
product and the induced operation satisfies Q1-Q3. Finite idempotent sets are
searched exhaustively; the infinite cases are handled by affine parametric
pieces whose product maps are derived symbolically and then spot-checked on
an integer grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import sympy

from . import kernels
from .errors import BudgetExceeded, FamilyRejected
from .idempotents import idempotents_box, idempotents_modular, nonzero
from .quandle import FiniteQuandle, isomorphism, make_cs4, make_dihedral, make_trivial, verify_quandle
from .ring import format_element

MAX_SUBSET = 20
SCAN_LIMIT = 12
ZERO_NOTE = "the zero quandle {0} is excluded by convention"


# ---------------------------------------------------------------------------
# finite subsets


@dataclass
class SubsetCheck:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass
class RingQuandle:
    elements: tuple
    table: tuple
    iso_tags: tuple = ()

    def __len__(self):
        return len(self.elements)

    def as_quandle(self) -> FiniteQuandle:
        return verify_quandle(self.table, [format_element(u) for u in self.elements])

    def element_set(self):
        return frozenset(self.elements)


def _product_index(elems):
    pos = {u: i for i, u in enumerate(elems)}
    return [[pos.get(u * v, -1) for v in elems] for u in elems]


def _violation(prod, S):
    """First axiom failure inside index set S: (reason, indices involved)."""
    Sset = set(S)
    for i in S:
        if prod[i][i] != i:
            return "Q1", (i,)
    for i in S:
        for j in S:
            if prod[i][j] not in Sset:
                return "closure", (i, j)
    for u in S:
        seen = {}
        for w in S:
            p = prod[w][u]
            if p in seen:
                return "Q2", (seen[p], w, u)
            seen[p] = w
    for a in S:
        for b in S:
            ab = prod[a][b]
            for c in S:
                if prod[ab][c] != prod[prod[a][c]][prod[b][c]]:
                    return "Q3", (a, b, c)
    return None


def is_ring_quandle(S) -> SubsetCheck:
    """Exhaustive closure and Q1-Q3 check; the witness holds ring elements."""
    elems = sorted(set(S), key=lambda u: u.sort_key())
    if not elems:
        return SubsetCheck(False, "empty")
    q0, r0 = elems[0].quandle, elems[0].ring
    for u in elems:
        if u.quandle != q0 or u.ring != r0:
            return SubsetCheck(False, "mixed rings", (u,))
    # closure is reported with the escaping product, so compute it directly
    for u in elems:
        for v in elems:
            if u * v not in elems:
                return SubsetCheck(False, "closure", (u, v, u * v))
    prod = _product_index(elems)
    bad = _violation(prod, range(len(elems)))
    if bad is None:
        return SubsetCheck(True)
    reason, idx = bad
    return SubsetCheck(False, reason, tuple(elems[i] for i in idx))


def _maximal(sets):
    sets = set(sets)
    return [s for s in sets if not any(s < t for t in sets)]


def _scan(prod, k):
    found = []
    for mask in range(1, 1 << k):
        S = [i for i in range(k) if mask >> i & 1]
        if _violation(prod, S) is None:
            found.append(frozenset(S))
    return _maximal(found)


def _branch(prod, k):
    """Every quandle inside C avoids some element of each violation of C.

    Removing one violating element at a time therefore reaches a superset
    of every sub-quandle; the quandle leaves contain all maximal ones.
    """
    leaves, seen = [], set()
    stack = [frozenset(range(k))]
    while stack:
        C = stack.pop()
        if not C or C in seen:
            continue
        seen.add(C)
        bad = _violation(prod, sorted(C))
        if bad is None:
            leaves.append(C)
            continue
        for i in set(bad[1]):
            stack.append(C - {i})
    return _maximal(leaves)


def _catalog_tags(table) -> tuple:
    from . import catalog
    n = len(table)
    if n > 6:
        return ()
    Q = FiniteQuandle(tuple(map(tuple, table)))
    return tuple(c.name for c in catalog.finite_quandles(6) if c.n == n and isomorphism(Q, c) is not None)


def _ring_quandle(elems, tag=True) -> RingQuandle:
    elems = tuple(sorted(elems, key=lambda u: u.sort_key()))
    table = tuple(tuple(row) for row in _product_index(elems))
    return RingQuandle(elems, table, _catalog_tags(table) if tag else ())


def maximal_quandles_finite(I, budget: int = MAX_SUBSET, tag: bool = True,
                            method: str = "auto") -> list[RingQuandle]:
    """Inclusion-maximal ring quandles inside the idempotent list I ({0} excluded).

    ``method`` is 'scan' (all 2^|I| subsets), 'branch' (violation branching)
    or 'auto' (scan up to 12 elements).
    """
    elems = sorted({u for u in I if not u.is_zero()}, key=lambda u: u.sort_key())
    k = len(elems)
    if k > budget:
        raise BudgetExceeded(f"{k} idempotents exceed the subset budget {budget}")
    if k == 0:
        return []
    prod = _product_index(elems)
    if method == "auto":
        method = "scan" if k <= SCAN_LIMIT else "branch"
    if method == "scan":
        found = _scan(prod, k)
    elif method == "branch":
        found = _branch(prod, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = [_ring_quandle([elems[i] for i in S], tag) for S in found]
    out.sort(key=lambda q: (len(q), [u.sort_key() for u in q.elements]))
    return out


def right_translation(S: RingQuandle, u) -> dict:
    """S_u as a dict w -> w*u on the elements of S."""
    return {w: w * u for w in S.elements}


# ---------------------------------------------------------------------------
# parametric ring quandles


@dataclass(frozen=True)
class Piece:
    """Affine set {offset + matrix @ p : p in Z^k} inside Z[Q]."""

    label: str
    params: tuple
    offset: tuple
    matrix: tuple = ()  # n rows, k columns

    @property
    def k(self):
        return len(self.params)

    def evaluate(self, p) -> tuple:
        if not self.params:
            return tuple(self.offset)
        return tuple(c + sum(row[j] * p[j] for j in range(self.k))
                     for row, c in zip(self.matrix, self.offset))

    def symbolic(self, syms) -> list:
        return [sympy.Integer(c) + (sum(row[j] * syms[j] for j in range(self.k)) if self.params else 0)
                for row, c in zip(self.matrix or [()] * len(self.offset), self.offset)]


@dataclass(frozen=True)
class ParametricQuandle:
    name: str
    quandle: FiniteQuandle
    pieces: tuple


def _piece(label, params, offset, columns=()):
    n = len(offset)
    mat = tuple(tuple(col[i] for col in columns) for i in range(n)) if columns else ()
    return Piece(label, tuple(params), tuple(offset), mat)


def r4_M() -> ParametricQuandle:
    Q = make_dihedral(4)
    M1 = _piece("M1", ["alpha"], (1, 0, 0, 0), [(-1, 0, 1, 0)])
    M2 = _piece("M2", ["beta"], (0, 1, 0, 0), [(0, -1, 0, 1)])
    return ParametricQuandle("M", Q, (M1, M2))


def cs4_N1() -> ParametricQuandle:
    Q = make_cs4()
    return ParametricQuandle("N1", Q, (_piece("z", [], (0, 0, 1)),
                                       _piece("(1-beta)x+beta*y", ["beta"], (1, 0, 0), [(-1, 1, 0)])))


def cs4_N2_piece() -> Piece:
    return _piece("alpha*x+alpha*y+(1-2alpha)z", ["alpha"], (0, 0, 1), [(1, 1, -2)])


def cs4_N2() -> ParametricQuandle:
    return ParametricQuandle("N2", make_cs4(), (cs4_N2_piece(),))


def trivial_mq(n: int) -> ParametricQuandle:
    """x0 + Delta(T_n)."""
    cols = []
    for p in range(n - 1):
        col = [0] * n
        col[0], col[p + 1] = -1, 1
        cols.append(tuple(col))
    off = (1,) + (0,) * (n - 1)
    return ParametricQuandle(f"x0+Delta(T{n})", make_trivial(n),
                             (_piece("x0+Delta", [f"d{i + 1}" for i in range(n - 1)], off, cols),))


def _symbols(piece, suffix=""):
    return [sympy.Symbol(p + suffix, integer=True) for p in piece.params]


def _sym_mul(Q, u, v):
    w = [sympy.Integer(0)] * Q.n
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b != 0:
                w[Q.mul(i, j)] += a * b
    return [sympy.expand(c) for c in w]


def _match(piece, w):
    """Parameter expressions r with piece(r) == w identically, or None."""
    b = [sympy.expand(wi - c) for wi, c in zip(w, piece.offset)]
    if not piece.params:
        return [] if all(x == 0 for x in b) else None
    M = sympy.Matrix(piece.matrix)
    _, rows = M.T.rref()
    if len(rows) < piece.k:
        raise ValueError(f"piece {piece.label} is not injective in its parameters")
    sub = M.extract(list(rows), list(range(piece.k)))
    r = sub.inv() * sympy.Matrix([b[i] for i in rows])
    r = [sympy.expand(x) for x in r]
    if any(sympy.expand(x) != 0 for x in (M * sympy.Matrix(r) - sympy.Matrix(b))):
        return None
    for x in r:
        poly = sympy.Poly(x, *x.free_symbols) if x.free_symbols else None
        coeffs = poly.coeffs() if poly else [x]
        if any(not sympy.Integer(c) == c for c in coeffs):
            return None
    return r


def _find_target(P, w):
    for t, piece in enumerate(P.pieces):
        r = _match(piece, w)
        if r is not None:
            return t, r
    return None


@dataclass
class ProductMap:
    left: str
    right: str
    target: str
    params: tuple  # target parameters as expressions in the factors' parameters

    def __str__(self):
        return f"{self.left} * {self.right} -> {self.target}({', '.join(map(str, self.params))})"


@dataclass
class RightMap:
    u_piece: str
    source: str
    target: str
    params: tuple
    determinant: object


@dataclass
class ParametricCertificate:
    name: str
    pieces: tuple
    products: list = field(default_factory=list)
    right_maps: list = field(default_factory=list)
    q3_triples: int = 0
    grid_radius: int = 0
    points_checked: int = 0
    note: str = ZERO_NOTE

    def product(self, left, right) -> ProductMap:
        for p in self.products:
            if p.left == left and p.right == right:
                return p
        raise KeyError((left, right))

    def right_map(self, u_piece, source) -> RightMap:
        for m in self.right_maps:
            if m.u_piece == u_piece and m.source == source:
                return m
        raise KeyError((u_piece, source))


def _pieces_disjoint(a: Piece, b: Piece) -> bool:
    from .coeffs import solve_rational
    rows = [list(ra if a.params else ()) + [-x for x in (rb if b.params else ())]
            for ra, rb in zip(a.matrix or [()] * len(a.offset), b.matrix or [()] * len(b.offset))]
    rhs = [cb - ca for ca, cb in zip(a.offset, b.offset)]
    if not rows[0]:
        return any(rhs)
    return solve_rational(rows, rhs) is None


def certify_parametric_quandle(P: ParametricQuandle, grid_radius: int = 2) -> ParametricCertificate:
    """Closure, Q1, Q2 (unimodular parameter maps) and Q3 for a union of pieces.

    Product maps are derived with exact symbolic algebra; each is then
    re-evaluated numerically on the grid |params| <= grid_radius.
    """
    if grid_radius < 1:
        raise ValueError("grid radius must be >= 1")
    Q = P.quandle
    pieces = P.pieces
    cert = ParametricCertificate(P.name, tuple(p.label for p in pieces), grid_radius=grid_radius)
    for a, b in itertools.combinations(pieces, 2):
        if not _pieces_disjoint(a, b):
            raise FamilyRejected(f"{P.name}: pieces {a.label} and {b.label} may overlap")
    syms = {p.label: (_symbols(p), _symbols(p, "'")) for p in pieces}

    # closure: every product lands in a piece, with a polynomial parameter map
    maps = {}
    for A in pieces:
        for B in pieces:
            sa, sb = syms[A.label][0], syms[B.label][1]
            w = _sym_mul(Q, A.symbolic(sa), B.symbolic(sb))
            hit = _find_target(P, w)
            if hit is None:
                raise FamilyRejected(f"{P.name}: {A.label} * {B.label} leaves the set",
                                     witness=(A.label, B.label, w))
            t, r = hit
            maps[A.label, B.label] = (t, r)
            cert.products.append(ProductMap(A.label, B.label, pieces[t].label, tuple(r)))

    # Q1
    for A in pieces:
        s = syms[A.label][0]
        w = _sym_mul(Q, A.symbolic(s), A.symbolic(s))
        if any(sympy.expand(x - y) != 0 for x, y in zip(w, A.symbolic(s))):
            raise FamilyRejected(f"{P.name}: {A.label} is not idempotent", witness=(A.label,))

    # Q2: for fixed u, S_u permutes the pieces and acts unimodularly on parameters
    for B in pieces:
        targets = []
        for A in pieces:
            t, r = maps[A.label, B.label]
            targets.append(t)
            src = syms[A.label][0]
            if pieces[t].k != A.k:
                raise FamilyRejected(f"{P.name}: S_u for u in {B.label} changes dimension on {A.label}")
            if A.k:
                J = sympy.Matrix([[sympy.diff(x, s) for s in src] for x in r])
                if any(sympy.diff(e, s) != 0 for e in J for s in src):
                    raise FamilyRejected(f"{P.name}: S_u is not affine on {A.label}")
                det = sympy.expand(J.det())
            else:
                det = sympy.Integer(1)
            cert.right_maps.append(RightMap(B.label, A.label, pieces[t].label, tuple(r), det))
            if det not in (1, -1):
                raise FamilyRejected(
                    f"{P.name}: S_u for u in {B.label} has parameter determinant {det} on {A.label}",
                    witness=(B.label, A.label, det))
        if len(set(targets)) != len(targets):
            raise FamilyRejected(f"{P.name}: S_u for u in {B.label} merges two pieces")

    # Q3 on every triple of pieces, symbolically
    for A, B, C in itertools.product(pieces, repeat=3):
        sa = _symbols(A, "_a")
        sb = _symbols(B, "_b")
        sc = _symbols(C, "_c")
        a, b, c = A.symbolic(sa), B.symbolic(sb), C.symbolic(sc)
        lhs = _sym_mul(Q, _sym_mul(Q, a, b), c)
        rhs = _sym_mul(Q, _sym_mul(Q, a, c), _sym_mul(Q, b, c))
        if any(sympy.expand(x - y) != 0 for x, y in zip(lhs, rhs)):
            raise FamilyRejected(f"{P.name}: Q3 fails on ({A.label}, {B.label}, {C.label})")
        cert.q3_triples += 1

    # grid re-evaluation of the derived product maps
    axis = range(-grid_radius, grid_radius + 1)
    for (la, lb), (t, r) in maps.items():
        A = next(p for p in pieces if p.label == la)
        B = next(p for p in pieces if p.label == lb)
        vars_ = syms[la][0] + syms[lb][1]
        fn = sympy.lambdify(vars_, r, "math") if r else None
        for pa in itertools.product(axis, repeat=A.k):
            for pb in itertools.product(axis, repeat=B.k):
                u, v = A.evaluate(pa), B.evaluate(pb)
                got = tuple(kernels.dense_mul(Q.flat, Q.n, list(u), list(v)))
                tp = tuple(int(x) for x in fn(*pa, *pb)) if fn else ()
                want = pieces[t].evaluate(tp)
                cert.points_checked += 1
                if got != want:
                    raise FamilyRejected(f"{P.name}: {la}{pa} * {lb}{pb} = {got}, expected {want}",
                                         witness=(la, pa, lb, pb))
    return cert


@dataclass
class ExtensionObstruction:
    source: str
    target: str
    params: tuple
    determinant: object
    unit_values: tuple
    solvability: object  # source parameter solved from target parameter gamma

    def coefficient_at(self, **values):
        return int(self.determinant.subs({sympy.Symbol(k, integer=True): v for k, v in values.items()}))


@dataclass
class NonExtensionCertificate:
    base: str
    extra: str
    obstructions: list
    unit_values: tuple
    note: str = ""

    def surjective_at(self, value) -> bool:
        return value in self.unit_values


def _integer_roots(expr, sym) -> set:
    out = set()
    for target in (1, -1):
        for root in sympy.solve(sympy.Eq(expr, target), sym):
            if root.is_integer:
                out.add(int(root))
    return out


def certify_not_extendable(P: ParametricQuandle, extra: Piece) -> NonExtensionCertificate:
    """For u in ``extra``, S_u restricted to the pieces of P.

    Each one-parameter piece mapped to itself gives a parameter map whose
    linear coefficient must be +-1 for S_u to be onto; the certificate lists
    those coefficients and the integer parameter values where they are units.
    """
    if len(extra.params) != 1:
        raise ValueError("the extra family must have exactly one parameter")
    Q = P.quandle
    (a,) = _symbols(extra)
    u = extra.symbolic([a])
    obs = []
    units = None
    for A in P.pieces:
        s = _symbols(A)
        w = _sym_mul(Q, A.symbolic(s), u)
        hit = _find_target(P, w)
        if hit is None:
            raise FamilyRejected(f"{A.label} * u leaves {P.name}")
        t, r = hit
        if A.k == 0:
            continue
        if A.k != 1:
            raise ValueError("obstruction analysis handles one-parameter pieces")
        det = sympy.expand(sympy.diff(r[0], s[0]))
        roots = _integer_roots(det, a) if det.free_symbols else ({0} if det in (1, -1) else set())
        gamma = sympy.Symbol("gamma", integer=True)
        sol = sympy.solve(sympy.Eq(r[0], gamma), s[0])
        obs.append(ExtensionObstruction(A.label, P.pieces[t].label, tuple(r), det,
                                        tuple(sorted(roots)), sympy.factor(sol[0]) if sol else None))
        units = set(roots) if units is None else units & set(roots)
    units = tuple(sorted(units or ()))
    note = (f"S_u is onto {P.name} only for {extra.params[0]} in {list(units)}"
            if units else f"S_u is never onto {P.name}")
    return NonExtensionCertificate(P.name, extra.label, obs, units, note)


# ---------------------------------------------------------------------------
# reduction mod m


@dataclass
class ReductionReport:
    m: int
    integral: list
    images: list
    targets: list
    hit: list
    surjective: bool
    note: str = ZERO_NOTE


def mq_reduction_check(Q: FiniteQuandle, m: int, bound: int = 2, budget: int = MAX_SUBSET) -> ReductionReport:
    """Compare mq over Z (box representatives) with mq over Z/m under reduction."""
    integral = maximal_quandles_finite(nonzero(idempotents_box(Q, bound)), budget=budget, tag=False)
    targets = maximal_quandles_finite(idempotents_modular(Q, m), budget=budget, tag=False)
    images = [frozenset(v for v in (u.reduce_mod(m) for u in S.elements) if not v.is_zero())
              for S in integral]
    hit = [T.element_set() in images for T in targets]
    return ReductionReport(m, integral, images, targets, hit, all(hit))
