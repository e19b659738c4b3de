"""Finite quandles as multiplication tables.

``table[i][j]`` is the index of ``x_i * x_j``. Elements are always 0-based
indices; labels only affect printing and parsing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import kernels
from .errors import (
    BudgetExceeded,
    NotAnAutomorphism,
    ParseError,
    Q1Violation,
    Q2Violation,
    Q3Violation,
    TableError,
)

AUTOMORPHISM_BOUND = 8


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"a{i}" for i in range(len(self.table))))

    @property
    def n(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return (isinstance(other, FiniteQuandle) and self.table == other.table
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.table, self.labels))

    def __repr__(self):
        tag = self.name or f"order {self.n}"
        return f"<FiniteQuandle {tag}>"

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def right(self, y: int) -> tuple[int, ...]:
        """S_y as a tuple: x -> x*y."""
        return tuple(row[y] for row in self.table)

    def left(self, x: int) -> tuple[int, ...]:
        """L_x as a tuple: y -> x*y."""
        return self.table[x]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ParseError(f"unknown element label {label!r}") from None

    @cached_property
    def flat(self):
        return kernels.flatten(self.table)

    def same_table(self, other: "FiniteQuandle") -> bool:
        return self.table == other.table


# ---------------------------------------------------------------------------
# validation


def _check_shape(table):
    n = len(table)
    if n == 0:
        raise TableError("empty table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(row)
        if len(row) != n:
            raise TableError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise TableError(f"entry ({i},{j}) = {v!r} out of range [0, {n - 1}]")
        rows.append(row)
    return tuple(rows)


def axiom_violation(table):
    """First violated axiom as an exception instance, or None. Table must be well-shaped."""
    n = len(table)
    for i in range(n):
        if table[i][i] != i:
            return Q1Violation((i,), f"Q1 violated: x{i}*x{i} = x{table[i][i]}")
    for j in range(n):
        seen = {}
        for i in range(n):
            k = table[i][j]
            if k in seen:
                return Q2Violation((j, seen[k], i),
                                   f"Q2 violated: x{seen[k]}*x{j} = x{i}*x{j} = x{k}")
            seen[k] = i
    w = kernels.q3_violation(kernels.flatten(table), n)
    if w is not None:
        i, j, k = w
        return Q3Violation(w, f"Q3 violated: (x{i}*x{j})*x{k} != (x{i}*x{k})*(x{j}*x{k})")
    return None


def verify_quandle(table, labels: Sequence[str] | None = None, name: str = "") -> FiniteQuandle:
    """Validate ``table`` against Q1-Q3 and wrap it; raises the first violation found."""
    rows = _check_shape(table)
    bad = axiom_violation(rows)
    if bad is not None:
        raise bad
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != len(rows) or len(set(labels)) != len(labels):
            raise TableError("labels must be n distinct names")
    return FiniteQuandle(rows, labels or (), name)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FiniteGroup:
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = ""

    @property
    def n(self):
        return len(self.cayley)

    def mul(self, a, b):
        return self.cayley[a][b]

    @classmethod
    def from_table(cls, cayley, name=""):
        cayley = tuple(tuple(r) for r in cayley)
        n = len(cayley)
        rng = range(n)
        ident = next((e for e in rng if all(cayley[e][x] == x == cayley[x][e] for x in rng)), None)
        if ident is None:
            raise ValueError("no identity element")
        inv = []
        for a in rng:
            b = next((b for b in rng if cayley[a][b] == ident == cayley[b][a]), None)
            if b is None:
                raise ValueError(f"element {a} has no inverse")
            inv.append(b)
        for a, b, c in itertools.product(rng, repeat=3):
            if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
                raise ValueError(f"not associative at {(a, b, c)}")
        return cls(cayley, ident, tuple(inv), name)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def symmetric_group(k: int) -> FiniteGroup:
    """Sigma_k on permutations in lexicographic order; (p q)(x) = p(q(x))."""
    perms = list(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    cayley = [[pos[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return FiniteGroup.from_table(cayley, f"S{k}")


def is_group_automorphism(G: FiniteGroup, phi: Sequence[int]) -> bool:
    if sorted(phi) != list(range(G.n)):
        return False
    return all(phi[G.mul(a, b)] == G.mul(phi[a], phi[b]) for a in range(G.n) for b in range(G.n))


def multiplication_automorphism(n: int, c: int) -> tuple[int, ...]:
    """x -> c*x on Z_n."""
    return tuple((c * x) % n for x in range(n))


# ---------------------------------------------------------------------------
# constructors


def make_trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be >= 1")
    return verify_quandle([[i] * n for i in range(n)], [f"x{i}" for i in range(n)], f"T{n}")


def make_dihedral(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be >= 1")
    return verify_quandle([[(2 * j - i) % n for j in range(n)] for i in range(n)],
                          [f"a{i}" for i in range(n)], f"R{n}")


def make_cs4() -> FiniteQuandle:
    # x y = x, x z = y, y x = y, y z = x, z x = z, z y = z
    return verify_quandle([[0, 0, 1], [1, 1, 0], [2, 2, 2]], ["x", "y", "z"], "Cs4")


def make_conj(G: FiniteGroup) -> FiniteQuandle:
    """a*b = b^-1 a b."""
    inv = G.inverse
    t = [[G.mul(G.mul(inv[b], a), b) for b in range(G.n)] for a in range(G.n)]
    return verify_quandle(t, name=f"Conj({G.name})" if G.name else "")


def make_core(G: FiniteGroup) -> FiniteQuandle:
    """a*b = b a^-1 b."""
    inv = G.inverse
    t = [[G.mul(G.mul(b, inv[a]), b) for b in range(G.n)] for a in range(G.n)]
    return verify_quandle(t, name=f"Core({G.name})" if G.name else "")


def make_alex(G: FiniteGroup, phi: Sequence[int]) -> FiniteQuandle:
    """a*b = phi(a b^-1) b."""
    phi = tuple(phi)
    if not is_group_automorphism(G, phi):
        raise NotAnAutomorphism(f"{phi} is not an automorphism of {G.name or 'G'}")
    inv = G.inverse
    t = [[G.mul(phi[G.mul(a, inv[b])], b) for b in range(G.n)] for a in range(G.n)]
    return verify_quandle(t, name=f"Alex({G.name})" if G.name else "")


# ---------------------------------------------------------------------------
# structural predicates


@dataclass(frozen=True)
class QuandlePredicates:
    trivial: bool
    latin: bool
    semi_latin: bool
    involutary: bool
    commutative: bool
    strongly_non_commutative: bool
    connected: bool


def is_trivial(Q: FiniteQuandle) -> bool:
    return all(Q.table[i][j] == i for i in range(Q.n) for j in range(Q.n))


def is_semi_latin(Q: FiniteQuandle) -> bool:
    return all(len(set(row)) == Q.n for row in Q.table)


def non_semi_latin_triple(Q: FiniteQuandle):
    """(x, y, z) with y != z and x*y == x*z, or None."""
    for x, row in enumerate(Q.table):
        seen = {}
        for y, v in enumerate(row):
            if v in seen:
                return (x, seen[v], y)
            seen[v] = y
    return None


def is_commutative(Q: FiniteQuandle) -> bool:
    t = Q.table
    return all(t[i][j] == t[j][i] for i in range(Q.n) for j in range(i))


def is_involutary(Q: FiniteQuandle) -> bool:
    t = Q.table
    return all(t[t[x][y]][y] == x for x in range(Q.n) for y in range(Q.n))


def commutator_pairs(Q: FiniteQuandle) -> dict:
    """(a*b, b*a) -> first (a, b) realising it, over ordered pairs a != b."""
    found = {}
    for a in range(Q.n):
        for b in range(Q.n):
            key = (Q.table[a][b], Q.table[b][a])
            found.setdefault(key, (a, b))
    return found


def is_strongly_non_commutative(Q: FiniteQuandle) -> bool:
    if Q.n < 2:
        return False
    pairs = commutator_pairs(Q)
    return all((x, y) in pairs for x in range(Q.n) for y in range(Q.n) if x != y)


def inner_orbits(Q: FiniteQuandle) -> list[list[int]]:
    """Orbits of the group generated by all S_y, via union-find on x ~ x*y."""
    parent = list(range(Q.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(Q.n):
        for y in range(Q.n):
            a, b = find(x), find(Q.table[x][y])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for x in range(Q.n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def is_connected(Q: FiniteQuandle) -> bool:
    return len(inner_orbits(Q)) == 1


def predicates(Q: FiniteQuandle) -> QuandlePredicates:
    latin = all(len(set(Q.table[x])) == Q.n for x in range(Q.n))
    return QuandlePredicates(
        trivial=is_trivial(Q),
        latin=latin,
        semi_latin=latin,  # for finite sets injective == bijective
        involutary=is_involutary(Q),
        commutative=is_commutative(Q),
        strongly_non_commutative=is_strongly_non_commutative(Q),
        connected=is_connected(Q),
    )


# ---------------------------------------------------------------------------
# automorphisms


def is_quandle_automorphism(Q: FiniteQuandle, perm: Sequence[int]) -> bool:
    t = Q.table
    if sorted(perm) != list(range(Q.n)):
        return False
    return all(perm[t[i][j]] == t[perm[i]][perm[j]] for i in range(Q.n) for j in range(Q.n))


def _profile(Q: FiniteQuandle, x: int):
    # invariants preserved by every automorphism
    t = Q.table
    fixed_by = sum(1 for y in range(Q.n) if t[y][x] == y)
    fixes = sum(1 for y in range(Q.n) if t[x][y] == x)
    return (fixed_by, fixes, len(set(t[x])))


def quandle_automorphisms(Q: FiniteQuandle, bound: int = AUTOMORPHISM_BOUND) -> list[tuple[int, ...]]:
    """All automorphisms of Q as image tuples, lexicographically sorted."""
    n = Q.n
    if n > bound:
        raise BudgetExceeded(f"automorphism search limited to n <= {bound}, got {n}")
    t = Q.table
    prof = [_profile(Q, x) for x in range(n)]
    # most constrained first: elements whose profile class is smallest
    class_size = {p: prof.count(p) for p in prof}
    order = sorted(range(n), key=lambda x: (class_size[prof[x]], x))
    out = []

    def propagate(perm, used):
        changed = True
        while changed:
            changed = False
            assigned = [i for i in range(n) if perm[i] >= 0]
            for a in assigned:
                for b in assigned:
                    c = t[a][b]
                    want = t[perm[a]][perm[b]]
                    if perm[c] < 0:
                        if used[want] or prof[c] != prof[want]:
                            return False
                        perm[c] = want
                        used[want] = True
                        changed = True
                    elif perm[c] != want:
                        return False
        return True

    def search(perm, used):
        free = [x for x in order if perm[x] < 0]
        if not free:
            out.append(tuple(perm))
            return
        x = free[0]
        for img in range(n):
            if used[img] or prof[img] != prof[x]:
                continue
            p2, u2 = perm[:], used[:]
            p2[x] = img
            u2[img] = True
            if propagate(p2, u2):
                search(p2, u2)

    search([-1] * n, [False] * n)
    out.sort()
    return out


def is_2transitive(Q: FiniteQuandle, bound: int = AUTOMORPHISM_BOUND) -> bool:
    if Q.n < 2:
        raise ValueError("2-transitivity needs n >= 2")
    auts = quandle_automorphisms(Q, bound)
    orbit = {(p[0], p[1]) for p in auts}
    return len(orbit) == Q.n * (Q.n - 1)


def isomorphism(Q1: FiniteQuandle, Q2: FiniteQuandle, bound: int = AUTOMORPHISM_BOUND):
    """A bijection f with f(x*y) = f(x)*f(y), or None. Brute force over profiles."""
    if Q1.n != Q2.n:
        return None
    n = Q1.n
    if n > bound:
        raise BudgetExceeded(f"isomorphism search limited to n <= {bound}")
    p1 = [_profile(Q1, x) for x in range(n)]
    p2 = [_profile(Q2, x) for x in range(n)]
    if sorted(p1) != sorted(p2):
        return None
    t1, t2 = Q1.table, Q2.table

    def search(f, used, i):
        if i == n:
            return tuple(f)
        for img in range(n):
            if used[img] or p1[i] != p2[img]:
                continue
            f.append(img)
            used[img] = True
            ok = all(t1[a][b] > i or f[t1[a][b]] == t2[f[a]][f[b]]
                     for a in range(i + 1) for b in range(i + 1))
            if ok:
                res = search(f, used, i + 1)
                if res:
                    return res
            f.pop()
            used[img] = False
        return None

    return search([], [False] * n, 0)


# ---------------------------------------------------------------------------
# table file format


def format_quandle(Q: FiniteQuandle, labels: bool = True) -> str:
    lines = [str(Q.n)]
    lines += [" ".join(map(str, row)) for row in Q.table]
    if labels:
        lines.append("labels: " + " ".join(Q.labels))
    return "\n".join(lines) + "\n"


def parse_quandle(text: str, name: str = "") -> FiniteQuandle:
    """Read the table format: n, then n rows of indices, optional ``labels:`` line."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty quandle file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the order n, got {lines[0]!r}") from None
    if n < 1:
        raise ParseError("order must be >= 1")
    if len(lines) < n + 1:
        raise ParseError(f"expected {n} table rows, got {len(lines) - 1}")
    try:
        rows = [[int(tok) for tok in lines[1 + i].split()] for i in range(n)]
    except ValueError as exc:
        raise ParseError(f"bad table entry: {exc}") from None
    labels = None
    rest = lines[n + 1:]
    if rest:
        if len(rest) > 1 or not rest[0].startswith("labels:"):
            raise ParseError(f"unexpected trailing content {rest[0]!r}")
        labels = rest[0][len("labels:"):].split()
    return verify_quandle(rows, labels, name)


def read_quandle_file(path) -> FiniteQuandle:
    with open(path) as fh:
        return parse_quandle(fh.read())


def write_quandle_file(Q: FiniteQuandle, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_quandle(Q))
