"""Orders on quandles, unique products and zero-divisors in quandle rings."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .coeffs import CoefficientRing, Z
from .errors import BudgetExceeded
from .infinite import FreeQuandle, FreeQuandleElement, IntQuandle, random_fq
from .quandle import FiniteQuandle, non_semi_latin_triple
from .ring import RingElement

ORDER_LIMIT = 9


# ---------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class LinearOrder:
    rank: tuple  # rank[i] = position of element i
    side: str

    def chain(self, labels=None) -> str:
        order = sorted(range(len(self.rank)), key=lambda i: self.rank[i])
        names = labels or [str(i) for i in range(len(self.rank))]
        return " < ".join(names[i] for i in order)


def _pair_images(Q: FiniteQuandle, side: str):
    """For each z, the map x -> x*z (right) or x -> z*x (left)."""
    t = Q.table
    if side == "right":
        return [[t[x][z] for x in range(Q.n)] for z in range(Q.n)]
    if side == "left":
        return [[t[z][x] for x in range(Q.n)] for z in range(Q.n)]
    raise ValueError("side must be 'left' or 'right'")


def is_order(Q: FiniteQuandle, rank, side: str) -> bool:
    maps = _pair_images(Q, side)
    for x in range(Q.n):
        for y in range(Q.n):
            if rank[x] < rank[y] and any(not rank[f[x]] < rank[f[y]] for f in maps):
                return False
    return True


def find_order(Q: FiniteQuandle, side: str = "right", limit: int = ORDER_LIMIT):
    """A linear order preserved by translations on ``side``, or None after exhaustion.

    Elements are placed one position at a time. Once x < y are both placed,
    every translate pair f(x), f(y) must satisfy: f(x) != f(y), and if f(y)
    is already placed then f(x) was placed before it.
    """
    n = Q.n
    if n > limit:
        raise BudgetExceeded(f"order search limited to n <= {limit}")
    maps = _pair_images(Q, side)
    pos = [-1] * n
    placed: list[int] = []

    def ok():
        for i, x in enumerate(placed):
            for w in placed[i + 1:]:
                for f in maps:
                    a, b = f[x], f[w]
                    if a == b:
                        return False
                    if pos[b] >= 0 and (pos[a] < 0 or pos[a] > pos[b]):
                        return False
        return True

    def search():
        if len(placed) == n:
            return True
        for y in range(n):
            if pos[y] >= 0:
                continue
            pos[y] = len(placed)
            placed.append(y)
            if ok() and search():
                return True
            placed.pop()
            pos[y] = -1
        return False

    if search():
        return LinearOrder(tuple(pos), side)
    return None


def find_order_bruteforce(Q: FiniteQuandle, side: str = "right"):
    """n! oracle for small n."""
    if Q.n > 7:
        raise BudgetExceeded("brute force order search limited to n <= 7")
    for perm in itertools.permutations(range(Q.n)):
        rank = [0] * Q.n
        for p, x in enumerate(perm):
            rank[x] = p
        if is_order(Q, rank, side):
            return LinearOrder(tuple(rank), side)
    return None


# ---------------------------------------------------------------------------
# unique products


@dataclass
class UniqueProductReport:
    A: list
    B: list
    products: dict  # element -> [(a, b), ...]
    unique: list
    a_max: tuple | None = None  # (a_max, b', a_max*b')
    a_min: tuple | None = None  # (a_min, b'', a_min*b'')

    @property
    def up(self) -> bool:
        return len(self.unique) >= 1

    @property
    def tup(self) -> bool:
        if len(self.A) + len(self.B) > 2:
            return len(self.unique) >= 2
        return self.up

    def total(self) -> int:
        return sum(len(v) for v in self.products.values())


def _key(x):
    return x.sort_key() if isinstance(x, FreeQuandleElement) else x


def unique_products(q, A, B) -> UniqueProductReport:
    if not A or not B:
        raise ValueError("A and B must be non-empty")
    mul = q.mul
    A = sorted(set(A), key=_key)
    B = sorted(set(B), key=_key)
    prods: dict = {}
    for a in A:
        for b in B:
            prods.setdefault(mul(a, b), []).append((a, b))
    products = {k: prods[k] for k in sorted(prods, key=_key)}
    unique = [k for k, reps in products.items() if len(reps) == 1]
    rep = UniqueProductReport(A, B, products, unique)
    if isinstance(q, IntQuandle):
        uniq = set(unique)
        for attr, a in (("a_max", A[-1]), ("a_min", A[0])):
            for b in B:
                if mul(a, b) in uniq:
                    setattr(rep, attr, (a, b, mul(a, b)))
                    break
    return rep


# ---------------------------------------------------------------------------
# inert quandles


def is_inert_witness(Q: FiniteQuandle, A, x: int, y: int) -> bool:
    """A x == A y as multisets, with x != y."""
    if x == y:
        return False
    return Counter(Q.mul(a, x) for a in A) == Counter(Q.mul(a, y) for a in A)


def inert_witness(Q: FiniteQuandle, max_size: int | None = None):
    """(A, x, y) with A finite and the multisets A*x, A*y equal, or None."""
    max_size = Q.n if max_size is None else min(max_size, Q.n)
    for k in range(1, max_size + 1):
        for A in itertools.combinations(range(Q.n), k):
            for x, y in itertools.combinations(range(Q.n), 2):
                if is_inert_witness(Q, A, x, y):
                    return A, x, y
    return None


# ---------------------------------------------------------------------------
# zero-divisors


STRATEGIES = ("trivial-subquandle", "finite-subquandle", "not-semi-latin", "inert")


@dataclass
class ZeroDivisorWitness:
    strategy: str
    u: RingElement
    v: RingElement

    def verify(self) -> bool:
        return (not self.u.is_zero() and not self.v.is_zero() and (self.u * self.v).is_zero())


def smallest_subquandle(Q: FiniteQuandle, min_size: int = 2):
    """Smallest subset of size >= min_size closed under the operation."""
    t = Q.table
    for k in range(min_size, Q.n + 1):
        for S in itertools.combinations(range(Q.n), k):
            Sset = set(S)
            if all(t[a][b] in Sset for a in S for b in S):
                return S
    return None


def _elem(Q, R, terms):
    return RingElement(Q, R, terms)


def _try(Q: FiniteQuandle, R, strategy: str):
    t = Q.table
    if strategy == "trivial-subquandle":
        for x, y in itertools.combinations(range(Q.n), 2):
            if t[x][y] == x and t[y][x] == y:
                d = _elem(Q, R, [(x, 1), (y, -1)])
                return d, d
        return None
    if strategy == "finite-subquandle":
        S = smallest_subquandle(Q)
        if S is None:
            return None
        return _elem(Q, R, [(a, 1) for a in S]), _elem(Q, R, [(S[0], 1), (S[1], -1)])
    if strategy == "not-semi-latin":
        tr = non_semi_latin_triple(Q)
        if tr is None:
            return None
        x, y, z = tr
        return _elem(Q, R, [(x, 1)]), _elem(Q, R, [(y, 1), (z, -1)])
    if strategy == "inert":
        w = inert_witness(Q)
        if w is None:
            return None
        A, x, y = w
        return _elem(Q, R, [(a, 1) for a in A]), _elem(Q, R, [(x, 1), (y, -1)])
    raise ValueError(f"unknown strategy {strategy!r}")


def zero_divisor_witness(Q: FiniteQuandle, ring: CoefficientRing = Z, strategy: str = "auto"):
    """(u, v) nonzero with u*v == 0 built from the quandle's structure, or None.

    None only means the chosen recipes did not apply.
    """
    order = STRATEGIES if strategy == "auto" else (strategy,)
    for s in order:
        pair = _try(Q, ring, s)
        if pair is None:
            continue
        w = ZeroDivisorWitness(s, *pair)
        if w.verify():
            return w
    return None


# ---------------------------------------------------------------------------
# sampling in rings of infinite quandles


def sparse_mul(q, u: dict, v: dict) -> dict:
    """Product of finitely supported combinations {element: coeff} under q.mul."""
    out: dict = {}
    for a, c in u.items():
        for b, d in v.items():
            k = q.mul(a, b)
            out[k] = out.get(k, 0) + c * d
    return {k: c for k, c in out.items() if c}


@dataclass
class NoZeroDivisorReport:
    quandle: str
    trials: int = 0
    zero_products: list = field(default_factory=list)
    up_checked: int = 0
    up_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.zero_products and not self.up_failures


def _random_support(rng, q, size, radius, word_len):
    if isinstance(q, IntQuandle):
        return rng.sample(range(-radius, radius + 1), size)
    if isinstance(q, FreeQuandle):
        out = set()
        while len(out) < size:
            out.add(random_fq(rng, q.rank, word_len))
        return list(out)
    raise TypeError("expected an IntQuandle or FreeQuandle")


def up_sample_no_zero_divisors(q, trials: int = 1000, support: int = 3, coeff_bound: int = 2,
                               seed: int = 0, radius: int = 20, word_len: int = 4) -> NoZeroDivisorReport:
    """Random nonzero pairs (u, v): record any u*v == 0 and any support pair
    without a uniquely represented product."""
    name = getattr(q, "name", str(q))
    rep = NoZeroDivisorReport(name)
    rng = random.Random(seed)
    coeffs = [c for c in range(-coeff_bound, coeff_bound + 1) if c]
    for _ in range(trials):
        u = {a: rng.choice(coeffs) for a in _random_support(rng, q, rng.randint(1, support), radius, word_len)}
        v = {b: rng.choice(coeffs) for b in _random_support(rng, q, rng.randint(1, support), radius, word_len)}
        rep.trials += 1
        if not sparse_mul(q, u, v):
            rep.zero_products.append((u, v))
        census = unique_products(q, list(u), list(v))
        rep.up_checked += 1
        if not census.up:
            rep.up_failures.append((list(u), list(v)))
    return rep
