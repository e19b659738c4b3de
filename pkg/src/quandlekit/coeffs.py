"""Exact coefficient rings and integer-lattice linear algebra.

Scalars are plain Python values: ``int`` for Z and Z/m (stored as the
canonical residue in ``[0, m-1]``) and :class:`fractions.Fraction` for Q.
The ring a scalar belongs to is carried by whatever holds it (usually a
:class:`~quandlekit.ring.RingElement`), never by the number itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotIntegralDomain, ParseError


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # 'z', 'zmod' or 'q'
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("z", "zmod", "q"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "zmod":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("integers-mod-m needs m >= 2")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind} takes no modulus")

    # constructors -----------------------------------------------------
    @classmethod
    def integers(cls):
        return cls("z")

    @classmethod
    def rationals(cls):
        return cls("q")

    @classmethod
    def mod(cls, m: int):
        return cls("zmod", m)

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """Parse ``z``, ``q`` or ``zmod:<m>``."""
        t = text.strip().lower()
        if t in ("z", "int", "integers"):
            return cls.integers()
        if t in ("q", "rationals"):
            return cls.rationals()
        if t.startswith("zmod:"):
            try:
                m = int(t[5:])
            except ValueError:
                raise ParseError(f"bad modulus in ring spec {text!r}") from None
            if m < 2:
                raise ParseError(f"modulus must be >= 2, got {m}")
            return cls.mod(m)
        raise ParseError(f"unknown ring spec {text!r} (use z, q or zmod:<m>)")

    # flags ------------------------------------------------------------
    @property
    def is_integral_domain(self) -> bool:
        return self.kind != "zmod" or is_prime(self.modulus)

    @property
    def is_field(self) -> bool:
        return self.kind == "q" or (self.kind == "zmod" and is_prime(self.modulus))

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "zmod" else 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "zmod"

    def require_domain(self, what: str = "this operation"):
        if not self.is_integral_domain:
            raise NotIntegralDomain(
                f"{what} needs an integral domain; Z/{self.modulus} has zero-divisors")

    # arithmetic -------------------------------------------------------
    def normalize(self, value):
        if self.kind == "z":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                return value.numerator
            return int(value)
        if self.kind == "zmod":
            if isinstance(value, Fraction):
                return (value.numerator * pow(value.denominator, -1, self.modulus)) % self.modulus
            return int(value) % self.modulus
        return Fraction(value)

    def zero(self):
        return Fraction(0) if self.kind == "q" else 0

    def one(self):
        return Fraction(1) if self.kind == "q" else 1

    def add(self, a, b):
        s = a + b
        return s % self.modulus if self.kind == "zmod" else s

    def sub(self, a, b):
        s = a - b
        return s % self.modulus if self.kind == "zmod" else s

    def mul(self, a, b):
        s = a * b
        return s % self.modulus if self.kind == "zmod" else s

    def neg(self, a):
        return (-a) % self.modulus if self.kind == "zmod" else -a

    def is_unit(self, a) -> bool:
        if self.kind == "z":
            return a in (1, -1)
        if self.kind == "q":
            return a != 0
        from math import gcd
        return gcd(a, self.modulus) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not invertible in {self}")
        if self.kind == "z":
            return a
        if self.kind == "q":
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def elements(self):
        """All elements of a finite ring in increasing order."""
        if self.kind != "zmod":
            raise ValueError(f"{self} is infinite")
        return range(self.modulus)

    def parse_scalar(self, token: str):
        t = token.strip()
        if " mod " in t:
            k, m = t.split(" mod ")
            if self.kind != "zmod" or int(m) != self.modulus:
                raise ParseError(f"{token!r} does not belong to {self}")
            return int(k) % self.modulus
        try:
            if "/" in t:
                v = Fraction(t)
            else:
                v = int(t)
        except ValueError:
            raise ParseError(f"bad coefficient {token!r}") from None
        try:
            return self.normalize(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"coefficient {token!r} is not in {self}: {exc}") from None

    def __str__(self):
        if self.kind == "zmod":
            return f"zmod:{self.modulus}"
        return self.kind


Z = CoefficientRing.integers()
QQ = CoefficientRing.rationals()


# ---------------------------------------------------------------------------
# integer lattices


def _hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    A = [list(r) for r in rows if any(r)]
    r = 0
    for col in range(ncols):
        if r >= len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[p] = A[p], A[r]
            piv = A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // piv[col]
                    A[i] = [a - q * b for a, b in zip(A[i], piv)]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            A[r] = [-a for a in A[r]]
        piv = A[r]
        for i in range(r):
            q = A[i][col] // piv[col]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], piv)]
        r += 1
    return tuple(tuple(row) for row in A[:r])


def _pivot(row) -> int:
    for j, a in enumerate(row):
        if a:
            return j
    return -1


@dataclass(frozen=True)
class IntLatticeBasis:
    """Sublattice of Z^n held in Hermite normal form (row style)."""

    dim: int
    rows: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def from_vectors(cls, dim: int, vectors: Iterable[Sequence[int]] = ()):
        vecs = [tuple(int(a) for a in v) for v in vectors]
        for v in vecs:
            if len(v) != dim:
                raise DimensionMismatch(f"vector of length {len(v)} in dimension {dim}")
        return cls(dim, _hnf_rows(vecs, dim))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, v: Sequence[int]) -> "IntLatticeBasis":
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        if self.contains(v):
            return self
        return IntLatticeBasis(self.dim, _hnf_rows(list(self.rows) + [list(v)], self.dim))

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        w = [int(a) for a in v]
        for row in self.rows:
            p = _pivot(row)
            if any(w[:p]):
                return False
            if w[p] % row[p]:
                return False
            q = w[p] // row[p]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return not any(w)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.rows


def hnf_insert(basis: IntLatticeBasis, v: Sequence[int]) -> IntLatticeBasis:
    return basis.insert(v)


def lattice_contains(basis: IntLatticeBasis, v: Sequence[int]) -> bool:
    return basis.contains(v)


# ---------------------------------------------------------------------------
# subspaces over fields (Q and Z/p)


@dataclass(frozen=True)
class EchelonBasis:
    """Subspace of F^n in reduced row echelon form; F is Q or Z/p."""

    ring: CoefficientRing
    dim: int
    rows: tuple[tuple, ...] = ()

    def __post_init__(self):
        if not self.ring.is_field:
            raise NotIntegralDomain(f"{self.ring} is not a field")

    @classmethod
    def from_vectors(cls, ring, dim, vectors=()):
        b = cls(ring, dim)
        for v in vectors:
            b = b.insert(v)
        return b

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v):
        R = self.ring
        w = [R.normalize(a) for a in v]
        for row in self.rows:
            p = _pivot(row)
            if w[p]:
                c = w[p]
                w = [R.sub(a, R.mul(c, b)) for a, b in zip(w, row)]
        return w

    def contains(self, v) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        return not any(self._reduce(v))

    __contains__ = contains

    def insert(self, v) -> "EchelonBasis":
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        R = self.ring
        w = self._reduce(v)
        p = _pivot(w)
        if p < 0:
            return self
        inv = R.inverse(w[p])
        w = [R.mul(inv, a) for a in w]
        rows = []
        for row in self.rows:
            c = row[p]
            if c:
                row = tuple(R.sub(a, R.mul(c, b)) for a, b in zip(row, w))
            rows.append(row)
        rows.append(tuple(w))
        rows.sort(key=_pivot)
        return EchelonBasis(R, self.dim, tuple(rows))

    def is_zero(self) -> bool:
        return not self.rows


def span_basis(ring: CoefficientRing, dim: int, vectors=()):
    """Empty span object suited to ``ring``: HNF lattice over Z, echelon over fields."""
    if ring.kind == "z":
        return IntLatticeBasis.from_vectors(dim, vectors)
    if ring.is_field:
        return EchelonBasis.from_vectors(ring, dim, vectors)
    raise NotIntegralDomain(f"spans over {ring} (composite modulus) are not supported")


# ---------------------------------------------------------------------------
# small matrix helpers (integer, exact)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank_q(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return EchelonBasis.from_vectors(QQ, len(vectors[0]), vectors).rank


def matmul(A, B):
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*B)) for row in A)


def identity_matrix(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def solve_rational(M: Sequence[Sequence], rhs: Sequence):
    """A solution ``p`` of ``M p = rhs`` over Q, or None. M has full column rank."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [[Fraction(a) for a in M[i]] + [Fraction(rhs[i])] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][cols] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        sol[c] = A[i][cols]
    return sol


def solve_integer(M: Sequence[Sequence[int]], rhs: Sequence[int]):
    """An integer x with M x = rhs, or None.

    Row-reduces [M^T | I] on the first block; the identity block records
    which combination of columns produced each echelon row.
    """
    m = len(M)
    k = len(M[0]) if m else 0
    aug = [[int(M[i][j]) for i in range(m)] + [int(j == t) for t in range(k)] for j in range(k)]
    rows = _hnf_rows(aug, m)
    w = [int(a) for a in rhs]
    x = [0] * k
    for row in rows:
        p = _pivot(row[:m])
        if p < 0:
            break
        if any(w[:p]) or w[p] % row[p]:
            return None
        q = w[p] // row[p]
        if q:
            w = [a - q * b for a, b in zip(w, row[:m])]
            x = [a + q * b for a, b in zip(x, row[m:])]
    return x if not any(w) else None
