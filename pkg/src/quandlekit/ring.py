"""Arithmetic in the quandle ring R[Q] and the extended ring R[Q] + Re.

Multiplication is the bilinear extension of the quandle operation. The ring
is not associative in general, so products are evaluated strictly in the
order the caller writes them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .coeffs import CoefficientRing, Z
from .errors import ParseError, RingMismatch
from .quandle import FiniteQuandle


class RingElement:
    """Finitely supported sum of basis elements with coefficients in ``ring``.

    Coefficients are stored sparsely; zero coefficients are never kept.
    Instances are treated as immutable.
    """

    __slots__ = ("quandle", "ring", "_c", "_hash")

    def __init__(self, quandle: FiniteQuandle, ring: CoefficientRing, coeffs=None):
        self.quandle = quandle
        self.ring = ring
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for i, a in items:
                if not 0 <= i < quandle.n:
                    raise IndexError(f"basis index {i} outside quandle of order {quandle.n}")
                a = ring.add(c.get(i, ring.zero()), ring.normalize(a))
                if a:
                    c[i] = a
                else:
                    c.pop(i, None)
        self._c = c
        self._hash = None

    # construction ------------------------------------------------------
    @classmethod
    def from_dense(cls, quandle, ring, vec: Sequence):
        if len(vec) != quandle.n:
            raise ValueError(f"dense vector has length {len(vec)}, quandle has order {quandle.n}")
        return cls(quandle, ring, [(i, a) for i, a in enumerate(vec) if a])

    @classmethod
    def basis(cls, quandle, ring, i: int):
        return cls(quandle, ring, [(i, 1)])

    @classmethod
    def zero(cls, quandle, ring):
        return cls(quandle, ring)

    # access ------------------------------------------------------------
    def coeff(self, i: int):
        return self._c.get(i, self.ring.zero())

    def __getitem__(self, i):
        return self.coeff(i)

    def dense(self) -> tuple:
        z = self.ring.zero()
        return tuple(self._c.get(i, z) for i in range(self.quandle.n))

    def items(self):
        return sorted(self._c.items())

    @property
    def support(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def augmentation(self):
        R = self.ring
        s = R.zero()
        for a in self._c.values():
            s = R.add(s, a)
        return s

    # arithmetic ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.ring != self.ring or not other.quandle.same_table(self.quandle):
            raise RingMismatch("operands belong to different quandle rings")

    def _new(self, coeffs):
        return RingElement(self.quandle, self.ring, coeffs)

    def __add__(self, other):
        self._check(other)
        c = dict(self._c)
        R = self.ring
        for i, a in other._c.items():
            c[i] = R.add(c.get(i, R.zero()), a)
        return self._new(c)

    def __neg__(self):
        return self._new({i: self.ring.neg(a) for i, a in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        R = self.ring
        k = R.normalize(k)
        return self._new({i: R.mul(k, a) for i, a in self._c.items()})

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return ring_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.ring == other.ring and self.quandle.same_table(other.quandle)
                and self._c == other._c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.quandle.table, tuple(sorted(self._c.items()))))
        return self._hash

    def sort_key(self):
        return tuple(self.dense())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"RingElement({format_element(self)!r}, ring={self.ring})"

    def reduce_mod(self, m: int) -> "RingElement":
        """Image under coefficient reduction Z -> Z/m."""
        if self.ring.kind != "z":
            raise RingMismatch("reduction mod m applies to integer coefficients")
        return RingElement(self.quandle, CoefficientRing.mod(m), self._c)

    def map_basis(self, perm: Sequence[int]) -> "RingElement":
        """Apply a permutation of the basis coefficient-wise: x_i -> x_perm[i]."""
        return self._new([(perm[i], a) for i, a in self._c.items()])


def ring_mul(u: RingElement, v: RingElement) -> RingElement:
    u._check(v)
    Q = u.quandle
    R = u.ring
    if R.kind != "q" and u._c and v._c:
        prod = kernels.dense_mul(Q.flat, Q.n, list(u.dense()), list(v.dense()))
        return RingElement(Q, R, [(i, a) for i, a in enumerate(prod) if a])
    out = {}
    t = Q.table
    for i, a in u._c.items():
        row = t[i]
        for j, b in v._c.items():
            k = row[j]
            out[k] = out.get(k, 0) + a * b
    return RingElement(Q, R, out)


def augmentation(u: RingElement):
    return u.augmentation()


def element(Q: FiniteQuandle, vec: Sequence, ring: CoefficientRing = Z) -> RingElement:
    return RingElement.from_dense(Q, ring, vec)


def basis_elements(Q: FiniteQuandle, ring: CoefficientRing = Z) -> list[RingElement]:
    return [RingElement.basis(Q, ring, i) for i in range(Q.n)]


def commutator(u: RingElement, v: RingElement) -> RingElement:
    return ring_mul(u, v) - ring_mul(v, u)


# ---------------------------------------------------------------------------
# extended ring


@dataclass(frozen=True)
class ExtRingElement:
    body: RingElement
    unit: object = 0

    def __post_init__(self):
        object.__setattr__(self, "unit", self.body.ring.normalize(self.unit))

    @classmethod
    def identity(cls, quandle, ring):
        return cls(RingElement.zero(quandle, ring), 1)

    @classmethod
    def lift(cls, u: RingElement):
        return cls(u, 0)

    def __add__(self, other):
        return ExtRingElement(self.body + other.body, self.body.ring.add(self.unit, other.unit))

    def __neg__(self):
        return ExtRingElement(-self.body, self.body.ring.neg(self.unit))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return ext_mul(self, other)

    def is_zero(self):
        return self.body.is_zero() and not self.unit

    def augmentation(self):
        return self.body.ring.add(self.body.augmentation(), self.unit)

    def __str__(self):
        R = self.body.ring
        parts = []
        if self.unit:
            parts.append(_fmt_term(R, self.unit, "e", first=True))
        for i, a in self.body.items():
            parts.append(_fmt_term(R, a, self.body.quandle.labels[i], first=not parts))
        return "".join(parts) or "0"


def ext_mul(u: ExtRingElement, v: ExtRingElement) -> ExtRingElement:
    """(b + s e)(c + t e) = bc + t b + s c + s t e."""
    R = u.body.ring
    body = ring_mul(u.body, v.body) + u.body.scale(v.unit) + v.body.scale(u.unit)
    return ExtRingElement(body, R.mul(u.unit, v.unit))


# ---------------------------------------------------------------------------
# augmentation ideal


@dataclass(frozen=True)
class AugIdealBasis:
    base_index: int
    vectors: tuple[RingElement, ...]

    def coordinates(self, u: RingElement) -> list:
        """Coefficients of u (which must have augmentation 0) in this basis."""
        if u.augmentation():
            raise ValueError("element is not in the augmentation ideal")
        return [u.coeff(i) for i in range(u.quandle.n) if i != self.base_index]

    def combine(self, coords) -> RingElement:
        if not self.vectors:
            raise ValueError("empty basis")
        out = RingElement.zero(self.vectors[0].quandle, self.vectors[0].ring)
        for c, e in zip(coords, self.vectors):
            out = out + e.scale(c)
        return out


def aug_ideal_basis(Q: FiniteQuandle, ring: CoefficientRing = Z, base_index: int = 0) -> AugIdealBasis:
    if not 0 <= base_index < Q.n:
        raise IndexError(f"base index {base_index} out of range for order {Q.n}")
    x0 = RingElement.basis(Q, ring, base_index)
    vecs = tuple(RingElement.basis(Q, ring, i) - x0 for i in range(Q.n) if i != base_index)
    return AugIdealBasis(base_index, vecs)


def delta_square_is_zero(Q: FiniteQuandle, ring: CoefficientRing = Z) -> bool:
    vecs = aug_ideal_basis(Q, ring).vectors
    return all(ring_mul(a, b).is_zero() for a in vecs for b in vecs)


# ---------------------------------------------------------------------------
# literals


def _fmt_coeff(R, a):
    return str(a)


def _fmt_term(R, a, label, first):
    neg = R.kind != "zmod" and a < 0
    mag = -a if neg else a
    body = label if mag == 1 else f"{_fmt_coeff(R, mag)}*{label}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def format_element(u: RingElement) -> str:
    """Canonical form in ascending basis order, e.g. ``2*a0 - a1 + 3*a2``; ``0`` if empty."""
    parts = []
    for i, a in u.items():
        parts.append(_fmt_term(u.ring, a, u.quandle.labels[i], first=not parts))
    return "".join(parts) or "0"


_COEF = r"(?:\(\s*-?\d+\s+mod\s+\d+\s*\)|\d+(?:/\d+)?)"
_TERM_RE = re.compile(r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>" + _COEF + r")\s*(?P<star>\*)?\s*)?"
                      r"(?P<label>[A-Za-z_][A-Za-z0-9_]*)?\s*")


def parse_element(text: str, Q: FiniteQuandle, ring: CoefficientRing = Z) -> RingElement:
    """Parse ``2*a0 - a1 + 3*a2``, ``1/2*x0``, ``(3 mod 5)*a1``, ``0`` or dense ``[2,-1,3]``."""
    s = text.strip()
    if not s:
        raise ParseError("empty ring element literal")
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unterminated dense vector {text!r}")
        inner = s[1:-1].strip()
        toks = [t for t in inner.split(",")] if inner else []
        if len(toks) != Q.n:
            raise ParseError(f"dense vector needs {Q.n} entries, got {len(toks)}")
        return RingElement.from_dense(Q, ring, [ring.parse_scalar(t) for t in toks])
    coeffs = []
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {s[pos:]!r} in {text!r}")
        sign, coef, star, label = m.group("sign", "coef", "star", "label")
        if not first and sign is None:
            raise ParseError(f"missing '+' or '-' before {s[pos:]!r}")
        if label is None:
            if coef is None or star:
                raise ParseError(f"dangling term at {s[pos:]!r}")
            if ring.normalize(ring.parse_scalar(coef.strip("()"))) != ring.zero() or not first \
                    or m.end() != len(s):
                raise ParseError(f"bare constant {coef!r} is not a ring element")
            pos = m.end()
            first = False
            continue
        if coef is not None and not star:
            raise ParseError(f"missing '*' between {coef!r} and {label!r}")
        value = ring.parse_scalar(coef.strip("()")) if coef else ring.one()
        if sign == "-":
            value = ring.neg(value)
        coeffs.append((Q.index(label), value))
        pos = m.end()
        first = False
    return RingElement(Q, ring, coeffs)


def parse_elements(texts: Iterable[str], Q, ring=Z) -> list[RingElement]:
    return [parse_element(t, Q, ring) for t in texts]
