"""Commutators in quandle rings: the commutator subalgebra, explicit
single-commutator witnesses, and re-verifiable certificates.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field

from .coeffs import CoefficientRing, Z, solve_integer, span_basis
from .errors import BudgetExceeded, CertificateError, HypothesisFailed, ParseError
from .quandle import (
    FiniteQuandle,
    commutator_pairs,
    is_2transitive,
    is_commutative,
    is_strongly_non_commutative,
    is_trivial,
    make_cs4,
    make_dihedral,
    quandle_automorphisms,
)
from .ring import (
    RingElement,
    aug_ideal_basis,
    basis_elements,
    commutator,
    format_element,
    parse_element,
)

def commutator_subalgebra(Q: FiniteQuandle, ring: CoefficientRing = Z):
    """Additive basis of the subalgebra generated by all commutators.

    Starts from the span of [x_i, x_j] and adjoins products of current basis
    vectors in both orders until the span stops growing. By bilinearity these
    products span every product of subalgebra elements.
    """
    if Q.n > 8:
        raise BudgetExceeded("commutator closure is limited to n <= 8")
    X = basis_elements(Q, ring)
    gens = [commutator(a, b).dense() for a in X for b in X]
    L = span_basis(ring, Q.n, gens)
    while True:
        elems = [RingElement.from_dense(Q, ring, r) for r in L.rows]
        new = L
        for u in elems:
            for v in elems:
                new = new.insert((u * v).dense())
        if new.rows == L.rows:
            return L
        L = new


def delta_lattice(Q: FiniteQuandle, ring: CoefficientRing = Z):
    return span_basis(ring, Q.n, [e.dense() for e in aug_ideal_basis(Q, ring).vectors])


def contained_in_delta(Q: FiniteQuandle, ring: CoefficientRing = Z) -> bool:
    L = commutator_subalgebra(Q, ring)
    return all(ring.normalize(sum(r)) == 0 for r in L.rows)


# ---------------------------------------------------------------------------
# strongly non-commutative quandles


@dataclass
class DeltaEqualityCertificate:
    quandle: str
    method: str  # 'direct' or 'automorphism'
    witnesses: dict  # (x, y) -> (a, b) with ab = x and ba = y

    def check(self, Q: FiniteQuandle) -> bool:
        return all(Q.mul(a, b) == x and Q.mul(b, a) == y for (x, y), (a, b) in self.witnesses.items())


def strongly_noncomm_delta_equality(Q: FiniteQuandle) -> DeltaEqualityCertificate:
    """Witness x - y = [a, b] for every ordered pair x != y, so that Delta is
    spanned by commutators."""
    if Q.n < 2:
        raise HypothesisFailed(f"{Q.name}: order < 2")
    pairs = {xy: ab for xy, ab in commutator_pairs(Q).items() if xy[0] != xy[1]}
    if is_strongly_non_commutative(Q):
        wit = {xy: pairs[xy] for xy in sorted(pairs)}
        return DeltaEqualityCertificate(Q.name, "direct", wit)
    if is_commutative(Q):
        raise HypothesisFailed(f"{Q.name} is commutative")
    if not is_2transitive(Q):
        raise HypothesisFailed(f"{Q.name} is neither strongly non-commutative nor 2-transitive")
    (p, q), (a0, b0) = min(pairs.items())
    auts = quandle_automorphisms(Q)
    wit = {}
    for x, y in itertools.permutations(range(Q.n), 2):
        f = next(f for f in auts if f[p] == x and f[q] == y)
        wit[x, y] = (f[a0], f[b0])
    return DeltaEqualityCertificate(Q.name, "automorphism", wit)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class CommutatorCertificate:
    quandle: FiniteQuandle
    ring: CoefficientRing
    element: RingElement
    terms: list = field(default_factory=list)  # (scalar, left, right)

    @property
    def length(self) -> int:
        return len(self.terms)

    def evaluate(self) -> RingElement:
        total = RingElement.zero(self.quandle, self.ring)
        for s, a, b in self.terms:
            total = total + commutator(a, b).scale(s)
        return total

    def verify(self) -> bool:
        return self.evaluate() == self.element

    def _body(self) -> list[str]:
        lines = [f"element = {format_element(self.element)}", f"length = {self.length}"]
        for s, a, b in self.terms:
            lines.append(f"term = {s} | {format_element(a)} | {format_element(b)}")
        return lines

    def serialize(self) -> str:
        Q = self.quandle
        head = [
            "# commutator certificate",
            f"quandle = {Q.name or 'unnamed'}",
            f"labels = {' '.join(Q.labels)}",
            "table = " + " | ".join(" ".join(str(v) for v in row) for row in Q.table),
            f"ring = {self.ring}",
        ]
        body = self._body()
        return "\n".join(head + body + [f"sha256 = {_digest(body)}"]) + "\n"


def _digest(lines) -> str:
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def _parse_one(block: list[str]) -> CommutatorCertificate:
    kv = []
    for line in block:
        if not line.strip() or line.startswith("#"):
            continue
        if " = " not in line:
            raise CertificateError(f"malformed line {line!r}")
        k, v = line.split(" = ", 1)
        kv.append((k, v, line))
    keys = [k for k, _, _ in kv]
    for need in ("labels", "table", "ring", "element", "length", "sha256"):
        if keys.count(need) != 1:
            raise CertificateError(f"certificate needs exactly one {need!r} line")
    get = {k: v for k, v, _ in kv}
    body = [line for k, _, line in kv if k in ("element", "length", "term")]
    if _digest(body) != get["sha256"]:
        raise CertificateError("digest mismatch: decomposition lines were altered")
    try:
        from .quandle import verify_quandle
        labels = get["labels"].split()
        table = [[int(t) for t in row.split()] for row in get["table"].split("|")]
        Q = verify_quandle(table, labels, get.get("quandle", ""))
        R = CoefficientRing.parse(get["ring"])
        u = parse_element(get["element"], Q, R)
        terms = []
        for k, v, _ in kv:
            if k != "term":
                continue
            parts = [p.strip() for p in v.split("|")]
            if len(parts) != 3:
                raise CertificateError(f"term needs 3 fields: {v!r}")
            terms.append((R.parse_scalar(parts[0]), parse_element(parts[1], Q, R), parse_element(parts[2], Q, R)))
        length = int(get["length"])
    except (ParseError, ValueError) as exc:
        raise CertificateError(str(exc)) from exc
    cert = CommutatorCertificate(Q, R, u, terms)
    if length != cert.length:
        raise CertificateError(f"claimed length {length} but {cert.length} terms")
    return cert


def parse_certificates(text: str) -> list[CommutatorCertificate]:
    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            if cur:
                blocks.append(cur)
            cur = []
        else:
            cur.append(line)
    if any(l.strip() for l in cur):
        blocks.append(cur)
    if not blocks:
        raise CertificateError("no certificate found")
    return [_parse_one(b) for b in blocks]


def verify_certificate(text: str) -> list[CommutatorCertificate]:
    """Parse and re-evaluate every certificate; raises CertificateError on any failure."""
    certs = parse_certificates(text)
    for i, c in enumerate(certs):
        if not c.verify():
            raise CertificateError(f"certificate {i}: decomposition evaluates to "
                                   f"{format_element(c.evaluate())}, not {format_element(c.element)}")
    return certs


def serialize_certificates(certs) -> str:
    return "---\n".join(c.serialize() for c in certs)


# ---------------------------------------------------------------------------
# commutator width one: explicit witnesses


def _which(Q: FiniteQuandle) -> str:
    if is_trivial(Q):
        return "trivial"
    if Q.same_table(make_dihedral(4)):
        return "R4"
    if Q.same_table(make_cs4()):
        return "Cs4"
    raise HypothesisFailed(f"no single-commutator construction for {Q.name}")


def single_commutator_witness(u: RingElement) -> tuple:
    """(v, w) with [v, w] = u for u in the commutator subalgebra of T_n, R4 or Cs4."""
    Q, R = u.quandle, u.ring
    kind = _which(Q)
    x = basis_elements(Q, R)
    e = aug_ideal_basis(Q, R).vectors
    c = aug_ideal_basis(Q, R).coordinates(u)
    if kind == "trivial":
        v = x[0] + sum((e[i].scale(c[i]) for i in range(len(e))), RingElement.zero(Q, R))
        return v, x[0]
    if kind == "R4":
        al, be, ga = c
        return x[2], x[0].scale(be) - x[1].scale(ga) - x[3].scale(al)
    g1, g2 = c
    return x[0] + e[0].scale(g1 + g2) + e[1].scale(g2), x[0]


@dataclass
class CwCertificate:
    quandle: str
    certificates: list
    nonzero_commutator: tuple  # (a, b, [a, b]) showing cw >= 1

    @property
    def samples(self):
        return len(self.certificates)

    def all_verified(self) -> bool:
        return all(c.verify() and c.length == 1 for c in self.certificates)


def cw_certificate(Q: FiniteQuandle, samples: int = 100, seed: int = 0,
                   ring: CoefficientRing = Z) -> CwCertificate:
    """Single-commutator certificates for random elements of the commutator subalgebra."""
    _which(Q)
    if is_commutative(Q):
        raise HypothesisFailed(f"{Q.name} is commutative: the commutator subalgebra is 0")
    L = commutator_subalgebra(Q, ring)
    rng = random.Random(seed)
    certs = []
    for _ in range(samples):
        coeffs = [rng.randint(-5, 5) for _ in L.rows]
        vec = [sum(a * row[i] for a, row in zip(coeffs, L.rows)) for i in range(Q.n)]
        u = RingElement.from_dense(Q, ring, vec)
        v, w = single_commutator_witness(u)
        cert = CommutatorCertificate(Q, ring, u, [(1, v, w)])
        if not cert.verify():
            raise CertificateError(f"witness failed for {format_element(u)}")
        certs.append(cert)
    _, (a, b) = min((xy, ab) for xy, ab in commutator_pairs(Q).items() if xy[0] != xy[1])
    A, B = basis_elements(Q, ring)[a], basis_elements(Q, ring)[b]
    return CwCertificate(Q.name, certs, (A, B, commutator(A, B)))


# ---------------------------------------------------------------------------
# exact commutator length within a box


@dataclass
class ClResult:
    length: int | None  # None: no decomposition within the bounds
    terms: list
    max_len: int
    bound: int

    @property
    def note(self):
        if self.length is None:
            return f"no decomposition of length <= {self.max_len} within coefficient bound {self.bound}"
        return f"minimum within bounds (length <= {self.max_len}, coefficients in [-{self.bound}, {self.bound}])"


def _box(Q, ring, B):
    for vec in itertools.product(range(-B, B + 1), repeat=Q.n):
        yield RingElement.from_dense(Q, ring, vec)


def cl_exact_small(u: RingElement, max_len: int = 2, bound: int = 1, budget: int = 10**6) -> ClResult:
    """Shortest sum of scaled commutators [v, w] (entries, scalars in [-B, B]) equal to u."""
    if max_len > 2:
        raise ValueError("exact search is limited to length <= 2")
    Q, R = u.quandle, u.ring
    if u.is_zero():
        return ClResult(0, [], max_len, bound)
    if (2 * bound + 1) ** (2 * Q.n) > budget:
        raise BudgetExceeded(f"(2*{bound}+1)^{2 * Q.n} pairs exceed budget {budget}")
    box = sorted(_box(Q, R, bound), key=lambda v: (sum(abs(a) for a in v.dense()), v.sort_key()))
    weight = {v: sum(abs(a) for a in v.dense()) for v in box}
    # smallest witnesses first: pairs ordered by total coefficient size
    pairs = sorted(((v, w) for v in box for w in box), key=lambda p: weight[p[0]] + weight[p[1]])
    table = {}
    for v, w in pairs:
        c = commutator(v, w)
        if not c.is_zero() and c not in table:
            table[c] = (v, w)
    scalars = sorted((s for s in range(-bound, bound + 1) if s), key=lambda s: (abs(s), s < 0))
    for s in scalars:
        for c, (v, w) in table.items():
            if c.scale(s) == u:
                return ClResult(1, [(s, v, w)], max_len, bound)
    if max_len >= 2:
        for s1 in scalars:
            for c1, (v1, w1) in table.items():
                rest = u - c1.scale(s1)
                for s2 in scalars:
                    for c2, (v2, w2) in table.items():
                        if c2.scale(s2) == rest:
                            return ClResult(2, [(s1, v1, w1), (s2, v2, w2)], max_len, bound)
    return ClResult(None, [], max_len, bound)


def single_commutator_search(u: RingElement, bound: int = 1):
    """[v, w] = u with w in the box and v any integer vector (solved exactly), or None."""
    Q = u.quandle
    if u.ring.kind != "z":
        raise ValueError("integer coefficients only")
    X = basis_elements(Q, Z)
    for w in _box(Q, Z, bound):
        if w.is_zero():
            continue
        cols = [commutator(x, w).dense() for x in X]
        M = [[cols[j][i] for j in range(Q.n)] for i in range(Q.n)]
        sol = solve_integer(M, u.dense())
        if sol is not None:
            return RingElement.from_dense(Q, Z, sol), w
    return None


@dataclass
class CwBounds:
    quandle: str
    lower: int
    upper: int | None
    hypothesis: str
    tried: int = 0
    single_hits: int = 0

    @property
    def width_one_on_samples(self) -> bool:
        return self.tried > 0 and self.single_hits == self.tried


def cw_bounds(Q: FiniteQuandle, samples: int = 50, seed: int = 0, bound: int = 1) -> CwBounds:
    """1 <= cw <= n-1 for non-commutative quandles with strongly non-commutative or
    2-transitive structure, plus a single-commutator search on random Delta elements."""
    if is_commutative(Q):
        return CwBounds(Q.name, 0, 0, "commutative")
    if is_strongly_non_commutative(Q):
        hyp = "strongly non-commutative"
    elif is_2transitive(Q):
        hyp = "non-commutative with 2-transitive automorphism group"
    else:
        return CwBounds(Q.name, 1, None, "no upper bound available")
    out = CwBounds(Q.name, 1, Q.n - 1, hyp)
    rng = random.Random(seed)
    D = aug_ideal_basis(Q, Z)
    for _ in range(samples):
        u = D.combine([rng.randint(-5, 5) for _ in D.vectors])
        out.tried += 1
        if u.is_zero() or single_commutator_search(u, bound) is not None:
            out.single_hits += 1
    return out
