"""Infinite quandles: free quandles in the a^w normal form and integer rules.

A free quandle element a^w stands for the conjugate w^-1 a w of a generator
in the free group. Words are tuples of letters ``(generator, +1 | -1)``,
kept freely reduced, and the defining relation a^w = a^(aw) is applied by
stripping leading powers of the element's own generator.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .errors import DimensionMismatch, ParseError

Letter = tuple[int, int]


def free_reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_word(word) -> tuple[Letter, ...]:
    return tuple((g, -e) for g, e in reversed(word))


@dataclass(frozen=True)
class FreeQuandleElement:
    rank: int
    gen: int
    word: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not 0 <= self.gen < self.rank:
            raise ValueError(f"generator {self.gen} outside rank {self.rank}")
        w = free_reduce(self.word)
        i = 0
        while i < len(w) and w[i][0] == self.gen:
            i += 1
        object.__setattr__(self, "word", w[i:])

    def __str__(self):
        return format_fq(self)

    def sort_key(self):
        return (len(self.word), self.gen, self.word)


def _check_rank(x, y):
    if x.rank != y.rank:
        raise DimensionMismatch(f"free quandle ranks differ: {x.rank} vs {y.rank}")


def fq_multiply(x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
    """a^w * b^u = a^(w u^-1 b u)."""
    _check_rank(x, y)
    word = x.word + invert_word(y.word) + ((y.gen, 1),) + y.word
    return FreeQuandleElement(x.rank, x.gen, word)


def fq_right_divide(x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
    """The unique z with z * y == x: a^(w u^-1 b^-1 u)."""
    _check_rank(x, y)
    word = x.word + invert_word(y.word) + ((y.gen, -1),) + y.word
    return FreeQuandleElement(x.rank, x.gen, word)


def fq_equal(x: FreeQuandleElement, y: FreeQuandleElement) -> bool:
    _check_rank(x, y)
    return x.gen == y.gen and x.word == y.word


_FQ_RE = re.compile(r"^\s*a(\d+)\s*(?:\^\s*\[([^\]]*)\])?\s*$")


def parse_fq(text: str, rank: int) -> FreeQuandleElement:
    """Parse ``a2^[+0 -1 +0]``: generator 2 conjugated by x0 x1^-1 x0."""
    m = _FQ_RE.match(text)
    if not m:
        raise ParseError(f"bad free quandle literal {text!r}")
    gen = int(m.group(1))
    letters = []
    for tok in (m.group(2) or "").split():
        if len(tok) < 2 or tok[0] not in "+-" or not tok[1:].isdigit():
            raise ParseError(f"bad letter {tok!r} in {text!r}")
        g = int(tok[1:])
        if g >= rank:
            raise ParseError(f"letter {tok!r} outside rank {rank}")
        letters.append((g, 1 if tok[0] == "+" else -1))
    if gen >= rank:
        raise ParseError(f"generator a{gen} outside rank {rank}")
    return FreeQuandleElement(rank, gen, tuple(letters))


def format_fq(x: FreeQuandleElement) -> str:
    if not x.word:
        return f"a{x.gen}"
    body = " ".join(("+" if e > 0 else "-") + str(g) for g, e in x.word)
    return f"a{x.gen}^[{body}]"


def random_fq(rng: random.Random, rank: int, max_word_len: int) -> FreeQuandleElement:
    length = rng.randint(0, max_word_len)
    word = [(rng.randrange(rank), rng.choice((1, -1))) for _ in range(length)]
    return FreeQuandleElement(rank, rng.randrange(rank), tuple(word))


@dataclass
class SampleReport:
    trials: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def fq_semi_latin_sample(rank: int, trials: int, max_word_len: int, seed: int = 0) -> SampleReport:
    """Random triples with x != y; records any z*x == z*y."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    rng = random.Random(seed)
    report = SampleReport(0)
    if rank == 1:
        # FQ_1 has one element: no pair x != y exists
        return report
    while report.trials < trials:
        x = random_fq(rng, rank, max_word_len)
        y = random_fq(rng, rank, max_word_len)
        if fq_equal(x, y):
            continue
        z = random_fq(rng, rank, max_word_len)
        report.trials += 1
        if fq_equal(fq_multiply(z, x), fq_multiply(z, y)):
            report.violations.append((z, x, y))
    return report


# ---------------------------------------------------------------------------
# integer-indexed quandles


@dataclass(frozen=True)
class IntQuandle:
    """Quandle structure on Z: ``core`` (a*b = 2b - a) or ``alex`` (a*b = c a + (1-c) b)."""

    rule: str
    c: int = -1

    def __post_init__(self):
        if self.rule not in ("core", "alex"):
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.rule == "alex" and self.c not in (1, -1):
            # x -> c x + (1-c) b must be a bijection of Z (Q2)
            raise ValueError(f"alex rule needs c = 1 or -1, got {self.c}")
        rng = random.Random(12345)
        for _ in range(100):
            a, b, d = (rng.randint(-50, 50) for _ in range(3))
            if self.mul(a, a) != a or self.mul(self.mul(a, b), d) != self.mul(self.mul(a, d), self.mul(b, d)):
                raise ValueError(f"rule {self} fails Q1/Q3 at {(a, b, d)}")

    def mul(self, a: int, b: int) -> int:
        if self.rule == "core":
            return 2 * b - a
        return self.c * a + (1 - self.c) * b

    @property
    def name(self):
        return "CoreZ" if self.rule == "core" else f"AlexZ({self.c})"

    def __str__(self):
        return self.name


CORE_Z = IntQuandle("core")


def int_quandle_mul(q: IntQuandle, a: int, b: int) -> int:
    return q.mul(a, b)


def order_monotonicity_sample(q: IntQuandle, side: str, trials: int, seed: int = 0,
                              radius: int = 1000) -> SampleReport:
    """Check x < y => x*z < y*z (right) or z*x < z*y (left) on random triples.

    The fixed triple (0, 1, 0) is always tried first so a right-side failure of
    the core rule surfaces with the smallest witness.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    rng = random.Random(seed)
    report = SampleReport(0)

    def check(x, y, z):
        if side == "right":
            lo, hi = q.mul(x, z), q.mul(y, z)
        else:
            lo, hi = q.mul(z, x), q.mul(z, y)
        if not lo < hi:
            report.violations.append((x, y, z, lo, hi))

    triples = [(0, 1, 0)]
    while len(triples) < trials:
        x, y = rng.randint(-radius, radius), rng.randint(-radius, radius)
        if x == y:
            continue
        triples.append((min(x, y), max(x, y), rng.randint(-radius, radius)))
    for x, y, z in triples[:trials]:
        report.trials += 1
        check(x, y, z)
    return report


@dataclass(frozen=True)
class FreeQuandle:
    """FQ_rank viewed as a quandle object with a ``mul`` method."""

    rank: int

    def mul(self, x: FreeQuandleElement, y: FreeQuandleElement) -> FreeQuandleElement:
        return fq_multiply(x, y)

    def generator(self, i: int) -> FreeQuandleElement:
        return FreeQuandleElement(self.rank, i)

    @property
    def name(self):
        return f"FQ{self.rank}"
