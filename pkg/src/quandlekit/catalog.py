"""Named quandles used throughout the toolkit. Lookups are case-insensitive."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import UnknownName
from .infinite import FreeQuandle, IntQuandle
from .quandle import (
    cyclic_group,
    make_alex,
    make_conj,
    make_core,
    make_cs4,
    make_dihedral,
    make_trivial,
    multiplication_automorphism,
    symmetric_group,
    verify_quandle,
    FiniteQuandle,
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable
    note: str
    kind: str = "finite"  # finite | integer | free


def _renamed(Q: FiniteQuandle, name: str) -> FiniteQuandle:
    return FiniteQuandle(Q.table, Q.labels, name)


def _entries():
    out = []
    for n in range(1, 7):
        out.append(CatalogEntry(f"T{n}", lambda n=n: make_trivial(n),
                                f"trivial quandle on {n} element{'s' * (n > 1)}, x*y = x"))
    for n in range(3, 7):
        out.append(CatalogEntry(f"R{n}", lambda n=n: make_dihedral(n),
                                f"dihedral quandle a_i*a_j = a_(2j-i mod {n})"))
    out.append(CatalogEntry("Cs4", make_cs4, "3-element singular cyclic quandle"))
    out.append(CatalogEntry("Conj(S3)", lambda: _renamed(make_conj(symmetric_group(3)), "Conj(S3)"),
                            "conjugation quandle b^-1 a b of the symmetric group on 3 letters"))
    out.append(CatalogEntry("Core(Z5)", lambda: _renamed(make_core(cyclic_group(5)), "Core(Z5)"),
                            "core quandle b a^-1 b of Z5"))
    out.append(CatalogEntry(
        "Alex(Z5,2)",
        lambda: _renamed(make_alex(cyclic_group(5), multiplication_automorphism(5, 2)), "Alex(Z5,2)"),
        "Alexander quandle phi(a b^-1) b of Z5 with phi = multiplication by 2"))
    out.append(CatalogEntry("CoreZ", lambda: IntQuandle("core"), "core quandle of Z, a*b = 2b - a",
                            "integer"))
    out.append(CatalogEntry("AlexZ(-1)", lambda: IntQuandle("alex", -1),
                            "Alexander quandle of Z with phi = negation", "integer"))
    for r in range(1, 4):
        out.append(CatalogEntry(f"FQ{r}", lambda r=r: FreeQuandle(r), f"free quandle of rank {r}",
                                "free"))
    return out


ENTRIES = tuple(_entries())
_BY_KEY = {e.name.lower(): e for e in ENTRIES}


def entry(name: str) -> CatalogEntry:
    key = name.strip().lower().replace(" ", "")
    try:
        return _BY_KEY[key]
    except KeyError:
        raise UnknownName(f"unknown catalog name {name!r}") from None


def get(name: str):
    return entry(name).build()


def finite_names(max_order: int | None = None) -> list[str]:
    names = []
    for e in ENTRIES:
        if e.kind != "finite":
            continue
        if max_order is not None and len(e.build()) > max_order:
            continue
        names.append(e.name)
    return names


def finite_quandles(max_order: int | None = None) -> list[FiniteQuandle]:
    return [get(n) for n in finite_names(max_order)]


def order_of(e: CatalogEntry) -> str:
    if e.kind == "finite":
        return str(len(e.build()))
    return "inf"


def resolve_quandle(spec: str) -> FiniteQuandle:
    """A catalog name or a path to a quandle table file."""
    import os
    from .quandle import read_quandle_file
    try:
        obj = get(spec)
    except UnknownName:
        if os.path.exists(spec):
            return read_quandle_file(spec)
        raise
    if not isinstance(obj, FiniteQuandle):
        raise UnknownName(f"{spec!r} is not a finite quandle")
    return obj


__all__ = ["CatalogEntry", "ENTRIES", "entry", "get", "finite_names", "finite_quandles",
           "resolve_quandle", "verify_quandle"]
