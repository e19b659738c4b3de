"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a violated expectation
(``--expect-count`` mismatch or a failed check).
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .coeffs import CoefficientRing, QQ
from .errors import CertificateError, QuandleKitError
from .quandle import (
    cyclic_group,
    format_quandle,
    make_alex,
    make_conj,
    make_core,
    make_cs4,
    make_dihedral,
    make_trivial,
    multiplication_automorphism,
    predicates,
    symmetric_group,
    write_quandle_file,
)
from .ring import format_element

EXIT_OK, EXIT_USAGE, EXIT_EXPECT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    """Ordered key/value lines; lists become repeated keys."""

    def __init__(self):
        self.items: list[tuple[str, str]] = []
        self.count: int | None = None
        self.failed = False

    def add(self, key, value):
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.items.append((key, str(value)))

    def extend(self, key, values):
        for v in values:
            self.add(key, v)

    def render(self, fmt: str) -> str:
        sep = " = " if fmt == "kv" else ": "
        return "".join(f"{k}{sep}{v}\n" for k, v in self.items)


def _ring(args) -> CoefficientRing:
    return CoefficientRing.parse(args.ring)


def _quandle(args):
    if not args.quandle:
        raise UsageError("--quandle is required")
    return catalog.resolve_quandle(args.quandle)


def _elements(rep, key, elems):
    rep.extend(key, [format_element(u) for u in elems])


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args, rep):
    Q = _quandle(args)
    rep.add("quandle", Q.name or args.quandle)
    rep.add("order", Q.n)
    rep.add("axioms", "Q1 Q2 Q3 hold")
    rep.add("labels", " ".join(Q.labels))
    rep.count = Q.n


def _make(args):
    kind, n = args.kind, args.n
    if kind is None:
        return _quandle(args)
    if kind == "trivial":
        return make_trivial(n)
    if kind == "dihedral":
        return make_dihedral(n)
    if kind == "cs4":
        return make_cs4()
    if kind == "conj-s":
        return make_conj(symmetric_group(n))
    if kind == "core-z":
        return make_core(cyclic_group(n))
    if kind == "alex-z":
        return make_alex(cyclic_group(n), multiplication_automorphism(n, args.c))
    raise UsageError(f"unknown kind {kind!r}")


def cmd_make(args, rep):
    Q = _make(args)
    if args.out:
        write_quandle_file(Q, args.out)
        rep.add("written", args.out)
    else:
        rep.add("table", format_quandle(Q).strip().replace("\n", " / "))
    rep.add("order", Q.n)
    rep.count = Q.n


def cmd_predicates(args, rep):
    Q = _quandle(args)
    p = predicates(Q)
    rep.add("quandle", Q.name)
    for field_name in ("trivial", "latin", "semi_latin", "involutary", "commutative",
                       "strongly_non_commutative", "connected"):
        rep.add(field_name.replace("_", "-"), getattr(p, field_name))


def cmd_idempotents(args, rep):
    from .idempotents import family_covers_box, get_family, idempotents_box, idempotents_modular, nonzero
    Q = _quandle(args)
    R = _ring(args)
    budget = args.budget or 10**7
    if R.kind == "z":
        idem = idempotents_box(Q, args.bound, budget)
        rep.add("search", f"box |coefficient| <= {args.bound}")
    elif R.kind == "zmod":
        idem = idempotents_modular(Q, R.modulus, budget)
        rep.add("search", f"all of Z/{R.modulus}[{Q.name}]")
    else:
        raise UsageError("idempotents needs --ring z or zmod:<m>")
    nz = nonzero(idem)
    rep.add("quandle", Q.name)
    rep.add("ring", R)
    rep.add("count", len(nz))
    rep.add("count-with-zero", len(idem))
    _elements(rep, "idempotent", nz)
    if R.kind == "z":
        try:
            fam = get_family(Q.name)
        except KeyError:
            fam = None
        if fam is not None:
            cover = family_covers_box(fam, args.bound, idem)
            rep.add("family", fam.name)
            rep.add("family-covers-box", cover.covered)
    rep.count = len(nz)


def cmd_maximal_quandles(args, rep):
    from .idempotents import idempotents_box, idempotents_modular, nonzero
    from .substructures import ZERO_NOTE, maximal_quandles_finite
    Q = _quandle(args)
    R = _ring(args)
    if R.kind == "z":
        idem = nonzero(idempotents_box(Q, args.bound))
    elif R.kind == "zmod":
        idem = idempotents_modular(Q, R.modulus)
    else:
        raise UsageError("maximal-quandles needs --ring z or zmod:<m>")
    mq = maximal_quandles_finite(idem, budget=args.budget or 20)
    rep.add("quandle", Q.name)
    rep.add("ring", R)
    rep.add("note", ZERO_NOTE)
    rep.add("count", len(mq))
    for S in mq:
        tag = ",".join(S.iso_tags) or "-"
        rep.add("maximal-quandle", "{" + ", ".join(format_element(u) for u in S.elements) + "} iso " + tag)
    rep.count = len(mq)


def cmd_automorphisms(args, rep):
    from .ring_auto import automorphism_report, group_order_small
    Q = _quandle(args)
    r = automorphism_report(Q, args.bound, args.budget or 10**7)
    rep.add("quandle", Q.name)
    rep.add("note", r.note)
    rep.add("count", len(r.matrices))
    rep.add("inverse-closed", r.inverse_closed)
    rep.add("boundary-truncated", len(r.truncated))
    for M in r.matrices:
        rep.add("matrix", " ; ".join(" ".join(str(x) for x in row) for row in M))
    g = group_order_small(r.matrices)
    rep.add("closure-order", "exceeds cap" if g.exceeded else g.order)
    rep.count = len(r.matrices)


def cmd_commutators(args, rep):
    from .commutators import commutator_subalgebra, contained_in_delta, delta_lattice
    Q = _quandle(args)
    R = _ring(args)
    L = commutator_subalgebra(Q, R)
    rep.add("quandle", Q.name)
    rep.add("ring", R)
    rep.add("rank", L.rank)
    rep.add("equals-delta", L.rows == delta_lattice(Q, R).rows)
    rep.add("contained-in-delta", contained_in_delta(Q, R))
    rep.extend("basis", [" ".join(map(str, r)) for r in L.rows])
    rep.count = L.rank


def cmd_cw(args, rep):
    from .commutators import cw_certificate, serialize_certificates
    Q = _quandle(args)
    c = cw_certificate(Q, args.samples, args.seed, _ring(args))
    ok = c.all_verified()
    rep.add("quandle", Q.name)
    rep.add("samples", c.samples)
    rep.add("verified", ok)
    a, b, ab = c.nonzero_commutator
    rep.add("nonzero-commutator", f"[{format_element(a)}, {format_element(b)}] = {format_element(ab)}")
    rep.add("cw", 1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(serialize_certificates(c.certificates))
        rep.add("certificates", args.out)
    rep.failed = not ok
    rep.count = c.samples


def cmd_order(args, rep):
    from .order_zero import find_order
    Q = _quandle(args)
    rep.add("quandle", Q.name)
    for side in ("right", "left") if args.side == "both" else (args.side,):
        o = find_order(Q, side)
        rep.add(f"{side}-order", o.chain(list(Q.labels)) if o else "none (exhausted)")


def _parse_set(text, Q):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if Q is None:
            out.append(int(tok))
        else:
            out.append(Q.index(tok) if not tok.lstrip("-").isdigit() else int(tok))
    return out


def cmd_unique_products(args, rep):
    from .order_zero import unique_products
    if not args.quandle:
        raise UsageError("--quandle is required")
    try:
        kind = catalog.entry(args.quandle).kind
    except QuandleKitError:
        kind = "finite"
    if kind == "free":
        raise UsageError("unique-products takes integers or labels; free quandles are sampled in tests")
    obj = catalog.get(args.quandle) if kind == "integer" else catalog.resolve_quandle(args.quandle)
    finite = kind == "finite"
    if args.A is None or args.B is None:
        raise UsageError("--A and --B are required")
    A = _parse_set(args.A, obj if finite else None)
    B = _parse_set(args.B, obj if finite else None)
    r = unique_products(obj, A, B)
    show = (lambda x: obj.labels[x]) if finite else str
    rep.add("quandle", obj.name)
    for k, reps in r.products.items():
        rep.add("product", f"{show(k)} <- " + " ".join(f"({show(a)},{show(b)})" for a, b in reps))
    rep.add("unique", " ".join(show(k) for k in r.unique))
    rep.add("up", r.up)
    rep.add("tup", r.tup)
    if r.a_max:
        rep.add("a-max", f"{r.a_max[0]}*{r.a_max[1]} = {r.a_max[2]}")
    if r.a_min:
        rep.add("a-min", f"{r.a_min[0]}*{r.a_min[1]} = {r.a_min[2]}")
    rep.count = len(r.unique)


def cmd_zero_divisor(args, rep):
    from .order_zero import zero_divisor_witness
    Q = _quandle(args)
    w = zero_divisor_witness(Q, _ring(args), args.strategy)
    rep.add("quandle", Q.name)
    if w is None:
        rep.add("result", "no witness found (not a proof of absence)")
        rep.count = 0
        return
    rep.add("strategy", w.strategy)
    rep.add("u", format_element(w.u))
    rep.add("v", format_element(w.v))
    rep.add("uv", format_element(w.u * w.v))
    rep.add("verified", w.verify())
    rep.failed = not w.verify()
    rep.count = 1


def cmd_identities(args, rep):
    from .nonassoc import DerivedAlgebra, check_identity, power_associative_witness
    Q = _quandle(args)
    alg = DerivedAlgebra(Q, _ring(args), args.kind)
    rep.add("quandle", Q.name)
    rep.add("algebra", alg.kind)
    names = args.identity or ["associative", "left-alternative", "right-alternative", "elastic", "jordan",
                              "power-associative"]
    for name in names:
        if name == "power-associative":
            w = power_associative_witness(alg)
            if w is None:
                rep.add(name, "no witness within box 4")
            else:
                rep.add(name, f"fails: {w.probe} at x = {format_element(w.x)}: "
                              f"{format_element(w.lhs)} != {format_element(w.rhs)}")
            continue
        r = check_identity(alg, name, args.mode, trials=args.samples, seed=args.seed)
        if r.holds:
            rep.add(name, f"holds: {r.note}")
        else:
            args_txt = ", ".join(format_element(u) for u in r.counterexample)
            rep.add(name, f"fails at ({args_txt}): {format_element(r.lhs)} != {format_element(r.rhs)}")


def cmd_lie_analysis(args, rep):
    from .nonassoc import trivial_quandle_lie_analysis
    R = CoefficientRing.parse(args.ring) if args.ring != "z" else QQ
    a = trivial_quandle_lie_analysis(args.n, R)
    rep.add("n", a.n)
    rep.add("ring", a.ring)
    rep.add("L2-rank", a.L2_rank)
    _elements(rep, "L2-basis", a.L2_basis)
    rep.add("L2-equals-L3", a.L2_equals_L3)
    rep.add("L2-squared-zero", a.L2_squared_zero)
    rep.add("J2-equals-J", "n/a (2 not invertible)" if a.J2_equals_J is None else a.J2_equals_J)
    rep.count = a.L2_rank


def cmd_verify_certificate(args, rep):
    from .commutators import verify_certificate
    with open(args.path) as fh:
        text = fh.read()
    try:
        certs = verify_certificate(text)
    except CertificateError as exc:
        # a rejected certificate is a failed check, not an input error
        rep.add("verified", False)
        rep.add("reason", exc)
        rep.failed = True
        return
    rep.add("certificates", len(certs))
    rep.add("verified", True)
    rep.count = len(certs)


def cmd_list_catalog(args, rep):
    for e in catalog.ENTRIES:
        rep.add(e.name, f"order {catalog.order_of(e)}; {e.note}")
    rep.count = len(catalog.ENTRIES)


COMMANDS = {
    "verify": cmd_verify,
    "make": cmd_make,
    "predicates": cmd_predicates,
    "idempotents": cmd_idempotents,
    "maximal-quandles": cmd_maximal_quandles,
    "automorphisms": cmd_automorphisms,
    "commutators": cmd_commutators,
    "cw": cmd_cw,
    "order": cmd_order,
    "unique-products": cmd_unique_products,
    "zero-divisor": cmd_zero_divisor,
    "identities": cmd_identities,
    "lie-analysis": cmd_lie_analysis,
    "verify-certificate": cmd_verify_certificate,
    "list-catalog": cmd_list_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--quandle", help="catalog name or path to a table file")
    common.add_argument("--ring", default="z", help="z, q or zmod:<m>")
    common.add_argument("--bound", type=int, default=2)
    common.add_argument("--budget", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--expect-count", type=int)
    common.add_argument("--out")
    common.add_argument("--format", choices=("text", "kv"), default="text")
    common.add_argument("--samples", type=int, default=100)

    p = _Parser(prog="quandlekit", description="exact computations in quandle rings")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in COMMANDS:
        sp = sub.add_parser(verb, parents=[common])
        if verb == "make":
            sp.add_argument("--kind", choices=("trivial", "dihedral", "cs4", "conj-s", "core-z", "alex-z"))
            sp.add_argument("--n", type=int, default=3)
            sp.add_argument("--c", type=int, default=2)
        elif verb == "order":
            sp.add_argument("--side", choices=("right", "left", "both"), default="both")
        elif verb == "unique-products":
            sp.add_argument("--A")
            sp.add_argument("--B")
        elif verb == "zero-divisor":
            sp.add_argument("--strategy", default="auto",
                            choices=("auto", "trivial-subquandle", "finite-subquandle", "not-semi-latin", "inert"))
        elif verb == "identities":
            sp.add_argument("--identity", action="append",
                            choices=("associative", "left-alternative", "right-alternative", "elastic",
                                     "jordan", "lie-jacobi", "anticommutative", "power-associative"))
            sp.add_argument("--kind", choices=("raw", "minus", "plus"), default="raw")
            sp.add_argument("--mode", choices=("auto", "basis", "random"), default="auto")
        elif verb == "lie-analysis":
            sp.add_argument("--n", type=int, default=4)
        elif verb == "verify-certificate":
            sp.add_argument("path")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = Report()
    try:
        COMMANDS[args.verb](args, rep)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuandleKitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(rep.render(args.format))
    if args.expect_count is not None and rep.count != args.expect_count:
        print(f"expectation failed: count {rep.count} != {args.expect_count}", file=sys.stderr)
        return EXIT_EXPECT
    return EXIT_EXPECT if rep.failed else EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
