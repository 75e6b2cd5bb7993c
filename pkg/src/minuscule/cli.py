"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 enumeration bound exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .catalog import all_entries, entry, propeller, rectangle, shifted_staircase
from .csp import verify_csp
from .errors import CapacityError
from .heap import (
    bipartite_ordering, coxeter_toggle_word, generator_orderings, heap_to_dot, heap_to_text,
    phi_table, verify_equivariance,
)
from .poset import Poset, chain, product, rank_generating_function, read_poset, to_dot, write_poset
from .qpoly import gaussian_product
from .toggle import IdealSpace, cycle_type, even_odd_word, orbit_structure

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_FAIL = 0, 1, 2, 3

# Orbit multisets of rowmotion on J(P x [m]) for the two exceptional posets
TABLE1 = {
    ("E6", 1): {12: 2, 3: 1},
    ("E6", 2): {13: 27},
    ("E7", 1): {18: 3, 2: 1},
    ("E7", 2): {19: 77},
}

SAMPLE_THRESHOLD = 720
SAMPLE_SIZE = 100


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- helpers -------------------------------------------------------------------

def _dims(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected JxL, got {text!r}") from None
    return a, b


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _ordering(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated nodes, got {text!r}") from None


def _source(args) -> tuple[str, Poset]:
    if args.catalog:
        e = entry(args.catalog)
        return e.name, e.poset
    if args.poset:
        try:
            with open(args.poset) as fh:
                return args.poset, read_poset(fh.read())
        except OSError as exc:
            raise UsageError(str(exc)) from None
    if args.rectangle:
        j, l = args.rectangle
        return f"[{j}]x[{l}]", rectangle(j, l)
    if args.staircase:
        return f"staircase({args.staircase})", shifted_staircase(args.staircase)
    return f"propeller({args.propeller})", propeller(args.propeller)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _space(P: Poset, m: int, limit: Optional[int]) -> tuple[Poset, IdealSpace]:
    Q = product(P, chain(m))
    return Q, IdealSpace(Q, limit)


def _sieving_polynomial(P: Poset, Q: Poset, m: int, limit: Optional[int]):
    """Product formula when it matches enumeration, else the enumerated polynomial."""
    brute = rank_generating_function(Q, limit)
    try:
        formula = gaussian_product(P, m)
    except (ValueError, ArithmeticError):
        return brute, "enumerated"
    return (formula, "product formula") if formula == brute else (brute, "enumerated")


# -- commands ------------------------------------------------------------------

def cmd_orbits(args) -> int:
    name, P = _source(args)
    Q, space = _space(P, args.m, args.max_ideals)
    o = orbit_structure(Q, space=space)
    if args.format == "json":
        doc = {"poset": name, "m": args.m, **o.to_dict()}
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "count"])
        for length, cnt in sorted(o.multiset.items()):
            w.writerow([length, cnt])
        text = buf.getvalue()
    else:
        text = f"{name} x [{args.m}]: {o.size} ideals\n{o.summary()}, order {o.order}\n"
        if args.list:
            text += o.to_lines()
    _emit(args, text)
    return EXIT_OK


def cmd_csp(args) -> int:
    name, P = _source(args)
    Q, space = _space(P, args.m, args.max_ideals)
    f, how = _sieving_polynomial(P, Q, args.m, args.max_ideals)
    report = verify_csp(orbit_structure(Q, space=space), f)
    if args.format == "json":
        doc = {"poset": name, "m": args.m, "polynomial": how, **report.to_dict()}
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "fixed", "evaluation", "ok"])
        for r in report.rows:
            w.writerow([r.d, r.fixed, str(r.value), int(r.ok)])
        text = buf.getvalue()
    else:
        text = f"{name} x [{args.m}], polynomial from {how}\n" + report.to_table()
    _emit(args, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def _orderings(rank: int, args) -> list[tuple[int, ...]]:
    if args.ordering:
        return [args.ordering]
    if not args.all_orderings:
        return []
    return generator_orderings(rank, exhaustive_limit=SAMPLE_THRESHOLD, sample=SAMPLE_SIZE,
                               seed=args.seed)


def cmd_equivariance(args) -> int:
    e = entry(args.catalog)
    h, pq = e.heap, e.quotient
    space = IdealSpace(h.poset, args.max_ideals)
    phis = phi_table(h, space)
    orderings = _orderings(h.rs.rank, args) or [bipartite_ordering(h)]
    failed = False
    lines, records = [], []
    for ordering in orderings:
        r = verify_equivariance(h, pq, ordering, space, phis)
        failed |= not r.ok
        rec = {"ordering": list(ordering), "checked": r.checked, "ok": r.ok}
        if not r.ok:
            rec["counterexample"] = r.counterexample[0]
        records.append(rec)
        lines.append(f"{','.join(map(str, ordering))}: {'pass' if r.ok else 'FAIL'} ({r.checked} ideals)")
    doc = {"entry": e.name, "orderings": records}
    if args.cycle_type:
        types = {"rowmotion": cycle_type(space.permutation(None)),
                 "even_odd": cycle_type(space.permutation(even_odd_word(h.poset)))}
        for ordering in orderings:
            ct = cycle_type(space.permutation(coxeter_toggle_word(h, ordering)))
            types[",".join(map(str, ordering))] = ct
        same = len({tuple(sorted(c.items())) for c in types.values()}) == 1
        failed |= not same
        doc["cycle_types_equal"] = same
        doc["rowmotion_cycle_type"] = {str(k): v for k, v in sorted(types["rowmotion"].items())}
        summary = " + ".join(f"{c} x {l}" for l, c in sorted(types["rowmotion"].items(), reverse=True))
        lines.append(f"cycle types {'equal' if same else 'DIFFER'}: {summary}")
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = f"{e.name}: {len(orderings)} ordering(s)\n" + "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_table1(args) -> int:
    rows, failed = [], False
    for which in ("E6", "E7"):
        P = entry(which).poset
        for m in range(1, args.m_max + 1):
            Q, space = _space(P, m, args.max_ideals)
            o = orbit_structure(Q, space=space)
            got = dict(o.multiset)
            expected = TABLE1.get((which, m))
            f, _ = _sieving_polynomial(P, Q, m, args.max_ideals)
            csp = verify_csp(o, f).passed
            match = None if expected is None else got == expected
            failed |= match is False or not csp
            rows.append({"poset": which, "m": m, "size": o.size, "order": o.order,
                         "orbits": o.summary(), "expected_match": match, "csp": csp})
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        out = []
        for r in rows:
            tag = {None: "no reference", True: "matches", False: "MISMATCH"}[r["expected_match"]]
            out.append(f"{r['poset']} m={r['m']}: {r['orbits']} (order {r['order']}, "
                       f"{r['size']} ideals) {tag}, csp {'pass' if r['csp'] else 'FAIL'}")
        text = "\n".join(out) + "\n"
    _emit(args, text)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = all_entries(args.max_rank)
        if args.format == "json":
            doc = [{"name": e.name, "family": e.family, "elements": e.poset.n,
                    "ideals": len(e.quotient), "duplicates": list(e.duplicates),
                    "heap_isomorphic": e.verified} for e in entries]
            text = json.dumps(doc, indent=2) + "\n"
        else:
            out = [f"{'name':<8}{'family':<11}{'|P|':>5}{'|J(P)|':>8}  heap"]
            for e in entries:
                dup = f"  (also weights {','.join(map(str, e.duplicates))})" if e.duplicates else ""
                out.append(f"{e.name:<8}{e.family:<11}{e.poset.n:>5}{len(e.quotient):>8}  "
                           f"{'ok' if e.verified else 'MISMATCH'}{dup}")
            text = "\n".join(out) + "\n"
        _emit(args, text)
        return EXIT_OK if all(e.verified for e in entries) else EXIT_FAIL
    if not args.name:
        raise UsageError("catalog export needs an entry name")
    e = entry(args.name)
    if args.heap:
        text = heap_to_dot(e.heap) if args.format == "dot" else heap_to_text(e.heap)
    else:
        text = to_dot(e.poset, "P") if args.format == "dot" else write_poset(e.poset)
    _emit(args, text)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--catalog", metavar="NAME", help="catalog entry such as A4:2 or E7")
    g.add_argument("--poset", metavar="FILE", help="poset in the text format")
    g.add_argument("--rectangle", metavar="JxL", type=_dims)
    g.add_argument("--staircase", metavar="N", type=_positive)
    g.add_argument("--propeller", metavar="N", type=int)


def _add_common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")
    p.add_argument("--max-ideals", type=_positive, default=None,
                   help="enumeration bound (default: $MINUSCULE_MAX_IDEALS or 10^7)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minuscule", description="Rowmotion, cyclic sieving and minuscule heaps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orbits", help="rowmotion orbits of J(P x [m])")
    _add_source(p)
    p.add_argument("--m", type=_positive, default=1)
    p.add_argument("--list", action="store_true", help="also print each orbit")
    _add_common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("csp", help="cyclic sieving check on J(P x [m])")
    _add_source(p)
    p.add_argument("--m", type=_positive, default=1)
    _add_common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_csp)

    p = sub.add_parser("equivariance", help="heap bijection versus Coxeter translation")
    p.add_argument("--catalog", metavar="NAME", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ordering", type=_ordering, help="comma-separated generator order")
    g.add_argument("--all-orderings", action="store_true",
                   help=f"every ordering, or {SAMPLE_SIZE} seeded samples past {SAMPLE_THRESHOLD}")
    p.add_argument("--cycle-type", action="store_true", help="compare cycle types with rowmotion")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_equivariance)

    p = sub.add_parser("table1", help="orbit table for the exceptional posets")
    p.add_argument("--m-max", type=_positive, default=2)
    _add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("catalog", help="list or export minuscule posets")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("name", nargs="?")
    p.add_argument("--max-rank", type=_positive, default=7)
    p.add_argument("--heap", action="store_true", help="export the labeled heap instead")
    _add_common(p, ("text", "json", "poset", "dot"))
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"minuscule: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, ValueError, IndexError) as exc:
        print(f"minuscule: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
