"""Command line front end.

Every command reads and writes the JSON formats of :mod:`pentagon.serialize`.
Exit codes: 0 pass, 1 semantic failure, 2 oracle mismatch, 3 parse error,
4 range error, 5 axiom violation.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import serialize as io
from .brace import brace_to_matched_pair, brace_to_solution
from .classify import (
    BRUTE_FORCE_BOUND,
    ClassifiedSolution,
    ExtensionSpec,
    build_extension,
    classify_involutive,
    classify_order,
    decompose_solution,
    oracle_check,
    solution_iso,
    trivial_phi,
)
from .errors import PentagonError, RangeError
from .finalg import group_name, left_actions, right_actions
from .matched import construct_solution, extract_matched_pair
from .pesol import structure_report, verify_kashaev, verify_pe
from .retract import retract_solution

EXIT_FAIL = 1
EXIT_ORACLE = 2


def _emit(args, obj: dict, solution=None) -> None:
    if getattr(args, "output", None):
        io.write_json(args.output, obj)
    elif solution is not None and getattr(args, "format", "json") == "table":
        print(io.format_table(solution))
    else:
        sys.stdout.write(io.dumps(obj))


def _action_tag(action, pool) -> str:
    if action.is_trivial():
        return "triv"
    return f"id{pool.index(action)}"


def catalog_line(n: int, c: ClassifiedSolution) -> str:
    mp = c.mp
    sigma = _action_tag(mp.sigma, left_actions(mp.A, mp.G.order))
    delta = _action_tag(mp.delta, right_actions(mp.G, mp.A.order))
    return (f"n={n} x={c.descriptor.x_size} A={group_name(mp.A)} G={group_name(mp.G)} "
            f"sigma={sigma} delta={delta}")


def catalog_json(n: int, involutive: bool, catalog: list[ClassifiedSolution]) -> dict:
    return {
        "order": n,
        "involutive": involutive,
        "classes": [
            {
                "xSize": c.descriptor.x_size,
                "orderA": c.descriptor.order_a,
                "orderG": c.descriptor.order_g,
                "mpIndex": c.descriptor.mp_index,
                "A": group_name(c.mp.A),
                "G": group_name(c.mp.G),
                "matchedPair": io.matched_pair_to_json(c.mp),
                "representative": io.solution_to_json(c.representative),
            }
            for c in catalog
        ],
    }


# -- commands ---------------------------------------------------------------


def cmd_verify(args) -> int:
    s = io.load(args.file, io.solution_from_json)
    if args.format == "table":
        print(io.format_table(s))
    v = verify_pe(s)
    if not v:
        print(f"FAIL {v.law} at {v.witness}")
        k = verify_kashaev(s)
        for law, w in k.failures.items():
            print(f"  {law} fails at {w}")
        return EXIT_FAIL
    print("PASS pentagon equation")
    if args.structure:
        problems = structure_report(s)
        for p in problems:
            print(f"  structure: {p}")
        if problems:
            return EXIT_FAIL
    return 0


def cmd_construct(args) -> int:
    mp = io.load(args.matched_pair, io.matched_pair_from_json)
    if args.phi:
        spec = io.load(args.phi, io.extension_from_json)
        s = build_extension(spec)
    elif args.x_size is not None:
        if args.x_size < 1:
            raise RangeError("--x-size must be positive")
        s = build_extension(ExtensionSpec(mp, args.x_size, trivial_phi(mp, args.x_size)))
    else:
        s = construct_solution(mp)
    _emit(args, io.solution_to_json(s), s)
    return 0


def cmd_retract(args) -> int:
    s = io.load(args.file, io.solution_from_json)
    r = retract_solution(s)
    obj = io.solution_to_json(r.quotient)
    obj["classOf"] = list(r.class_of)
    obj["sectionRep"] = list(r.section_rep)
    _emit(args, obj, r.quotient)
    return 0


def cmd_extract(args) -> int:
    s = io.load(args.file, io.solution_from_json)
    ex = extract_matched_pair(s)
    obj = io.matched_pair_to_json(ex.mp)
    obj["labeling"] = list(ex.label)
    _emit(args, obj)
    return 0


def cmd_decompose(args) -> int:
    s = io.load(args.file, io.solution_from_json)
    d = decompose_solution(s)
    obj = io.extension_to_json(d.spec)
    obj["labeling"] = list(d.label)
    _emit(args, obj)
    return 0


def cmd_classify(args) -> int:
    n = args.order
    catalog = classify_involutive(n) if args.involutive else classify_order(n)
    for c in catalog:
        print(catalog_line(n, c))
    path = args.catalog or f"catalog-n{n}{'-involutive' if args.involutive else ''}.json"
    io.write_json(path, catalog_json(n, args.involutive, catalog))
    if args.oracle:
        return _run_oracle(n)
    return 0


def _run_oracle(n: int) -> int:
    if not 1 <= n <= BRUTE_FORCE_BOUND:
        raise RangeError(f"oracle is limited to n <= {BRUTE_FORCE_BOUND}")
    rep = oracle_check(n)
    print(f"oracle n={n} candidates={rep.candidates} solutions={rep.solutions} "
          f"classes={rep.classes} catalog={rep.expected} {'OK' if rep.ok else 'MISMATCH'}")
    for m in rep.mismatches:
        print(f"  {m}")
    return 0 if rep.ok else EXIT_ORACLE


def cmd_oracle(args) -> int:
    return _run_oracle(args.order)


def cmd_iso(args) -> int:
    s = io.load(args.a, io.solution_from_json)
    t = io.load(args.b, io.solution_from_json)
    f = solution_iso(s, t)
    if f is None:
        print("not isomorphic")
        return EXIT_FAIL
    print(io.dumps(list(f.images)), end="")
    return 0


def cmd_from_brace(args) -> int:
    b = io.load(args.file, io.brace_from_json)
    if args.matched_pair_only:
        _emit(args, io.matched_pair_to_json(brace_to_matched_pair(b)))
        return 0
    s = brace_to_solution(b)
    _emit(args, io.solution_to_json(s), s)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pentagon", description="Finite bijective solutions of the Pentagon Equation.")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp, table=True):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        if table:
            sp.add_argument("--format", choices=("json", "table"), default="json")

    sp = sub.add_parser("verify", help="check the Pentagon Equation")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("json", "table"), default="json")
    sp.add_argument("--structure", action="store_true", help="also run the structure invariants")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="solution of a matched pair")
    sp.add_argument("--matched-pair", required=True)
    sp.add_argument("--x-size", type=int)
    sp.add_argument("--phi", help="extension JSON with an explicit phi family")
    out(sp)
    sp.set_defaults(func=cmd_construct)

    for name, func, help_ in (
        ("retract", cmd_retract, "quotient by the retract congruence"),
        ("extract", cmd_extract, "matched pair of an irretractable solution"),
        ("decompose", cmd_decompose, "extension data of a solution"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        out(sp, table=name == "retract")
        sp.set_defaults(func=func)

    sp = sub.add_parser("classify", help="one solution per isomorphism class")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--involutive", action="store_true")
    sp.add_argument("--oracle", action="store_true", help="cross-check against brute force (n <= 3)")
    sp.add_argument("--catalog", help="catalog JSON path (default catalog-n<order>.json)")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("iso", help="find an isomorphism between two solutions")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("from-brace", help="solution of a skew brace")
    sp.add_argument("file")
    sp.add_argument("--matched-pair-only", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_from_brace)

    sp = sub.add_parser("oracle", help="brute-force cross-check (n <= 3)")
    sp.add_argument("--order", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PentagonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
