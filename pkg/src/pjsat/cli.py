"""Command-line front end.

Commands:
  sat FILE      decide satisfiability of a probability formula, print a model
  valid FILE    decide validity of a probability formula
  jsat FILE     decide satisfiability of a justification formula
  atoms FILE    list the atoms of a formula with per-atom J-satisfiability
  check FILE    re-verify a model file against a formula

Exit codes: 0 = SAT/VALID/true, 1 = UNSAT/NOT-VALID/false,
2 = usage or parse error, 3 = enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import cspec, solver
from .jsem import atom_jsat, jformula_sat
from .linrat import system_str
from .syntax import (
    DEFAULT_ATOM_CAP,
    EnumerationLimitError,
    ParseError,
    atoms_of,
    parse_jformula,
    parse_pformula,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pjsat",
        description="Exact decision procedure for probabilistic justification logic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("sat", "decide satisfiability of a probability formula"),
        ("valid", "decide validity of a probability formula"),
        ("jsat", "decide satisfiability of a justification formula"),
        ("atoms", "list atoms with per-atom J-satisfiability"),
        ("check", "re-verify a model file against a formula"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("formula", help="path to the formula file ('-' for stdin)")
        p.add_argument("--cs", dest="cs_path", help="constant specification file")
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_ATOM_CAP,
            help="atom enumeration cap on the basis size",
        )
        p.add_argument("--require-injective", action="store_true")
        p.add_argument("--require-appropriate", action="store_true")
        if name == "sat":
            p.add_argument("--dump-lp", action="store_true")
            p.add_argument("--model-out", dest="model_out")
        if name == "check":
            p.add_argument("--model", dest="model_path", required=True)
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def _load_cs(args):
    if args.cs_path is None:
        return cspec.default_cs()
    cs = cspec.load_cs(
        _read(args.cs_path),
        require_injective=args.require_injective,
        require_appropriate=args.require_appropriate,
    )
    diagnostics = cspec.validate(cs)
    if diagnostics:
        for d in diagnostics:
            print(d, file=sys.stderr)
        raise cspec.CSFormatError("constant specification fails validation")
    return cs


def run(args) -> int:
    cs = _load_cs(args)
    text = _strip_comments(_read(args.formula))

    if args.command == "sat":
        f = parse_pformula(text)
        dump = (lambda s: print(system_str(s))) if args.dump_lp else None
        model = solver.solve_sat(f, cs, cap=args.cap, on_system=dump)
        if model is None:
            print("UNSAT")
            return EXIT_FALSE
        out = solver.format_model(model)
        print(out)
        if args.model_out:
            with open(args.model_out, "w", encoding="utf-8") as fh:
                fh.write(out + "\n")
        return EXIT_TRUE

    if args.command == "valid":
        f = parse_pformula(text)
        ok = solver.valid(f, cs, cap=args.cap)
        print("VALID" if ok else "NOT-VALID")
        return EXIT_TRUE if ok else EXIT_FALSE

    if args.command == "jsat":
        alpha = parse_jformula(text)
        ok = jformula_sat(alpha, cs, cap=args.cap)
        print("SAT" if ok else "UNSAT")
        return EXIT_TRUE if ok else EXIT_FALSE

    if args.command == "atoms":
        try:
            f = parse_pformula(text)
        except ParseError:
            f = parse_jformula(text)
        for i, atom in enumerate(atoms_of(f, cap=args.cap), 1):
            verdict = "jsat" if atom_jsat(atom, cs) else "junsat"
            print(f"atom {i} {verdict}: {atom}")
        return EXIT_TRUE

    if args.command == "check":
        f = parse_pformula(text)
        model = solver.parse_model(_read(args.model_path), f)
        problems = solver.certify_model(model, f, cs)
        if problems:
            for p in problems:
                print(p, file=sys.stderr)
            print("check FAIL")
            return EXIT_FALSE
        print("check PASS")
        return EXIT_TRUE

    raise AssertionError(f"unknown command {args.command}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    try:
        return run(args)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, cspec.CSFormatError, solver.ModelFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
