"""Constant specifications: built-in axiom schemes, matching, validation.

A constant specification assigns evidence for axiom instances to term
constants.  The schematic part maps constants to scheme names; the finite
part lists individual (constant, ground instance) pairs.  Scheme patterns
are justification formulas extended with formula metavariables (A, B, C)
and term metavariables (S, T); the two sorts never mix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .syntax import (
    App,
    Assert,
    Bang,
    Const,
    JAnd,
    JNot,
    ParseError,
    Prop,
    Sum,
    Var,
    jimp,
    parse_jformula,
)


@dataclass(frozen=True)
class FMeta:
    """Formula metavariable in a scheme or query pattern."""

    name: str


@dataclass(frozen=True)
class TMeta:
    """Term metavariable in a scheme or query pattern."""

    name: str


@dataclass(frozen=True)
class Scheme:
    name: str
    pattern: object  # JFormula extended with FMeta/TMeta nodes


def _make_schemes():
    A, B, C = FMeta("A"), FMeta("B"), FMeta("C")
    S, T = TMeta("S"), TMeta("T")
    return (
        Scheme("TAUT1", jimp(A, jimp(B, A))),
        Scheme("TAUT2", jimp(jimp(A, jimp(B, C)), jimp(jimp(A, B), jimp(A, C)))),
        Scheme("TAUT3", jimp(jimp(JNot(A), JNot(B)), jimp(B, A))),
        Scheme(
            "APP",
            jimp(
                Assert(S, jimp(A, B)),
                jimp(Assert(T, A), Assert(App(S, T), B)),
            ),
        ),
        Scheme("SUM_L", jimp(Assert(S, A), Assert(Sum(S, T), A))),
        Scheme("SUM_R", jimp(Assert(T, A), Assert(Sum(S, T), A))),
    )


_SCHEMES = _make_schemes()
_SCHEME_BY_NAME = {s.name: s for s in _SCHEMES}


def builtin_schemes():
    return list(_SCHEMES)


def scheme_named(name: str) -> Scheme | None:
    return _SCHEME_BY_NAME.get(name)


def match(pattern, ground, bindings=None):
    """One-sided structural match of a scheme pattern against a ground
    formula.  Returns the binding map, or None on mismatch."""
    if bindings is None:
        bindings = {}

    def go_f(pat, g):
        if isinstance(pat, FMeta):
            if pat.name in bindings:
                return bindings[pat.name] == g
            bindings[pat.name] = g
            return True
        if isinstance(pat, Prop):
            return pat == g
        if isinstance(pat, JNot):
            return isinstance(g, JNot) and go_f(pat.body, g.body)
        if isinstance(pat, JAnd):
            return (
                isinstance(g, JAnd)
                and go_f(pat.left, g.left)
                and go_f(pat.right, g.right)
            )
        if isinstance(pat, Assert):
            return (
                isinstance(g, Assert)
                and go_t(pat.term, g.term)
                and go_f(pat.body, g.body)
            )
        raise TypeError(f"bad pattern node: {pat!r}")

    def go_t(pat, g):
        if isinstance(pat, TMeta):
            if pat.name in bindings:
                return bindings[pat.name] == g
            bindings[pat.name] = g
            return True
        if isinstance(pat, (Const, Var)):
            return pat == g
        if isinstance(pat, App):
            return isinstance(g, App) and go_t(pat.left, g.left) and go_t(pat.right, g.right)
        if isinstance(pat, Sum):
            return isinstance(g, Sum) and go_t(pat.left, g.left) and go_t(pat.right, g.right)
        if isinstance(pat, Bang):
            return isinstance(g, Bang) and go_t(pat.inner, g.inner)
        raise TypeError(f"bad term pattern node: {pat!r}")

    return bindings if go_f(pattern, ground) else None


def is_axiom_instance(phi) -> bool:
    return any(match(s.pattern, phi) is not None for s in _SCHEMES)


class CSFormatError(ValueError):
    """Raised when a constant-specification file is malformed."""


@dataclass(frozen=True)
class ConstantSpec:
    """Almost-schematic constant specification.

    ``schematic`` maps constant names to frozensets of scheme names;
    ``finite`` is a frozenset of (constant name, ground formula) pairs.
    """

    schematic: dict = field(default_factory=dict)
    finite: frozenset = field(default_factory=frozenset)
    require_injective: bool = False
    require_appropriate: bool = False

    def schemes_of(self, cname: str):
        return self.schematic.get(cname, frozenset())


def cs_contains(cs: ConstantSpec, cname: str, phi) -> bool:
    """Membership test: (cname, phi) in the specification, phi ground."""
    if (cname, phi) in cs.finite:
        return True
    for sname in cs.schemes_of(cname):
        if match(_SCHEME_BY_NAME[sname].pattern, phi) is not None:
            return True
    return False


def validate(cs: ConstantSpec):
    """Diagnostics for the requested flags; empty list means valid."""
    diagnostics = []
    if cs.require_appropriate:
        for scheme in _SCHEMES:
            if not any(scheme.name in names for names in cs.schematic.values()):
                diagnostics.append(
                    f"not axiomatically appropriate: no constant justifies {scheme.name}"
                )
    if cs.require_injective:
        for cname in sorted(cs.schematic):
            if len(cs.schematic[cname]) > 1:
                names = ", ".join(sorted(cs.schematic[cname]))
                diagnostics.append(
                    f"not schematically injective: {cname} justifies {names}"
                )
        if cs.finite:
            diagnostics.append(
                "not schematically injective: finite part must be empty"
            )
    return diagnostics


def default_cs() -> ConstantSpec:
    """One fresh constant per built-in scheme; injective and appropriate."""
    schematic = {
        "c_" + s.name.lower(): frozenset({s.name}) for s in _SCHEMES
    }
    return ConstantSpec(
        schematic=schematic,
        finite=frozenset(),
        require_injective=True,
        require_appropriate=True,
    )


def load_cs(
    text: str,
    require_injective: bool = False,
    require_appropriate: bool = False,
) -> ConstantSpec:
    """Parse the line-oriented CS file format.

    Sections ``[schematic]`` and ``[finite]``; entries ``constant : SCHEME``
    and ``constant : jformula`` respectively.  Finite entries must be ground
    instances of some built-in scheme.
    """
    schematic: dict = {}
    finite = set()
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("[schematic]", "[finite]"):
            section = line[1:-1]
            continue
        if section is None:
            raise CSFormatError(f"line {lineno}: entry before any section header")
        if ":" not in line:
            raise CSFormatError(f"line {lineno}: expected 'constant : ...'")
        cname, rest = line.split(":", 1)
        cname = cname.strip()
        rest = rest.strip()
        if not re.match(r"[A-Za-z_][A-Za-z0-9_]*$", cname) or re.match(r"[px]\d+$", cname):
            raise CSFormatError(f"line {lineno}: bad constant name {cname!r}")
        if section == "schematic":
            if scheme_named(rest) is None:
                raise CSFormatError(f"line {lineno}: unknown scheme {rest!r}")
            schematic.setdefault(cname, set()).add(rest)
        else:
            try:
                phi = parse_jformula(rest)
            except ParseError as exc:
                raise CSFormatError(f"line {lineno}: {exc}") from exc
            if not is_axiom_instance(phi):
                raise CSFormatError(
                    f"line {lineno}: {rest!r} is not an instance of any axiom scheme"
                )
            finite.add((cname, phi))
    return ConstantSpec(
        schematic={c: frozenset(names) for c, names in schematic.items()},
        finite=frozenset(finite),
        require_injective=require_injective,
        require_appropriate=require_appropriate,
    )
